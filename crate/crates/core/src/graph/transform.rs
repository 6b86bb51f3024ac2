use std::collections::BTreeMap;

use super::{EdgeId, Multigraph, VertexId};

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub graph: Multigraph,
    /// Original edge -> the fresh vertex placed on it.
    pub midpoint: BTreeMap<EdgeId, VertexId>,
    /// Original edge -> (half at its `u` end, half at its `v` end).
    pub halves: BTreeMap<EdgeId, (EdgeId, EdgeId)>,
    /// New edge -> original edge it came from.
    pub origin: BTreeMap<EdgeId, EdgeId>,
}

/// Replaces every edge `uv` by a path `u - m - v` through a fresh vertex.
/// Original vertex ids are kept; new vertices and edges are numbered after
/// the existing ones in edge-id order.
pub fn one_subdivision(g: &Multigraph) -> Subdivision {
    let mut h = Multigraph::new();
    for v in g.vertices() {
        h.ensure_vertex(v);
    }
    let mut midpoint = BTreeMap::new();
    let mut halves = BTreeMap::new();
    let mut origin = BTreeMap::new();
    for (id, e) in g.edges() {
        let m = h.add_vertex();
        let a = h.add_edge(e.u, m).unwrap();
        let b = h.add_edge(m, e.v).unwrap();
        midpoint.insert(id, m);
        halves.insert(id, (a, b));
        origin.insert(a, id);
        origin.insert(b, id);
    }
    Subdivision { graph: h, midpoint, halves, origin }
}

#[derive(Clone, Debug)]
pub struct LineGraph {
    /// Simple graph; vertex id equals the source edge id.
    pub graph: Multigraph,
    pub source_edge: BTreeMap<VertexId, EdgeId>,
}

/// Simple line graph: one vertex per edge, adjacent when the edges share an
/// endpoint. Edges sharing two endpoints still get a single adjacency.
pub fn line_graph(g: &Multigraph) -> LineGraph {
    let mut h = Multigraph::new();
    for e in g.edge_ids() {
        h.ensure_vertex(e);
    }
    let mut seen = std::collections::BTreeSet::new();
    for v in g.vertices() {
        let inc: Vec<EdgeId> = g.incident(v).collect();
        for (i, &a) in inc.iter().enumerate() {
            for &b in &inc[i + 1..] {
                if seen.insert((a, b)) {
                    h.add_edge(a, b).unwrap();
                }
            }
        }
    }
    let source_edge = g.edge_ids().map(|e| (e, e)).collect();
    LineGraph { graph: h, source_edge }
}
