use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{EdgeId, Multigraph, VertexId};

/// The line graph of the 1-subdivision of `g`, with every edge inside a
/// vertex clique subdivided once. Its vertices of the first kind are the
/// half-edges of `g`; the two halves of an edge `e` are joined by the
/// special edge `f_e`.
#[derive(Clone, Debug)]
pub struct ReductionBundle {
    pub graph: Multigraph,
    pub x: VertexId,
    /// Halves at `x`.
    pub a: BTreeSet<VertexId>,
    /// Edge of `g` -> (half at its `u` end, half at its `v` end).
    pub halves: BTreeMap<EdgeId, (VertexId, VertexId)>,
    /// Half -> (edge of `g`, vertex of `g` it sits at).
    pub half_origin: BTreeMap<VertexId, (EdgeId, VertexId)>,
    /// Edge of `g` -> its special edge.
    pub special: BTreeMap<EdgeId, EdgeId>,
    pub special_origin: BTreeMap<EdgeId, EdgeId>,
    /// Subdivision vertex of a clique edge -> the two halves it joins.
    pub subdivider: BTreeMap<VertexId, (VertexId, VertexId)>,
    /// Halves get `false`, subdivision vertices `true`.
    pub coloring: BTreeMap<VertexId, bool>,
}

impl ReductionBundle {
    /// Edges of `g` whose special edge lies in `edges`.
    pub fn specials_in(&self, edges: impl IntoIterator<Item = EdgeId>) -> Vec<EdgeId> {
        edges.into_iter().filter_map(|f| self.special_origin.get(&f).copied()).collect()
    }

    /// Exactly the special edges are monochromatic.
    pub fn coloring_is_valid(&self) -> bool {
        self.graph.edges().all(|(id, e)| {
            let mono = self.coloring[&e.u] == self.coloring[&e.v];
            mono == self.special_origin.contains_key(&id)
        })
    }
}

pub fn build_reduction(g: &Multigraph, x: VertexId) -> ReductionBundle {
    assert!(g.contains_vertex(x), "vertex {x} is not in the graph");
    let mut h = Multigraph::new();
    let mut halves = BTreeMap::new();
    let mut half_origin = BTreeMap::new();
    let mut special = BTreeMap::new();
    let mut special_origin = BTreeMap::new();
    let mut coloring = BTreeMap::new();
    let mut at: BTreeMap<VertexId, Vec<VertexId>> = g.vertices().map(|v| (v, Vec::new())).collect();
    for (id, e) in g.edges() {
        let hu = h.add_vertex();
        let hv = h.add_vertex();
        let f = h.add_edge(hu, hv).unwrap();
        halves.insert(id, (hu, hv));
        half_origin.insert(hu, (id, e.u));
        half_origin.insert(hv, (id, e.v));
        special.insert(id, f);
        special_origin.insert(f, id);
        coloring.insert(hu, false);
        coloring.insert(hv, false);
        at.get_mut(&e.u).unwrap().push(hu);
        at.get_mut(&e.v).unwrap().push(hv);
    }
    let mut subdivider = BTreeMap::new();
    for list in at.values() {
        for (i, &p) in list.iter().enumerate() {
            for &q in &list[i + 1..] {
                let s = h.add_vertex();
                h.add_edge(p, s).unwrap();
                h.add_edge(s, q).unwrap();
                subdivider.insert(s, (p, q));
                coloring.insert(s, true);
            }
        }
    }
    let a = at[&x].iter().copied().collect();
    let bundle = ReductionBundle { graph: h, x, a, halves, half_origin, special, special_origin, subdivider, coloring };
    assert!(bundle.coloring_is_valid());
    bundle
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{line_graph, one_subdivision};

    #[test]
    fn single_edge() {
        let r = build_reduction(&Multigraph::path(2), 0);
        assert_eq!((r.graph.vertex_count(), r.graph.edge_count()), (2, 1));
        assert_eq!(r.a.len(), 1);
    }

    #[test]
    fn triangle_counts() {
        let r = build_reduction(&Multigraph::cycle(3), 0);
        assert_eq!(r.halves.len() * 2, 6);
        assert_eq!(r.subdivider.len(), 3);
        assert_eq!(r.special.len(), 3);
        assert_eq!(r.graph.vertex_count(), 9);
    }

    #[test]
    fn star_center_halves_pairwise_joined() {
        let g = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let r = build_reduction(&g, 0);
        assert_eq!(r.a.len(), 3);
        let a: Vec<_> = r.a.iter().copied().collect();
        for i in 0..3 {
            for j in i + 1..3 {
                let common: Vec<_> = r.graph.neighbors(a[i]).intersection(&r.graph.neighbors(a[j])).copied().collect();
                assert_eq!(common.len(), 1);
                assert!(r.subdivider.contains_key(&common[0]));
            }
        }
    }

    #[test]
    fn contracting_subdividers_gives_line_graph() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (0, 1)]);
        let r = build_reduction(&g, 0);
        let s = one_subdivision(&g);
        let l = line_graph(&s.graph);
        // line graph vertices are edges of the subdivision; map halves to them
        let to_l = |half: VertexId| {
            let (e, v) = r.half_origin[&half];
            let (a, b) = s.halves[&e];
            if g.edge(e).unwrap().u == v { a } else { b }
        };
        let mut ours = BTreeSet::new();
        for (id, e) in r.graph.edges() {
            if r.special_origin.contains_key(&id) {
                ours.insert((to_l(e.u).min(to_l(e.v)), to_l(e.u).max(to_l(e.v))));
            }
        }
        for (&_, &(p, q)) in &r.subdivider {
            ours.insert((to_l(p).min(to_l(q)), to_l(p).max(to_l(q))));
        }
        let theirs: BTreeSet<_> = l.graph.edges().map(|(_, e)| e.key()).collect();
        assert_eq!(ours, theirs);
    }
}
