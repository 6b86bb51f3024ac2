use std::collections::{BTreeMap, BTreeSet};

use super::{Multigraph, VertexId};

/// The maximal subgraph of minimum degree at least `d`, by peeling vertices of
/// smaller degree. `None` when nothing survives.
pub fn min_degree_subgraph(g: &Multigraph, d: usize) -> Option<Multigraph> {
    let mut h = g.clone();
    loop {
        let low: Vec<VertexId> = h.vertices().filter(|&v| h.degree(v) < d).collect();
        if low.is_empty() {
            break;
        }
        for v in low {
            h.remove_vertex(v);
        }
    }
    (h.vertex_count() > 0).then_some(h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyColoring {
    /// Elimination order: each vertex has at most `degeneracy` neighbours
    /// later in the order.
    pub order: Vec<VertexId>,
    pub degeneracy: usize,
    pub colors: BTreeMap<VertexId, usize>,
}

impl DegeneracyColoring {
    pub fn color_count(&self) -> usize {
        self.colors.values().max().map_or(0, |&c| c + 1)
    }
}

/// Smallest-last ordering on the underlying simple graph (loops dropped,
/// parallel edges merged), then greedy colouring in reverse order. Ties go to
/// the smallest vertex id.
pub fn degeneracy_coloring(g: &Multigraph) -> DegeneracyColoring {
    let adj: BTreeMap<VertexId, BTreeSet<VertexId>> = g.vertices().map(|v| (v, g.neighbors(v))).collect();
    let mut degree: BTreeMap<VertexId, usize> = adj.iter().map(|(&v, n)| (v, n.len())).collect();
    let mut buckets: BTreeSet<(usize, VertexId)> = degree.iter().map(|(&v, &d)| (d, v)).collect();
    let mut removed = BTreeSet::new();
    let mut order = Vec::with_capacity(adj.len());
    let mut degeneracy = 0;
    while let Some((d, v)) = buckets.pop_first() {
        degeneracy = degeneracy.max(d);
        removed.insert(v);
        order.push(v);
        for &w in &adj[&v] {
            if removed.contains(&w) {
                continue;
            }
            let dw = degree.get_mut(&w).unwrap();
            buckets.remove(&(*dw, w));
            *dw -= 1;
            buckets.insert((*dw, w));
        }
    }
    let mut colors = BTreeMap::new();
    for &v in order.iter().rev() {
        let used: BTreeSet<usize> = adj[&v].iter().filter_map(|w| colors.get(w).copied()).collect();
        let c = (0..).find(|c| !used.contains(c)).unwrap();
        colors.insert(v, c);
    }
    DegeneracyColoring { order, degeneracy, colors }
}
