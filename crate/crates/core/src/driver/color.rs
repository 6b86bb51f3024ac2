use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{extend_bipartite, is_bipartite_edge_set, DecompositionResult, DriverError};
use crate::graph::{bipartition_of, degeneracy_coloring, Multigraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: BTreeMap<VertexId, usize>,
    pub count: usize,
    pub degeneracy: usize,
}

impl Coloring {
    /// Every non-loop edge joins different colours.
    pub fn is_proper(&self, g: &Multigraph) -> bool {
        g.edges().all(|(_, e)| e.is_loop() || self.colors.get(&e.u) != self.colors.get(&e.v))
    }
}

/// Product of a 2-colouring of the bipartite part and a degeneracy
/// colouring of the rest, renumbered densely. The bipartite part is first
/// extended greedily to a maximal one. Loops are ignored.
pub fn color(g: &Multigraph, split: &DecompositionResult) -> Result<Coloring, DriverError> {
    let DecompositionResult::Split { f, .. } = split else {
        return Err(DriverError::NotSplit);
    };
    if !is_bipartite_edge_set(g, f) {
        return Err(DriverError::Precondition("split edge set is not bipartite".into()));
    }
    let f = &extend_bipartite(g, f);
    let sides = bipartition_of(&g.edge_subgraph(f))
        .bipartition()
        .ok_or_else(|| DriverError::Precondition("split edge set is not bipartite".into()))?;
    let rest = degeneracy_coloring(&g.without_edges(f));
    let mut dense: BTreeMap<(bool, usize), usize> = BTreeMap::new();
    let mut colors = BTreeMap::new();
    for v in g.vertices() {
        let key = (sides.side_of(v).unwrap_or(false), rest.colors[&v]);
        let next = dense.len();
        colors.insert(v, *dense.entry(key).or_insert(next));
    }
    Ok(Coloring { count: dense.len(), colors, degeneracy: rest.degeneracy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn split(f: BTreeSet<usize>) -> DecompositionResult {
        DecompositionResult::Split { f, residual_order: 3, iterations: 0, sizes: vec![], degenerate: false, coloring: None }
    }

    #[test]
    fn bipartite_two_colors() {
        let g = Multigraph::cycle(6);
        let c = color(&g, &split(g.edge_ids().collect())).unwrap();
        assert_eq!(c.count, 2);
        assert!(c.is_proper(&g));
    }

    #[test]
    fn k5_within_bound() {
        let g = Multigraph::complete(5);
        let c = color(&g, &split(BTreeSet::new())).unwrap();
        assert!(c.is_proper(&g));
        assert!(c.count >= 5 && c.count <= 2 * (c.degeneracy + 1));
    }

    #[test]
    fn empty_part_is_extended() {
        let g = Multigraph::cycle(8);
        assert_eq!(color(&g, &split(BTreeSet::new())).unwrap().count, 2);
    }

    #[test]
    fn witness_rejected() {
        let w = DecompositionResult::TotallyOddWitness {
            certificate: crate::certificate::ImmersionCertificate::clique(vec![0], vec![], crate::certificate::Parity::Odd),
        };
        assert_eq!(color(&Multigraph::complete(1), &w), Err(DriverError::NotSplit));
    }
}
