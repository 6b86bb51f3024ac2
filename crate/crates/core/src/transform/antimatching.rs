use std::collections::BTreeSet;

use super::TransformError;
use crate::graph::{Multigraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AntimatchingOrClique {
    /// Pairs of distinct non-adjacent vertices, pairwise disjoint.
    Antimatching(Vec<(VertexId, VertexId)>),
    Clique(Vec<VertexId>),
}

/// Greedy maximal matching in the complement of `h` (loops and parallel
/// edges ignored). Returned as an antimatching when it has at least
/// `am_size` pairs and is non-empty; otherwise the unmatched vertices are
/// pairwise adjacent and returned as a clique.
pub fn antimatching_or_clique(h: &Multigraph, am_size: usize, cl_size: usize) -> Result<AntimatchingOrClique, TransformError> {
    let n = h.vertex_count();
    if n < 2 * am_size + cl_size {
        return Err(TransformError::Precondition(format!(
            "neighbourhood has {n} vertices, fewer than 2*{am_size}+{cl_size}"
        )));
    }
    let verts: Vec<VertexId> = h.vertices().collect();
    let mut matched: BTreeSet<VertexId> = BTreeSet::new();
    let mut pairs = Vec::new();
    for (i, &u) in verts.iter().enumerate() {
        if matched.contains(&u) {
            continue;
        }
        let nb = h.neighbors(u);
        if let Some(&w) = verts[i + 1..].iter().find(|w| !matched.contains(w) && !nb.contains(w)) {
            matched.insert(u);
            matched.insert(w);
            pairs.push((u, w));
        }
    }
    if !pairs.is_empty() && pairs.len() >= am_size {
        return Ok(AntimatchingOrClique::Antimatching(pairs));
    }
    let rest: Vec<VertexId> = verts.into_iter().filter(|v| !matched.contains(v)).collect();
    debug_assert!(rest.len() >= cl_size);
    Ok(AntimatchingOrClique::Clique(rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_gives_clique() {
        let out = antimatching_or_clique(&Multigraph::complete(5), 2, 1).unwrap();
        assert_eq!(out, AntimatchingOrClique::Clique(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn edgeless_gives_antimatching() {
        match antimatching_or_clique(&Multigraph::with_vertices(5), 2, 1).unwrap() {
            AntimatchingOrClique::Antimatching(p) => assert_eq!(p, vec![(0, 1), (2, 3)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn five_cycle() {
        match antimatching_or_clique(&Multigraph::cycle(5), 2, 1).unwrap() {
            AntimatchingOrClique::Antimatching(p) => {
                assert_eq!(p.len(), 2);
                let g = Multigraph::cycle(5);
                for (a, b) in p {
                    assert!(!g.neighbors(a).contains(&b));
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn too_small() {
        assert!(antimatching_or_clique(&Multigraph::with_vertices(3), 2, 1).is_err());
    }
}
