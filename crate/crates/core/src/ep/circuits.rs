use std::collections::BTreeSet;

use super::{pack_only, EPOutcome, EpError, DEFAULT_EP_BUDGET};
use crate::ep::reduction::build_reduction;
use crate::graph::{bipartition_of, edge_blocks, EdgeId, Multigraph, VertexId};
use crate::trail::Trail;

/// Whether the edge block of `x` in `g` minus `removed` is bipartite. This
/// holds exactly when every `x`-circuit of `g \ removed` is even.
pub fn x_block_is_bipartite(g: &Multigraph, x: VertexId, removed: &BTreeSet<EdgeId>) -> bool {
    let h = g.without_edges(removed);
    let d = edge_blocks(&h);
    match d.block_of_vertex(x) {
        None => true,
        Some(i) => bipartition_of(&h.edge_subgraph(&d.blocks[i].edges)).is_bipartite(),
    }
}

/// Enumerates closed trails through `x` that never revisit `x` internally,
/// looking for one of odd length.
pub fn brute_force_has_odd_x_circuit(g: &Multigraph, x: VertexId) -> bool {
    find_odd_x_circuit(g, x).is_some()
}

/// Edges of some odd `x`-circuit, found by trail search.
pub fn find_odd_x_circuit(g: &Multigraph, x: VertexId) -> Option<Vec<EdgeId>> {
    fn go(g: &Multigraph, x: VertexId, cur: VertexId, walk: &mut Vec<EdgeId>) -> bool {
        for e in g.incident(cur) {
            if walk.contains(&e) {
                continue;
            }
            let w = g.edge(e).unwrap().other(cur).unwrap();
            if w == x {
                if walk.len() % 2 == 0 {
                    walk.push(e);
                    return true;
                }
                continue;
            }
            walk.push(e);
            if go(g, x, w, walk) {
                return true;
            }
            walk.pop();
        }
        false
    }
    let mut walk = Vec::new();
    (g.contains_vertex(x) && go(g, x, x, &mut walk)).then_some(walk)
}

/// `k` edge-disjoint odd `x`-circuits, or at most `2k - 2` edges meeting
/// every odd `x`-circuit.
///
/// Loops at `x` count as odd circuits of length one. The remaining demand is
/// packed through odd `A`-paths in the reduction graph. When that fails a
/// cover is searched directly.
pub fn odd_x_circuits(g: &Multigraph, x: VertexId, k: usize) -> Result<EPOutcome<EdgeId>, EpError> {
    odd_x_circuits_budget(g, x, k, DEFAULT_EP_BUDGET)
}

pub fn odd_x_circuits_budget(g: &Multigraph, x: VertexId, k: usize, budget: u64) -> Result<EPOutcome<EdgeId>, EpError> {
    assert!(k >= 1);
    if !g.contains_vertex(x) {
        return Err(EpError::UnknownVertex(x));
    }
    let loops: Vec<EdgeId> = g.incident(x).filter(|&e| g.edge(e).unwrap().is_loop()).collect();
    if loops.len() >= k {
        let objects = loops[..k].iter().map(|&e| Trail::single(e, true)).collect();
        return Ok(EPOutcome::Packing { objects });
    }
    let rest = k - loops.len();
    let g2 = g.without_edges(&loops);
    let r = build_reduction(&g2, x);
    if let Some(paths) = pack_only(&r.graph, &r.a, rest, budget)? {
        let mut out: Vec<Trail> = loops.iter().map(|&e| Trail::single(e, true)).collect();
        for p in paths {
            let edges = r.specials_in(p.edge_ids());
            let c = Trail::from_walk(g, x, &edges).expect("odd A-path maps to a closed trail at x");
            debug_assert!(c.is_odd() && c.is_circuit(g).unwrap());
            out.push(c);
        }
        return Ok(EPOutcome::Packing { objects: out });
    }
    match find_cover(g, x, 2 * k - 2) {
        Some(cover) => Ok(EPOutcome::Cover { hitting_set: cover }),
        None => Err(EpError::BudgetExhausted),
    }
}

/// Node cap of the exact cover search before switching to bipartizing
/// covers.
const EXACT_COVER_NODES: u64 = 20_000;
/// Largest block, in vertices, whose 2-colourings are enumerated.
const MAX_COLORED_BLOCK: usize = 20;

/// A cover of size at most `limit`. Small covers are found by branching on
/// the edges of a surviving odd `x`-circuit and have minimum size. When that
/// search runs out of nodes, the monochromatic edges of a best 2-colouring
/// of the block of `x` are taken and then pruned to an irredundant cover.
fn find_cover(g: &Multigraph, x: VertexId, limit: usize) -> Option<BTreeSet<EdgeId>> {
    fn branch(g: &Multigraph, x: VertexId, left: usize, cover: &mut BTreeSet<EdgeId>, nodes: &mut u64) -> Option<bool> {
        *nodes += 1;
        if *nodes > EXACT_COVER_NODES {
            return None;
        }
        if x_block_is_bipartite(g, x, cover) {
            return Some(true);
        }
        if left == 0 {
            return Some(false);
        }
        let h = g.without_edges(cover.iter());
        let d = edge_blocks(&h);
        let block = h.edge_subgraph(&d.blocks[d.block_of_vertex(x).unwrap()].edges);
        let circuit = find_odd_x_circuit(&block, x).expect("non-bipartite block of x has an odd x-circuit");
        for e in circuit {
            cover.insert(e);
            let found = branch(g, x, left - 1, cover, nodes)?;
            if found {
                return Some(true);
            }
            cover.remove(&e);
        }
        Some(false)
    }
    let mut nodes = 0;
    for size in 0..=limit {
        let mut cover = BTreeSet::new();
        match branch(g, x, size, &mut cover, &mut nodes) {
            Some(true) => return Some(cover),
            Some(false) => continue,
            None => break,
        }
    }
    let cover = coloring_cover(g, x)?;
    (cover.len() <= limit).then_some(cover)
}

fn coloring_cover(g: &Multigraph, x: VertexId) -> Option<BTreeSet<EdgeId>> {
    let d = edge_blocks(g);
    let Some(bi) = d.block_of_vertex(x) else {
        return Some(BTreeSet::new());
    };
    let block = &d.blocks[bi];
    let others: Vec<VertexId> = block.vertices.iter().copied().filter(|&v| v != x).collect();
    if others.len() >= MAX_COLORED_BLOCK {
        return None;
    }
    let pos: std::collections::BTreeMap<VertexId, usize> = others.iter().enumerate().map(|(i, &v)| (v, i + 1)).collect();
    let ends: Vec<(EdgeId, usize, usize)> = block
        .edges
        .iter()
        .map(|&e| {
            let ed = g.edge(e).unwrap();
            let at = |v: VertexId| pos.get(&v).copied().unwrap_or(0);
            (e, at(ed.u), at(ed.v))
        })
        .collect();
    // bit i of the mask is the side of vertex i; x sits at bit 0 on side 0
    let mono = |mask: u64| ends.iter().filter(|&&(_, a, b)| (mask >> a) & 1 == (mask >> b) & 1).count();
    let best = (0..1u64 << others.len()).map(|m| m << 1).min_by_key(|&m| (mono(m), m)).unwrap();
    let mut cover: BTreeSet<EdgeId> =
        ends.iter().filter(|&&(_, a, b)| (best >> a) & 1 == (best >> b) & 1).map(|&(e, _, _)| e).collect();
    for e in cover.clone() {
        cover.remove(&e);
        if !x_block_is_bipartite(g, x, &cover) {
            cover.insert(e);
        }
    }
    debug_assert!(x_block_is_bipartite(g, x, &cover));
    Some(cover)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(g: &Multigraph, x: VertexId, k: usize) -> EPOutcome<EdgeId> {
        let out = odd_x_circuits(g, x, k).unwrap();
        match &out {
            EPOutcome::Packing { objects } => {
                assert_eq!(objects.len(), k);
                let mut seen = BTreeSet::new();
                for c in objects {
                    c.validate(g).unwrap();
                    assert!(c.is_odd());
                    assert_eq!(c.ends(g).unwrap(), (x, x));
                    let verts = c.vertices(g).unwrap();
                    assert!(verts[1..verts.len() - 1].iter().all(|&v| v != x));
                    for e in c.edge_ids() {
                        assert!(seen.insert(e));
                    }
                }
            }
            EPOutcome::Cover { hitting_set } => {
                assert!(hitting_set.len() <= 2 * k - 2);
                assert!(!brute_force_has_odd_x_circuit(&g.without_edges(hitting_set), x));
            }
        }
        out
    }

    #[test]
    fn bipartite_gives_empty_cover() {
        let out = check(&Multigraph::cycle(6), 0, 2);
        assert_eq!(out, EPOutcome::Cover { hitting_set: BTreeSet::new() });
    }

    #[test]
    fn k4_and_k5() {
        match check(&Multigraph::complete(4), 0, 2) {
            EPOutcome::Cover { hitting_set } => assert!(hitting_set.len() <= 2),
            other => panic!("{other:?}"),
        }
        assert!(check(&Multigraph::complete(5), 0, 2).is_packing());
    }

    #[test]
    fn loops_at_x() {
        let g = Multigraph::from_edges(2, &[(0, 0), (0, 1), (0, 0)]);
        assert!(check(&g, 0, 2).is_packing());
        match check(&g, 0, 3) {
            EPOutcome::Cover { hitting_set } => assert_eq!(hitting_set, BTreeSet::from([0, 2])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn brute_force_sanity() {
        assert!(brute_force_has_odd_x_circuit(&Multigraph::cycle(5), 0));
        assert!(!brute_force_has_odd_x_circuit(&Multigraph::cycle(4), 0));
        // odd cycle hanging off x by a bridge is not reachable by a circuit
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 1)]);
        assert!(!brute_force_has_odd_x_circuit(&g, 0));
        assert!(x_block_is_bipartite(&g, 0, &BTreeSet::new()));
    }
}
