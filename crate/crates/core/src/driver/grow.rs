use std::collections::BTreeSet;

use log::{debug, info, warn};
use serde::{Deserialize, Serialize};

use super::separator::{separate_bipartite_piece, SeparatorOutcome};
use super::{is_bipartite_edge_set, DecompositionResult, DriverError};
use crate::certificate::{clique_edge_index, clique_edges, verify_certificate, ImmersionCertificate, Parity};
use crate::graph::{bipartition_of, edge_blocks, EdgeId, Multigraph};
use crate::profile::ConstantsProfile;
use crate::search::{find_immersion_extract, ImmersionOracle, OracleQuery, SearchOutcome, DEFAULT_BUDGET};
use crate::transform::make_totally_even;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowRoute {
    /// Bridges of `g` joined the set.
    Bridges,
    /// A bipartite piece was cut out around a large immersion.
    Separator,
    /// The separator step failed under a non-strict profile and a single
    /// edge was added instead.
    Augment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowOutcome {
    Grown { f: BTreeSet<EdgeId>, route: GrowRoute },
    NoBigImmersion,
    Witness(ImmersionCertificate),
}

/// Smaller certificate on the first `t` branch vertices.
fn restrict(cert: &ImmersionCertificate, t: usize) -> ImmersionCertificate {
    let n = cert.pattern_t;
    let trails = clique_edges(t).iter().map(|&(i, j)| cert.trails[clique_edge_index(n, i, j)].clone()).collect();
    ImmersionCertificate::clique(cert.branch_vertices[..t].to_vec(), trails, cert.parity)
}

/// Order of the totally even clique to extract from a `K_s`. Under a
/// non-strict profile it is lowered until the extraction precondition holds.
fn even_target(profile: &ConstantsProfile, s: usize, t2: usize) -> usize {
    let mut r = profile.even_clique_order(t2);
    if !profile.strict {
        while r > 1 && profile.even_extract_source(r) > s {
            r -= 1;
        }
    }
    r
}

fn could_hold(h: &Multigraph, s: usize) -> bool {
    h.vertices().filter(|&v| h.loopless_degree(v) + 1 >= s).count() >= s
}

/// One growth step. `f` must be a bipartite edge set of `g`.
///
/// Bridges missing from `f` are added first. Otherwise every edge block is
/// searched, smallest first, for a `K_s`-immersion avoiding `f` with
/// `s = immersion_free_order(t)`. The first one found is made totally even
/// and handed to the separator, and the separated bipartite piece replaces
/// `f` around it. When that chain breaks under a non-strict profile, an
/// exact search for a totally odd `K_t` in the block is tried, then a
/// single-edge extension of `f`.
pub fn grow_bipartite(
    g: &Multigraph,
    f: &BTreeSet<EdgeId>,
    t: usize,
    profile: &ConstantsProfile,
    oracle: &mut dyn ImmersionOracle,
) -> Result<GrowOutcome, DriverError> {
    if !is_bipartite_edge_set(g, f) {
        return Err(DriverError::Precondition("edge set is not bipartite".into()));
    }
    let d = edge_blocks(g);
    let missing: Vec<EdgeId> = d.bridges.iter().copied().filter(|e| !f.contains(e)).collect();
    if !missing.is_empty() {
        let mut out = f.clone();
        out.extend(missing);
        return Ok(GrowOutcome::Grown { f: out, route: GrowRoute::Bridges });
    }
    let s = profile.immersion_free_order(t);
    for (bi, block) in d.blocks.iter().enumerate() {
        let bk = g.edge_subgraph(&block.edges).induced(&block.vertices);
        let h = bk.without_edges(f);
        if !could_hold(&h, s) {
            continue;
        }
        let Some(big) = find_immersion_extract(&h, s, oracle)? else {
            continue;
        };
        debug!("grow: K_{s} in block {bi}");
        match separator_step(g, &bk, &big, f, t, profile, oracle) {
            Ok(outcome) => return Ok(outcome),
            Err(e @ (DriverError::Transform(_) | DriverError::Bound(_) | DriverError::Ep(_))) if !profile.strict => {
                warn!("grow: separator chain failed in block {bi}: {e}");
                return fallback(g, &bk, f, t, e);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(GrowOutcome::NoBigImmersion)
}

fn separator_step(
    g: &Multigraph,
    bk: &Multigraph,
    big: &ImmersionCertificate,
    f: &BTreeSet<EdgeId>,
    t: usize,
    profile: &ConstantsProfile,
    oracle: &mut dyn ImmersionOracle,
) -> Result<GrowOutcome, DriverError> {
    let t2 = t + profile.order_shift(t);
    let r = even_target(profile, big.pattern_t, t2);
    let host = bk.without_edges(f);
    let even = make_totally_even(&host, big, r, profile, oracle)?;
    match separate_bipartite_piece(bk, &even, t2, profile, oracle)? {
        SeparatorOutcome::Witness(w) => {
            let w = if w.pattern_t > t { restrict(&w, t) } else { w };
            check_witness(g, &w)?;
            Ok(GrowOutcome::Witness(w))
        }
        SeparatorOutcome::Separator(sep) => {
            let inside: BTreeSet<EdgeId> =
                bk.edges().filter(|(_, e)| sep.c.contains(&e.u) && sep.c.contains(&e.v)).map(|(id, _)| id).collect();
            let next: BTreeSet<EdgeId> = f.union(&inside).copied().filter(|e| !sep.x.contains(e)).collect();
            assert!(is_bipartite_edge_set(g, &next), "grown edge set is not bipartite");
            profile.check(next.len() > f.len(), "bipartite growth", || {
                format!("separator gives {} edges, had {}", next.len(), f.len())
            })?;
            Ok(GrowOutcome::Grown { f: next, route: GrowRoute::Separator })
        }
    }
}

fn check_witness(g: &Multigraph, w: &ImmersionCertificate) -> Result<(), DriverError> {
    if w.parity == Parity::Odd && matches!(verify_certificate(g, w), Ok(v) if v.is_pass()) {
        Ok(())
    } else {
        Err(DriverError::Inconclusive("witness failed verification".into()))
    }
}

fn fallback(g: &Multigraph, bk: &Multigraph, f: &BTreeSet<EdgeId>, t: usize, cause: DriverError) -> Result<GrowOutcome, DriverError> {
    match crate::search::test_immersion(&OracleQuery::new(bk, t, Parity::Odd).with_budget(DEFAULT_BUDGET)) {
        SearchOutcome::Found(w) => {
            check_witness(g, &w)?;
            info!("grow: exact search found a totally odd K_{t}");
            return Ok(GrowOutcome::Witness(w));
        }
        SearchOutcome::BudgetExhausted => {
            return Err(DriverError::Inconclusive(format!("totally odd search ran out of budget after: {cause}")));
        }
        SearchOutcome::NotFound => {}
    }
    for (id, e) in g.edges() {
        if e.is_loop() || f.contains(&id) {
            continue;
        }
        let mut next = f.clone();
        next.insert(id);
        if bipartition_of(&g.edge_subgraph(&next)).is_bipartite() {
            return Ok(GrowOutcome::Grown { f: next, route: GrowRoute::Augment });
        }
    }
    Err(DriverError::Inconclusive(format!("edge set is maximal and the separator step failed: {cause}")))
}

/// Greedy maximal bipartite edge set, scanning edges by id.
pub fn maximal_bipartite(g: &Multigraph) -> BTreeSet<EdgeId> {
    extend_bipartite(g, &BTreeSet::new())
}

/// Adds edges to the bipartite set `f` in id order while it stays
/// bipartite.
pub fn extend_bipartite(g: &Multigraph, f: &BTreeSet<EdgeId>) -> BTreeSet<EdgeId> {
    let mut f = f.clone();
    for (id, e) in g.edges() {
        if e.is_loop() || f.contains(&id) {
            continue;
        }
        f.insert(id);
        if !bipartition_of(&g.edge_subgraph(&f)).is_bipartite() {
            f.remove(&id);
        }
    }
    f
}

#[derive(Clone, Debug, Default)]
pub struct DecomposeOptions {
    pub warm_start: Option<BTreeSet<EdgeId>>,
}

/// Repeats [`grow_bipartite`] from the empty set (or a warm start) until the
/// rest of `g` has no `K_s`-immersion, or a totally odd `K_t`-immersion is
/// found. Every step strictly enlarges the set, so there are at most `|E|`
/// steps.
pub fn decompose(
    g: &Multigraph,
    t: usize,
    profile: &ConstantsProfile,
    options: &DecomposeOptions,
    oracle: &mut dyn ImmersionOracle,
) -> Result<DecompositionResult, DriverError> {
    let s = profile.immersion_free_order(t);
    if t <= 2 {
        let f = maximal_bipartite(g);
        let sizes = vec![f.len()];
        return Ok(DecompositionResult::Split { f, residual_order: s, iterations: 0, sizes, degenerate: true, coloring: None });
    }
    let mut f = options.warm_start.clone().unwrap_or_default();
    if !is_bipartite_edge_set(g, &f) {
        return Err(DriverError::Precondition("warm start is not a bipartite edge set of the graph".into()));
    }
    let mut sizes = vec![f.len()];
    let mut iterations = 0;
    loop {
        match grow_bipartite(g, &f, t, profile, oracle)? {
            GrowOutcome::Grown { f: next, route } => {
                assert!(next.len() > f.len(), "growth step did not enlarge the set");
                iterations += 1;
                assert!(iterations <= g.edge_count(), "more growth steps than edges");
                debug!("decompose: step {iterations} via {route:?}, |F| {} -> {}", f.len(), next.len());
                f = next;
                sizes.push(f.len());
            }
            GrowOutcome::NoBigImmersion => {
                return Ok(DecompositionResult::Split { f, residual_order: s, iterations, sizes, degenerate: false, coloring: None });
            }
            GrowOutcome::Witness(w) => {
                check_witness(g, &w)?;
                return Ok(DecompositionResult::TotallyOddWitness { certificate: w });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::ExhaustiveOracle;

    fn desk() -> ConstantsProfile {
        ConstantsProfile::desk()
    }

    #[test]
    fn full_bipartite_set_has_nothing_left() {
        let g = Multigraph::cycle(6);
        let f: BTreeSet<EdgeId> = g.edge_ids().collect();
        assert_eq!(grow_bipartite(&g, &f, 3, &desk(), &mut ExhaustiveOracle::default()).unwrap(), GrowOutcome::NoBigImmersion);
    }

    #[test]
    fn triangle_is_a_witness() {
        let g = Multigraph::complete(3);
        match grow_bipartite(&g, &BTreeSet::new(), 3, &desk(), &mut ExhaustiveOracle::default()).unwrap() {
            GrowOutcome::Witness(w) => assert!(verify_certificate(&g, &w).unwrap().is_pass()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bipartite_graph_splits_fully() {
        let g = Multigraph::from_edges(6, &[(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5), (0, 5), (5, 5)]);
        let r = decompose(&g, 3, &desk(), &DecomposeOptions::default(), &mut ExhaustiveOracle::default()).unwrap();
        match r {
            DecompositionResult::Split { f, .. } => {
                assert!(is_bipartite_edge_set(&g, &f));
                assert_eq!(f.len(), 7);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn clique_gives_witness() {
        for t in [3, 4] {
            let g = Multigraph::complete(t);
            let r = decompose(&g, t, &desk(), &DecomposeOptions::default(), &mut ExhaustiveOracle::default()).unwrap();
            assert!(!r.is_split(), "t={t}");
        }
    }

    #[test]
    fn paper_profile_degrades() {
        let g = Multigraph::petersen();
        let r = decompose(&g, 3, &ConstantsProfile::paper(), &DecomposeOptions::default(), &mut ExhaustiveOracle::default()).unwrap();
        assert!(matches!(r, DecompositionResult::Split { ref f, .. } if f.is_empty()));
    }
}
