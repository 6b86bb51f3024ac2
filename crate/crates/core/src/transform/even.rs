use log::debug;

use super::{Abstract, TransformError};
use crate::certificate::{clique_edges, verify_certificate, ImmersionCertificate, Parity, Verification};
use crate::graph::{bipartite_half_subgraph, min_degree_subgraph, Multigraph};
use crate::profile::ConstantsProfile;
use crate::search::{find_immersion_extract, ImmersionOracle};

pub(crate) fn check_input(g: &Multigraph, cert: &ImmersionCertificate) -> Result<(), TransformError> {
    if !cert.is_clique() {
        return Err(TransformError::InvalidCertificate("pattern is not a clique".into()));
    }
    match verify_certificate(g, cert) {
        Ok(Verification::Pass) => Ok(()),
        Ok(Verification::Fail(v)) => Err(v.into()),
        Err(e) => Err(TransformError::InvalidCertificate(e.to_string())),
    }
}

/// A totally even `K_t`-immersion inside a clique immersion of order at
/// least `even_extract_source(t)`.
///
/// When at least four fifths of the branch trails are odd, the odd ones are
/// kept, a bipartite half is taken, and a `K_{2t}` found in a high minimum
/// degree part of it; branch vertices on one side then pair up through an
/// even number of odd trails. Otherwise the even trails are kept and a `K_t`
/// is found among them directly. All searching happens on the pattern
/// graph, never on the host.
pub fn make_totally_even(
    g: &Multigraph,
    cert: &ImmersionCertificate,
    t: usize,
    profile: &ConstantsProfile,
    oracle: &mut dyn ImmersionOracle,
) -> Result<ImmersionCertificate, TransformError> {
    assert!(t >= 1);
    check_input(g, cert)?;
    let n = cert.pattern_t;
    let need = profile.even_extract_source(t);
    if n < need {
        return Err(TransformError::Precondition(format!("certificate has order {n}, needs {need}")));
    }
    let total = cert.trails.len();
    let odd = cert.odd_count();
    let odd_case = total > 0 && 5 * odd >= 4 * total;
    debug!("make_totally_even: order {n}, {odd}/{total} odd, odd case = {odd_case}");

    let mut q = Abstract::new(cert.branch_vertices.clone());
    for (idx, &(i, j)) in clique_edges(n).iter().enumerate() {
        if cert.trails[idx].is_odd() == odd_case {
            q.add(i, j, cert.clique_trail(i, j, g).map_err(|e| TransformError::Internal(e.to_string()))?);
        }
    }

    let (h, order, side) = if odd_case {
        let half = bipartite_half_subgraph(&q.graph);
        let h0 = q.graph.edge_subgraph(&half.retained);
        let d = profile.even_odd_case_min_degree(t);
        (min_degree_subgraph(&h0, d), 2 * t, Some(half.bipartition))
    } else {
        (min_degree_subgraph(&q.graph, profile.even_even_case_min_degree(t)), t, None)
    };
    let Some(h) = h else {
        profile.check(false, "min-degree subgraph", || "restricted pattern graph has no dense part".into())?;
        unreachable!()
    };
    let inner = find_immersion_extract(&h, order, oracle)?
        .ok_or_else(|| TransformError::SearchFailed(format!("no K_{order} in the restricted pattern graph")))?;

    let chosen: Vec<usize> = match &side {
        None => (0..order).collect(),
        Some(bip) => {
            let (left, right): (Vec<usize>, Vec<usize>) =
                (0..order).partition(|&p| bip.side_of(inner.branch_vertices[p]) == Some(false));
            let mut pick = if left.len() >= right.len() { left } else { right };
            pick.truncate(t);
            pick
        }
    };
    let branch: Vec<_> = chosen.iter().map(|&p| q.branch[inner.branch_vertices[p]]).collect();
    let mut trails = Vec::new();
    for &(a, b) in &clique_edges(t) {
        let it = inner.clique_trail(chosen[a], chosen[b], &h).map_err(|e| TransformError::Internal(e.to_string()))?;
        trails.push(q.lift(&it));
    }
    let out = ImmersionCertificate::clique(branch, trails, Parity::Even);
    match verify_certificate(g, &out) {
        Ok(Verification::Pass) => Ok(out),
        other => Err(TransformError::Internal(format!("totally even output failed verification: {other:?}"))),
    }
}
