use std::collections::BTreeSet;

use log::debug;
use serde::{Deserialize, Serialize};

use super::DriverError;
use crate::certificate::{verify_certificate, ImmersionCertificate};
use crate::ep::{odd_x_circuits_budget, EPOutcome, DEFAULT_EP_BUDGET};
use crate::graph::{bipartition_of, edge_blocks, two_edge_connected_classes, EdgeId, Multigraph, VertexId};
use crate::profile::ConstantsProfile;
use crate::search::ImmersionOracle;
use crate::trail::Trail;
use crate::transform::{apex_augment, make_immersion_odd};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorAudit {
    pub apex: VertexId,
    pub apex_multiplicity: usize,
    pub demand: usize,
    /// Cover returned by the packing/covering step, in apex-graph edge ids.
    pub cover: BTreeSet<EdgeId>,
    /// Branch vertices still 2-edge-connected to the apex.
    pub connected: BTreeSet<VertexId>,
    pub block_index: usize,
    pub branch_in_block: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorOutput {
    pub x: BTreeSet<EdgeId>,
    pub c: BTreeSet<VertexId>,
    pub audit: SeparatorAudit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparatorOutcome {
    Witness(ImmersionCertificate),
    Separator(SeparatorOutput),
}

const SHORT_PACKING_BUDGET: u64 = 1_000_000;

/// Shortest odd `x`-circuit avoiding `banned`, by iterative deepening.
fn shortest_odd_x_circuit(g: &Multigraph, x: VertexId, banned: &BTreeSet<EdgeId>, budget: &mut u64) -> Option<Vec<EdgeId>> {
    let h = g.without_edges(banned);
    let mut dist: std::collections::BTreeMap<VertexId, usize> = [(x, 0)].into();
    let mut queue = std::collections::VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for w in h.neighbors(u) {
            if !dist.contains_key(&w) {
                dist.insert(w, dist[&u] + 1);
                queue.push_back(w);
            }
        }
    }
    fn go(
        h: &Multigraph,
        x: VertexId,
        cur: VertexId,
        left: usize,
        dist: &std::collections::BTreeMap<VertexId, usize>,
        walk: &mut Vec<EdgeId>,
        budget: &mut u64,
    ) -> Option<bool> {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        for e in h.incident(cur).collect::<Vec<_>>() {
            if walk.contains(&e) {
                continue;
            }
            let w = h.edge(e).unwrap().other(cur).unwrap();
            if w == x {
                if left == 1 && !walk.is_empty() {
                    walk.push(e);
                    return Some(true);
                }
                continue;
            }
            if left <= 1 || dist.get(&w).is_none_or(|&d| d > left - 1) {
                continue;
            }
            walk.push(e);
            if go(h, x, w, left - 1, dist, walk, budget)? {
                return Some(true);
            }
            walk.pop();
        }
        Some(false)
    }
    let mut len = 1;
    while len <= h.edge_count() {
        let mut walk = Vec::new();
        if go(&h, x, x, len, &dist, &mut walk, budget)? {
            return Some(walk);
        }
        len += 2;
    }
    None
}

/// Greedily takes a shortest odd `x`-circuit among the unused edges, `k`
/// times. `None` if it gets stuck or runs out of budget.
fn short_packing(g: &Multigraph, x: VertexId, k: usize, mut budget: u64) -> Option<Vec<Trail>> {
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..k {
        let walk = shortest_odd_x_circuit(g, x, &used, &mut budget)?;
        used.extend(walk.iter().copied());
        out.push(Trail::from_walk(g, x, &walk).ok()?);
    }
    Some(out)
}

fn is_two_edge_connected(g: &Multigraph) -> bool {
    let classes = two_edge_connected_classes(g);
    let mut ids = classes.values();
    match ids.next() {
        None => true,
        Some(first) => g.is_connected() && ids.all(|c| c == first),
    }
}

/// Either a totally odd `K_t`-immersion, or an edge set `X` and the vertex
/// set `C` of a bipartite component of `g \ X` that holds many branch
/// vertices of the totally even certificate.
pub fn separate_bipartite_piece(
    g: &Multigraph,
    cert: &ImmersionCertificate,
    t: usize,
    profile: &ConstantsProfile,
    oracle: &mut dyn ImmersionOracle,
) -> Result<SeparatorOutcome, DriverError> {
    if !is_two_edge_connected(g) {
        return Err(DriverError::Precondition("graph is not 2-edge-connected".into()));
    }
    if !cert.is_clique() || cert.odd_count() > 0 || !matches!(verify_certificate(g, cert), Ok(v) if v.is_pass()) {
        return Err(DriverError::Precondition("certificate is not a valid totally even clique immersion".into()));
    }
    let s = cert.branch_vertices.clone();
    let mult = profile.apex_multiplicity(t);
    let demand = profile.circuit_demand(t);
    let (aux, x) = apex_augment(g, &s, mult);
    let cover = match odd_x_circuits_budget(&aux, x, demand, DEFAULT_EP_BUDGET)? {
        EPOutcome::Packing { objects } => {
            let objects = short_packing(&aux, x, demand, SHORT_PACKING_BUDGET).unwrap_or(objects);
            debug!("separator: {} odd x-circuits, building a totally odd immersion", objects.len());
            let (w, _) = make_immersion_odd(g, &aux, x, cert, &objects, t, profile, oracle)?;
            return Ok(SeparatorOutcome::Witness(w));
        }
        EPOutcome::Cover { hitting_set } => hitting_set,
    };
    let residual = aux.without_edges(&cover);
    let classes = two_edge_connected_classes(&residual);
    let connected: BTreeSet<VertexId> = s.iter().copied().filter(|v| classes[v] == classes[&x]).collect();
    profile.audit(connected.len() >= profile.connected_share(t), "connected_share", || {
        format!("{} branch vertices stay connected to the apex", connected.len())
    });

    let cover_g: BTreeSet<EdgeId> = cover.iter().copied().filter(|e| g.contains_edge(*e)).collect();
    let rest = g.without_edges(&cover_g);
    let blocks = edge_blocks(&rest);
    let best = blocks
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.vertices.iter().filter(|v| connected.contains(v)).count(), i))
        .max_by_key(|&(n, i)| (n, std::cmp::Reverse(i)));
    let (inside, idx) = best.unwrap_or((0, 0));
    profile.check(inside >= profile.block_share(t).max(1), "block_share", || {
        format!("best edge block holds {inside} connected branch vertices")
    })?;
    profile.audit(2 * inside > s.len(), "branch majority", || format!("{inside} of {} branch vertices in the block", s.len()));
    let c: BTreeSet<VertexId> = blocks.blocks[idx].vertices.clone();

    let mut xs = BTreeSet::new();
    for (id, e) in g.edges() {
        let (a, b) = (c.contains(&e.u), c.contains(&e.v));
        if (a && b && cover_g.contains(&id)) || a != b {
            xs.insert(id);
        }
    }
    assert!(xs.len() <= 2 * cover_g.len(), "separator of size {} exceeds twice the cover {}", xs.len(), cover_g.len());
    profile.check(xs.len() <= profile.separator_bound(t), "separator_bound", || format!("separator has {} edges", xs.len()))?;
    let piece = g.without_edges(&xs).induced(&c);
    assert!(bipartition_of(&piece).is_bipartite(), "separated piece is not bipartite");
    let audit = SeparatorAudit {
        apex: x,
        apex_multiplicity: mult,
        demand,
        cover,
        connected,
        block_index: idx,
        branch_in_block: inside,
    };
    Ok(SeparatorOutcome::Separator(SeparatorOutput { x: xs, c, audit }))
}
