use std::collections::{BTreeMap, BTreeSet};

use log::debug;
use serde::{Deserialize, Serialize};

use super::disentangle::{disentangle, OddTrailCollection, Potential};
use super::even::check_input;
use super::{antimatching_or_clique, bounded_orientation, Abstract, AntimatchingOrClique, TransformError};
use crate::certificate::{clique_edges, verify_certificate, ImmersionCertificate, Parity, Verification};
use crate::graph::{min_degree_subgraph, EdgeId, Multigraph, VertexId};
use crate::profile::ConstantsProfile;
use crate::search::{find_immersion_extract, ImmersionOracle};
use crate::trail::{Step, Trail};

/// `g` plus a new vertex `x` joined to every vertex of `s` by `mult`
/// parallel edges. Edge ids of `g` are kept.
pub fn apex_augment(g: &Multigraph, s: &[VertexId], mult: usize) -> (Multigraph, VertexId) {
    let mut aux = g.clone();
    let x = aux.add_vertex();
    for &v in s {
        for _ in 0..mult {
            aux.add_edge(x, v).unwrap();
        }
    }
    (aux, x)
}

/// What happened along the way, for logging and audits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddReport {
    pub collection_size: usize,
    pub disentangle_potentials: Vec<Potential>,
    pub deleted_branch_trails: usize,
    pub removed_vertices: Vec<VertexId>,
    pub loop_rounds: usize,
    pub a_set: Vec<VertexId>,
    /// `clique` or `antimatching`.
    pub route: String,
}

/// A collection element: an odd host trail from `branch[u]` to `branch[v]`.
#[derive(Clone, Debug)]
struct Elem {
    u: usize,
    v: usize,
    trail: Trail,
}

fn concat_steps(a: Trail, b: Trail) -> Trail {
    let mut s: Vec<Step> = a.into_steps();
    s.extend(b.into_steps());
    Trail::from_steps(s)
}

fn check_circuits(aux: &Multigraph, x: VertexId, circuits: &[Trail]) -> Result<(), TransformError> {
    let mut seen = BTreeSet::new();
    for (i, c) in circuits.iter().enumerate() {
        let bad = |m: String| Err(TransformError::Precondition(format!("circuit {i}: {m}")));
        if let Err(e) = c.validate(aux) {
            return bad(e.to_string());
        }
        if !c.is_odd() || c.len() < 3 {
            return bad(format!("length {} is not an odd length of at least 3", c.len()));
        }
        let verts = c.vertices(aux).unwrap();
        if verts[0] != x || *verts.last().unwrap() != x || verts[1..verts.len() - 1].contains(&x) {
            return bad("not an x-circuit".into());
        }
        if let Some(e) = c.edge_ids().find(|e| !seen.insert(*e)) {
            return bad(format!("edge {e} shared with an earlier circuit"));
        }
    }
    Ok(())
}

/// A totally odd `K_t`-immersion from a totally even clique immersion with
/// branch set `S` and enough edge-disjoint odd `x`-circuits in the apex
/// graph `aux` (see [`apex_augment`]).
///
/// The circuits lose their apex edges and become odd trails between branch
/// vertices. After disentangling, branch trails hit by a trail are dropped,
/// and the rest of the work happens on the pattern graph: each odd trail is
/// closed into an odd loop through a common neighbour, a dense bipartite
/// piece between the most looped vertices and the rest yields an even `K_t`,
/// and an orientation of bounded out-degree tells each branch vertex how
/// many of its loops to prepend.
#[allow(clippy::too_many_arguments)]
pub fn make_immersion_odd(
    g: &Multigraph,
    aux: &Multigraph,
    x: VertexId,
    cert: &ImmersionCertificate,
    circuits: &[Trail],
    t: usize,
    profile: &ConstantsProfile,
    oracle: &mut dyn ImmersionOracle,
) -> Result<(ImmersionCertificate, OddReport), TransformError> {
    assert!(t >= 1);
    check_input(g, cert)?;
    if cert.parity != Parity::Even && cert.odd_count() > 0 {
        return Err(TransformError::InvalidCertificate("branch trails are not all even".into()));
    }
    if profile.is_paper() && t < 49 {
        return Err(TransformError::Precondition(format!("t = {t} is below 49")));
    }
    let demand = profile.circuit_demand(t);
    if circuits.len() < demand {
        return Err(TransformError::Precondition(format!("{} circuits given, {demand} needed", circuits.len())));
    }
    check_circuits(aux, x, circuits)?;
    let mut report = OddReport::default();
    if t == 1 {
        report.route = "clique".into();
        return Ok((ImmersionCertificate::clique(vec![cert.branch_vertices[0]], vec![], Parity::Odd), report));
    }

    let stripped: Vec<Trail> = circuits.iter().map(|c| c.subtrail(1..c.len() - 1)).collect();
    let coll = OddTrailCollection::new(stripped);
    report.collection_size = coll.len();
    let dis = disentangle(g, cert, &coll, profile.full_threshold(t))?;
    report.disentangle_potentials = dis.potentials.clone();
    let coll = dis.collection;

    let hit: BTreeSet<EdgeId> = coll.trails.iter().flat_map(|c| c.edge_ids().collect::<Vec<_>>()).collect();
    let r = cert.pattern_t;
    let index: BTreeMap<VertexId, usize> = cert.branch_vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut w = Abstract::new(cert.branch_vertices.clone());
    let mut deleted = 0;
    for (idx, &(i, j)) in clique_edges(r).iter().enumerate() {
        let tr = &cert.trails[idx];
        if tr.edge_ids().any(|e| hit.contains(&e)) {
            deleted += 1;
        } else {
            w.add(i, j, cert.clique_trail(i, j, g).map_err(|e| TransformError::Internal(e.to_string()))?);
        }
    }
    report.deleted_branch_trails = deleted;
    profile.check(deleted <= profile.deleted_trail_bound(t), "deleted_trail_bound", || {
        format!("{deleted} branch trails meet the collection")
    })?;
    let mut elems: Vec<Elem> = coll
        .trails
        .iter()
        .map(|c| {
            let (a, b) = c.ends(g).unwrap();
            Elem { u: index[&a], v: index[&b], trail: c.clone() }
        })
        .collect();

    let mut by_degree: Vec<VertexId> = w.graph.vertices().collect();
    by_degree.sort_by_key(|&v| (w.graph.degree(v), v));
    let k = profile.low_degree_deletions(t).min(by_degree.len());
    for &v in &by_degree[..k] {
        w.graph.incident(v).collect::<Vec<_>>().into_iter().for_each(|e| {
            w.remove(e);
        });
        w.graph.remove_vertex(v);
    }
    report.removed_vertices = by_degree[..k].iter().map(|&v| w.branch[v]).collect();
    elems.retain(|el| w.graph.contains_vertex(el.u) && w.graph.contains_vertex(el.v));
    let floor = profile.post_delete_min_degree(t);
    profile.audit(w.graph.min_degree().unwrap_or(0) >= floor, "post_delete_min_degree", || {
        format!("minimum degree {:?} after deletions", w.graph.min_degree())
    });

    for el in elems.iter_mut().filter(|el| el.u != el.v) {
        let (u, v) = (el.u, el.v);
        let common: Vec<VertexId> = w.graph.neighbors(u).intersection(&w.graph.neighbors(v)).copied().filter(|&c| c != u && c != v).collect();
        let Some(&c) = common.iter().max_by_key(|&&c| (w.graph.degree(c), std::cmp::Reverse(c))) else {
            profile.check(false, "common neighbourhood", || format!("pattern vertices {u} and {v} share no neighbour"))?;
            unreachable!()
        };
        let uw = w.graph.edges_between(u, c)[0];
        let wv = w.graph.edges_between(c, v)[0];
        let ne = w.split(uw, wv, c);
        let m = u.min(v);
        let back = w.oriented(ne, v);
        let trail = if m == u {
            concat_steps(el.trail.clone(), back)
        } else {
            concat_steps(back, el.trail.clone())
        };
        w.remove(ne);
        *el = Elem { u: m, v: m, trail };
        report.loop_rounds += 1;
        let floor = profile.loop_round_floor(t);
        profile.audit(w.graph.min_degree().unwrap_or(0) >= floor, "loop_round_floor", || {
            format!("minimum degree {:?} after round {}", w.graph.min_degree(), report.loop_rounds)
        });
    }
    let mut loops: BTreeMap<VertexId, Vec<Trail>> = BTreeMap::new();
    for el in elems {
        loops.entry(el.u).or_default().push(el.trail);
    }

    let mut ranked: Vec<VertexId> = w.graph.vertices().collect();
    ranked.sort_by_key(|v| (std::cmp::Reverse(loops.get(v).map_or(0, |l| l.len())), *v));
    ranked.truncate(profile.set_a_size(t));
    let a: BTreeSet<VertexId> = ranked.iter().copied().collect();
    report.a_set = a.iter().map(|&v| w.branch[v]).collect();
    let need = profile.min_loops_per_a(t);
    profile.audit(a.iter().all(|v| loops.get(v).map_or(0, |l| l.len()) >= need), "min_loops_per_a", || {
        "a vertex of A has too few loops".into()
    });

    let cross: Vec<EdgeId> = w
        .graph
        .edges()
        .filter(|(_, e)| a.contains(&e.u) != a.contains(&e.v))
        .map(|(id, _)| id)
        .collect();
    let h = w.graph.edge_subgraph(&cross);
    let Some(hp) = min_degree_subgraph(&h, profile.h_prime_min_degree(t)) else {
        profile.check(false, "h_prime_min_degree", || "bipartite piece has no dense part".into())?;
        unreachable!()
    };
    let a_prime: BTreeSet<VertexId> = hp.vertices().filter(|v| a.contains(v)).collect();
    let b_side: Vec<VertexId> = hp.vertices().filter(|v| !a.contains(v)).collect();
    debug!("make_immersion_odd: |A'| = {}, |B| = {}", a_prime.len(), b_side.len());

    let mut clique: Option<Vec<VertexId>> = None;
    for &v in &b_side {
        let nb: BTreeSet<VertexId> = hp.neighbors(v);
        let local = w.graph.induced(&nb);
        match antimatching_or_clique(&local, profile.antimatching_size(t), t)? {
            AntimatchingOrClique::Clique(k) if k.len() >= t => {
                clique = Some(k[..t].to_vec());
                break;
            }
            AntimatchingOrClique::Clique(_) => {}
            AntimatchingOrClique::Antimatching(pairs) => {
                for (p, q) in pairs {
                    let (Some(&e), Some(&f)) = (w.graph.edges_between(v, p).first(), w.graph.edges_between(v, q).first()) else {
                        continue;
                    };
                    w.split(e, f, v);
                }
            }
        }
    }

    let (branch, even_trails): (Vec<VertexId>, Vec<Trail>) = match clique {
        Some(k) => {
            report.route = "clique".into();
            let trails = clique_edges(t).iter().map(|&(i, j)| w.oriented(w.graph.edges_between(k[i], k[j])[0], k[i])).collect();
            (k, trails)
        }
        None => {
            report.route = "antimatching".into();
            let inner = w.graph.induced(&a_prime);
            let Some(dense) = min_degree_subgraph(&inner, profile.min_degree_immersion(t)) else {
                profile.check(false, "min_degree_immersion", || "split-off graph on A' has no dense part".into())?;
                unreachable!()
            };
            let found = find_immersion_extract(&dense, t, oracle)?
                .ok_or_else(|| TransformError::SearchFailed(format!("no K_{t} on A'")))?;
            let trails = (0..found.trails.len())
                .map(|idx| {
                    let (i, j) = clique_edges(t)[idx];
                    w.lift(&found.clique_trail(i, j, &dense).unwrap())
                })
                .collect();
            (found.branch_vertices.clone(), trails)
        }
    };

    let arcs = bounded_orientation(t);
    let mut spare: BTreeMap<VertexId, Vec<Trail>> = branch.iter().map(|b| (*b, loops.get(b).cloned().unwrap_or_default())).collect();
    let mut trails = even_trails;
    for &(i, j) in &arcs {
        let idx = crate::certificate::clique_edge_index(t, i, j);
        let Some(l) = spare.get_mut(&branch[i]).and_then(|s| if s.is_empty() { None } else { Some(s.remove(0)) }) else {
            profile.check(false, "min_loops_per_a", || format!("branch vertex {} ran out of odd loops", w.branch[branch[i]]))?;
            unreachable!()
        };
        let from_i = if i < j { trails[idx].clone() } else { trails[idx].reverse() };
        let lifted = concat_steps(l, from_i);
        trails[idx] = if i < j { lifted } else { lifted.reverse() };
    }
    let host_branch: Vec<VertexId> = branch.iter().map(|&b| w.branch[b]).collect();
    let out = ImmersionCertificate::clique(host_branch, trails, Parity::Odd);
    match verify_certificate(g, &out) {
        Ok(Verification::Pass) => Ok((out, report)),
        other => Err(TransformError::Internal(format!("totally odd output failed verification: {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::ExhaustiveOracle;

    /// `K_4` with subdivided edges and an odd triangle hanging at each branch
    /// vertex, plus the matching apex circuits.
    fn crafted(triangles: usize) -> (Multigraph, ImmersionCertificate, Multigraph, VertexId, Vec<Trail>) {
        let mut g = Multigraph::with_vertices(4);
        let mut trails = Vec::new();
        for (i, j) in clique_edges(4) {
            let m = g.add_vertex();
            let a = g.add_edge(i, m).unwrap();
            let b = g.add_edge(m, j).unwrap();
            trails.push(Trail::from_walk(&g, i, &[a, b]).unwrap());
        }
        let mut tri = Vec::new();
        for i in 0..triangles {
            let s = i % 4;
            let p = g.add_vertex();
            let q = g.add_vertex();
            let e1 = g.add_edge(s, p).unwrap();
            let e2 = g.add_edge(p, q).unwrap();
            let e3 = g.add_edge(q, s).unwrap();
            tri.push((s, [e1, e2, e3]));
        }
        let cert = ImmersionCertificate::clique(vec![0, 1, 2, 3], trails, Parity::Even);
        let mult = triangles.div_ceil(4) * 2;
        let (aux, x) = apex_augment(&g, &[0, 1, 2, 3], mult);
        let mut used: BTreeSet<EdgeId> = BTreeSet::new();
        let mut circuits = Vec::new();
        for (s, es) in tri {
            let xs: Vec<EdgeId> = aux.edges_between(x, s).into_iter().filter(|e| !used.contains(e)).take(2).collect();
            used.extend(&xs);
            let walk = [xs[0], es[0], es[1], es[2], xs[1]];
            circuits.push(Trail::from_walk(&aux, x, &walk).unwrap());
        }
        (g, cert, aux, x, circuits)
    }

    #[test]
    fn four_triangles_give_odd_pair() {
        let (g, cert, aux, x, circuits) = crafted(4);
        let (out, report) =
            make_immersion_odd(&g, &aux, x, &cert, &circuits, 2, &ConstantsProfile::desk(), &mut ExhaustiveOracle::default()).unwrap();
        assert!(verify_certificate(&g, &out).unwrap().is_pass());
        assert_eq!(out.parity, Parity::Odd);
        assert_eq!(out.trails[0].len(), 5);
        assert_eq!(report.loop_rounds, 0);
        assert_eq!(report.route, "clique");
    }

    #[test]
    fn too_few_circuits() {
        let (g, cert, aux, x, circuits) = crafted(3);
        let err = make_immersion_odd(&g, &aux, x, &cert, &circuits, 2, &ConstantsProfile::desk(), &mut ExhaustiveOracle::default());
        assert!(matches!(err, Err(TransformError::Precondition(_))));
    }

    #[test]
    fn non_loop_trails_become_loops() {
        // subdivided K5; two odd trails are direct edges, two are triangles
        let mut g = Multigraph::with_vertices(5);
        let mut trails = Vec::new();
        for (i, j) in clique_edges(5) {
            let m = g.add_vertex();
            let a = g.add_edge(i, m).unwrap();
            let b = g.add_edge(m, j).unwrap();
            trails.push(Trail::from_walk(&g, i, &[a, b]).unwrap());
        }
        let cert = ImmersionCertificate::clique((0..5).collect(), trails, Parity::Even);
        let mut walks: Vec<(VertexId, Vec<EdgeId>, VertexId)> = Vec::new();
        for (i, j) in [(0, 1), (2, 3)] {
            walks.push((i, vec![g.add_edge(i, j).unwrap()], j));
        }
        for s in [0, 1] {
            let p = g.add_vertex();
            let q = g.add_vertex();
            walks.push((s, vec![g.add_edge(s, p).unwrap(), g.add_edge(p, q).unwrap(), g.add_edge(q, s).unwrap()], s));
        }
        let (aux, x) = apex_augment(&g, &[0, 1, 2, 3, 4], 3);
        let mut used: BTreeSet<EdgeId> = BTreeSet::new();
        let mut pick = |v: VertexId| {
            let e = aux.edges_between(x, v).into_iter().find(|e| !used.contains(e)).unwrap();
            used.insert(e);
            e
        };
        let circuits: Vec<Trail> = walks
            .into_iter()
            .map(|(i, mid, j)| {
                let mut w = vec![pick(i)];
                w.extend(mid);
                w.push(pick(j));
                Trail::from_walk(&aux, x, &w).unwrap()
            })
            .collect();
        let (out, report) =
            make_immersion_odd(&g, &aux, x, &cert, &circuits, 2, &ConstantsProfile::desk(), &mut ExhaustiveOracle::default()).unwrap();
        assert_eq!(report.loop_rounds, 2);
        assert_eq!(report.a_set, vec![0, 1]);
        assert!(verify_certificate(&g, &out).unwrap().is_pass());
        assert!(out.trails[0].is_odd());
    }
}
