//! Turning a yes/no immersion oracle into one that returns branch trails.
//!
//! The working graph is shrunk by edge deletions and split-offs, each kept
//! only if the oracle still accepts. Every working edge remembers the trail of
//! the original graph it stands for, so once the working graph is exactly
//! `K_t` the certificate can be read off.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::{ImmersionOracle, SearchOutcome};
use crate::certificate::{clique_edges, verify_certificate, ImmersionCertificate, Parity};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::profile::ConstantsProfile;
use crate::split::split_off_in_place;
use crate::trail::{Step, Trail};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("oracle ran out of budget")]
    BudgetExhausted,
    #[error("inconsistent oracle: {0}")]
    InconsistentOracle(String),
}

fn binom2(t: usize) -> usize {
    t * t.saturating_sub(1) / 2
}

struct Work<'a> {
    original: &'a Multigraph,
    t: usize,
    g: Multigraph,
    /// Working edge -> trail in `original` from the edge's `u` to its `v`.
    stored: BTreeMap<EdgeId, Trail>,
    /// Last accepted certificate, in working-graph edge ids.
    known: Option<ImmersionCertificate>,
}

impl Work<'_> {
    fn ask(&self, h: &Multigraph, oracle: &mut dyn ImmersionOracle) -> Result<Option<ImmersionCertificate>, ExtractError> {
        match oracle.decide(h, self.t, Parity::Any) {
            SearchOutcome::Found(c) => Ok(Some(c)),
            SearchOutcome::NotFound => Ok(None),
            SearchOutcome::BudgetExhausted => Err(ExtractError::BudgetExhausted),
        }
    }

    fn drop_isolated(&mut self, keep: &BTreeSet<VertexId>) {
        let isolated: Vec<VertexId> =
            self.g.vertices().filter(|&v| self.g.degree(v) == 0 && !keep.contains(&v)).collect();
        for v in isolated {
            self.g.remove_vertex(v);
        }
    }

    /// Deletes `e` if an immersion survives. Known-unused edges need no
    /// oracle call.
    fn try_delete(&mut self, e: EdgeId, oracle: &mut dyn ImmersionOracle) -> Result<bool, ExtractError> {
        let unused = self.known.as_ref().is_some_and(|c| !c.used_edges().contains(&e));
        let mut h = self.g.clone();
        h.remove_edge(e);
        let cert = if unused {
            self.known.clone()
        } else {
            self.ask(&h, oracle)?
        };
        match cert {
            Some(c) => {
                self.g = h;
                self.stored.remove(&e);
                self.known = Some(c);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    /// Splits off `e`, `f` at `v` if an immersion survives. A loop produced
    /// by the split is dropped at once.
    fn try_split(&mut self, e: EdgeId, f: EdgeId, v: VertexId, oracle: &mut dyn ImmersionOracle) -> Result<bool, ExtractError> {
        let mut h = self.g.clone();
        let new = split_off_in_place(&mut h, e, f, v).expect("edges incident to v");
        let is_loop = h.edge(new).unwrap().is_loop();
        if is_loop {
            h.remove_edge(new);
        }
        let cert = match self.known.as_ref().and_then(|c| reroute(c, &self.g, e, f, v, new, is_loop)) {
            Some(c) => Some(c),
            None => self.ask(&h, oracle)?,
        };
        let Some(c) = cert else { return Ok(false) };
        if !is_loop {
            let x = self.g.edge(e).unwrap().other(v).unwrap();
            let first = self.stored[&e].oriented_from(x, self.original).unwrap().unwrap();
            let second = self.stored[&f].oriented_from(v, self.original).unwrap().unwrap();
            let joined = first.concat(&second, self.original).map_err(|err| {
                ExtractError::InconsistentOracle(format!("stored trails do not compose: {err}"))
            })?;
            self.stored.insert(new, joined);
        }
        self.stored.remove(&e);
        self.stored.remove(&f);
        self.g = h;
        self.known = Some(c);
        Ok(true)
    }
}

/// If some branch trail of `c` walks `e` and `f` consecutively through `v`,
/// the split keeps it valid: the two steps become one step on `new` (or
/// vanish when the split made a loop).
fn reroute(
    c: &ImmersionCertificate,
    g: &Multigraph,
    e: EdgeId,
    f: EdgeId,
    v: VertexId,
    new: EdgeId,
    is_loop: bool,
) -> Option<ImmersionCertificate> {
    for (i, t) in c.trails.iter().enumerate() {
        let steps = t.steps();
        for k in 0..steps.len().saturating_sub(1) {
            let (s1, s2) = (steps[k], steps[k + 1]);
            let pair = (s1.edge == e && s2.edge == f) || (s1.edge == f && s2.edge == e);
            if !pair || s1.head(g).ok()? != v {
                continue;
            }
            let mut out = steps[..k].to_vec();
            if !is_loop {
                // `new` runs from e's far end to f's far end
                out.push(Step::new(new, s1.edge == e));
            }
            out.extend_from_slice(&steps[k + 2..]);
            let mut c2 = c.clone();
            c2.trails[i] = Trail::from_steps(out);
            return Some(c2);
        }
    }
    None
}

/// Finds a `K_t`-immersion of `g` and returns its branch trails, using only
/// yes/no answers of `oracle`. `Ok(None)` means the oracle rejected `g`.
pub fn find_immersion_extract(
    g: &Multigraph,
    t: usize,
    oracle: &mut dyn ImmersionOracle,
) -> Result<Option<ImmersionCertificate>, ExtractError> {
    assert!(t >= 1);
    if t == 1 {
        return Ok(g.vertices().next().map(|v| ImmersionCertificate::clique(vec![v], vec![], Parity::Any)));
    }
    if t == 2 {
        return Ok(g.edges().find(|(_, e)| !e.is_loop()).map(|(id, e)| {
            ImmersionCertificate::clique(vec![e.u, e.v], vec![Trail::single(id, true)], Parity::Any)
        }));
    }
    let cap = binom2(t);
    let mut w = g.clone();
    let loops: Vec<EdgeId> = w.edges().filter(|(_, e)| e.is_loop()).map(|(id, _)| id).collect();
    for e in loops {
        w.remove_edge(e);
    }
    let mut classes: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
    for (id, e) in w.edges() {
        classes.entry(e.key()).or_default().push(id);
    }
    for ids in classes.values() {
        for &e in ids.iter().skip(cap) {
            w.remove_edge(e);
        }
    }
    let bound = cap * (7 * t + 7) * w.vertex_count();
    while w.edge_count() > bound {
        let e = w.max_edge_id().unwrap();
        w.remove_edge(e);
    }
    let stored = w.edges().map(|(id, _)| (id, Trail::single(id, true))).collect();
    let mut work = Work { original: g, t, g: w, stored, known: None };
    let first = work.ask(&work.g, oracle)?;
    let Some(first) = first else { return Ok(None) };
    work.known = Some(first);

    let low = cap * (8 * t + 7);
    let mut branch: BTreeSet<VertexId> = BTreeSet::new();
    work.drop_isolated(&branch);
    while branch.len() < work.g.vertex_count() {
        let next = work.g.vertices().find(|&v| !branch.contains(&v) && work.g.degree(v) <= low);
        let Some(v) = next else {
            let ids: Vec<EdgeId> = work.g.edge_ids().collect();
            let mut deleted = false;
            for e in ids {
                if work.try_delete(e, oracle)? {
                    deleted = true;
                    break;
                }
            }
            if !deleted {
                return Err(ExtractError::InconsistentOracle("no edge can be deleted from a large graph".into()));
            }
            continue;
        };
        loop {
            let inc: Vec<EdgeId> = work.g.incident(v).collect();
            let mut changed = false;
            for &e in &inc {
                if work.try_delete(e, oracle)? {
                    changed = true;
                    break;
                }
            }
            if !changed {
                'pairs: for (i, &e) in inc.iter().enumerate() {
                    for &f in &inc[i + 1..] {
                        if work.try_split(e, f, v, oracle)? {
                            changed = true;
                            break 'pairs;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let d = work.g.degree(v);
        if d == 0 {
            work.g.remove_vertex(v);
        } else if d != t - 1 {
            return Err(ExtractError::InconsistentOracle(format!("vertex {v} settled with degree {d}, expected {}", t - 1)));
        } else {
            branch.insert(v);
        }
        work.drop_isolated(&branch);
    }
    let w = &work.g;
    if w.vertex_count() != t || w.edge_count() != cap || !w.is_simple() {
        return Err(ExtractError::InconsistentOracle(format!(
            "final graph has {} vertices and {} edges, not a clique of order {t}",
            w.vertex_count(),
            w.edge_count()
        )));
    }
    let b: Vec<VertexId> = branch.into_iter().collect();
    let trails = clique_edges(t)
        .iter()
        .map(|&(i, j)| {
            let e = w.edges_between(b[i], b[j])[0];
            work.stored[&e].oriented_from(b[i], g).unwrap().unwrap()
        })
        .collect();
    let cert = ImmersionCertificate::clique(b, trails, Parity::Any);
    match verify_certificate(g, &cert) {
        Ok(v) if v.is_pass() => Ok(Some(cert)),
        other => Err(ExtractError::InconsistentOracle(format!("assembled certificate does not verify: {other:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinDegreeError {
    #[error("graph is not simple")]
    NotSimple,
    #[error("minimum degree {min_degree} is below the threshold {threshold}")]
    BelowThreshold { min_degree: usize, threshold: usize },
    #[error("search budget exhausted although an immersion is guaranteed")]
    BudgetExhausted,
    #[error("no immersion found although the degree threshold holds (the profile threshold is too weak)")]
    GuaranteeFailed,
    #[error(transparent)]
    Extract(ExtractError),
}

/// `K_t`-immersion in a simple graph whose minimum degree meets the profile
/// threshold.
pub fn min_degree_immersion(
    g: &Multigraph,
    t: usize,
    profile: &ConstantsProfile,
    oracle: &mut dyn ImmersionOracle,
) -> Result<ImmersionCertificate, MinDegreeError> {
    if !g.is_simple() {
        return Err(MinDegreeError::NotSimple);
    }
    let threshold = profile.min_degree_immersion(t);
    let min_degree = g.min_degree().unwrap_or(0);
    if min_degree < threshold {
        return Err(MinDegreeError::BelowThreshold { min_degree, threshold });
    }
    match find_immersion_extract(g, t, oracle) {
        Ok(Some(c)) => Ok(c),
        Ok(None) => Err(MinDegreeError::GuaranteeFailed),
        Err(ExtractError::BudgetExhausted) => Err(MinDegreeError::BudgetExhausted),
        Err(e) => Err(MinDegreeError::Extract(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::super::ExhaustiveOracle;
    use super::*;
    use crate::graph::one_subdivision;

    #[test]
    fn complete_graphs_give_identity() {
        for t in 1..=6 {
            let g = Multigraph::complete(t);
            let c = find_immersion_extract(&g, t, &mut ExhaustiveOracle::default()).unwrap().unwrap();
            assert!(c.trails.iter().all(|tr| tr.len() == 1));
            assert!(verify_certificate(&g, &c).unwrap().is_pass());
        }
    }

    #[test]
    fn subdivided_k5() {
        let s = one_subdivision(&Multigraph::complete(5));
        let c = find_immersion_extract(&s.graph, 5, &mut ExhaustiveOracle::default()).unwrap().unwrap();
        assert!(c.trails.iter().all(|tr| tr.len() == 2));
        assert!(verify_certificate(&s.graph, &c).unwrap().is_pass());
    }

    #[test]
    fn cycle_has_no_k4() {
        assert_eq!(find_immersion_extract(&Multigraph::cycle(5), 4, &mut ExhaustiveOracle::default()), Ok(None));
    }

    #[test]
    fn petersen_k4_with_loops_and_parallels() {
        let mut g = Multigraph::petersen();
        g.add_edge(0, 0).unwrap();
        g.add_edge(0, 1).unwrap();
        let c = find_immersion_extract(&g, 4, &mut ExhaustiveOracle::default()).unwrap().unwrap();
        assert!(verify_certificate(&g, &c).unwrap().is_pass());
    }

    #[test]
    fn min_degree_wrapper() {
        let k4 = Multigraph::complete(4);
        let d2 = ConstantsProfile::desk().with_override("min_degree_immersion", 2);
        assert!(min_degree_immersion(&k4, 2, &d2, &mut ExhaustiveOracle::default()).is_ok());
        let d3 = ConstantsProfile::desk().with_override("min_degree_immersion", 3);
        assert!(min_degree_immersion(&k4, 3, &d3, &mut ExhaustiveOracle::default()).is_ok());
        assert_eq!(
            min_degree_immersion(&Multigraph::cycle(5), 3, &d3, &mut ExhaustiveOracle::default()),
            Err(MinDegreeError::BelowThreshold { min_degree: 2, threshold: 3 })
        );
        let multi = Multigraph::from_edges(2, &[(0, 1), (0, 1)]);
        assert_eq!(min_degree_immersion(&multi, 2, &d2, &mut ExhaustiveOracle::default()), Err(MinDegreeError::NotSimple));
    }
}
