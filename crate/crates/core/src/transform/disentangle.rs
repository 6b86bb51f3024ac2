use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::even::check_input;
use super::TransformError;
use crate::certificate::ImmersionCertificate;
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::trail::{Transition, Trail};

/// Odd trails with ends among the branch vertices, pairwise edge-disjoint.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddTrailCollection {
    pub trails: Vec<Trail>,
}

impl OddTrailCollection {
    pub fn new(trails: Vec<Trail>) -> Self {
        Self { trails }
    }

    pub fn len(&self) -> usize {
        self.trails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trails.is_empty()
    }

    /// How often each vertex is an end; a closed trail counts twice.
    pub fn end_counts(&self, g: &Multigraph) -> BTreeMap<VertexId, usize> {
        let mut out = BTreeMap::new();
        for t in &self.trails {
            if let Ok((a, b)) = t.ends(g) {
                *out.entry(a).or_insert(0) += 1;
                *out.entry(b).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn validate(&self, g: &Multigraph) -> Result<(), String> {
        let mut seen = BTreeSet::new();
        for (i, t) in self.trails.iter().enumerate() {
            t.validate(g).map_err(|e| format!("trail {i}: {e}"))?;
            if t.is_empty() || !t.is_odd() {
                return Err(format!("trail {i} has even length {}", t.len()));
            }
            for e in t.edge_ids() {
                if !seen.insert(e) {
                    return Err(format!("edge {e} is used twice"));
                }
            }
        }
        Ok(())
    }

    fn owner_of(&self) -> BTreeMap<EdgeId, usize> {
        let mut out = BTreeMap::new();
        for (i, t) in self.trails.iter().enumerate() {
            for e in t.edge_ids() {
                out.insert(e, i);
            }
        }
        out
    }

    fn end_edges(&self) -> BTreeSet<EdgeId> {
        self.trails.iter().flat_map(|t| [t.first(), t.last()]).flatten().map(|s| s.edge).collect()
    }
}

/// (transitions of collection trails that are not branch-trail
/// transitions, branch trails whose first and last edges both fail to be a
/// first or last edge of a collection trail). Compared lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Potential(pub usize, pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disentangled {
    pub collection: OddTrailCollection,
    /// Potential before the first round and after each round.
    pub potentials: Vec<Potential>,
}

impl Disentangled {
    pub fn rounds(&self) -> usize {
        self.potentials.len() - 1
    }
}

fn touches_end(t: &Trail, end_edges: &BTreeSet<EdgeId>) -> bool {
    [t.first(), t.last()].into_iter().flatten().any(|s| end_edges.contains(&s.edge))
}

fn cert_transitions(g: &Multigraph, cert: &ImmersionCertificate) -> BTreeSet<Transition> {
    cert.trails.iter().flat_map(|t| t.transitions(g).unwrap()).collect()
}

fn potential(g: &Multigraph, cert: &ImmersionCertificate, own: &BTreeSet<Transition>, c: &OddTrailCollection) -> Potential {
    let outside = c.trails.iter().map(|t| t.transitions(g).unwrap().difference(own).count()).sum();
    let ends = c.end_edges();
    let failing = cert.trails.iter().filter(|t| !t.is_empty() && !touches_end(t, &ends)).count();
    Potential(outside, failing)
}

/// Whether a branch trail is edge-disjoint from the collection, shares its
/// first or last edge with a first or last collection edge, or has both
/// ends full.
pub fn trichotomy_holds(g: &Multigraph, branch_trail: &Trail, c: &OddTrailCollection, full_threshold: usize) -> bool {
    if branch_trail.is_empty() {
        return true;
    }
    let owner = c.owner_of();
    if branch_trail.edge_ids().all(|e| !owner.contains_key(&e)) {
        return true;
    }
    if touches_end(branch_trail, &c.end_edges()) {
        return true;
    }
    let counts = c.end_counts(g);
    let (a, b) = branch_trail.ends(g).unwrap();
    let full = |v| counts.get(&v).copied().unwrap_or(0) >= full_threshold;
    full(a) && full(b)
}

/// Candidate replacements for the collection trail at `ci`, in the order
/// the rewrite rules are tried.
fn candidates(g: &Multigraph, t: &Trail, v: VertexId, c: &OddTrailCollection, ci: usize) -> Vec<Trail> {
    let tv = t.oriented_from(v, g).unwrap().unwrap();
    let owner = c.owner_of();
    let pos = tv.steps().iter().position(|s| owner.get(&s.edge) == Some(&ci)).unwrap();
    let e = tv.steps()[pos];
    let mut out = Vec::new();
    for cand in [c.trails[ci].clone(), c.trails[ci].reverse()] {
        let p = cand.position_of(e.edge).unwrap();
        let step = cand.steps()[p];
        let c1 = cand.subtrail(0..p);
        let c2 = cand.subtrail(p..cand.len());
        if pos == 0 {
            // v must be the tail of e in the candidate orientation
            if step.tail(g).unwrap() != v {
                continue;
            }
            for part in [c1, c2] {
                if part.is_odd() {
                    out.push(part);
                }
            }
        } else {
            if step.forward != e.forward || step.tail(g).unwrap() != e.tail(g).unwrap() {
                continue;
            }
            let t1 = tv.subtrail(0..pos);
            let mut a = t1.clone().into_steps();
            a.extend(c2.into_steps());
            let mut b = c1.into_steps();
            b.extend(t1.reverse().into_steps());
            for steps in [a, b] {
                if steps.len() % 2 == 1 {
                    out.push(Trail::from_steps(steps));
                }
            }
        }
    }
    out
}

/// Rewrites the collection until every branch trail satisfies the
/// trichotomy of [`trichotomy_holds`]. Each round fixes the first failing
/// branch trail (by index) and must strictly lower the [`Potential`].
pub fn disentangle(
    g: &Multigraph,
    cert: &ImmersionCertificate,
    c: &OddTrailCollection,
    full_threshold: usize,
) -> Result<Disentangled, TransformError> {
    check_input(g, cert)?;
    c.validate(g).map_err(TransformError::Precondition)?;
    let branch: BTreeSet<VertexId> = cert.branch_vertices.iter().copied().collect();
    for t in &c.trails {
        let (a, b) = t.ends(g).unwrap();
        if !branch.contains(&a) || !branch.contains(&b) {
            return Err(TransformError::Precondition(format!("trail ends {a}, {b} are not both branch vertices")));
        }
    }
    let own = cert_transitions(g, cert);
    let mut cur = c.clone();
    let mut pots = vec![potential(g, cert, &own, &cur)];
    while let Some(t) = cert.trails.iter().find(|t| !trichotomy_holds(g, t, &cur, full_threshold)) {
        let counts = cur.end_counts(g);
        let (a, b) = t.ends(g).unwrap();
        let v = if counts.get(&a).copied().unwrap_or(0) < full_threshold { a } else { b };
        let tv = t.oriented_from(v, g).unwrap().unwrap();
        let owner = cur.owner_of();
        let ci = tv.edge_ids().find_map(|e| owner.get(&e).copied()).unwrap();
        let before = *pots.last().unwrap();
        let mut applied = false;
        for cand in candidates(g, t, v, &cur, ci) {
            if cand.validate(g).is_err() {
                continue;
            }
            let mut next = cur.clone();
            next.trails[ci] = cand;
            let p = potential(g, cert, &own, &next);
            if p < before {
                cur = next;
                pots.push(p);
                applied = true;
                break;
            }
        }
        if !applied {
            return Err(TransformError::Internal(format!("no rewrite lowers potential {before:?}")));
        }
    }
    debug_assert!(cur.validate(g).is_ok());
    Ok(Disentangled { collection: cur, potentials: pots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::Parity;

    fn path_instance() -> (Multigraph, ImmersionCertificate, OddTrailCollection) {
        // T = 0-1-2, C = closed trail 2-3-0-1-4-2 through T's first edge
        let g = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 2)]);
        let t = Trail::from_walk(&g, 0, &[0, 1]).unwrap();
        let cert = ImmersionCertificate::clique(vec![0, 2], vec![t], Parity::Even);
        let c = Trail::from_walk(&g, 2, &[2, 3, 0, 4, 5]).unwrap();
        (g, cert, OddTrailCollection::new(vec![c]))
    }

    #[test]
    fn one_rewrite_fixes_path() {
        let (g, cert, c) = path_instance();
        assert!(!trichotomy_holds(&g, &cert.trails[0], &c, 2));
        let out = disentangle(&g, &cert, &c, 2).unwrap();
        assert_eq!(out.rounds(), 1);
        let new = &out.collection.trails[0];
        assert!(new.is_odd());
        assert_eq!(new.first().unwrap().edge, 0);
        assert!(trichotomy_holds(&g, &cert.trails[0], &out.collection, 2));
        assert!(out.potentials.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn disjoint_unchanged() {
        let (mut g, cert, _) = path_instance();
        let e = g.add_edge(0, 2).unwrap();
        let c = OddTrailCollection::new(vec![Trail::from_walk(&g, 0, &[e]).unwrap()]);
        let out = disentangle(&g, &cert, &c, 2).unwrap();
        assert_eq!(out.collection, c);
        assert_eq!(out.rounds(), 0);
        let empty = disentangle(&g, &cert, &OddTrailCollection::default(), 2).unwrap();
        assert!(empty.collection.is_empty());
    }
}
