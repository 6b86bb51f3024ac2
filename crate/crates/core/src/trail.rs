//! Trails: sequences of distinct, consistently oriented edges.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::TrailError;
use crate::graph::{EdgeId, Multigraph, VertexId};

/// One traversed edge. `forward` means the edge is walked from its stored
/// `u` endpoint to its stored `v` endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub edge: EdgeId,
    pub forward: bool,
}

impl Step {
    pub fn new(edge: EdgeId, forward: bool) -> Self {
        Self { edge, forward }
    }

    pub fn reversed(self) -> Self {
        Self { edge: self.edge, forward: !self.forward }
    }

    pub fn tail(&self, g: &Multigraph) -> Result<VertexId, TrailError> {
        let e = g.edge(self.edge).ok_or(TrailError::UnknownEdge(self.edge))?;
        Ok(if self.forward { e.u } else { e.v })
    }

    pub fn head(&self, g: &Multigraph) -> Result<VertexId, TrailError> {
        let e = g.edge(self.edge).ok_or(TrailError::UnknownEdge(self.edge))?;
        Ok(if self.forward { e.v } else { e.u })
    }
}

/// An unordered pair of consecutive trail edges and the vertex between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition {
    pub edges: (EdgeId, EdgeId),
    pub vertex: VertexId,
}

impl Transition {
    pub fn new(a: EdgeId, b: EdgeId, vertex: VertexId) -> Self {
        Self { edges: (a.min(b), a.max(b)), vertex }
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.0 == e || self.edges.1 == e
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Trail {
    steps: Vec<Step>,
}

impl Trail {
    /// Wraps steps without checking them against a graph.
    pub fn from_steps(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    /// Builds a trail that starts at `start` and follows `edges`, inferring
    /// each orientation. Fails if the edges do not chain.
    pub fn from_walk(g: &Multigraph, start: VertexId, edges: &[EdgeId]) -> Result<Self, TrailError> {
        let mut at = start;
        let mut steps = Vec::with_capacity(edges.len());
        for (i, &id) in edges.iter().enumerate() {
            let e = g.edge(id).ok_or(TrailError::UnknownEdge(id))?;
            let forward = if e.u == at {
                true
            } else if e.v == at {
                false
            } else if i == 0 {
                return Err(TrailError::NotIncident(id, at));
            } else {
                return Err(TrailError::Discontinuous { position: i });
            };
            steps.push(Step { edge: id, forward });
            at = if forward { e.v } else { e.u };
        }
        let t = Self { steps };
        t.validate(g)?;
        Ok(t)
    }

    pub fn single(edge: EdgeId, forward: bool) -> Self {
        Self { steps: vec![Step { edge, forward }] }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.steps.len() % 2 == 1
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.steps.iter().map(|s| s.edge)
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.edge_ids().collect()
    }

    pub fn first(&self) -> Option<Step> {
        self.steps.first().copied()
    }

    pub fn last(&self) -> Option<Step> {
        self.steps.last().copied()
    }

    /// Tail of the first step and head of the last.
    pub fn ends(&self, g: &Multigraph) -> Result<(VertexId, VertexId), TrailError> {
        let first = self.steps.first().ok_or(TrailError::Empty)?;
        let last = self.steps.last().unwrap();
        Ok((first.tail(g)?, last.head(g)?))
    }

    pub fn is_circuit(&self, g: &Multigraph) -> Result<bool, TrailError> {
        let (a, b) = self.ends(g)?;
        Ok(a == b)
    }

    /// Checks that every edge exists, no edge repeats, and heads meet tails.
    pub fn validate(&self, g: &Multigraph) -> Result<(), TrailError> {
        let mut seen = BTreeSet::new();
        let mut prev_head = None;
        for (i, s) in self.steps.iter().enumerate() {
            let tail = s.tail(g)?;
            if !seen.insert(s.edge) {
                return Err(TrailError::RepeatedEdge(s.edge));
            }
            if let Some(h) = prev_head {
                if h != tail {
                    return Err(TrailError::Discontinuous { position: i });
                }
            }
            prev_head = Some(s.head(g)?);
        }
        Ok(())
    }

    pub fn reverse(&self) -> Self {
        Self { steps: self.steps.iter().rev().map(|s| s.reversed()).collect() }
    }

    /// Vertices along the trail, `len + 1` of them.
    pub fn vertices(&self, g: &Multigraph) -> Result<Vec<VertexId>, TrailError> {
        let Some(first) = self.steps.first() else {
            return Ok(Vec::new());
        };
        let mut out = vec![first.tail(g)?];
        for s in &self.steps {
            out.push(s.head(g)?);
        }
        Ok(out)
    }

    pub fn transitions(&self, g: &Multigraph) -> Result<BTreeSet<Transition>, TrailError> {
        let mut out = BTreeSet::new();
        for w in self.steps.windows(2) {
            out.insert(Transition::new(w[0].edge, w[1].edge, w[0].head(g)?));
        }
        Ok(out)
    }

    /// `self` followed by `next`. Requires matching ends and disjoint edges.
    pub fn concat(&self, next: &Trail, g: &Multigraph) -> Result<Trail, TrailError> {
        if self.is_empty() {
            return Ok(next.clone());
        }
        if next.is_empty() {
            return Ok(self.clone());
        }
        let head = self.ends(g)?.1;
        let tail = next.ends(g)?.0;
        if head != tail {
            return Err(TrailError::EndMismatch { head, tail });
        }
        let mine = self.edge_set();
        if let Some(e) = next.edge_ids().find(|e| mine.contains(e)) {
            return Err(TrailError::RepeatedEdge(e));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&next.steps);
        Ok(Trail { steps })
    }

    /// Steps `range.start..range.end` as their own trail.
    pub fn subtrail(&self, range: std::ops::Range<usize>) -> Trail {
        Trail { steps: self.steps[range].to_vec() }
    }

    /// Oriented so that it starts at `v`; `None` if `v` is not an end.
    pub fn oriented_from(&self, v: VertexId, g: &Multigraph) -> Result<Option<Trail>, TrailError> {
        let (a, b) = self.ends(g)?;
        Ok(if a == v {
            Some(self.clone())
        } else if b == v {
            Some(self.reverse())
        } else {
            None
        })
    }

    pub fn position_of(&self, e: EdgeId) -> Option<usize> {
        self.steps.iter().position(|s| s.edge == e)
    }
}

/// Transitions of a single trail as a set. Free-function form of
/// [`Trail::transitions`].
pub fn transitions_of(t: &Trail, g: &Multigraph) -> Result<BTreeSet<Transition>, TrailError> {
    t.transitions(g)
}
