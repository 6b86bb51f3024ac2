//! Parity changes for clique immersions: extracting a totally even clique
//! from a large one, and turning a totally even clique plus many odd
//! circuits into a totally odd one.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::certificate::Violation;
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::profile::BoundViolation;
use crate::search::ExtractError;
use crate::trail::{Step, Trail};

mod antimatching;
mod disentangle;
mod even;
mod odd;
mod orient;

pub use antimatching::{antimatching_or_clique, AntimatchingOrClique};
pub use disentangle::{disentangle, trichotomy_holds, Disentangled, OddTrailCollection, Potential};
pub use even::make_totally_even;
pub use odd::{apex_augment, make_immersion_odd, OddReport};
pub use orient::{bounded_orientation, max_in_out};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("input certificate is invalid: {0}")]
    InvalidCertificate(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Bound(#[from] BoundViolation),
    #[error("inner immersion search failed: {0}")]
    SearchFailed(String),
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<Violation> for TransformError {
    fn from(v: Violation) -> Self {
        TransformError::InvalidCertificate(format!("{v:?}"))
    }
}

/// A small graph whose edges stand for trails of a host graph. Vertex `i`
/// of the abstract graph is host vertex `branch[i]`; edge `e` from `u` to
/// `v` carries a host trail from `branch[u]` to `branch[v]`.
#[derive(Clone, Debug)]
pub(crate) struct Abstract {
    pub graph: Multigraph,
    pub branch: Vec<VertexId>,
    pub prov: BTreeMap<EdgeId, Trail>,
}

impl Abstract {
    pub fn new(branch: Vec<VertexId>) -> Self {
        Self { graph: Multigraph::with_vertices(branch.len()), branch, prov: BTreeMap::new() }
    }

    pub fn add(&mut self, u: VertexId, v: VertexId, trail: Trail) -> EdgeId {
        let e = self.graph.add_edge(u, v).unwrap();
        self.prov.insert(e, trail);
        e
    }

    pub fn remove(&mut self, e: EdgeId) -> Option<Trail> {
        self.graph.remove_edge(e)?;
        self.prov.remove(&e)
    }

    /// Host trail of edge `e` traversed starting at abstract vertex `from`.
    pub fn oriented(&self, e: EdgeId, from: VertexId) -> Trail {
        let edge = self.graph.edge(e).unwrap();
        if edge.u == from {
            self.prov[&e].clone()
        } else {
            self.prov[&e].reverse()
        }
    }

    /// Replaces `e` and `f` at `v` by one edge between their other ends.
    pub fn split(&mut self, e: EdgeId, f: EdgeId, v: VertexId) -> EdgeId {
        let a = self.graph.edge(e).unwrap().other(v).unwrap();
        let b = self.graph.edge(f).unwrap().other(v).unwrap();
        let mut steps: Vec<Step> = self.oriented(e, a).into_steps();
        steps.extend(self.oriented(f, v).into_steps());
        self.remove(e);
        self.remove(f);
        self.add(a, b, Trail::from_steps(steps))
    }

    /// Host trail of an abstract trail.
    pub fn lift(&self, t: &Trail) -> Trail {
        let mut steps = Vec::new();
        for s in t.steps() {
            let piece = if s.forward { self.prov[&s.edge].clone() } else { self.prov[&s.edge].reverse() };
            steps.extend(piece.into_steps());
        }
        Trail::from_steps(steps)
    }
}
