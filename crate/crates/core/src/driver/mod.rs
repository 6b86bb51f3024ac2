//! Growing a bipartite edge set until what is left has no large clique
//! immersion, or a totally odd clique immersion turns up.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::ImmersionCertificate;
use crate::ep::EpError;
use crate::graph::{bipartition_of, EdgeId, Multigraph, VertexId};
use crate::profile::BoundViolation;
use crate::search::ExtractError;
use crate::transform::TransformError;

mod color;
mod grow;
mod separator;

pub use color::{color, Coloring};
pub use grow::{decompose, extend_bipartite, grow_bipartite, maximal_bipartite, DecomposeOptions, GrowOutcome, GrowRoute};
pub use separator::{separate_bipartite_piece, SeparatorAudit, SeparatorOutcome, SeparatorOutput};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DriverError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Ep(#[from] EpError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error(transparent)]
    Bound(#[from] BoundViolation),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("expected a split result")]
    NotSplit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum DecompositionResult {
    TotallyOddWitness {
        certificate: ImmersionCertificate,
    },
    Split {
        /// Edges of the bipartite part.
        f: BTreeSet<EdgeId>,
        /// `g \ f` has no clique immersion of this order.
        residual_order: usize,
        iterations: usize,
        /// Size of `f` after each iteration, starting from the initial set.
        sizes: Vec<usize>,
        /// Set when the order is too small for the growth argument and `f`
        /// is just a maximal bipartite edge set.
        #[serde(default)]
        degenerate: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coloring: Option<BTreeMap<VertexId, usize>>,
    },
}

impl DecompositionResult {
    pub fn is_split(&self) -> bool {
        matches!(self, DecompositionResult::Split { .. })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }
}

/// Whether the edges `f` of `g` form a bipartite subgraph.
pub fn is_bipartite_edge_set(g: &Multigraph, f: &BTreeSet<EdgeId>) -> bool {
    f.iter().all(|e| g.contains_edge(*e)) && bipartition_of(&g.edge_subgraph(f)).is_bipartite()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCheck {
    pub bipartite: bool,
    /// `None` when the residual order is out of reach for exhaustive search.
    pub residual_free: Option<bool>,
    pub witness_valid: Option<bool>,
}

impl SplitCheck {
    pub fn ok(&self) -> bool {
        self.bipartite && self.residual_free != Some(false) && self.witness_valid != Some(false)
    }
}

/// Largest residual order that is re-checked by exhaustive search.
pub const CHECKABLE_ORDER: usize = 8;

/// Re-checks a decomposition result against `g`: the bipartite part, the
/// absence of the residual clique immersion when the order is small, and a
/// witness certificate via the verifier.
pub fn verify_split(g: &Multigraph, result: &DecompositionResult, budget: u64) -> SplitCheck {
    use crate::certificate::verify_certificate;
    use crate::search::{test_immersion, OracleQuery, SearchOutcome};
    match result {
        DecompositionResult::TotallyOddWitness { certificate } => {
            let ok = matches!(verify_certificate(g, certificate), Ok(v) if v.is_pass())
                && certificate.parity == crate::certificate::Parity::Odd;
            SplitCheck { bipartite: true, residual_free: None, witness_valid: Some(ok) }
        }
        DecompositionResult::Split { f, residual_order, degenerate, .. } => {
            let bipartite = is_bipartite_edge_set(g, f);
            let rest = g.without_edges(f);
            let residual_free = if *degenerate {
                None
            } else if *residual_order > rest.vertex_count() {
                Some(true)
            } else if *residual_order <= CHECKABLE_ORDER {
                let q = OracleQuery::new(&rest, *residual_order, crate::certificate::Parity::Any).with_budget(budget);
                match test_immersion(&q) {
                    SearchOutcome::Found(_) => Some(false),
                    SearchOutcome::NotFound => Some(true),
                    SearchOutcome::BudgetExhausted => None,
                }
            } else {
                None
            };
            SplitCheck { bipartite, residual_free, witness_valid: None }
        }
    }
}
