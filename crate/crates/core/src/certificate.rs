//! Immersion certificates and their verifier.
//!
//! A certificate maps the vertices of a pattern graph injectively to branch
//! vertices and each pattern edge to a branch trail. The verifier checks
//! every defining clause directly against the host graph and reports the
//! first one that fails.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::error::TrailError;
use crate::trail::Trail;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Any,
    Odd,
    Even,
}

impl Parity {
    pub fn admits(self, length: usize) -> bool {
        match self {
            Parity::Any => true,
            Parity::Odd => length % 2 == 1,
            Parity::Even => length % 2 == 0,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Any => "any",
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

impl std::str::FromStr for Parity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "any" => Ok(Parity::Any),
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            _ => Err(format!("unknown parity `{s}` (expected any, odd or even)")),
        }
    }
}

/// Edges of `K_t` in the canonical order `(0,1), (0,2), .., (t-2,t-1)`.
pub fn clique_edges(t: usize) -> Vec<(usize, usize)> {
    (0..t).flat_map(|i| (i + 1..t).map(move |j| (i, j))).collect()
}

/// Index of pattern edge `{i, j}` in [`clique_edges`] order.
pub fn clique_edge_index(t: usize, i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    i * t - i * (i + 1) / 2 + (j - i - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmersionCertificate {
    /// Number of pattern vertices.
    pub pattern_t: usize,
    /// Explicit pattern edges; absent means the clique on `pattern_t` vertices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern_edges: Option<Vec<(usize, usize)>>,
    pub branch_vertices: Vec<VertexId>,
    pub trails: Vec<Trail>,
    pub parity: Parity,
}

impl ImmersionCertificate {
    pub fn clique(branch_vertices: Vec<VertexId>, trails: Vec<Trail>, parity: Parity) -> Self {
        Self { pattern_t: branch_vertices.len(), pattern_edges: None, branch_vertices, trails, parity }
    }

    pub fn pattern(&self) -> Vec<(usize, usize)> {
        self.pattern_edges.clone().unwrap_or_else(|| clique_edges(self.pattern_t))
    }

    pub fn is_clique(&self) -> bool {
        self.pattern_edges.is_none()
    }

    /// Trail for clique edge `{i, j}`, oriented from branch `i` to branch `j`.
    pub fn clique_trail(&self, i: usize, j: usize, g: &Multigraph) -> Result<Trail, TrailError> {
        let t = &self.trails[clique_edge_index(self.pattern_t, i, j)];
        Ok(t.oriented_from(self.branch_vertices[i], g)?.unwrap_or_else(|| t.clone()))
    }

    /// Every edge used by some branch trail.
    pub fn used_edges(&self) -> BTreeSet<EdgeId> {
        self.trails.iter().flat_map(|t| t.edge_ids().collect::<Vec<_>>()).collect()
    }

    /// How many trails have odd length.
    pub fn odd_count(&self) -> usize {
        self.trails.iter().filter(|t| t.is_odd()).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// The certificate references something the host graph does not have.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("branch vertex {0} is not in the host graph")]
    UnknownVertex(VertexId),
    #[error("trail {trail} uses edge {edge}, which is not in the host graph")]
    UnknownEdge { trail: usize, edge: EdgeId },
    #[error("pattern edge {index} = ({u}, {v}) is not a valid edge on {t} pattern vertices")]
    BadPatternEdge { index: usize, u: usize, v: usize, t: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    WrongBranchCount { expected: usize, found: usize },
    NonInjectiveBranchMap { vertex: VertexId },
    WrongTrailCount { expected: usize, found: usize },
    EmptyTrail { pattern_edge: usize },
    EdgeReusedWithinTrail { pattern_edge: usize, edge: EdgeId },
    BrokenTrail { pattern_edge: usize, position: usize },
    BadEnds { pattern_edge: usize, expected: (VertexId, VertexId), found: (VertexId, VertexId) },
    EdgeReusedAcrossTrails { edge: EdgeId, first: usize, second: usize },
    ParityMismatch { pattern_edge: usize, length: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongBranchCount { expected, found } => {
                write!(f, "expected {expected} branch vertices, found {found}")
            }
            Violation::NonInjectiveBranchMap { vertex } => write!(f, "vertex {vertex} is used as two branch vertices"),
            Violation::WrongTrailCount { expected, found } => write!(f, "expected {expected} trails, found {found}"),
            Violation::EmptyTrail { pattern_edge } => write!(f, "trail {pattern_edge} is empty"),
            Violation::EdgeReusedWithinTrail { pattern_edge, edge } => {
                write!(f, "trail {pattern_edge} uses edge {edge} twice")
            }
            Violation::BrokenTrail { pattern_edge, position } => {
                write!(f, "trail {pattern_edge} is discontinuous at step {position}")
            }
            Violation::BadEnds { pattern_edge, expected, found } => {
                write!(f, "trail {pattern_edge} joins {found:?}, expected {expected:?}")
            }
            Violation::EdgeReusedAcrossTrails { edge, first, second } => {
                write!(f, "edge {edge} is shared by trails {first} and {second}")
            }
            Violation::ParityMismatch { pattern_edge, length } => {
                write!(f, "trail {pattern_edge} has length {length}, violating the parity tag")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Pass,
    Fail(Violation),
}

impl Verification {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verification::Pass)
    }
}

/// Checks `cert` against `g` without modifying either.
pub fn verify_certificate(g: &Multigraph, cert: &ImmersionCertificate) -> Result<Verification, CertificateError> {
    let pattern = cert.pattern();
    for (index, &(u, v)) in pattern.iter().enumerate() {
        if u >= cert.pattern_t || v >= cert.pattern_t || u == v {
            return Err(CertificateError::BadPatternEdge { index, u, v, t: cert.pattern_t });
        }
    }
    if let Some(&v) = cert.branch_vertices.iter().find(|&&v| !g.contains_vertex(v)) {
        return Err(CertificateError::UnknownVertex(v));
    }
    for (trail, t) in cert.trails.iter().enumerate() {
        if let Some(edge) = t.edge_ids().find(|&e| !g.contains_edge(e)) {
            return Err(CertificateError::UnknownEdge { trail, edge });
        }
    }
    Ok(match check_clauses(g, cert, &pattern) {
        Some(v) => Verification::Fail(v),
        None => Verification::Pass,
    })
}

fn check_clauses(g: &Multigraph, cert: &ImmersionCertificate, pattern: &[(usize, usize)]) -> Option<Violation> {
    if cert.branch_vertices.len() != cert.pattern_t {
        return Some(Violation::WrongBranchCount { expected: cert.pattern_t, found: cert.branch_vertices.len() });
    }
    let mut seen = BTreeSet::new();
    for &v in &cert.branch_vertices {
        if !seen.insert(v) {
            return Some(Violation::NonInjectiveBranchMap { vertex: v });
        }
    }
    if cert.trails.len() != pattern.len() {
        return Some(Violation::WrongTrailCount { expected: pattern.len(), found: cert.trails.len() });
    }
    for (i, (t, &(a, b))) in cert.trails.iter().zip(pattern).enumerate() {
        if t.is_empty() {
            return Some(Violation::EmptyTrail { pattern_edge: i });
        }
        match t.validate(g) {
            Ok(()) => {}
            Err(TrailError::RepeatedEdge(edge)) => {
                return Some(Violation::EdgeReusedWithinTrail { pattern_edge: i, edge })
            }
            Err(TrailError::Discontinuous { position }) => {
                return Some(Violation::BrokenTrail { pattern_edge: i, position })
            }
            Err(e) => unreachable!("edges were checked to exist: {e}"),
        }
        let found = t.ends(g).unwrap();
        let expected = (cert.branch_vertices[a], cert.branch_vertices[b]);
        if found != expected && (found.1, found.0) != expected {
            return Some(Violation::BadEnds { pattern_edge: i, expected, found });
        }
    }
    let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (i, t) in cert.trails.iter().enumerate() {
        for e in t.edge_ids() {
            if let Some(&first) = owner.get(&e) {
                return Some(Violation::EdgeReusedAcrossTrails { edge: e, first, second: i });
            }
            owner.insert(e, i);
        }
    }
    for (i, t) in cert.trails.iter().enumerate() {
        if !cert.parity.admits(t.len()) {
            return Some(Violation::ParityMismatch { pattern_edge: i, length: t.len() });
        }
    }
    None
}
