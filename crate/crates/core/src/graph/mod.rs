//! Multigraphs with stable edge identities.
//!
//! Every edge carries an id that survives rewrites. Certificates and trails
//! always refer to edges by id, since endpoint pairs are ambiguous once
//! parallel edges are present. Loops count twice towards the degree.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

mod bipartite;
mod blocks;
mod degree;
mod euler;
pub mod io;
mod transform;

pub use bipartite::{bipartite_half_subgraph, bipartition_of, Bipartiteness, Bipartition, HalfSubgraph};
pub use blocks::{biconnected_edge_sets, edge_blocks, two_edge_connected_classes, EdgeBlock, EdgeBlockDecomposition};
pub use degree::{degeneracy_coloring, min_degree_subgraph, DegeneracyColoring};
pub use euler::eulerian_circuit_decomposition;
pub use transform::{line_graph, one_subdivision, LineGraph, Subdivision};

pub type VertexId = usize;
pub type EdgeId = usize;

/// An undirected edge. For a loop `u == v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `w`; for a loop this is `w` itself.
    pub fn other(&self, w: VertexId) -> Option<VertexId> {
        if self.u == w {
            Some(self.v)
        } else if self.v == w {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn touches(&self, w: VertexId) -> bool {
        self.u == w || self.v == w
    }

    /// Endpoints as an ordered pair, smaller id first.
    pub fn key(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Multigraph {
    incidence: BTreeMap<VertexId, BTreeSet<EdgeId>>,
    edges: BTreeMap<EdgeId, Edge>,
    next_vertex: VertexId,
    next_edge: EdgeId,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.edges == other.edges && self.incidence.keys().eq(other.incidence.keys())
    }
}

impl Eq for Multigraph {}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph on vertices `0..n` without edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Builds a graph on `0..n` with edges numbered in list order.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut g = Self::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(u, v).expect("endpoint out of range");
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::with_vertices(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::with_vertices(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n).unwrap();
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::with_vertices(n);
        for u in 1..n {
            g.add_edge(u - 1, u).unwrap();
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Self::with_vertices(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(i, i + 5).unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        }
        g
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let v = self.next_vertex;
        self.incidence.insert(v, BTreeSet::new());
        self.next_vertex += 1;
        v
    }

    /// Inserts a vertex with a caller-chosen id (no-op if already present).
    pub fn ensure_vertex(&mut self, v: VertexId) {
        self.incidence.entry(v).or_default();
        self.next_vertex = self.next_vertex.max(v + 1);
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId, GraphError> {
        let id = self.next_edge;
        self.insert_edge(id, u, v)?;
        Ok(id)
    }

    /// Inserts an edge under a caller-chosen id.
    pub fn insert_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if self.edges.contains_key(&id) {
            return Err(GraphError::DuplicateEdge(id));
        }
        for w in [u, v] {
            if !self.incidence.contains_key(&w) {
                return Err(GraphError::UnknownVertex(w));
            }
        }
        self.edges.insert(id, Edge { u, v });
        self.incidence.get_mut(&u).unwrap().insert(id);
        self.incidence.get_mut(&v).unwrap().insert(id);
        self.next_edge = self.next_edge.max(id + 1);
        Ok(())
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Option<Edge> {
        let e = self.edges.remove(&id)?;
        self.incidence.get_mut(&e.u).unwrap().remove(&id);
        self.incidence.get_mut(&e.v).unwrap().remove(&id);
        Some(e)
    }

    /// Removes a vertex together with every incident edge.
    pub fn remove_vertex(&mut self, v: VertexId) -> bool {
        let Some(inc) = self.incidence.get(&v).cloned() else {
            return false;
        };
        for e in inc {
            self.remove_edge(e);
        }
        self.incidence.remove(&v);
        true
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.incidence.contains_key(&v)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, Edge)> + '_ {
        self.edges.iter().map(|(&id, &e)| (id, e))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn edge(&self, e: EdgeId) -> Option<Edge> {
        self.edges.get(&e).copied()
    }

    /// Edge ids incident to `v`, in increasing order. A loop is listed once.
    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.incidence.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).map(|e| if self.edges[&e].is_loop() { 2 } else { 1 }).sum()
    }

    /// Degree ignoring loops.
    pub fn loopless_degree(&self, v: VertexId) -> usize {
        self.incident(v).filter(|e| !self.edges[e].is_loop()).count()
    }

    /// Distinct neighbours of `v` other than `v` itself.
    pub fn neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.incident(v).filter_map(|e| self.edges[&e].other(v)).filter(|&w| w != v).collect()
    }

    /// Edges joining `u` and `v` (loops at `u` when `u == v`).
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        self.incident(u).filter(|e| self.edges[e].other(u) == Some(v)).collect()
    }

    pub fn loop_count(&self, v: VertexId) -> usize {
        self.incident(v).filter(|e| self.edges[e].is_loop()).count()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.degree(v)).min()
    }

    pub fn max_edge_id(&self) -> Option<EdgeId> {
        self.edges.keys().next_back().copied()
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.incidence.keys().next_back().copied()
    }

    /// Next id `add_edge` would hand out.
    pub fn next_edge_id(&self) -> EdgeId {
        self.next_edge
    }

    pub fn next_vertex_id(&self) -> VertexId {
        self.next_vertex
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.values().all(|e| !e.is_loop() && seen.insert(e.key()))
    }

    /// Same vertex set, keeping only the listed edges.
    pub fn edge_subgraph<'a>(&self, keep: impl IntoIterator<Item = &'a EdgeId>) -> Multigraph {
        let mut g = self.clone_vertices();
        for &e in keep {
            if let Some(edge) = self.edge(e) {
                g.insert_edge(e, edge.u, edge.v).unwrap();
            }
        }
        g
    }

    /// Same vertex set with the listed edges removed.
    pub fn without_edges<'a>(&self, drop: impl IntoIterator<Item = &'a EdgeId>) -> Multigraph {
        let mut g = self.clone();
        for &e in drop {
            g.remove_edge(e);
        }
        g
    }

    /// Subgraph induced on `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Multigraph {
        let mut g = Multigraph { next_vertex: self.next_vertex, next_edge: self.next_edge, ..Default::default() };
        for &v in keep {
            if self.contains_vertex(v) {
                g.incidence.insert(v, BTreeSet::new());
            }
        }
        for (id, e) in self.edges() {
            if keep.contains(&e.u) && keep.contains(&e.v) {
                g.insert_edge(id, e.u, e.v).unwrap();
            }
        }
        g
    }

    fn clone_vertices(&self) -> Multigraph {
        Multigraph {
            incidence: self.incidence.keys().map(|&v| (v, BTreeSet::new())).collect(),
            edges: BTreeMap::new(),
            next_vertex: self.next_vertex,
            next_edge: self.next_edge,
        }
    }

    /// Vertices reachable from `v`.
    pub fn component_of(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([v]);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for e in self.incident(u) {
                let w = self.edges[&e].other(u).unwrap();
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut left: BTreeSet<VertexId> = self.vertices().collect();
        let mut out = Vec::new();
        while let Some(&v) = left.iter().next() {
            let comp = self.component_of(v);
            for w in &comp {
                left.remove(w);
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}
