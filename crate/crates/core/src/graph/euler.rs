use std::collections::BTreeSet;

use super::{EdgeId, Multigraph, VertexId};
use crate::error::GraphError;
use crate::trail::Trail;

/// Splits an even graph into edge-disjoint circuits covering every edge
/// (Hierholzer, one circuit per non-trivial component).
pub fn eulerian_circuit_decomposition(g: &Multigraph) -> Result<Vec<Trail>, GraphError> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) % 2 == 1) {
        return Err(GraphError::OddDegree(v));
    }
    let mut unused: BTreeSet<EdgeId> = g.edge_ids().collect();
    let mut circuits = Vec::new();
    while let Some(&seed) = unused.iter().next() {
        let start = g.edge(seed).unwrap().u;
        // stack of (vertex, edge used to reach it)
        let mut stack: Vec<(VertexId, Option<EdgeId>)> = vec![(start, None)];
        let mut tour: Vec<EdgeId> = Vec::new();
        while let Some(&(v, via)) = stack.last() {
            match g.incident(v).find(|e| unused.contains(e)) {
                Some(e) => {
                    unused.remove(&e);
                    stack.push((g.edge(e).unwrap().other(v).unwrap(), Some(e)));
                }
                None => {
                    stack.pop();
                    if let Some(e) = via {
                        tour.push(e);
                    }
                }
            }
        }
        tour.reverse();
        circuits.push(Trail::from_walk(g, start, &tour).expect("hierholzer tour is a trail"));
    }
    Ok(circuits)
}
