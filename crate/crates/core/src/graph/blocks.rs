//! Bridges, edge blocks (maximal bridgeless subgraphs) and biconnected
//! components.

use std::collections::{BTreeMap, BTreeSet};

use super::{EdgeId, Multigraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeBlock {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeBlockDecomposition {
    /// Ordered by smallest edge id.
    pub blocks: Vec<EdgeBlock>,
    pub bridges: BTreeSet<EdgeId>,
}

impl EdgeBlockDecomposition {
    pub fn block_of_vertex(&self, v: VertexId) -> Option<usize> {
        self.blocks.iter().position(|b| b.vertices.contains(&v))
    }
}

struct Lowlink {
    order: BTreeMap<VertexId, usize>,
    low: BTreeMap<VertexId, usize>,
}

/// Bridges via iterative lowlink DFS. Parallel edges are told apart by id, so
/// a doubled edge is never a bridge.
fn bridges(g: &Multigraph) -> BTreeSet<EdgeId> {
    let mut ll = Lowlink { order: BTreeMap::new(), low: BTreeMap::new() };
    let mut out = BTreeSet::new();
    let mut counter = 0;
    for root in g.vertices() {
        if ll.order.contains_key(&root) {
            continue;
        }
        // (vertex, edge used to enter it, remaining incident edges)
        let mut stack: Vec<(VertexId, Option<EdgeId>, Vec<EdgeId>)> = Vec::new();
        ll.order.insert(root, counter);
        ll.low.insert(root, counter);
        counter += 1;
        stack.push((root, None, g.incident(root).collect()));
        while let Some(top) = stack.last_mut() {
            let (v, via) = (top.0, top.1);
            if let Some(e) = top.2.pop() {
                if Some(e) == via {
                    continue;
                }
                let w = g.edge(e).unwrap().other(v).unwrap();
                if let Some(&ow) = ll.order.get(&w) {
                    let lv = ll.low.get_mut(&v).unwrap();
                    *lv = (*lv).min(ow);
                } else {
                    ll.order.insert(w, counter);
                    ll.low.insert(w, counter);
                    counter += 1;
                    stack.push((w, Some(e), g.incident(w).collect()));
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    let lv = ll.low[&v];
                    let lp = ll.low.get_mut(&p).unwrap();
                    *lp = (*lp).min(lv);
                    if lv > ll.order[&p] {
                        out.insert(via.unwrap());
                    }
                }
            }
        }
    }
    out
}

/// Maximal bridgeless subgraphs with at least one edge, plus the bridges.
/// Loops belong to the block of their vertex.
pub fn edge_blocks(g: &Multigraph) -> EdgeBlockDecomposition {
    let bridges = bridges(g);
    let rest = g.without_edges(&bridges);
    let mut blocks: Vec<EdgeBlock> = rest
        .components()
        .into_iter()
        .filter_map(|vertices| {
            let edges: BTreeSet<EdgeId> =
                vertices.iter().flat_map(|&v| rest.incident(v).collect::<Vec<_>>()).collect();
            (!edges.is_empty()).then_some(EdgeBlock { vertices, edges })
        })
        .collect();
    blocks.sort_by_key(|b| *b.edges.iter().next().unwrap());
    EdgeBlockDecomposition { blocks, bridges }
}

/// Vertex partition into 2-edge-connected classes: `u` and `v` share a class
/// iff they are joined by two edge-disjoint paths. Class ids are dense and
/// ordered by smallest member.
pub fn two_edge_connected_classes(g: &Multigraph) -> BTreeMap<VertexId, usize> {
    let rest = g.without_edges(&bridges(g));
    let mut out = BTreeMap::new();
    for (i, comp) in rest.components().into_iter().enumerate() {
        for v in comp {
            out.insert(v, i);
        }
    }
    out
}

/// Edge sets of the biconnected components (blocks in the vertex sense).
/// Loops are skipped.
pub fn biconnected_edge_sets(g: &Multigraph) -> Vec<BTreeSet<EdgeId>> {
    let mut order: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut low: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut out = Vec::new();
    let mut counter = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut stacked: BTreeSet<EdgeId> = BTreeSet::new();
    for root in g.vertices() {
        if order.contains_key(&root) {
            continue;
        }
        let mut stack: Vec<(VertexId, Option<EdgeId>, Vec<EdgeId>)> = Vec::new();
        order.insert(root, counter);
        low.insert(root, counter);
        counter += 1;
        stack.push((root, None, g.incident(root).collect()));
        while let Some(top) = stack.last_mut() {
            let (v, via) = (top.0, top.1);
            if let Some(e) = top.2.pop() {
                let edge = g.edge(e).unwrap();
                if Some(e) == via || edge.is_loop() {
                    continue;
                }
                let w = edge.other(v).unwrap();
                if let Some(&ow) = order.get(&w) {
                    if ow < order[&v] && stacked.insert(e) {
                        edge_stack.push(e);
                    }
                    let lv = low.get_mut(&v).unwrap();
                    *lv = (*lv).min(ow);
                } else {
                    stacked.insert(e);
                    edge_stack.push(e);
                    order.insert(w, counter);
                    low.insert(w, counter);
                    counter += 1;
                    stack.push((w, Some(e), g.incident(w).collect()));
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    let lv = low[&v];
                    let lp = low.get_mut(&p).unwrap();
                    *lp = (*lp).min(lv);
                    if lv >= order[&p] {
                        let tree_edge = via.unwrap();
                        let mut comp = BTreeSet::new();
                        while let Some(x) = edge_stack.pop() {
                            comp.insert(x);
                            if x == tree_edge {
                                break;
                            }
                        }
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}
