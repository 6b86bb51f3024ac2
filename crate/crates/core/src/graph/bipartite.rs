use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{EdgeId, Multigraph, VertexId};
use crate::trail::Trail;

/// Two-sided vertex split. `side[v] == false` is the left class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    side: BTreeMap<VertexId, bool>,
}

impl Bipartition {
    pub fn from_sides(side: BTreeMap<VertexId, bool>) -> Self {
        Self { side }
    }

    pub fn side_of(&self, v: VertexId) -> Option<bool> {
        self.side.get(&v).copied()
    }

    pub fn left(&self) -> BTreeSet<VertexId> {
        self.side.iter().filter(|(_, &s)| !s).map(|(&v, _)| v).collect()
    }

    pub fn right(&self) -> BTreeSet<VertexId> {
        self.side.iter().filter(|(_, &s)| s).map(|(&v, _)| v).collect()
    }

    pub fn sides(&self) -> &BTreeMap<VertexId, bool> {
        &self.side
    }

    /// Whether the edge joins the two classes.
    pub fn crosses(&self, g: &Multigraph, e: EdgeId) -> bool {
        let e = g.edge(e).unwrap();
        self.side_of(e.u) != self.side_of(e.v)
    }

    /// True if no edge of `g` lies inside a class.
    pub fn is_proper_for(&self, g: &Multigraph) -> bool {
        g.edge_ids().all(|e| self.crosses(g, e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartiteness {
    Bipartite(Bipartition),
    /// A closed trail of odd length.
    OddCycle(Trail),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Self::Bipartite(_))
    }

    pub fn bipartition(self) -> Option<Bipartition> {
        match self {
            Self::Bipartite(b) => Some(b),
            Self::OddCycle(_) => None,
        }
    }
}

/// BFS two-colouring. On failure the witness is an odd cycle built from the
/// two BFS tree paths meeting at the offending edge.
pub fn bipartition_of(g: &Multigraph) -> Bipartiteness {
    let mut side: BTreeMap<VertexId, bool> = BTreeMap::new();
    let mut parent: BTreeMap<VertexId, Option<(EdgeId, VertexId)>> = BTreeMap::new();
    for root in g.vertices() {
        if side.contains_key(&root) {
            continue;
        }
        side.insert(root, false);
        parent.insert(root, None);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for e in g.incident(u) {
                let edge = g.edge(e).unwrap();
                if edge.is_loop() {
                    return Bipartiteness::OddCycle(Trail::single(e, true));
                }
                let w = edge.other(u).unwrap();
                match side.get(&w) {
                    None => {
                        side.insert(w, !side[&u]);
                        parent.insert(w, Some((e, u)));
                        queue.push_back(w);
                    }
                    Some(&sw) if sw == side[&u] => {
                        return Bipartiteness::OddCycle(odd_cycle(g, &parent, u, w, e));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Bipartiteness::Bipartite(Bipartition { side })
}

fn odd_cycle(
    g: &Multigraph,
    parent: &BTreeMap<VertexId, Option<(EdgeId, VertexId)>>,
    u: VertexId,
    w: VertexId,
    closing: EdgeId,
) -> Trail {
    let to_root = |mut v: VertexId| {
        let mut path = vec![(None, v)];
        while let Some((e, p)) = parent[&v] {
            path.push((Some(e), p));
            v = p;
        }
        path
    };
    let pu = to_root(u);
    let pw = to_root(w);
    let on_w: BTreeSet<VertexId> = pw.iter().map(|&(_, v)| v).collect();
    let lca_u = pu.iter().position(|&(_, v)| on_w.contains(&v)).unwrap();
    let lca = pu[lca_u].1;
    let lca_w = pw.iter().position(|&(_, v)| v == lca).unwrap();
    // lca -> ... -> u, then u -> w, then w -> ... -> lca
    let mut edges: Vec<EdgeId> = pu[1..=lca_u].iter().rev().map(|&(e, _)| e.unwrap()).collect();
    edges.push(closing);
    edges.extend(pw[1..=lca_w].iter().map(|&(e, _)| e.unwrap()));
    Trail::from_walk(g, lca, &edges).expect("tree paths chain")
}

#[derive(Clone, Debug)]
pub struct HalfSubgraph {
    pub bipartition: Bipartition,
    /// Edges crossing the bipartition.
    pub retained: BTreeSet<EdgeId>,
}

/// A bipartite subgraph keeping at least half of the non-loop edges.
///
/// Starts from a BFS colouring (exact on bipartite inputs), then flips the
/// smallest vertex with more same-side than cross edges until none remain.
/// Each flip strictly increases the cross count. Loops are never retained.
pub fn bipartite_half_subgraph(g: &Multigraph) -> HalfSubgraph {
    let mut side: BTreeMap<VertexId, bool> = BTreeMap::new();
    for root in g.vertices() {
        if side.contains_key(&root) {
            continue;
        }
        side.insert(root, false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if !side.contains_key(&w) {
                    side.insert(w, !side[&u]);
                    queue.push_back(w);
                }
            }
        }
    }
    loop {
        let flip = g.vertices().find(|&v| {
            let (mut same, mut cross) = (0usize, 0usize);
            for e in g.incident(v) {
                let edge = g.edge(e).unwrap();
                if edge.is_loop() {
                    continue;
                }
                if side[&edge.other(v).unwrap()] == side[&v] {
                    same += 1;
                } else {
                    cross += 1;
                }
            }
            same > cross
        });
        match flip {
            Some(v) => {
                let s = side.get_mut(&v).unwrap();
                *s = !*s;
            }
            None => break,
        }
    }
    let bipartition = Bipartition { side };
    let retained = g.edge_ids().filter(|&e| bipartition.crosses(g, e)).collect();
    HalfSubgraph { bipartition, retained }
}
