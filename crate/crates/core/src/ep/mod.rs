//! Packing or covering odd `A`-paths and odd `x`-circuits.
//!
//! Both problems are solved exactly. A `k`-packing is searched for first; if
//! none exists, the smallest cover is found by trying vertex sets in order of
//! size. Whether any odd `A`-path survives the removal of a set is decided in
//! linear time: join a new vertex `z` to every vertex of `A`; an odd `A`-path
//! exists iff `z` lies in a non-bipartite biconnected component.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::trail::Trail;

mod circuits;
mod reduction;

pub use circuits::{brute_force_has_odd_x_circuit, odd_x_circuits, odd_x_circuits_budget, x_block_is_bipartite};
pub use reduction::{build_reduction, ReductionBundle};

pub const DEFAULT_EP_BUDGET: u64 = 50_000_000;

/// Either `k` disjoint odd objects or a small set meeting all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum EPOutcome<X: Ord> {
    Packing { objects: Vec<Trail> },
    Cover { hitting_set: BTreeSet<X> },
}

impl<X: Ord> EPOutcome<X> {
    pub fn is_packing(&self) -> bool {
        matches!(self, EPOutcome::Packing { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpError {
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
}

/// Fixed graph with removable vertices, indexed densely. Index `n` is the
/// apex `z` joined to the live vertices of `A`.
struct Dense {
    ids: Vec<VertexId>,
    /// (neighbour, edge index); loops dropped.
    adj: Vec<Vec<(usize, usize)>>,
    edge_ids: Vec<EdgeId>,
    in_a: Vec<bool>,
    removed: Vec<bool>,
}

struct Scratch {
    order: Vec<usize>,
    low: Vec<usize>,
    uf: Vec<(usize, bool)>,
    touched: Vec<usize>,
}

impl Dense {
    fn new(g: &Multigraph, a: &BTreeSet<VertexId>) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index = |v: VertexId| ids.binary_search(&v).unwrap();
        let mut adj = vec![Vec::new(); ids.len()];
        let mut edge_ids = Vec::new();
        for (id, e) in g.edges() {
            if e.is_loop() {
                continue;
            }
            let (u, v) = (index(e.u), index(e.v));
            adj[u].push((v, edge_ids.len()));
            adj[v].push((u, edge_ids.len()));
            edge_ids.push(id);
        }
        let in_a = ids.iter().map(|v| a.contains(v)).collect();
        let n = ids.len();
        Self { ids, adj, edge_ids, in_a, removed: vec![false; n] }
    }

    fn n(&self) -> usize {
        self.ids.len()
    }

    fn live_a(&self, v: usize) -> bool {
        self.in_a[v] && !self.removed[v]
    }

    fn scratch(&self) -> Scratch {
        let n = self.n() + 1;
        Scratch { order: vec![usize::MAX; n], low: vec![0; n], uf: (0..n).map(|i| (i, false)).collect(), touched: Vec::new() }
    }

    /// Vertices of the non-bipartite biconnected components through `z`.
    /// Empty iff no odd `A`-path avoids the removed vertices.
    fn odd_z_blocks(&self, sc: &mut Scratch, first_only: bool) -> Vec<usize> {
        let n = self.n();
        let z = n;
        let m = self.edge_ids.len();
        sc.order.iter_mut().for_each(|o| *o = usize::MAX);
        let live: Vec<usize> = (0..n).filter(|&v| self.live_a(v)).collect();
        let mut out = Vec::new();
        if live.len() < 2 {
            return out;
        }
        // neighbour i of v: adjacency entries, then the z-edge if v is in A
        let neighbour = |v: usize, i: usize| -> Option<Option<(usize, usize)>> {
            if v == z {
                return live.get(i).map(|&a| Some((a, m + a)));
            }
            let list = &self.adj[v];
            if i < list.len() {
                let (w, e) = list[i];
                Some((!self.removed[w]).then_some((w, e)))
            } else if i == list.len() && self.in_a[v] {
                Some(Some((z, m + v)))
            } else {
                None
            }
        };
        let mut counter = 0;
        sc.order[z] = counter;
        sc.low[z] = counter;
        counter += 1;
        let mut stack: Vec<(usize, usize, usize)> = vec![(z, usize::MAX, 0)];
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        while let Some(top) = stack.last_mut() {
            let (v, via, i) = *top;
            top.2 += 1;
            let step = neighbour(v, i);
            match step {
                Some(None) => {}
                Some(Some((w, e))) => {
                    if e == via {
                        continue;
                    }
                    if sc.order[w] == usize::MAX {
                        sc.order[w] = counter;
                        sc.low[w] = counter;
                        counter += 1;
                        edges.push((v, w, e));
                        stack.push((w, e, 0));
                    } else if sc.order[w] < sc.order[v] {
                        edges.push((v, w, e));
                        sc.low[v] = sc.low[v].min(sc.order[w]);
                    }
                }
                None => {
                    stack.pop();
                    let Some(&(p, _, _)) = stack.last() else { break };
                    sc.low[p] = sc.low[p].min(sc.low[v]);
                    if sc.low[v] >= sc.order[p] {
                        let mut odd = false;
                        let mut verts = Vec::new();
                        while let Some((a, b, e)) = edges.pop() {
                            if p == z {
                                odd |= !sc.union(a, b);
                                verts.push(a);
                                verts.push(b);
                            }
                            if e == via {
                                break;
                            }
                        }
                        if p == z {
                            sc.reset();
                            if odd {
                                out.extend(verts.into_iter().filter(|&x| x != z));
                                if first_only {
                                    return out;
                                }
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn has_odd(&self, sc: &mut Scratch) -> bool {
        !self.odd_z_blocks(sc, true).is_empty()
    }
}

impl Scratch {
    fn find(&mut self, x: usize) -> (usize, bool) {
        let mut parity = false;
        let mut r = x;
        while self.uf[r].0 != r {
            parity ^= self.uf[r].1;
            r = self.uf[r].0;
        }
        (r, parity)
    }

    /// Joins `a` and `b` as opposite colours; false on a conflict.
    fn union(&mut self, a: usize, b: usize) -> bool {
        self.touched.push(a);
        self.touched.push(b);
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa != pb;
        }
        self.uf[ra] = (rb, !(pa ^ pb));
        true
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.uf[v] = (v, false);
        }
        self.touched.clear();
    }
}

struct Packer<'a> {
    d: &'a mut Dense,
    sc: Scratch,
    budget: u64,
    used: u64,
    exhausted: bool,
    best: usize,
    chosen: Vec<Vec<(usize, usize)>>,
    pos: Vec<usize>,
}

impl Packer<'_> {
    fn tick(&mut self) -> bool {
        self.used += 1;
        if self.used > self.budget {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn reset(&mut self) {
        self.chosen.clear();
        self.d.removed.iter_mut().for_each(|r| *r = false);
        self.pos.iter_mut().for_each(|q| *q = usize::MAX);
    }

    /// One odd `A`-path avoiding the removed vertices, leaving the removal
    /// marks as they were.
    fn one_path(&mut self) -> Option<Vec<usize>> {
        let saved = self.d.removed.clone();
        let kept = std::mem::take(&mut self.chosen);
        let found = self.pack(1).then(|| self.chosen[0].iter().map(|&(v, _)| v).collect());
        self.chosen = kept;
        self.d.removed = saved;
        self.pos.iter_mut().for_each(|q| *q = usize::MAX);
        found
    }

    /// Extends `cover` by at most `left` vertices so that no odd `A`-path
    /// remains, branching on the vertices of one surviving path.
    fn cover(&mut self, left: usize, cover: &mut Vec<usize>) -> bool {
        if !self.tick() {
            return false;
        }
        if !self.d.has_odd(&mut self.sc) {
            return true;
        }
        if left == 0 {
            return false;
        }
        let Some(path) = self.one_path() else {
            return false;
        };
        for v in path {
            self.d.removed[v] = true;
            cover.push(v);
            if self.cover(left - 1, cover) {
                return true;
            }
            cover.pop();
            self.d.removed[v] = false;
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn pack(&mut self, need: usize) -> bool {
        self.best = self.best.max(self.chosen.len());
        if need == 0 {
            return true;
        }
        let alive: Vec<usize> = (0..self.d.n()).filter(|&v| self.d.live_a(v)).collect();
        if alive.len() < 2 * need || !self.tick() || !self.d.has_odd(&mut self.sc) {
            return false;
        }
        let a = alive[0];
        self.pos[a] = 0;
        let mut path = vec![(a, usize::MAX)];
        if self.paths_from(&mut path, need) {
            return true;
        }
        self.pos[a] = usize::MAX;
        if self.exhausted {
            return false;
        }
        self.d.removed[a] = true;
        let ok = self.pack(need);
        self.d.removed[a] = false;
        ok
    }

    /// A shorter path on a subset of the vertices with the same parity
    /// exists, so this one never needs to be tried.
    fn dominated(&self, w: usize, j: usize, path: &[(usize, usize)]) -> bool {
        for &(s, _) in &self.d.adj[w] {
            let i = self.pos[s];
            if i != usize::MAX && i + 1 < j && (j - i) % 2 == 1 {
                return true;
            }
            if i == usize::MAX && !self.d.removed[s] && !self.d.in_a[s] && self.d.adj[s].len() == 2 {
                let other = self.d.adj[s].iter().map(|&(x, _)| x).find(|&x| x != w);
                if let Some(k) = other.map(|x| self.pos[x]).filter(|&k| k != usize::MAX) {
                    if k + 4 <= j && (j - k) % 2 == 0 && path[k].0 != w {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn paths_from(&mut self, path: &mut Vec<(usize, usize)>, need: usize) -> bool {
        let cur = path.last().unwrap().0;
        let mut tried: Vec<usize> = Vec::new();
        for k in 0..self.d.adj[cur].len() {
            let (w, e) = self.d.adj[cur][k];
            if self.d.removed[w] || self.pos[w] != usize::MAX || tried.contains(&w) {
                continue;
            }
            tried.push(w);
            if !self.tick() {
                return false;
            }
            let j = path.len();
            if self.dominated(w, j, path) {
                continue;
            }
            if self.d.in_a[w] {
                if j % 2 == 1 {
                    path.push((w, e));
                    for &(v, _) in path.iter() {
                        self.d.removed[v] = true;
                    }
                    self.chosen.push(path.clone());
                    let saved: Vec<usize> = path.iter().map(|&(v, _)| v).collect();
                    for &v in &saved {
                        self.pos[v] = usize::MAX;
                    }
                    if self.pack(need - 1) {
                        return true;
                    }
                    for (i, &v) in saved.iter().enumerate() {
                        self.pos[v] = i;
                    }
                    self.pos[w] = usize::MAX;
                    self.chosen.pop();
                    for &(v, _) in path.iter() {
                        self.d.removed[v] = false;
                    }
                    path.pop();
                    if self.exhausted {
                        return false;
                    }
                }
                continue;
            }
            self.pos[w] = j;
            path.push((w, e));
            let ok = self.paths_from(path, need);
            path.pop();
            self.pos[w] = usize::MAX;
            if ok {
                return true;
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// `k` vertex-disjoint odd `A`-paths of `g`, or a set `X` of at most
/// `2k - 2` vertices such that every `(A \ X)`-path of `g \ X` with at least
/// one edge is even. The cover has minimum size; it is found by
/// branching on the vertices of one surviving odd path at a time.
pub fn odd_a_paths(g: &Multigraph, a: &BTreeSet<VertexId>, k: usize) -> Result<EPOutcome<VertexId>, EpError> {
    odd_a_paths_budget(g, a, k, DEFAULT_EP_BUDGET)
}

pub fn odd_a_paths_budget(
    g: &Multigraph,
    a: &BTreeSet<VertexId>,
    k: usize,
    budget: u64,
) -> Result<EPOutcome<VertexId>, EpError> {
    assert!(k >= 1);
    if let Some(&v) = a.iter().find(|&&v| !g.contains_vertex(v)) {
        return Err(EpError::UnknownVertex(v));
    }
    let mut d = Dense::new(g, a);
    let n = d.n();
    let sc = d.scratch();
    let mut p = Packer { d: &mut d, sc, budget, used: 0, exhausted: false, best: 0, chosen: Vec::new(), pos: vec![usize::MAX; n] };
    if p.pack(k) {
        let objects = p.chosen.iter().map(|path| to_trail(g, p.d, path)).collect();
        return Ok(EPOutcome::Packing { objects });
    }
    if p.exhausted {
        return Err(EpError::BudgetExhausted);
    }
    let lower = p.best;
    p.reset();
    for size in lower..=2 * k - 2 {
        let mut cover = Vec::new();
        if p.cover(size, &mut cover) {
            let hitting_set = cover.iter().map(|&v| p.d.ids[v]).collect();
            return Ok(EPOutcome::Cover { hitting_set });
        }
        if p.exhausted {
            return Err(EpError::BudgetExhausted);
        }
    }
    panic!("no odd A-path cover of size at most {} although no {k}-packing exists", 2 * k - 2);
}

/// `k` vertex-disjoint odd `A`-paths, or `None` when the search proves
/// there are fewer.
pub(crate) fn pack_only(
    g: &Multigraph,
    a: &BTreeSet<VertexId>,
    k: usize,
    budget: u64,
) -> Result<Option<Vec<Trail>>, EpError> {
    let mut d = Dense::new(g, a);
    let n = d.n();
    let sc = d.scratch();
    let mut p = Packer { d: &mut d, sc, budget, used: 0, exhausted: false, best: 0, chosen: Vec::new(), pos: vec![usize::MAX; n] };
    if p.pack(k) {
        return Ok(Some(p.chosen.iter().map(|path| to_trail(g, p.d, path)).collect()));
    }
    if p.exhausted {
        return Err(EpError::BudgetExhausted);
    }
    Ok(None)
}

fn to_trail(g: &Multigraph, d: &Dense, path: &[(usize, usize)]) -> Trail {
    let edges: Vec<EdgeId> = path[1..].iter().map(|&(_, e)| d.edge_ids[e]).collect();
    Trail::from_walk(g, d.ids[path[0].0], &edges).expect("search paths are walks")
}
