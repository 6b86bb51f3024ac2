//! Exhaustive search for (parity-constrained) immersions of small patterns.
//!
//! Branch vertices are chosen first, then the pattern edges are routed one at
//! a time by depth-first search over edge-disjoint trails. Without a parity
//! constraint only vertex-simple paths are tried, since every trail contains
//! a path with the same ends. The search is exact: `NotFound` is only reported
//! after the whole tree was explored within budget.

use crate::certificate::{clique_edges, ImmersionCertificate, Parity};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::trail::{Step, Trail};

mod extract;

pub use extract::{find_immersion_extract, min_degree_immersion, ExtractError, MinDegreeError};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct OracleQuery<'a> {
    pub host: &'a Multigraph,
    /// Number of pattern vertices.
    pub t: usize,
    /// Explicit pattern edges; `None` means the clique.
    pub pattern: Option<Vec<(usize, usize)>>,
    pub parity: Parity,
    /// Cap on search-tree node expansions.
    pub budget: u64,
}

impl<'a> OracleQuery<'a> {
    pub fn new(host: &'a Multigraph, t: usize, parity: Parity) -> Self {
        assert!(t >= 1, "pattern needs at least one vertex");
        Self { host, t, pattern: None, parity, budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        assert!(budget > 0, "budget must be positive");
        self.budget = budget;
        self
    }

    /// Searches for an explicit pattern on `t` vertices instead of `K_t`.
    pub fn with_pattern(mut self, edges: Vec<(usize, usize)>) -> Self {
        assert!(edges.iter().all(|&(u, v)| u < self.t && v < self.t && u != v), "pattern edge out of range");
        self.pattern = Some(edges);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(ImmersionCertificate),
    NotFound,
    BudgetExhausted,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn certificate(self) -> Option<ImmersionCertificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Runs the exhaustive search. See [`test_immersion_counted`] for the number
/// of expansions used.
pub fn test_immersion(q: &OracleQuery) -> SearchOutcome {
    test_immersion_counted(q).0
}

pub fn test_immersion_counted(q: &OracleQuery) -> (SearchOutcome, u64) {
    let mut s = Search::new(q);
    let outcome = if s.assign(0) {
        SearchOutcome::Found(s.certificate(q))
    } else if s.exhausted {
        SearchOutcome::BudgetExhausted
    } else {
        SearchOutcome::NotFound
    };
    (outcome, s.expansions)
}

/// A decision procedure for clique immersions, as used by the extraction
/// loop and the transformation pipeline.
pub trait ImmersionOracle {
    fn decide(&mut self, g: &Multigraph, t: usize, parity: Parity) -> SearchOutcome;
}

#[derive(Clone, Debug)]
pub struct ExhaustiveOracle {
    pub budget: u64,
    pub calls: u64,
    pub expansions: u64,
}

impl ExhaustiveOracle {
    pub fn new(budget: u64) -> Self {
        Self { budget, calls: 0, expansions: 0 }
    }
}

impl Default for ExhaustiveOracle {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

impl ImmersionOracle for ExhaustiveOracle {
    fn decide(&mut self, g: &Multigraph, t: usize, parity: Parity) -> SearchOutcome {
        self.calls += 1;
        let (out, used) = test_immersion_counted(&OracleQuery::new(g, t, parity).with_budget(self.budget));
        self.expansions += used;
        out
    }
}

struct Search {
    vertex_ids: Vec<VertexId>,
    edge_ids: Vec<EdgeId>,
    ends: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
    candidates: Vec<usize>,
    pattern: Vec<(usize, usize)>,
    pattern_degree: Vec<usize>,
    clique: bool,
    parity: Parity,
    budget: u64,
    expansions: u64,
    exhausted: bool,
    branch: Vec<usize>,
    taken: Vec<bool>,
    used: Vec<bool>,
    free: Vec<usize>,
    /// Pattern edges at each vertex not yet being routed.
    rem: Vec<usize>,
    on_path: Vec<bool>,
    path: Vec<(usize, bool)>,
    trails: Vec<Vec<(usize, bool)>>,
}

impl Search {
    fn new(q: &OracleQuery) -> Self {
        let g = q.host;
        let vertex_ids: Vec<VertexId> = g.vertices().collect();
        let index = |v: VertexId| vertex_ids.binary_search(&v).unwrap();
        let edge_ids: Vec<EdgeId> = g.edge_ids().collect();
        let n = vertex_ids.len();
        let mut ends = Vec::with_capacity(edge_ids.len());
        let mut adj = vec![Vec::new(); n];
        let mut free = vec![0; n];
        for (i, &e) in edge_ids.iter().enumerate() {
            let edge = g.edge(e).unwrap();
            let (u, v) = (index(edge.u), index(edge.v));
            ends.push((u, v));
            adj[u].push((i, v));
            if u != v {
                adj[v].push((i, u));
                free[u] += 1;
                free[v] += 1;
            }
        }
        let pattern = q.pattern.clone().unwrap_or_else(|| clique_edges(q.t));
        let mut pattern_degree = vec![0; q.t];
        for &(a, b) in &pattern {
            pattern_degree[a] += 1;
            pattern_degree[b] += 1;
        }
        let min_need = pattern_degree.iter().copied().min().unwrap_or(0);
        let mut candidates: Vec<usize> = (0..n).filter(|&v| free[v] >= min_need).collect();
        candidates.sort_by_key(|&v| (std::cmp::Reverse(free[v]), v));
        let m = ends.len();
        Self {
            vertex_ids,
            edge_ids,
            ends,
            adj,
            candidates,
            pattern,
            pattern_degree,
            clique: q.pattern.is_none(),
            parity: q.parity,
            budget: q.budget,
            expansions: 0,
            exhausted: false,
            branch: Vec::with_capacity(q.t),
            taken: vec![false; n],
            used: vec![false; m],
            free,
            rem: vec![0; n],
            on_path: vec![false; n],
            path: Vec::new(),
            trails: Vec::new(),
        }
    }

    fn tick(&mut self) -> bool {
        self.expansions += 1;
        if self.expansions > self.budget {
            self.exhausted = true;
        }
        !self.exhausted
    }

    /// Chooses the image of pattern vertex `i`.
    fn assign(&mut self, i: usize) -> bool {
        let t = self.pattern_degree.len();
        if i == t {
            for &(a, b) in &self.pattern {
                self.rem[self.branch[a]] += 1;
                self.rem[self.branch[b]] += 1;
            }
            self.trails = vec![Vec::new(); self.pattern.len()];
            let ok = self.route(0);
            self.rem.iter_mut().for_each(|r| *r = 0);
            return ok;
        }
        let start = if self.clique && i > 0 {
            let last = *self.branch.last().unwrap();
            self.candidates.iter().position(|&c| c == last).unwrap() + 1
        } else {
            0
        };
        // a clique needs t - i more candidates after this one
        let stop = if self.clique { (self.candidates.len() + i + 1).saturating_sub(t) } else { self.candidates.len() };
        for k in start..stop.max(start) {
            let v = self.candidates[k];
            if self.taken[v] || self.free[v] < self.pattern_degree[i] {
                continue;
            }
            if !self.tick() {
                return false;
            }
            self.taken[v] = true;
            self.branch.push(v);
            if self.assign(i + 1) {
                return true;
            }
            self.branch.pop();
            self.taken[v] = false;
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn route(&mut self, idx: usize) -> bool {
        if idx == self.pattern.len() {
            return true;
        }
        let (pa, pb) = self.pattern[idx];
        let (a, b) = (self.branch[pa], self.branch[pb]);
        self.rem[a] -= 1;
        self.rem[b] -= 1;
        let mut ok = false;
        if self.free[a] > self.rem[a] && self.free[b] > self.rem[b] {
            self.on_path[a] = true;
            ok = self.extend(a, idx, b);
            self.on_path[a] = false;
        }
        self.rem[a] += 1;
        self.rem[b] += 1;
        ok
    }

    fn extend(&mut self, cur: usize, idx: usize, b: usize) -> bool {
        let len = self.path.len();
        if cur == b && len > 0 {
            if self.parity.admits(len) {
                self.trails[idx] = self.path.clone();
                let saved = std::mem::take(&mut self.path);
                let n = self.on_path.len();
                let marks = std::mem::replace(&mut self.on_path, vec![false; n]);
                let ok = self.route(idx + 1);
                self.path = saved;
                self.on_path = marks;
                if ok {
                    return true;
                }
                if self.exhausted {
                    return false;
                }
            }
            if self.parity == Parity::Any {
                return false;
            }
        }
        let simple = self.parity == Parity::Any;
        let mut tried: Vec<usize> = Vec::new();
        for k in 0..self.adj[cur].len() {
            let (e, w) = self.adj[cur][k];
            if self.used[e] || (simple && self.on_path[w]) || tried.contains(&w) {
                continue;
            }
            // parallel edges (and loops) at `cur` are interchangeable
            tried.push(w);
            if !self.tick() {
                return false;
            }
            let is_loop = w == cur;
            self.used[e] = true;
            if !is_loop {
                self.free[cur] -= 1;
                self.free[w] -= 1;
            }
            let feasible = is_loop
                || (self.free[cur] >= self.rem[cur] + usize::from(cur == b) && self.free[w] >= self.rem[w]);
            if feasible {
                let forward = self.ends[e].0 == cur;
                self.path.push((e, forward));
                if simple {
                    self.on_path[w] = true;
                }
                let ok = self.extend(w, idx, b);
                if simple {
                    self.on_path[w] = false;
                }
                self.path.pop();
                if ok {
                    self.used[e] = false;
                    if !is_loop {
                        self.free[cur] += 1;
                        self.free[w] += 1;
                    }
                    return true;
                }
            }
            self.used[e] = false;
            if !is_loop {
                self.free[cur] += 1;
                self.free[w] += 1;
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn certificate(&self, q: &OracleQuery) -> ImmersionCertificate {
        let trails = self
            .trails
            .iter()
            .map(|t| Trail::from_steps(t.iter().map(|&(e, f)| Step::new(self.edge_ids[e], f)).collect()))
            .collect();
        ImmersionCertificate {
            pattern_t: q.t,
            pattern_edges: q.pattern.clone(),
            branch_vertices: self.branch.iter().map(|&v| self.vertex_ids[v]).collect(),
            trails,
            parity: q.parity,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_certificate;

    fn run(g: &Multigraph, t: usize, parity: Parity) -> SearchOutcome {
        let out = test_immersion(&OracleQuery::new(g, t, parity));
        if let SearchOutcome::Found(c) = &out {
            assert!(verify_certificate(g, c).unwrap().is_pass(), "{c:?}");
        }
        out
    }

    #[test]
    fn cycle_examples() {
        let c5 = Multigraph::cycle(5);
        assert!(run(&c5, 3, Parity::Any).is_found());
        assert_eq!(run(&c5, 4, Parity::Any), SearchOutcome::NotFound);
        assert!(run(&c5, 3, Parity::Odd).is_found());
        assert_eq!(run(&Multigraph::cycle(4), 3, Parity::Odd), SearchOutcome::NotFound);
        assert!(run(&Multigraph::cycle(6), 3, Parity::Even).is_found());
    }

    #[test]
    fn petersen_has_k4() {
        assert!(run(&Multigraph::petersen(), 4, Parity::Any).is_found());
        assert_eq!(run(&Multigraph::petersen(), 5, Parity::Any), SearchOutcome::NotFound);
    }

    #[test]
    fn complete_graph_and_small_orders() {
        for t in 1..=5 {
            assert!(run(&Multigraph::complete(t), t, Parity::Any).is_found());
            assert!(run(&Multigraph::complete(t), t, Parity::Odd).is_found());
        }
        assert_eq!(run(&Multigraph::new(), 1, Parity::Any), SearchOutcome::NotFound);
        assert_eq!(run(&Multigraph::with_vertices(1), 2, Parity::Any), SearchOutcome::NotFound);
    }

    #[test]
    fn loops_matter_only_for_parity() {
        // a doubled edge with a loop: K2 with an even trail exists via the loop
        let g = Multigraph::from_edges(2, &[(0, 1), (1, 1)]);
        assert!(run(&g, 2, Parity::Even).is_found());
        assert_eq!(run(&Multigraph::path(2), 2, Parity::Even), SearchOutcome::NotFound);
    }

    #[test]
    fn explicit_pattern() {
        let g = Multigraph::cycle(6);
        let q = OracleQuery::new(&g, 3, Parity::Any).with_pattern(vec![(0, 1), (1, 2)]);
        let c = test_immersion(&q).certificate().unwrap();
        assert!(verify_certificate(&g, &c).unwrap().is_pass());
        // a triangle pattern with a doubled edge needs degree 3 at two vertices
        let q = OracleQuery::new(&g, 3, Parity::Any).with_pattern(vec![(0, 1), (0, 1), (1, 2), (0, 2)]);
        assert_eq!(test_immersion(&q), SearchOutcome::NotFound);
    }

    #[test]
    fn tiny_budget_is_reported() {
        let g = Multigraph::petersen();
        let q = OracleQuery::new(&g, 4, Parity::Any).with_budget(3);
        assert_eq!(test_immersion(&q), SearchOutcome::BudgetExhausted);
    }
}
