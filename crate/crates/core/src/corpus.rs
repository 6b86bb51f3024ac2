//! Test corpora: every small connected multigraph up to isomorphism, and
//! seeded random families.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Multigraph, VertexId};

type EdgeList = Vec<(u8, u8)>;

fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut p: Vec<u8> = (0..n as u8).collect();
    fn rec(k: usize, p: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

fn canonical(edges: &EdgeList, perms: &[Vec<u8>]) -> EdgeList {
    let mut best: Option<EdgeList> = None;
    for p in perms {
        let mut img: EdgeList = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (p[u as usize], p[v as usize]);
                (a.min(b), a.max(b))
            })
            .collect();
        img.sort_unstable();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    }
    best.unwrap_or_default()
}

fn connected(n: usize, edges: &EdgeList) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

/// All connected multigraphs (loops allowed) with `1..=max_vertices`
/// vertices and at most `max_edges` edges, one per isomorphism class. Each
/// graph is given by its canonical edge list: the lexicographically smallest
/// sorted list over all relabellings.
pub fn small_connected_multigraphs(max_vertices: usize, max_edges: usize) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let perms = permutations(n);
        let slots: Vec<(u8, u8)> = (0..n as u8).flat_map(|u| (u..n as u8).map(move |v| (u, v))).collect();
        let mut level: BTreeSet<EdgeList> = BTreeSet::from([Vec::new()]);
        for m in 0..=max_edges {
            for edges in &level {
                if connected(n, edges) {
                    out.push(to_graph(n, edges));
                }
            }
            if m == max_edges {
                break;
            }
            let mut next = BTreeSet::new();
            for edges in &level {
                for &s in &slots {
                    let mut e = edges.clone();
                    e.push(s);
                    next.insert(canonical(&e, &perms));
                }
            }
            level = next;
        }
    }
    out
}

fn to_graph(n: usize, edges: &EdgeList) -> Multigraph {
    let pairs: Vec<(VertexId, VertexId)> = edges.iter().map(|&(u, v)| (u as usize, v as usize)).collect();
    Multigraph::from_edges(n, &pairs)
}

/// `m` edges with uniformly random endpoints on `n` vertices; each edge is
/// a loop only with probability `loop_prob`.
pub fn random_multigraph<R: Rng>(rng: &mut R, n: usize, m: usize, loop_prob: f64) -> Multigraph {
    let mut g = Multigraph::with_vertices(n);
    if n == 0 {
        return g;
    }
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let v = if n == 1 || rng.gen_bool(loop_prob) {
            u
        } else {
            let w = rng.gen_range(0..n - 1);
            if w >= u { w + 1 } else { w }
        };
        g.add_edge(u, v).unwrap();
    }
    g
}

/// Random connected multigraph: a random spanning tree plus `extra` edges.
pub fn random_connected_multigraph<R: Rng>(rng: &mut R, n: usize, extra: usize, loop_prob: f64) -> Multigraph {
    let mut g = Multigraph::with_vertices(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let p = order[rng.gen_range(0..i)];
        g.add_edge(p, order[i]).unwrap();
    }
    let noise = random_multigraph(rng, n, extra, loop_prob);
    for (_, e) in noise.edges() {
        g.add_edge(e.u, e.v).unwrap();
    }
    g
}

/// Simple graph `G(n, p)`.
pub fn random_simple_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Multigraph {
    let mut g = Multigraph::with_vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random bipartite multigraph with sides of size `a` and `b` and `m` edges.
pub fn random_bipartite_multigraph<R: Rng>(rng: &mut R, a: usize, b: usize, m: usize) -> Multigraph {
    let mut g = Multigraph::with_vertices(a + b);
    if a == 0 || b == 0 {
        return g;
    }
    for _ in 0..m {
        g.add_edge(rng.gen_range(0..a), a + rng.gen_range(0..b)).unwrap();
    }
    g
}
