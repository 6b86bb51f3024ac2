#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use oddimm::certificate::{clique_edges, ImmersionCertificate, Parity};
use oddimm::graph::{EdgeId, Multigraph, VertexId};
use oddimm::trail::Trail;
use oddimm::transform::{apex_augment, OddTrailCollection};

/// Edge masks of every trail from `a` to `b` whose length has the given
/// parity. Trails may revisit vertices, including their ends.
fn trails_between(g: &Multigraph, idx: &BTreeMap<EdgeId, usize>, a: VertexId, b: VertexId, parity: Parity) -> Vec<u64> {
    fn go(
        g: &Multigraph,
        idx: &BTreeMap<EdgeId, usize>,
        cur: VertexId,
        b: VertexId,
        used: u64,
        len: usize,
        parity: Parity,
        out: &mut BTreeSet<u64>,
    ) {
        if cur == b && len > 0 && parity.admits(len) {
            out.insert(used);
        }
        for e in g.incident(cur) {
            let bit = 1u64 << idx[&e];
            if used & bit != 0 {
                continue;
            }
            let w = g.edge(e).unwrap().other(cur).unwrap();
            go(g, idx, w, b, used | bit, len + 1, parity, out);
        }
    }
    let mut out = BTreeSet::new();
    go(g, idx, a, b, 0, 0, parity, &mut out);
    out.into_iter().collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Independent decision procedure for `K_t`-immersions with a parity
/// constraint: tries every branch set and every assignment of pairwise
/// edge-disjoint trails. Only meant for graphs with at most 64 edges and
/// very few trails.
pub fn naive_immersion(g: &Multigraph, t: usize, parity: Parity) -> bool {
    assert!(g.edge_count() <= 64);
    let verts: Vec<VertexId> = g.vertices().collect();
    if t > verts.len() {
        return false;
    }
    if t == 1 {
        return true;
    }
    let idx: BTreeMap<EdgeId, usize> = g.edge_ids().enumerate().map(|(i, e)| (e, i)).collect();
    let pattern = clique_edges(t);
    let mut cache: BTreeMap<(VertexId, VertexId), Vec<u64>> = BTreeMap::new();
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            cache.insert((a, b), trails_between(g, &idx, a, b, parity));
        }
    }
    for branch in combinations(verts.len(), t) {
        let b: Vec<VertexId> = branch.iter().map(|&i| verts[i]).collect();
        let options: Vec<&Vec<u64>> = pattern.iter().map(|&(i, j)| &cache[&(b[i].min(b[j]), b[i].max(b[j]))]).collect();
        if options.iter().any(|o| o.is_empty()) {
            continue;
        }
        if assign(&options, 0, 0) {
            return true;
        }
    }
    false
}

fn assign(options: &[&Vec<u64>], i: usize, used: u64) -> bool {
    if i == options.len() {
        return true;
    }
    options[i].iter().any(|&m| m & used == 0 && assign(options, i + 1, used | m))
}

/// Subdivided `K_t` with each branch trail of length two; returns the
/// certificate, which is totally even.
pub fn subdivided_clique(t: usize) -> (Multigraph, ImmersionCertificate) {
    let mut g = Multigraph::with_vertices(t);
    let mut trails = Vec::new();
    for (i, j) in clique_edges(t) {
        let m = g.add_vertex();
        let a = g.add_edge(i, m).unwrap();
        let b = g.add_edge(m, j).unwrap();
        trails.push(Trail::from_walk(&g, i, &[a, b]).unwrap());
    }
    (g, ImmersionCertificate::clique((0..t).collect(), trails, Parity::Even))
}

/// A totally even clique immersion with random extra edges and a random
/// collection of edge-disjoint odd trails between branch vertices, at most
/// `max_edges` edges in total.
pub fn entangled_instance<R: Rng>(rng: &mut R, max_edges: usize) -> (Multigraph, ImmersionCertificate, OddTrailCollection) {
    let t = if max_edges >= 16 && rng.gen_bool(0.5) { 4 } else { 3 };
    let (mut g, cert) = subdivided_clique(t);
    let n = g.vertex_count();
    let budget = max_edges.saturating_sub(g.edge_count());
    for _ in 0..rng.gen_range(0..=budget) {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        g.add_edge(u, v).unwrap();
    }
    let mut used: BTreeSet<EdgeId> = BTreeSet::new();
    let mut trails = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        if let Some(tr) = random_odd_trail(rng, &g, t, &used) {
            used.extend(tr.edge_ids());
            trails.push(tr);
        }
    }
    (g, cert, OddTrailCollection::new(trails))
}

/// Random walk without repeated edges from a branch vertex (ids below `t`)
/// that stops at a branch vertex after an odd number of steps.
fn random_odd_trail<R: Rng>(rng: &mut R, g: &Multigraph, t: usize, used: &BTreeSet<EdgeId>) -> Option<Trail> {
    for _ in 0..20 {
        let start = rng.gen_range(0..t);
        let mut cur = start;
        let mut walk: Vec<EdgeId> = Vec::new();
        for _ in 0..12 {
            let opts: Vec<EdgeId> = g.incident(cur).filter(|e| !used.contains(e) && !walk.contains(e)).collect();
            if opts.is_empty() {
                break;
            }
            let e = opts[rng.gen_range(0..opts.len())];
            walk.push(e);
            cur = g.edge(e).unwrap().other(cur).unwrap();
            if cur < t && walk.len() % 2 == 1 && rng.gen_bool(0.6) {
                return Some(Trail::from_walk(g, start, &walk).unwrap());
            }
        }
    }
    None
}

/// Subdivided `K_t` with an odd triangle hanging at branch vertices in
/// turn, and the matching odd circuits through the apex.
pub fn triangles_instance(t: usize, triangles: usize) -> (Multigraph, ImmersionCertificate, Multigraph, VertexId, Vec<Trail>) {
    let (mut g, cert) = subdivided_clique(t);
    let mut tri = Vec::new();
    for i in 0..triangles {
        let s = i % t;
        let p = g.add_vertex();
        let q = g.add_vertex();
        let e1 = g.add_edge(s, p).unwrap();
        let e2 = g.add_edge(p, q).unwrap();
        let e3 = g.add_edge(q, s).unwrap();
        tri.push((s, [e1, e2, e3]));
    }
    let mult = triangles.div_ceil(t) * 2;
    let branch: Vec<VertexId> = (0..t).collect();
    let (aux, x) = apex_augment(&g, &branch, mult);
    let mut used: BTreeSet<EdgeId> = BTreeSet::new();
    let mut circuits = Vec::new();
    for (s, es) in tri {
        let xs: Vec<EdgeId> = aux.edges_between(x, s).into_iter().filter(|e| !used.contains(e)).take(2).collect();
        used.extend(&xs);
        circuits.push(Trail::from_walk(&aux, x, &[xs[0], es[0], es[1], es[2], xs[1]]).unwrap());
    }
    (g, cert, aux, x, circuits)
}
