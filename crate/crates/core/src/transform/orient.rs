use crate::graph::{eulerian_circuit_decomposition, Multigraph};

/// An orientation of `K_t` as `(tail, head)` arcs in which every vertex has
/// in-degree and out-degree at most `ceil(t / 2)`.
///
/// For even `t` the matching `{0,1}, {2,3}, ...` is set aside and oriented
/// low to high; the remaining graph is Eulerian and each circuit of its
/// decomposition is oriented along its traversal.
pub fn bounded_orientation(t: usize) -> Vec<(usize, usize)> {
    assert!(t >= 1, "orientation needs at least one vertex");
    let mut g = Multigraph::complete(t);
    let mut arcs = Vec::with_capacity(t * (t - 1) / 2);
    if t % 2 == 0 {
        for i in (0..t).step_by(2) {
            let e = g.edges_between(i, i + 1)[0];
            g.remove_edge(e);
            arcs.push((i, i + 1));
        }
    }
    let circuits = eulerian_circuit_decomposition(&g).expect("every degree is even");
    for c in circuits {
        for s in c.steps() {
            arcs.push((s.tail(&g).unwrap(), s.head(&g).unwrap()));
        }
    }
    arcs
}

/// Largest in-degree and out-degree of an arc list on `t` vertices.
pub fn max_in_out(t: usize, arcs: &[(usize, usize)]) -> (usize, usize) {
    let mut inn = vec![0usize; t];
    let mut out = vec![0usize; t];
    for &(a, b) in arcs {
        out[a] += 1;
        inn[b] += 1;
    }
    (inn.into_iter().max().unwrap_or(0), out.into_iter().max().unwrap_or(0))
}
