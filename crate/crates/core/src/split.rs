//! Splitting off pairs of edges.

use crate::certificate::ImmersionCertificate;
use crate::error::TrailError;
use crate::graph::{EdgeId, Multigraph, VertexId};

/// Replaces edges `e = uv` and `f = vw` by one fresh edge `uw`, in place.
/// Returns the id of the new edge. `e` and `f` may be parallel (the result is
/// a loop at `u`) or loops at `v`.
pub fn split_off_in_place(g: &mut Multigraph, e: EdgeId, f: EdgeId, v: VertexId) -> Result<EdgeId, TrailError> {
    if e == f {
        return Err(TrailError::SameEdge);
    }
    let ee = g.edge(e).ok_or(TrailError::UnknownEdge(e))?;
    let ff = g.edge(f).ok_or(TrailError::UnknownEdge(f))?;
    let u = ee.other(v).ok_or(TrailError::NotIncident(e, v))?;
    let w = ff.other(v).ok_or(TrailError::NotIncident(f, v))?;
    g.remove_edge(e);
    g.remove_edge(f);
    Ok(g.add_edge(u, w).expect("endpoints exist"))
}

/// Non-destructive [`split_off_in_place`].
pub fn split_off(g: &Multigraph, e: EdgeId, f: EdgeId, v: VertexId) -> Result<(Multigraph, EdgeId), TrailError> {
    let mut h = g.clone();
    let id = split_off_in_place(&mut h, e, f, v)?;
    Ok((h, id))
}

/// Performs every split-off along every branch trail of `cert`. Each trail
/// collapses to a single edge between its ends; the fresh ids are returned in
/// trail order. Trails of length one are left untouched.
pub fn replay_split_offs(g: &Multigraph, cert: &ImmersionCertificate) -> Result<(Multigraph, Vec<EdgeId>), TrailError> {
    let mut h = g.clone();
    let mut out = Vec::with_capacity(cert.trails.len());
    for t in &cert.trails {
        let steps = t.steps();
        let first = steps.first().ok_or(TrailError::Empty)?;
        let mut current = first.edge;
        for s in &steps[1..] {
            let v = s.tail(g)?;
            current = split_off_in_place(&mut h, current, s.edge, v)?;
        }
        out.push(current);
    }
    Ok((h, out))
}
