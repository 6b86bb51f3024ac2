//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! p multigraph <n> <m>
//! e <u> <v>
//! ```
//!
//! Vertices are 1-indexed in the file and become `0..n` in memory. Edges get
//! ids `0..m` in file order; `e u u` is a loop.

use std::fmt::Write as _;

use super::Multigraph;
use crate::error::GraphError;

pub fn parse_edge_list(text: &str) -> Result<Multigraph, GraphError> {
    let mut graph: Option<(Multigraph, usize)> = None;
    let mut header_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| GraphError::Parse { line, message };
        let mut fields = content.split_whitespace();
        match fields.next() {
            Some("p") => {
                if graph.is_some() {
                    return Err(err("duplicate header".into()));
                }
                if fields.next() != Some("multigraph") {
                    return Err(err("expected `p multigraph <n> <m>`".into()));
                }
                let n = parse_count(fields.next(), line, "vertex count")?;
                let m = parse_count(fields.next(), line, "edge count")?;
                if fields.next().is_some() {
                    return Err(err("trailing fields after header".into()));
                }
                header_line = line;
                graph = Some((Multigraph::with_vertices(n), m));
            }
            Some("e") => {
                let Some((g, _)) = graph.as_mut() else {
                    return Err(err("edge before header".into()));
                };
                let u = parse_count(fields.next(), line, "endpoint")?;
                let v = parse_count(fields.next(), line, "endpoint")?;
                if fields.next().is_some() {
                    return Err(err("trailing fields after edge".into()));
                }
                let n = g.vertex_count();
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(err(format!("vertex {w} outside 1..={n}")));
                    }
                }
                g.add_edge(u - 1, v - 1).unwrap();
            }
            Some(other) => return Err(err(format!("unknown record `{other}`"))),
            None => unreachable!(),
        }
    }
    let Some((g, m)) = graph else {
        return Err(GraphError::Parse { line: text.lines().count().max(1), message: "missing header".into() });
    };
    if g.edge_count() != m {
        return Err(GraphError::Parse {
            line: header_line,
            message: format!("header declares {m} edges, found {}", g.edge_count()),
        });
    }
    Ok(g)
}

fn parse_count(field: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let field = field.ok_or_else(|| GraphError::Parse { line, message: format!("missing {what}") })?;
    field
        .parse()
        .map_err(|_| GraphError::Parse { line, message: format!("invalid {what} `{field}`") })
}

/// Writes the canonical edge list. Vertices are renumbered by increasing id
/// and edges listed by increasing id, so graphs read with
/// [`parse_edge_list`] are reproduced byte for byte.
pub fn write_edge_list(g: &Multigraph) -> String {
    let index: std::collections::BTreeMap<_, _> = g.vertices().enumerate().map(|(i, v)| (v, i + 1)).collect();
    let mut out = String::new();
    writeln!(out, "p multigraph {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (_, e) in g.edges() {
        writeln!(out, "e {} {}", index[&e.u], index[&e.v]).unwrap();
    }
    out
}
