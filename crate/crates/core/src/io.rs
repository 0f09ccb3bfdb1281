//! Shared text format for graphs and hypergraphs.
//!
//! First line `r n m`, then `m` lines with `r` distinct vertex indices each.
//! Graphs use `r = 2`. Anything after `#` on a line is a comment. Serialized
//! output is canonical (edges lexicographically sorted), so
//! `parse(serialize(h)) == h`.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::UniformHypergraph;

pub fn parse_hypergraph(text: &str) -> Result<UniformHypergraph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("expected a nonnegative integer, got `{tok}`"),
                })
            })
            .collect::<Result<_>>()?;
        match header {
            None => {
                if fields.len() != 3 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("header must be `r n m`, got {} fields", fields.len()),
                    });
                }
                header = Some((fields[0], fields[1], fields[2]));
            }
            Some((r, _, m)) => {
                if edges.len() == m {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("more than the declared {m} edges"),
                    });
                }
                if fields.len() != r {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("edge needs {r} vertices, got {}", fields.len()),
                    });
                }
                edges.push(fields);
            }
        }
    }
    let (r, n, m) = header.ok_or(Error::Parse {
        line: 1,
        message: "missing `r n m` header".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("declared {m} edges but found {}", edges.len()),
        });
    }
    let mut h = UniformHypergraph::new(r, n)?;
    for e in &edges {
        h.add_edge(e)?;
    }
    Ok(h)
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    hypergraph_to_graph(&parse_hypergraph(text)?)
}

pub fn serialize_hypergraph(h: &UniformHypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.rank(), h.vertex_count(), h.edge_count());
    for e in h.edges() {
        let row: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn serialize_graph(g: &Graph) -> String {
    serialize_hypergraph(&graph_to_hypergraph(g))
}

/// View of a graph as a 2-uniform hypergraph.
pub fn graph_to_hypergraph(g: &Graph) -> UniformHypergraph {
    let edges: Vec<Vec<usize>> = g.edges().map(|(u, v)| vec![u, v]).collect();
    UniformHypergraph::with_edges(2, g.vertex_count(), &edges)
        .expect("graph edges are valid 2-sets")
}

pub fn hypergraph_to_graph(h: &UniformHypergraph) -> Result<Graph> {
    if h.rank() != 2 {
        return Err(Error::RankMismatch {
            host: h.rank(),
            expected: 2,
            got: h.rank(),
        });
    }
    let edges: Vec<(usize, usize)> = h.edges().map(|e| (e[0], e[1])).collect();
    Graph::with_edges(h.vertex_count(), &edges)
}
