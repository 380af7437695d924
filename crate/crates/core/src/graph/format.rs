//! The line-oriented text format.
//!
//! ```text
//! # comment
//! graph <n> <m>        or        bigraph <k> <m>
//! u v [w]                        i j
//! ```
//!
//! Indices are 0-based; weights are nonnegative decimal integers defaulting
//! to 1. Blank lines and anything after `#` are ignored.

use std::fmt;

use super::{BipartiteGraph, Edge, Graph};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGraph {
    General(Graph),
    Bipartite(BipartiteGraph),
}

impl AnyGraph {
    /// The general-graph view; bipartite graphs are flattened with
    /// [`BipartiteGraph::to_graph`].
    pub fn into_general(self) -> Graph {
        match self {
            AnyGraph::General(g) => g,
            AnyGraph::Bipartite(b) => b.to_graph(),
        }
    }
}

impl fmt::Display for AnyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyGraph::General(g) => g.fmt(f),
            AnyGraph::Bipartite(b) => b.fmt(f),
        }
    }
}

enum Header {
    General { n: usize },
    Bipartite { k: usize },
}

pub fn parse_graph(text: &str) -> Result<AnyGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (kind, m) = match fields.as_slice() {
        [tag, size, m] => {
            let size = parse_index(header_line, size, "vertex count")?;
            let m = parse_index(header_line, m, "edge count")?;
            match *tag {
                "graph" => (Header::General { n: size }, m),
                "bigraph" => (Header::Bipartite { k: size }, m),
                other => {
                    return Err(Error::parse(
                        header_line,
                        format!("unknown header {other:?}, expected \"graph\" or \"bigraph\""),
                    ))
                }
            }
        }
        _ => {
            return Err(Error::parse(
                header_line,
                "malformed header, expected \"graph <n> <m>\" or \"bigraph <k> <m>\"",
            ))
        }
    };

    let mut seen = std::collections::HashSet::new();
    let mut general = Vec::new();
    let mut bipartite = Vec::new();
    let mut last_line = header_line;
    for _ in 0..m {
        let (line, content) = lines
            .next()
            .ok_or_else(|| Error::parse(last_line + 1, format!("expected {m} edge lines")))?;
        last_line = line;
        let fields: Vec<&str> = content.split_whitespace().collect();
        match kind {
            Header::General { n } => {
                let (u, v, w) = match fields.as_slice() {
                    [u, v] => (*u, *v, None),
                    [u, v, w] => (*u, *v, Some(*w)),
                    _ => return Err(Error::parse(line, "expected \"u v\" or \"u v w\"")),
                };
                let u = parse_vertex(line, u, n)?;
                let v = parse_vertex(line, v, n)?;
                let w = match w {
                    None => 1,
                    Some(w) if w.starts_with('-') => {
                        return Err(Error::parse(line, format!("negative weight {w}")))
                    }
                    Some(w) => w
                        .parse()
                        .map_err(|_| Error::parse(line, format!("invalid weight {w:?}")))?,
                };
                if u == v {
                    return Err(Error::parse(line, format!("self-loop at vertex {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
                }
                general.push(Edge { u, v, w });
            }
            Header::Bipartite { k } => {
                let [i, j] = fields.as_slice() else {
                    return Err(Error::parse(line, "expected \"i j\""));
                };
                let i = parse_vertex(line, i, k)?;
                let j = parse_vertex(line, j, k)?;
                if !seen.insert((i, j)) {
                    return Err(Error::parse(line, format!("duplicate edge {i} {j}")));
                }
                bipartite.push((i, j));
            }
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::parse(line, format!("more than the {m} declared edge lines")));
    }

    let relocate = |e: Error| match e {
        Error::Parse { .. } => e,
        other => Error::parse(header_line, other.to_string()),
    };
    Ok(match kind {
        Header::General { n } => AnyGraph::General(Graph::new(n, general).map_err(relocate)?),
        Header::Bipartite { k } => AnyGraph::Bipartite(BipartiteGraph::new(k, bipartite).map_err(relocate)?),
    })
}

fn parse_index(line: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} {token:?}")))
}

fn parse_vertex(line: usize, token: &str, n: usize) -> Result<usize> {
    let v = parse_index(line, token, "vertex index")?;
    if v >= n {
        return Err(Error::parse(line, format!("vertex index {v} out of range 0..{n}")));
    }
    Ok(v)
}
