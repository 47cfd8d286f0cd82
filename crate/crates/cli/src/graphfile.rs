//! The plain-text graph format:
//!
//! ```text
//! # comment
//! vertex <id>
//! edge <id> <u> <v> [length]
//! ```
//!
//! Ids are non-negative integers. Vertices named by an edge need no `vertex`
//! line. Lengths are positive integers or fractions `a/b` and default to 1.

use rayleigh::exactnum::{fraction_string, parse_rational, Rational};
use rayleigh::graph::{Edge, EdgeId, Multigraph, VertexId};
use num_traits::{One, Signed};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn id(token: &str, prefix: char) -> Option<u32> {
    token.strip_prefix(prefix).unwrap_or(token).parse().ok()
}

/// Vertex argument, `3` or `v3`.
pub fn vertex_arg(token: &str) -> Option<VertexId> {
    id(token, 'v').map(VertexId)
}

/// Edge argument, `3` or `e3`.
pub fn edge_arg(token: &str) -> Option<EdgeId> {
    id(token, 'e').map(EdgeId)
}

pub fn parse(text: &str) -> Result<Multigraph, ParseError> {
    let mut g = Multigraph::new();
    let mut declared = std::collections::BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let err = |message: String| ParseError { line: i + 1, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let ensure = |g: &mut Multigraph, v: VertexId| {
            if !g.has_vertex(v) {
                g.insert_vertex(v).expect("checked absent");
            }
        };
        match words[0] {
            "vertex" => {
                let [_, v] = words[..] else {
                    return Err(err("expected `vertex <id>`".into()));
                };
                let v = vertex_arg(v).ok_or_else(|| err(format!("bad vertex id `{v}`")))?;
                if !declared.insert(v) {
                    return Err(err(format!("vertex {} declared twice", v.0)));
                }
                ensure(&mut g, v);
            }
            "edge" => {
                if !(4..=5).contains(&words.len()) {
                    return Err(err("expected `edge <id> <u> <v> [length]`".into()));
                }
                let e = edge_arg(words[1]).ok_or_else(|| err(format!("bad edge id `{}`", words[1])))?;
                let u = vertex_arg(words[2]).ok_or_else(|| err(format!("bad vertex id `{}`", words[2])))?;
                let v = vertex_arg(words[3]).ok_or_else(|| err(format!("bad vertex id `{}`", words[3])))?;
                let length = match words.get(4) {
                    Some(w) => parse_rational(w).ok_or_else(|| err(format!("bad length `{w}`")))?,
                    None => Rational::one(),
                };
                if !length.is_positive() {
                    return Err(err(format!("edge {} has non-positive length", e.0)));
                }
                if g.edge(e).is_ok() {
                    return Err(err(format!("duplicate edge id {}", e.0)));
                }
                ensure(&mut g, u);
                ensure(&mut g, v);
                g.insert_edge(Edge { id: e, u, v, length }).map_err(|x| err(x.to_string()))?;
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    Ok(g)
}

/// Renders `g` in the same format; `parse(&render(g)) == g`.
pub fn render(g: &Multigraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        out.push_str(&format!("vertex {}\n", v.0));
    }
    for e in g.edges() {
        out.push_str(&format!("edge {} {} {} {}\n", e.id.0, e.u.0, e.v.0, fraction_string(&e.length)));
    }
    out
}
