//! Resistance by local rewriting: loop removal, parallel and series merges,
//! pendant pruning and the Delta-Y transform.
//!
//! This is an independent oracle for [`crate::resistnet`]. It succeeds on
//! series-parallel networks and on many others, but may give up.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{fraction_string, Rational};
use crate::graph::{Edge, EdgeId, GraphError, Multigraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("terminals coincide")]
    SameTerminal,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edges {0:?} do not form a triangle")]
    NotTriangle([EdgeId; 3]),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    LoopDrop,
    Parallel,
    Series,
    Prune,
    DeltaY,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::LoopDrop => "loop-drop",
            Rule::Parallel => "parallel",
            Rule::Series => "series",
            Rule::Prune => "prune",
            Rule::DeltaY => "delta-y",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub consumed: Vec<EdgeId>,
    pub produced: Vec<Edge>,
    pub removed_vertex: Option<VertexId>,
    pub added_vertex: Option<VertexId>,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule)?;
        let consumed: Vec<String> = self.consumed.iter().map(ToString::to_string).collect();
        write!(f, " -[{}]", consumed.join(","))?;
        let produced: Vec<String> = self
            .produced
            .iter()
            .map(|e| format!("{}:{}-{}:{}", e.id, e.u, e.v, fraction_string(&e.length)))
            .collect();
        write!(f, " +[{}]", produced.join(","))?;
        if let Some(v) = self.removed_vertex {
            write!(f, " -{v}")?;
        }
        if let Some(v) = self.added_vertex {
            write!(f, " +{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    /// One line per step.
    pub fn to_lines(&self) -> Vec<String> {
        self.steps.iter().map(ToString::to_string).collect()
    }

    /// Applies every step to `g` in order.
    pub fn replay(&self, g: &Multigraph) -> Result<Multigraph, GraphError> {
        let mut g = g.clone();
        for step in &self.steps {
            g = apply(&g, step)?;
        }
        Ok(g)
    }

    pub fn count(&self, rule: Rule) -> usize {
        self.steps.iter().filter(|s| s.rule == rule).count()
    }
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.to_lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn apply(g: &Multigraph, step: &Step) -> Result<Multigraph, GraphError> {
    let mut g = g.clone();
    for &e in &step.consumed {
        g = g.delete_edge(e)?;
    }
    if let Some(v) = step.removed_vertex {
        g = g.delete_vertex(v)?;
    }
    if let Some(v) = step.added_vertex {
        g.insert_vertex(v)?;
    }
    for e in &step.produced {
        g.insert_edge(e.clone())?;
    }
    Ok(g)
}

fn incident(g: &Multigraph, v: VertexId) -> Vec<&Edge> {
    g.edges().iter().filter(|e| e.u == v || e.v == v).collect()
}

fn key(e: &Edge) -> (VertexId, VertexId) {
    (e.u.min(e.v), e.u.max(e.v))
}

fn find_loop(g: &Multigraph) -> Option<Step> {
    g.edges().iter().find(|e| e.is_loop()).map(|e| Step {
        rule: Rule::LoopDrop,
        consumed: vec![e.id],
        produced: vec![],
        removed_vertex: None,
        added_vertex: None,
    })
}

fn find_parallel(g: &Multigraph, fresh: EdgeId) -> Option<Step> {
    let mut seen: BTreeMap<(VertexId, VertexId), &Edge> = BTreeMap::new();
    for e in g.edges() {
        if let Some(first) = seen.get(&key(e)) {
            let length = &first.length * &e.length / (&first.length + &e.length);
            return Some(Step {
                rule: Rule::Parallel,
                consumed: vec![first.id, e.id],
                produced: vec![Edge {
                    id: fresh,
                    u: first.u,
                    v: first.v,
                    length,
                }],
                removed_vertex: None,
                added_vertex: None,
            });
        }
        seen.insert(key(e), e);
    }
    None
}

fn find_series(g: &Multigraph, terminals: [VertexId; 2], fresh: EdgeId) -> Option<Step> {
    g.vertices().iter().filter(|v| !terminals.contains(v)).find_map(|&v| {
        let inc = incident(g, v);
        if inc.len() != 2 || inc.iter().any(|e| e.is_loop()) {
            return None;
        }
        let (a, b) = (inc[0], inc[1]);
        Some(Step {
            rule: Rule::Series,
            consumed: vec![a.id, b.id],
            produced: vec![Edge {
                id: fresh,
                u: a.other(v),
                v: b.other(v),
                length: &a.length + &b.length,
            }],
            removed_vertex: Some(v),
            added_vertex: None,
        })
    })
}

fn find_pendant(g: &Multigraph, terminals: [VertexId; 2]) -> Option<Step> {
    g.vertices().iter().filter(|v| !terminals.contains(v)).find_map(|&v| {
        let inc = incident(g, v);
        (inc.len() <= 1).then(|| Step {
            rule: Rule::Prune,
            consumed: inc.iter().map(|e| e.id).collect(),
            produced: vec![],
            removed_vertex: Some(v),
            added_vertex: None,
        })
    })
}

/// Lexicographically least triple of edge ids forming a triangle.
fn find_triangle(g: &Multigraph) -> Option<[EdgeId; 3]> {
    let edges: Vec<&Edge> = g.edges().iter().filter(|e| !e.is_loop()).collect();
    for (i, a) in edges.iter().enumerate() {
        for (j, b) in edges.iter().enumerate().skip(i + 1) {
            for c in edges.iter().skip(j + 1) {
                if triangle_vertices(a, b, c).is_some() {
                    return Some([a.id, b.id, c.id]);
                }
            }
        }
    }
    None
}

/// Vertices `(x, y, z)` with `a = xy`, `b = yz`, `c = zx`, if the edges form a triangle.
fn triangle_vertices(a: &Edge, b: &Edge, c: &Edge) -> Option<[VertexId; 3]> {
    if a.is_loop() || b.is_loop() || c.is_loop() {
        return None;
    }
    for (x, y) in [(a.u, a.v), (a.v, a.u)] {
        let z = if b.u == y {
            b.v
        } else if b.v == y {
            b.u
        } else {
            continue;
        };
        if z != x && z != y && key(c) == (z.min(x), z.max(x)) {
            return Some([x, y, z]);
        }
    }
    None
}

fn delta_y_step(g: &Multigraph, triangle: [EdgeId; 3]) -> Result<Step, ReductionError> {
    let a = g.edge(triangle[0])?;
    let b = g.edge(triangle[1])?;
    let c = g.edge(triangle[2])?;
    let [x, y, z] = triangle_vertices(a, b, c).ok_or(ReductionError::NotTriangle(triangle))?;
    let sum = &a.length + &b.length + &c.length;
    let center = VertexId(g.vertices().iter().map(|v| v.0 + 1).max().unwrap_or(0));
    let next = g.edges().iter().map(|e| e.id.0 + 1).max().unwrap_or(0);
    // arm at a vertex: product of the two triangle edges meeting there over the sum
    let arms = [(x, &c.length * &a.length), (y, &a.length * &b.length), (z, &b.length * &c.length)];
    let produced = arms
        .into_iter()
        .enumerate()
        .map(|(i, (v, prod))| Edge {
            id: EdgeId(next + i as u32),
            u: center,
            v,
            length: prod / &sum,
        })
        .collect();
    Ok(Step {
        rule: Rule::DeltaY,
        consumed: triangle.to_vec(),
        produced,
        removed_vertex: None,
        added_vertex: Some(center),
    })
}

/// Replaces a triangle by a star on a fresh center vertex; returns the new
/// graph and the center.
pub fn delta_y(g: &Multigraph, triangle: [EdgeId; 3]) -> Result<(Multigraph, VertexId), ReductionError> {
    let step = delta_y_step(g, triangle)?;
    let center = step.added_vertex.expect("delta-y adds a center");
    Ok((apply(g, &step)?, center))
}

fn fresh_edge(g: &Multigraph) -> EdgeId {
    EdgeId(g.edges().iter().map(|e| e.id.0 + 1).max().unwrap_or(0))
}

fn next_step(g: &Multigraph, terminals: [VertexId; 2]) -> Result<Option<Step>, ReductionError> {
    let fresh = fresh_edge(g);
    if let Some(step) = find_loop(g)
        .or_else(|| find_parallel(g, fresh))
        .or_else(|| find_series(g, terminals, fresh))
        .or_else(|| find_pendant(g, terminals))
    {
        return Ok(Some(step));
    }
    match find_triangle(g) {
        Some(t) => Ok(Some(delta_y_step(g, t)?)),
        None => Ok(None),
    }
}

/// Rewrites `g` until a single `s`-`t` edge remains and returns its length,
/// or `None` when no rule applies or the step budget (`10 m`) runs out.
pub fn reduce_two_terminal(
    g: &Multigraph,
    s: VertexId,
    t: VertexId,
) -> Result<(Option<Rational>, ReductionTrace), ReductionError> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(ReductionError::SameTerminal);
    }
    if !g.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    let budget = 10 * g.edge_count().max(1);
    let mut trace = ReductionTrace::default();
    let mut current = g.clone();
    while trace.steps.len() < budget {
        if current.vertex_count() == 2 && current.edge_count() == 1 {
            let length = current.edges()[0].length.clone();
            debug_assert!(!length.is_zero());
            return Ok((Some(length), trace));
        }
        match next_step(&current, [s, t])? {
            Some(step) => {
                current = apply(&current, &step)?;
                trace.steps.push(step);
            }
            None => break,
        }
    }
    Ok((None, trace))
}
