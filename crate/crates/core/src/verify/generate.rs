use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{derived_rng, VerifyError};
use crate::exactnum::{rat, Rational};
use crate::graph::{EdgeId, Multigraph, VertexId};

/// Attempts before a spec is declared unsatisfiable.
pub const MAX_ATTEMPTS: usize = 1000;
const MAX_VERTICES: usize = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LengthDist {
    Unit,
    /// `a/b` with `1 <= a <= 4`, `1 <= b <= 3`.
    SmallRationals,
}

impl LengthDist {
    fn sample(self, rng: &mut ChaCha8Rng) -> Rational {
        match self {
            LengthDist::Unit => rat(1, 1),
            LengthDist::SmallRationals => rat(rng.gen_range(1..=4), rng.gen_range(1..=3)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphGenSpec {
    pub vertices: RangeInclusive<usize>,
    /// Total edge count, loops included.
    pub edges: RangeInclusive<usize>,
    /// Chance that an extra edge repeats the endpoints of an existing edge.
    pub parallel_prob: f64,
    /// Chance that an extra edge is a self-loop.
    pub loop_prob: f64,
    pub lengths: LengthDist,
    pub seed: u64,
}

impl GraphGenSpec {
    /// Small multigraphs with rational lengths: 2 to 6 vertices, at most 10
    /// edges.
    pub fn small(seed: u64) -> Self {
        Self {
            vertices: 2..=6,
            edges: 1..=10,
            parallel_prob: 0.2,
            loop_prob: 0.05,
            lengths: LengthDist::SmallRationals,
            seed,
        }
    }

    pub fn unit(seed: u64) -> Self {
        Self {
            lengths: LengthDist::Unit,
            ..Self::small(seed)
        }
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        let bad = |m: &str| Err(VerifyError::InvalidSpec(m.to_string()));
        if self.vertices.is_empty() || *self.vertices.start() == 0 {
            return bad("vertex range must be non-empty and start at 1 or more");
        }
        if *self.vertices.end() > MAX_VERTICES {
            return bad("at most 64 vertices");
        }
        if self.edges.is_empty() {
            return bad("edge range is empty");
        }
        let p = |x: f64| (0.0..=1.0).contains(&x);
        if !p(self.parallel_prob) || !p(self.loop_prob) || self.parallel_prob + self.loop_prob > 1.0 {
            return bad("probabilities must lie in [0, 1] and sum to at most 1");
        }
        Ok(())
    }

    /// The same spec with an independent seed for instance `index`.
    pub fn for_instance(&self, index: usize, salt: u64) -> Self {
        Self {
            seed: derived_rng(self.seed, index, salt).gen(),
            ..self.clone()
        }
    }
}

fn attempt(spec: &GraphGenSpec, rng: &mut ChaCha8Rng) -> Option<Multigraph> {
    let n = rng.gen_range(spec.vertices.clone());
    let lo = (*spec.edges.start()).max(n - 1);
    if lo > *spec.edges.end() {
        return None;
    }
    let m = rng.gen_range(lo..=*spec.edges.end());
    let mut g = Multigraph::with_vertices(n);
    let mut order: Vec<VertexId> = g.vertices().to_vec();
    order.shuffle(rng);
    let mut pairs: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let (a, b) = (parent.min(order[i]), parent.max(order[i]));
        g.add_edge(a, b, spec.lengths.sample(rng)).ok()?;
        pairs.insert((a, b));
    }
    for _ in n - 1..m {
        let roll: f64 = rng.gen();
        if roll < spec.loop_prob {
            let v = order[rng.gen_range(0..n)];
            g.add_edge(v, v, spec.lengths.sample(rng)).ok()?;
            continue;
        }
        let existing: Vec<(VertexId, VertexId)> = pairs.iter().copied().collect();
        let absent: Vec<(VertexId, VertexId)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (VertexId(a as u32), VertexId(b as u32))))
            .filter(|pr| !pairs.contains(pr))
            .collect();
        let want_parallel = roll < spec.loop_prob + spec.parallel_prob;
        let (a, b) = if (want_parallel || absent.is_empty()) && !existing.is_empty() {
            if !want_parallel && spec.parallel_prob == 0.0 {
                return None;
            }
            existing[rng.gen_range(0..existing.len())]
        } else if !absent.is_empty() {
            absent[rng.gen_range(0..absent.len())]
        } else {
            return None;
        };
        g.add_edge(a, b, spec.lengths.sample(rng)).ok()?;
        pairs.insert((a, b));
    }
    Some(g)
}

/// Connected multigraph within `spec`, deterministic per seed: a random
/// spanning tree plus extra edges, rejected and redrawn when the counts
/// cannot be met.
pub fn generate(spec: &GraphGenSpec) -> Result<Multigraph, VerifyError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(g) = attempt(spec, &mut rng) {
            if g.is_connected() && spec.edges.contains(&g.edge_count()) {
                return Ok(g);
            }
        }
    }
    Err(VerifyError::Unsatisfiable(MAX_ATTEMPTS))
}

/// Two-terminal series-parallel graph grown from one edge by `steps` random
/// subdivisions and duplications. Returns the graph and its terminals.
pub fn series_parallel(seed: u64, steps: usize, lengths: LengthDist) -> (Multigraph, VertexId, VertexId) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Multigraph::with_vertices(2);
    let (s, t) = (VertexId(0), VertexId(1));
    g.add_edge(s, t, lengths.sample(&mut rng)).expect("terminals exist");
    for _ in 0..steps {
        let e = g.edges()[rng.gen_range(0..g.edge_count())].clone();
        if rng.gen_bool(0.5) {
            let mut h = g.delete_edge(e.id).expect("edge exists");
            let w = h.add_vertex();
            h.add_edge(e.u, w, lengths.sample(&mut rng)).expect("vertex exists");
            h.add_edge(w, e.v, lengths.sample(&mut rng)).expect("vertex exists");
            g = h;
        } else {
            g.add_edge(e.u, e.v, lengths.sample(&mut rng)).expect("vertex exists");
        }
    }
    (g, s, t)
}

/// A generated graph (padded to three vertices) with a triangle added on
/// three random distinct vertices. Returns the triangle's edges.
pub fn with_random_triangle(spec: &GraphGenSpec) -> Result<(Multigraph, [EdgeId; 3]), VerifyError> {
    let mut g = generate(spec)?;
    let mut rng = derived_rng(spec.seed, 0, 255);
    while g.vertex_count() < 3 {
        let anchor = g.vertices()[0];
        let w = g.add_vertex();
        g.add_edge(anchor, w, spec.lengths.sample(&mut rng)).expect("vertex exists");
    }
    let mut vs = g.vertices().to_vec();
    vs.shuffle(&mut rng);
    let (a, b, c) = (vs[0], vs[1], vs[2]);
    let mut add = |x, y| g.add_edge(x, y, spec.lengths.sample(&mut rng)).expect("vertex exists");
    let tri = [add(a, b), add(b, c), add(c, a)];
    Ok((g, tri))
}
