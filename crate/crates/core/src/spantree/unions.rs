//! Counts of graphs glued from parts, from the parts' own counts, plus
//! builders for the glued graphs so every formula can be checked by counting.
//!
//! Formulas with a quotient are evaluated as integer cross-products, so no
//! division ever happens.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::{TreeCount, TreeError};
use crate::graph::{Multigraph, VertexId, VertexPartition};

fn nonzero(xs: &[BigInt]) -> Result<(), TreeError> {
    match xs.iter().position(Zero::is_zero) {
        Some(index) => Err(TreeError::ZeroDenominator { index }),
        None => Ok(()),
    }
}

/// `sum_i x_i prod_{j != i} y_j`.
fn cross_sum(x: &[BigInt], y: &[BigInt]) -> BigInt {
    (0..x.len())
        .map(|i| {
            let others: BigInt = y.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).product();
            &x[i] * others
        })
        .sum()
}

/// Parts sharing a single cut vertex (or glued along a tree skeleton): the
/// product of the parts' counts.
pub fn union_cut_vertex(parts: &[TreeCount]) -> Result<TreeCount, TreeError> {
    if parts.is_empty() {
        return Err(TreeError::NoParts);
    }
    Ok(parts.iter().product())
}

/// Two parts sharing exactly two vertices `p`, `q`:
/// `t1 t2_pq + t2 t1_pq`.
pub fn union_two_vertices(t1: &TreeCount, t1pq: &TreeCount, t2: &TreeCount, t2pq: &TreeCount) -> TreeCount {
    t1 * t2pq + t2 * t1pq
}

/// `k` parts sharing the same two vertices:
/// `prod_j t_{j,pq} sum_i t_i / t_{i,pq}`.
pub fn union_k_banana(t: &[TreeCount], tpq: &[TreeCount]) -> Result<TreeCount, TreeError> {
    if t.is_empty() {
        return Err(TreeError::NoParts);
    }
    if t.len() != tpq.len() {
        return Err(TreeError::LengthMismatch);
    }
    nonzero(tpq)?;
    Ok(cross_sum(t, tpq))
}

/// Edges of `C_n` replaced by parts `G_i` with terminals `s_i`, `t_i`:
/// `prod_j t_j sum_i t_{i,st} / t_i`.
pub fn union_cycle_replacement(t: &[TreeCount], t_st: &[TreeCount]) -> Result<TreeCount, TreeError> {
    if t.is_empty() {
        return Err(TreeError::NoParts);
    }
    if t.len() != t_st.len() {
        return Err(TreeError::LengthMismatch);
    }
    nonzero(t)?;
    Ok(cross_sum(t_st, t))
}

/// Two vertices joined by `k` paths; path `i` is a chain of parts, each given
/// as `(t, t_st)`. Returns `t` of the whole graph.
pub fn union_banana_of_paths(paths: &[Vec<(TreeCount, TreeCount)>]) -> Result<TreeCount, TreeError> {
    if paths.is_empty() || paths.iter().any(Vec::is_empty) {
        return Err(TreeError::NoParts);
    }
    let mut whole = Vec::with_capacity(paths.len());
    let mut closed = Vec::with_capacity(paths.len());
    for path in paths {
        let (t, t_st): (Vec<BigInt>, Vec<BigInt>) = path.iter().cloned().unzip();
        whole.push(t.iter().product::<BigInt>());
        // ends identified: the chain closes into a cycle of parts
        closed.push(cross_sum(&t_st, &t));
    }
    Ok(cross_sum(&whole, &closed))
}

/// Uniform case: `k` paths each of `n` copies of `H`:
/// `k n^{k-1} t(H)^{(n-1)(k-1)+n} t(H_st)^{k-1}`.
pub fn union_banana_uniform(k: usize, n: usize, t_h: &TreeCount, t_hst: &TreeCount) -> Result<TreeCount, TreeError> {
    if k == 0 || n == 0 {
        return Err(TreeError::NoParts);
    }
    let k_big = BigInt::from(k);
    let n_big = BigInt::from(n);
    Ok(&k_big
        * Pow::pow(&n_big, (k - 1) as u32)
        * Pow::pow(t_h, ((n - 1) * (k - 1) + n) as u32)
        * Pow::pow(t_hst, (k - 1) as u32))
}

/// Pairwise identified counts of a part at its three shared vertices:
/// `ps`, `pq`, `qs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCounts {
    pub ps: TreeCount,
    pub pq: TreeCount,
    pub qs: TreeCount,
}

/// Two parts sharing exactly three vertices `p`, `q`, `s`:
/// `t1 t2_pqs + t2 t1_pqs + (a1(-a2+b2+c2) + b1(a2-b2+c2) + c1(a2+b2-c2)) / 2`
/// with `a = t_ps`, `b = t_pq`, `c = t_qs`.
pub fn union_three_vertices(
    t1: &TreeCount,
    t2: &TreeCount,
    pairs1: &PairCounts,
    pairs2: &PairCounts,
    t1pqs: &TreeCount,
    t2pqs: &TreeCount,
) -> Result<TreeCount, TreeError> {
    let (a1, b1, c1) = (&pairs1.ps, &pairs1.pq, &pairs1.qs);
    let (a2, b2, c2) = (&pairs2.ps, &pairs2.pq, &pairs2.qs);
    let bracket = a1 * (b2 + c2 - a2) + b1 * (a2 + c2 - b2) + c1 * (a2 + b2 - c2);
    let (half, rem) = bracket.div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(TreeError::OddBracket);
    }
    Ok(t1 * t2pqs + t2 * t1pqs + half)
}

/// Both halves equal: `4 t(G1) t(G1_pqs)`.
pub fn union_three_vertices_identical(t: &TreeCount, tpqs: &TreeCount) -> TreeCount {
    t * tpqs * 4
}

/// A path attached at its two ends to `p`, `q` of `G1` where the path has
/// `k >= 2` edges: `k t(G1) + t(G1_pq)`.
pub fn union_path_attachment(k: usize, t1: &TreeCount, t1pq: &TreeCount) -> TreeCount {
    union_two_vertices(t1, t1pq, &BigInt::one(), &BigInt::from(k))
}

/// Glues `parts[i]` in sequence: terminal `t_i` of part `i` is identified with
/// terminal `s_{i+1}` of the next. Returns the chain and the images of the
/// first `s` and the last `t`.
pub fn chain(parts: &[(Multigraph, VertexId, VertexId)]) -> Result<(Multigraph, VertexId, VertexId), TreeError> {
    let (first, s0, t0) = parts.first().ok_or(TreeError::NoParts)?;
    let mut g = first.clone();
    let (mut start, mut end) = (*s0, *t0);
    for (part, s, t) in &parts[1..] {
        let (glued, map_self, map_other) = g.glue(part, &[(end, *s)])?;
        start = map_self[&start];
        end = map_other[t];
        g = glued;
    }
    Ok((g, start, end))
}

/// Joins `parts` (each with two terminals) at common terminals `p` and `q`.
pub fn banana_of(parts: &[(Multigraph, VertexId, VertexId)]) -> Result<(Multigraph, VertexId, VertexId), TreeError> {
    let (first, p0, q0) = parts.first().ok_or(TreeError::NoParts)?;
    let mut g = first.clone();
    let (mut p, mut q) = (*p0, *q0);
    for (part, s, t) in &parts[1..] {
        let (glued, map_self, _) = g.glue(part, &[(p, *s), (q, *t)])?;
        p = map_self[&p];
        q = map_self[&q];
        g = glued;
    }
    Ok((g, p, q))
}

/// Closes a chain of parts into a cycle.
pub fn cycle_of(parts: &[(Multigraph, VertexId, VertexId)]) -> Result<Multigraph, TreeError> {
    let (g, s, t) = chain(parts)?;
    if s == t {
        return Ok(g);
    }
    Ok(g.identify(&VertexPartition::pair(s, t))?.0)
}
