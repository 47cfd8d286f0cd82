//! Spanning-tree counts by four independent methods, the tree expressions for
//! resistance and voltage, and the averaging, union, vertex-deletion and
//! identification identities.
//!
//! Counts ignore edge lengths and self-loops. Parallel edges count with
//! multiplicity. A single vertex has exactly one spanning tree.

mod closed;
mod identities;
mod unions;

pub use closed::*;
pub use identities::*;
pub use unions::*;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{bareiss_det, Rational};
use crate::graph::{EdgeId, GraphError, Multigraph, VertexId, VertexPartition};

pub type TreeCount = BigInt;

/// Largest number of non-loop edges the enumeration oracle accepts.
pub const ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("graph has no vertices")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{edges} edges exceed the enumeration budget of {limit}")]
    EnumerationBudget { edges: usize, limit: usize },
    #[error("edge lengths must all be 1 for the tree formulas")]
    NonUnitLengths,
    #[error("vertex {0} is a cut vertex; the vertex-deletion expansion requires a non-cut vertex")]
    CutVertex(VertexId),
    #[error("edge {0} is a bridge; averaging over deletions requires a bridgeless graph")]
    Bridge(EdgeId),
    #[error("no parts given")]
    NoParts,
    #[error("part lists have different lengths")]
    LengthMismatch,
    #[error("part {index} has a zero count in a denominator")]
    ZeroDenominator { index: usize },
    #[error("bracket is odd; the inputs are inconsistent")]
    OddBracket,
    #[error("invalid star: {0}")]
    InvalidStar(String),
    #[error("{family} is not defined for n = {n}, a = {a}")]
    OutOfRange { family: &'static str, n: usize, a: usize },
}

fn non_empty(g: &Multigraph) -> Result<(), TreeError> {
    if g.vertex_count() == 0 {
        Err(TreeError::Empty)
    } else {
        Ok(())
    }
}

/// Determinant of the reduced combinatorial Laplacian (row and column of the
/// first vertex removed).
pub fn count_matrix_tree(g: &Multigraph) -> Result<TreeCount, TreeError> {
    non_empty(g)?;
    let n = g.vertex_count();
    if n == 1 {
        return Ok(BigInt::one());
    }
    let mut lap = vec![vec![BigInt::zero(); n]; n];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        let a = g.check_vertex(e.u)?;
        let b = g.check_vertex(e.v)?;
        lap[a][a] += 1;
        lap[b][b] += 1;
        lap[a][b] -= 1;
        lap[b][a] -= 1;
    }
    let reduced: Vec<Vec<BigInt>> = lap.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect();
    Ok(bareiss_det(reduced))
}

/// Loop-free edge list on vertices `0..n`.
#[derive(Clone)]
struct Skeleton {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Skeleton {
    fn of(g: &Multigraph) -> Self {
        let idx = |v| g.index_of(v).expect("edge endpoints are vertices");
        Self {
            n: g.vertex_count(),
            edges: g
                .edges()
                .iter()
                .filter(|e| !e.is_loop())
                .map(|e| (idx(e.u), idx(e.v)))
                .collect(),
        }
    }

    fn without(&self, i: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.swap_remove(i);
        Self { n: self.n, edges }
    }

    /// Merges the endpoints of edge `i` (the higher index into the lower),
    /// dropping loops that appear.
    fn contract(&self, i: usize) -> Self {
        let (a, b) = self.edges[i];
        let (keep, gone) = (a.min(b), a.max(b));
        let relabel = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &(u, v))| (relabel(u), relabel(v)))
            .filter(|(u, v)| u != v)
            .collect();
        Self { n: self.n - 1, edges }
    }

    fn reach(&self, skip: Option<usize>) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for (j, &(u, v)) in self.edges.iter().enumerate() {
                if Some(j) == skip {
                    continue;
                }
                let y = if u == x {
                    v
                } else if v == x {
                    u
                } else {
                    continue;
                };
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    fn connected(&self) -> bool {
        self.reach(None).iter().all(|&s| s)
    }

    fn is_bridge(&self, i: usize) -> bool {
        !self.reach(Some(i)).iter().all(|&s| s)
    }
}

fn dc(s: Skeleton) -> BigInt {
    if s.n == 1 {
        return BigInt::one();
    }
    if !s.connected() {
        return BigInt::zero();
    }
    if s.edges.len() == s.n - 1 {
        return BigInt::one();
    }
    // a bridge lies in every spanning tree
    if let Some(i) = (0..s.edges.len()).find(|&i| s.is_bridge(i)) {
        return dc(s.contract(i));
    }
    let mut degree = vec![0usize; s.n];
    for &(u, v) in &s.edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let hub = (0..s.n).max_by_key(|&x| (degree[x], std::cmp::Reverse(x))).expect("non-empty");
    let i = s.edges.iter().position(|&(u, v)| u == hub || v == hub).expect("connected hub has an edge");
    dc(s.without(i)) + dc(s.contract(i))
}

/// `t(G) = t(G - e) + t(G/e)`, with bridges contracted outright.
pub fn count_deletion_contraction(g: &Multigraph) -> Result<TreeCount, TreeError> {
    non_empty(g)?;
    Ok(dc(Skeleton::of(g)))
}

/// Brute force over all `(n-1)`-subsets of non-loop edges.
pub fn count_enumeration(g: &Multigraph) -> Result<TreeCount, TreeError> {
    non_empty(g)?;
    let s = Skeleton::of(g);
    if s.edges.len() > ENUMERATION_LIMIT {
        return Err(TreeError::EnumerationBudget {
            edges: s.edges.len(),
            limit: ENUMERATION_LIMIT,
        });
    }
    let need = s.n - 1;
    let m = s.edges.len();
    let mut count = 0u64;
    for mask in 0u32..(1u32 << m) {
        if mask.count_ones() as usize != need {
            continue;
        }
        let mut parent: Vec<usize> = (0..s.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        let acyclic = (0..m).filter(|&j| mask >> j & 1 == 1).all(|j| {
            let (u, v) = s.edges[j];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
            a != b
        });
        if acyclic {
            count += 1;
        }
    }
    Ok(BigInt::from(count))
}

/// `t` of the graph with every group of `partition` identified.
pub fn count_identified(g: &Multigraph, partition: &VertexPartition) -> Result<TreeCount, TreeError> {
    let (h, _) = g.identify(partition)?;
    count_matrix_tree(&h)
}

/// `t(G_{a b})` with the convention `t(G_{a a}) = 0`.
pub fn pair_count(g: &Multigraph, a: VertexId, b: VertexId) -> Result<TreeCount, TreeError> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if a == b {
        return Ok(BigInt::zero());
    }
    count_identified(g, &VertexPartition::pair(a, b))
}

/// `t(G_{p1 q1, p2 q2, ...})`: pairs are identified one after another, and the
/// count is zero as soon as a pair's two images already coincide.
pub fn pairs_count(g: &Multigraph, pairs: &[(VertexId, VertexId)]) -> Result<TreeCount, TreeError> {
    let mut current = g.clone();
    let mut images: std::collections::BTreeMap<VertexId, VertexId> = g.vertices().iter().map(|&v| (v, v)).collect();
    for &(a, b) in pairs {
        g.check_vertex(a)?;
        g.check_vertex(b)?;
        let (x, y) = (images[&a], images[&b]);
        if x == y {
            return Ok(BigInt::zero());
        }
        let (next, rename) = current.identify(&VertexPartition::pair(x, y))?;
        for img in images.values_mut() {
            *img = rename[img];
        }
        current = next;
    }
    count_matrix_tree(&current)
}

fn unit_connected(g: &Multigraph) -> Result<(), TreeError> {
    non_empty(g)?;
    if !g.is_unit_length() {
        return Err(TreeError::NonUnitLengths);
    }
    if !g.is_connected() {
        return Err(TreeError::Disconnected);
    }
    Ok(())
}

/// `r(p,q) = t(G_pq) / t(G)` on a connected unit-length graph.
pub fn resistance_from_trees(g: &Multigraph, p: VertexId, q: VertexId) -> Result<Rational, TreeError> {
    unit_connected(g)?;
    let t = count_matrix_tree(g)?;
    Ok(Rational::new(pair_count(g, p, q)?, t))
}

/// `j_p(q,s) = (t(G_pq) + t(G_ps) - t(G_qs)) / (2 t(G))` on a connected
/// unit-length graph.
pub fn voltage_from_trees(g: &Multigraph, p: VertexId, q: VertexId, s: VertexId) -> Result<Rational, TreeError> {
    unit_connected(g)?;
    let t = count_matrix_tree(g)?;
    let num = pair_count(g, p, q)? + pair_count(g, p, s)? - pair_count(g, q, s)?;
    Ok(Rational::new(num, t * 2))
}

/// Returns `t(G)` and `(n-1) t(G) - sum_e t(G/e)` over non-loop edges.
pub fn averaging_contractions(g: &Multigraph) -> Result<(TreeCount, BigInt), TreeError> {
    non_empty(g)?;
    if !g.is_connected() {
        return Err(TreeError::Disconnected);
    }
    let t = count_matrix_tree(g)?;
    let mut sum = BigInt::zero();
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        sum += count_matrix_tree(&g.contract_edge(e.id)?.0)?;
    }
    let residual = &t * BigInt::from(g.vertex_count() - 1) - sum;
    Ok((t, residual))
}

/// Returns `t(G)` and `g t(G) - sum_e t(G - e)` for a bridgeless connected
/// graph of genus `g`.
pub fn averaging_deletions(g: &Multigraph) -> Result<(TreeCount, BigInt), TreeError> {
    non_empty(g)?;
    if !g.is_connected() {
        return Err(TreeError::Disconnected);
    }
    for e in g.edges() {
        if g.is_bridge(e.id)? {
            return Err(TreeError::Bridge(e.id));
        }
    }
    let t = count_matrix_tree(g)?;
    let mut sum = BigInt::zero();
    for e in g.edges() {
        sum += count_matrix_tree(&g.delete_edge(e.id)?)?;
    }
    let residual = &t * BigInt::from(g.genus()) - sum;
    Ok((t, residual))
}

/// Residuals of `R/(1+R) = t(G/e)/t(G)` and `1/(1+R) = t(G-e)/t(G)` with
/// `R = t(G/e)/t(G-e)`, and of `R` against the resistance of `G - e` between
/// the endpoints. Requires a unit-length graph and a non-bridge, non-loop `e`.
pub fn edge_ratio_residuals(g: &Multigraph, e: EdgeId) -> Result<[Rational; 3], TreeError> {
    unit_connected(g)?;
    let edge = g.edge(e)?.clone();
    if edge.is_loop() || g.is_bridge(e)? {
        return Err(TreeError::Bridge(e));
    }
    let t = count_matrix_tree(g)?;
    let tc = count_matrix_tree(&g.contract_edge(e)?.0)?;
    let deleted = g.delete_edge(e)?;
    let td = count_matrix_tree(&deleted)?;
    let r = Rational::new(tc.clone(), td.clone());
    let one = Rational::one();
    let ratio1 = &r / (&one + &r) - Rational::new(tc, t.clone());
    let ratio2 = &one / (&one + &r) - Rational::new(td, t);
    let direct = crate::resistnet::Network::new(deleted)
        .and_then(|n| n.resistance(edge.u, edge.v))
        .map_err(|_| TreeError::Disconnected)?;
    Ok([ratio1, ratio2, r - direct])
}

/// One summand of the vertex-deletion expansion: `coefficient * t(H_S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetTerm {
    pub subset: Vec<VertexId>,
    pub coefficient: BigInt,
    pub count: TreeCount,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexDeletionReport {
    pub vertex: VertexId,
    /// Neighbours of the deleted vertex with their edge multiplicities.
    pub neighbors: Vec<(VertexId, usize)>,
    /// Singleton subsets are folded into one term with `S = {}`, coefficient
    /// `sum a_i` and count `t(H)`.
    pub terms: Vec<SubsetTerm>,
}

impl VertexDeletionReport {
    pub fn total(&self) -> TreeCount {
        self.terms.iter().map(|t| &t.coefficient * &t.count).sum()
    }
}

/// `sum_i a_i h({}) + sum_{|S| >= 2} (prod_{i in S} a_i) h(S)`, with subsets
/// of `0..a.len()` passed to `h` as sorted index lists.
pub fn vertex_deletion_expansion(
    a: &[BigInt],
    mut h: impl FnMut(&[usize]) -> Result<BigInt, TreeError>,
) -> Result<Vec<(Vec<usize>, BigInt, BigInt)>, TreeError> {
    let mut terms = vec![(Vec::new(), a.iter().sum::<BigInt>(), h(&[])?)];
    let k = a.len();
    assert!(k < 32, "too many neighbours");
    let mut masks: Vec<u32> = (1u32..(1u32 << k)).filter(|m| m.count_ones() >= 2).collect();
    masks.sort_by_key(|m| (m.count_ones(), m.reverse_bits()));
    for mask in masks {
        let subset: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let coefficient: BigInt = subset.iter().map(|&i| a[i].clone()).product();
        let count = h(&subset)?;
        terms.push((subset, coefficient, count));
    }
    Ok(terms)
}

/// `t(G)` through `H = G - u`: `(sum a_i) t(H) + sum_{|S|>=2} (prod a_i) t(H_S)`
/// over neighbour subsets `S`, where `a_i` counts the edges from `u` to `p_i`.
pub fn vertex_deletion_count(g: &Multigraph, u: VertexId) -> Result<(TreeCount, VertexDeletionReport), TreeError> {
    non_empty(g)?;
    g.check_vertex(u)?;
    if !g.is_connected() {
        return Err(TreeError::Disconnected);
    }
    let neighbors = g.neighbors_with_multiplicity(u)?;
    if g.vertex_count() == 1 {
        let report = VertexDeletionReport {
            vertex: u,
            neighbors,
            terms: vec![],
        };
        return Ok((BigInt::one(), report));
    }
    if g.is_cut_vertex(u)? {
        return Err(TreeError::CutVertex(u));
    }
    let h = g.delete_vertex(u)?;
    let a: Vec<BigInt> = neighbors.iter().map(|&(_, m)| BigInt::from(m)).collect();
    let expansion = vertex_deletion_expansion(&a, |subset| {
        if subset.is_empty() {
            return count_matrix_tree(&h);
        }
        let group = subset.iter().map(|&i| neighbors[i].0).collect();
        count_identified(&h, &VertexPartition::single(group))
    })?;
    let terms = expansion
        .into_iter()
        .map(|(subset, coefficient, count)| SubsetTerm {
            subset: subset.iter().map(|&i| neighbors[i].0).collect(),
            coefficient,
            count,
        })
        .collect();
    let report = VertexDeletionReport { vertex: u, neighbors, terms };
    Ok((report.total(), report))
}

/// Multi-edges from an anchor vertex to each target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSpec {
    pub anchor: VertexId,
    pub targets: Vec<(VertexId, usize)>,
}

impl StarSpec {
    pub fn validate(&self, h: &Multigraph) -> Result<(), TreeError> {
        h.check_vertex(self.anchor)?;
        let mut seen = BTreeSet::new();
        for &(v, a) in &self.targets {
            h.check_vertex(v)?;
            if v == self.anchor {
                return Err(TreeError::InvalidStar(format!("target {v} is the anchor")));
            }
            if a == 0 {
                return Err(TreeError::InvalidStar(format!("target {v} has multiplicity 0")));
            }
            if !seen.insert(v) {
                return Err(TreeError::InvalidStar(format!("target {v} listed twice")));
            }
        }
        Ok(())
    }

    /// `H` with the star's edges added (unit length).
    pub fn build(&self, h: &Multigraph) -> Result<Multigraph, TreeError> {
        self.validate(h)?;
        let mut g = h.clone();
        for &(v, a) in &self.targets {
            for _ in 0..a {
                g.add_unit_edge(self.anchor, v)?;
            }
        }
        Ok(g)
    }
}

/// `t(H + star) = t(H) + sum_{anchor in S, |S| >= 2} (prod_{i in S - anchor} a_i) t(H_S)`.
pub fn star_augmentation_count(h: &Multigraph, spec: &StarSpec) -> Result<TreeCount, TreeError> {
    spec.validate(h)?;
    let mut total = count_matrix_tree(h)?;
    let k = spec.targets.len();
    for mask in 1u64..(1u64 << k) {
        let mut group = vec![spec.anchor];
        let mut coefficient = BigInt::one();
        for (i, &(v, a)) in spec.targets.iter().enumerate() {
            if mask >> i & 1 == 1 {
                group.push(v);
                coefficient *= a;
            }
        }
        total += coefficient * count_identified(h, &VertexPartition::single(group))?;
    }
    Ok(total)
}
