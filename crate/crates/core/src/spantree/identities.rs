//! Quadratic identities among counts of graphs with vertices identified.
//! Each function returns the exact residual `lhs - rhs`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{count_matrix_tree, pair_count, pairs_count, TreeError};
use crate::exactnum::{from_bigint, Rational};
use crate::graph::{EdgeId, Multigraph, VertexId};

/// `t(G_ps) - t(G_qs) - t(G_pt) + t(G_qt)`.
fn bracket(g: &Multigraph, p: VertexId, q: VertexId, s: VertexId, t: VertexId) -> Result<BigInt, TreeError> {
    Ok(pair_count(g, p, s)? - pair_count(g, q, s)? - pair_count(g, p, t)? + pair_count(g, q, t)?)
}

fn quarter_square(x: BigInt) -> Rational {
    from_bigint(&x * &x) / from_bigint(BigInt::from(4))
}

/// `t(G) t(G_{pq,st}) = t(G_st) t(G_pq) - [t(G_ps) - t(G_qs) - t(G_pt) + t(G_qt)]^2 / 4`.
pub fn identification_quadratic(g: &Multigraph, p: VertexId, q: VertexId, s: VertexId, t: VertexId) -> Result<Rational, TreeError> {
    let lhs = count_matrix_tree(g)? * pairs_count(g, &[(p, q), (s, t)])?;
    let rhs = from_bigint(pair_count(g, s, t)? * pair_count(g, p, q)?) - quarter_square(bracket(g, p, q, s, t)?);
    Ok(from_bigint(lhs) - rhs)
}

/// `t(G) t(G_pqs) = t(G_ps) t(G_pq) - [t(G_ps) - t(G_qs) + t(G_pq)]^2 / 4`.
pub fn identification_quadratic_three_point(g: &Multigraph, p: VertexId, q: VertexId, s: VertexId) -> Result<Rational, TreeError> {
    let lhs = count_matrix_tree(g)? * pairs_count(g, &[(p, q), (p, s)])?;
    let (ps, pq, qs) = (pair_count(g, p, s)?, pair_count(g, p, q)?, pair_count(g, q, s)?);
    let rhs = from_bigint(&ps * &pq) - quarter_square(ps - qs + pq);
    Ok(from_bigint(lhs) - rhs)
}

/// `t(G) t(G/e_{st}) = t(G_st) t(G/e) - [bracket at the endpoints of e]^2 / 4`.
pub fn contraction_identity(g: &Multigraph, e: EdgeId, s: VertexId, t: VertexId) -> Result<Rational, TreeError> {
    let edge = g.edge(e)?.clone();
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    let (contracted, rename) = g.contract_edge(e)?;
    let t_contracted = count_matrix_tree(&contracted)?;
    let t_contracted_st = pair_count(&contracted, rename[&s], rename[&t])?;
    let lhs = count_matrix_tree(g)? * t_contracted_st;
    let rhs = from_bigint(pair_count(g, s, t)? * t_contracted) - quarter_square(bracket(g, edge.u, edge.v, s, t)?);
    Ok(from_bigint(lhs) - rhs)
}

/// `t(G) t((G - e)_st) = t(G_st) t(G - e) + [bracket at the endpoints of e]^2 / 4`.
pub fn deletion_identity(g: &Multigraph, e: EdgeId, s: VertexId, t: VertexId) -> Result<Rational, TreeError> {
    let edge = g.edge(e)?.clone();
    let deleted = g.delete_edge(e)?;
    let lhs = count_matrix_tree(g)? * pair_count(&deleted, s, t)?;
    let rhs = from_bigint(pair_count(g, s, t)? * count_matrix_tree(&deleted)?) + quarter_square(bracket(g, edge.u, edge.v, s, t)?);
    Ok(from_bigint(lhs) - rhs)
}

/// Uniform form: `4 t(G) t(G_st) = sum_e [t(G_{p s}) - t(G_{p t}) - t(G_{q s}) + t(G_{q t})]^2`.
pub fn spanning_tree_euler(g: &Multigraph, s: VertexId, t: VertexId) -> Result<Rational, TreeError> {
    let mut sum = BigInt::zero();
    for e in g.edges() {
        let b = bracket(g, e.u, e.v, s, t)?;
        sum += &b * &b;
    }
    let lhs = count_matrix_tree(g)? * pair_count(g, s, t)? * 4;
    Ok(from_bigint(lhs - sum))
}

/// First form: `t(G_st) = k t(G) + (1 / (4 t(G))) sum_{non-bridges} [..]^2`
/// where `k` counts the bridges separating `s` from `t`. Requires `G` connected.
pub fn spanning_tree_euler_bridges(g: &Multigraph, s: VertexId, t: VertexId) -> Result<Rational, TreeError> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if !g.is_connected() {
        return Err(TreeError::Disconnected);
    }
    let tg = count_matrix_tree(g)?;
    let mut k = 0usize;
    let mut sum = BigInt::zero();
    for e in g.edges() {
        if g.is_bridge(e.id)? {
            if !g.reachable_avoiding(s, Some(e.id)).contains(&t) {
                k += 1;
            }
        } else {
            let b = bracket(g, e.u, e.v, s, t)?;
            sum += &b * &b;
        }
    }
    let rhs = from_bigint(&tg * BigInt::from(k)) + from_bigint(sum) / from_bigint(tg * 4);
    Ok(from_bigint(pair_count(g, s, t)?) - rhs)
}
