//! Explicit Rayleigh laws, the resistance derivative, Euler decompositions
//! and voltage transfer identities.
//!
//! Every quantity on a surgered graph (`G_pq`, `G - e`, `G/e`, `G'`) comes
//! from a freshly built [`Network`] for that graph, never from the identity
//! under test.

use num_traits::{One, Zero};

use super::{Network, NetworkError};
use crate::exactnum::Rational;
use crate::graph::{EdgeId, Rename, VertexId, VertexPartition};

/// Before/after resistances with the predicted correction and the exact
/// residual of the law (zero when the law holds).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub r_before: Rational,
    pub r_after: Rational,
    pub correction: Rational,
    pub residual: Rational,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EulerTermKind {
    /// Bridge whose removal separates `s` from `t`.
    BridgeOnPath,
    /// Bridge with `s` and `t` on the same side.
    BridgeOffPath,
    NonBridge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerTerm {
    pub edge: EdgeId,
    pub kind: EulerTermKind,
    pub contribution: Rational,
}

fn sq(x: &Rational) -> Rational {
    x * x
}

fn two() -> Rational {
    Rational::from_integer(2.into())
}

/// The network `G - e` and `R = r_{G-e}(p, q)` for a non-bridge `e`.
struct Deleted {
    net: Network,
    p: VertexId,
    q: VertexId,
    length: Rational,
    r_rest: Rational,
}

impl Deleted {
    fn new(n: &Network, e: EdgeId, law: &'static str) -> Result<Self, NetworkError> {
        let edge = n.graph().edge(e)?.clone();
        if n.graph().is_bridge(e)? {
            return Err(NetworkError::Bridge { edge: e, law });
        }
        let net = Network::new(n.graph().delete_edge(e)?)?;
        let r_rest = net.resistance(edge.u, edge.v)?;
        Ok(Self {
            net,
            p: edge.u,
            q: edge.v,
            length: edge.length,
            r_rest,
        })
    }

    /// `j^{G-e}_p(q, x)`.
    fn j(&self, x: VertexId) -> Result<Rational, NetworkError> {
        self.net.voltage(self.p, self.q, x)
    }

    /// `j^{G-e}_p(q, s) - j^{G-e}_p(q, t)`.
    fn j_diff(&self, s: VertexId, t: VertexId) -> Result<Rational, NetworkError> {
        Ok(self.j(s)? - self.j(t)?)
    }
}

/// Network of `G` with `group` identified, plus the rename map.
fn identified(n: &Network, group: Vec<VertexId>) -> Result<(Network, Rename), NetworkError> {
    let (g, rename) = n.graph().identify(&VertexPartition::single(group))?;
    Ok((Network::new(g)?, rename))
}

fn contracted(n: &Network, e: EdgeId) -> Result<(Network, Rename), NetworkError> {
    let (g, rename) = n.graph().contract_edge(e)?;
    Ok((Network::new(g)?, rename))
}

/// `j_p(q, s) - j_p(q, t)` in `n`.
fn j_diff(n: &Network, p: VertexId, q: VertexId, s: VertexId, t: VertexId) -> Result<Rational, NetworkError> {
    Ok(n.voltage(p, q, s)? - n.voltage(p, q, t)?)
}

/// Shorting `p` to `q`:
/// `r(s,t) = r_{G_pq}(s,t) + (j_p(q,s) - j_p(q,t))^2 / r(p,q)`.
pub fn shorting_delta(n: &Network, p: VertexId, q: VertexId, s: VertexId, t: VertexId) -> Result<LawCheck, NetworkError> {
    let law = "explicit shorting law";
    if p == q {
        n.graph().check_vertex(p)?;
        return Err(NetworkError::SameVertex { law });
    }
    let r_before = n.resistance(s, t)?;
    let (short, rename) = identified(n, vec![p, q])?;
    let r_after = short.resistance(rename[&s], rename[&t])?;
    let correction = sq(&j_diff(n, p, q, s, t)?) / n.resistance(p, q)?;
    let residual = &r_before - &r_after - &correction;
    Ok(LawCheck {
        r_before,
        r_after,
        correction,
        residual,
    })
}

/// The three closed forms of `r_{G_pq}(p, s)`; returns each form's residual
/// against the directly computed value.
pub fn shorting_three_point(n: &Network, p: VertexId, q: VertexId, s: VertexId) -> Result<[Rational; 3], NetworkError> {
    if p == q {
        n.graph().check_vertex(p)?;
        return Err(NetworkError::SameVertex { law: "three-point shorting law" });
    }
    let (short, rename) = identified(n, vec![p, q])?;
    let direct = short.resistance(rename[&p], rename[&s])?;
    let rpq = n.resistance(p, q)?;
    let js_pq = n.voltage(s, p, q)?;
    let jp_qs = n.voltage(p, q, s)?;
    let jq_ps = n.voltage(q, p, s)?;
    let form1 = (n.resistance(p, s)? * n.resistance(q, s)? - sq(&js_pq)) / &rpq;
    let form2 = &js_pq + &jp_qs * &jq_ps / &rpq;
    let form3 = n.resistance(p, s)? - sq(&jp_qs) / &rpq;
    Ok([&direct - form1, &direct - form2, &direct - form3])
}

/// Cutting a non-bridge edge `e`:
/// `r(s,t) = r_{G-e}(s,t) - (j^{G-e}_p(q,s) - j^{G-e}_p(q,t))^2 / (L + R)`.
///
/// `correction` is the (non-negative) increase `r_{G-e}(s,t) - r(s,t)`.
pub fn cutting_delta(n: &Network, e: EdgeId, s: VertexId, t: VertexId) -> Result<LawCheck, NetworkError> {
    let d = Deleted::new(n, e, "explicit cutting law")?;
    let r_before = n.resistance(s, t)?;
    let r_after = d.net.resistance(s, t)?;
    let correction = sq(&d.j_diff(s, t)?) / (&d.length + &d.r_rest);
    let residual = &r_after - &r_before - &correction;
    Ok(LawCheck {
        r_before,
        r_after,
        correction,
        residual,
    })
}

/// Second form of the cutting law, written with voltages of `G` itself:
/// returns the residual of `r(s,t) = r_{G-e}(s,t) - (L+R)/L^2 (j_p(q,s) - j_p(q,t))^2`.
pub fn cutting_second_form(n: &Network, e: EdgeId, s: VertexId, t: VertexId) -> Result<Rational, NetworkError> {
    let d = Deleted::new(n, e, "explicit cutting law")?;
    let diff = j_diff(n, d.p, d.q, s, t)?;
    let rhs = d.net.resistance(s, t)? - (&d.length + &d.r_rest) / sq(&d.length) * sq(&diff);
    Ok(n.resistance(s, t)? - rhs)
}

/// Contracting `e`: non-bridge edges follow
/// `r(s,t) - r_{G/e}(s,t) = (L+R)/(L R) (j_p(q,s) - j_p(q,t))^2`;
/// a bridge contributes `L` if it separates `s` from `t` and zero otherwise.
/// Contracting a loop deletes it and changes nothing.
pub fn contraction_delta(n: &Network, e: EdgeId, s: VertexId, t: VertexId) -> Result<LawCheck, NetworkError> {
    let edge = n.graph().edge(e)?.clone();
    let r_before = n.resistance(s, t)?;
    let (short, rename) = contracted(n, e)?;
    let r_after = short.resistance(rename[&s], rename[&t])?;
    let correction = if edge.is_loop() {
        Rational::zero()
    } else if n.graph().is_bridge(e)? {
        if n.separates(e, s, t)? {
            edge.length.clone()
        } else {
            Rational::zero()
        }
    } else {
        let d = Deleted::new(n, e, "explicit monotonicity law I")?;
        let lr = &d.length * &d.r_rest;
        (&d.length + &d.r_rest) / lr * sq(&j_diff(n, d.p, d.q, s, t)?)
    };
    let residual = &r_before - &r_after - &correction;
    Ok(LawCheck {
        r_before,
        r_after,
        correction,
        residual,
    })
}

/// Second form of the contraction law using voltages of `G - e`;
/// returns its residual. Requires a non-bridge, non-loop edge.
pub fn contraction_second_form(n: &Network, e: EdgeId, s: VertexId, t: VertexId) -> Result<Rational, NetworkError> {
    let d = Deleted::new(n, e, "explicit monotonicity law I")?;
    let (short, rename) = contracted(n, e)?;
    let factor = &d.length / (&d.r_rest * (&d.length + &d.r_rest));
    let rhs = short.resistance(rename[&s], rename[&t])? + factor * sq(&d.j_diff(s, t)?);
    Ok(n.resistance(s, t)? - rhs)
}

/// Changing the length of `e` from `L` to `new_length`:
/// `r(s,t) - r'(s,t) = (L - L')/((L+R)(L'+R)) (j^{G-e} difference)^2`, or
/// `L - L'` / `0` for a bridge that does / does not separate `s` and `t`.
pub fn edge_modification_delta(
    n: &Network,
    e: EdgeId,
    new_length: &Rational,
    s: VertexId,
    t: VertexId,
) -> Result<LawCheck, NetworkError> {
    if *new_length <= Rational::zero() {
        return Err(NetworkError::NonPositiveLength);
    }
    let edge = n.graph().edge(e)?.clone();
    let r_before = n.resistance(s, t)?;
    let modified = Network::new(n.graph().with_edge_length(e, new_length.clone())?)?;
    let r_after = modified.resistance(s, t)?;
    let correction = if n.graph().is_bridge(e)? {
        if n.separates(e, s, t)? {
            &edge.length - new_length
        } else {
            Rational::zero()
        }
    } else {
        let d = Deleted::new(n, e, "explicit monotonicity law II")?;
        let denom = (&d.length + &d.r_rest) * (new_length + &d.r_rest);
        (&d.length - new_length) / denom * sq(&d.j_diff(s, t)?)
    };
    let residual = &r_before - &r_after - &correction;
    Ok(LawCheck {
        r_before,
        r_after,
        correction,
        residual,
    })
}

/// Residual of `r(s,t) = L/(L+R) r_{G-e}(s,t) + R/(L+R) r_{G/e}(s,t)`.
pub fn convex_combination_check(n: &Network, e: EdgeId, s: VertexId, t: VertexId) -> Result<Rational, NetworkError> {
    let d = Deleted::new(n, e, "deletion-contraction convex combination")?;
    let (short, rename) = contracted(n, e)?;
    let total = &d.length + &d.r_rest;
    let rhs = &d.length / &total * d.net.resistance(s, t)?
        + &d.r_rest / &total * short.resistance(rename[&s], rename[&t])?;
    Ok(n.resistance(s, t)? - rhs)
}

/// Exact `dr(s,t)/dL_e`.
pub fn resistance_derivative(n: &Network, e: EdgeId, s: VertexId, t: VertexId) -> Result<Rational, NetworkError> {
    n.graph().check_vertex(s)?;
    n.graph().check_vertex(t)?;
    if n.graph().is_bridge(e)? {
        return Ok(if n.separates(e, s, t)? {
            Rational::one()
        } else {
            Rational::zero()
        });
    }
    let d = Deleted::new(n, e, "resistance derivative")?;
    let total = &d.length + &d.r_rest;
    Ok(sq(&d.j_diff(s, t)?) / sq(&total))
}

fn classify(n: &Network, e: EdgeId, s: VertexId, t: VertexId) -> Result<EulerTermKind, NetworkError> {
    Ok(if !n.graph().is_bridge(e)? {
        EulerTermKind::NonBridge
    } else if n.separates(e, s, t)? {
        EulerTermKind::BridgeOnPath
    } else {
        EulerTermKind::BridgeOffPath
    })
}

/// Per-edge terms `L` (bridges separating `s`,`t`), `0` (other bridges) and
/// `(j_p(q,s) - j_p(q,t))^2 / L` (non-bridges); they sum to `r(s,t)`.
pub fn euler_decomposition(n: &Network, s: VertexId, t: VertexId) -> Result<Vec<EulerTerm>, NetworkError> {
    n.graph().check_vertex(s)?;
    n.graph().check_vertex(t)?;
    n.graph()
        .edges()
        .iter()
        .map(|edge| {
            let kind = classify(n, edge.id, s, t)?;
            let contribution = match kind {
                EulerTermKind::BridgeOnPath => edge.length.clone(),
                EulerTermKind::BridgeOffPath => Rational::zero(),
                EulerTermKind::NonBridge => sq(&j_diff(n, edge.u, edge.v, s, t)?) / &edge.length,
            };
            Ok(EulerTerm {
                edge: edge.id,
                kind,
                contribution,
            })
        })
        .collect()
}

/// Non-bridge Euler term in its deletion form
/// `L (j^{G-e}_p(q,s) - j^{G-e}_p(q,t))^2 / (L+R)^2`.
pub fn euler_term_via_deletion(n: &Network, e: EdgeId, s: VertexId, t: VertexId) -> Result<Rational, NetworkError> {
    let d = Deleted::new(n, e, "Euler decomposition (deletion form)")?;
    let total = &d.length + &d.r_rest;
    Ok(&d.length * sq(&d.j_diff(s, t)?) / sq(&total))
}

/// Per-edge terms `(r(p,s) - r(q,s) - r(p,t) + r(q,t))^2 / (4L)`, uniform over
/// bridges and non-bridges; they sum to `r(s,t)`.
pub fn euler_decomposition_resistance_only(n: &Network, s: VertexId, t: VertexId) -> Result<Vec<EulerTerm>, NetworkError> {
    n.graph().check_vertex(s)?;
    n.graph().check_vertex(t)?;
    let four = Rational::from_integer(4.into());
    n.graph()
        .edges()
        .iter()
        .map(|edge| {
            let (p, q) = (edge.u, edge.v);
            let bracket = n.resistance(p, s)? - n.resistance(q, s)? - n.resistance(p, t)? + n.resistance(q, t)?;
            Ok(EulerTerm {
                edge: edge.id,
                kind: classify(n, edge.id, s, t)?,
                contribution: sq(&bracket) / (&four * &edge.length),
            })
        })
        .collect()
}

pub fn euler_total(terms: &[EulerTerm]) -> Rational {
    terms.iter().map(|t| t.contribution.clone()).sum()
}

/// Residuals of the three equalities in the chain
/// `j_p(q,s) - j_p(q,t) = j_t(q,s) - j_t(p,s) = j_s(p,t) - j_s(q,t) = j_q(p,t) - j_q(p,s)`.
pub fn magic_identities(n: &Network, p: VertexId, q: VertexId, s: VertexId, t: VertexId) -> Result<[Rational; 3], NetworkError> {
    let a = n.voltage(p, q, s)? - n.voltage(p, q, t)?;
    let b = n.voltage(t, q, s)? - n.voltage(t, p, s)?;
    let c = n.voltage(s, p, t)? - n.voltage(s, q, t)?;
    let d = n.voltage(q, p, t)? - n.voltage(q, p, s)?;
    Ok([&a - &b, &b - &c, &c - &d])
}

/// Residuals of the basic relations among `r` and `j` for one triple:
/// symmetry of `r` and `j`, `r(x,y) = j_x(y,z) + j_y(x,z)`,
/// `2 j_x(y,z) = r(x,y) + r(x,z) - r(y,z)`, `j_x(y,x) = 0`, `j_x(y,y) = r(x,y)`.
pub fn basic_relations(n: &Network, x: VertexId, y: VertexId, z: VertexId) -> Result<Vec<Rational>, NetworkError> {
    Ok(vec![
        n.resistance(x, y)? - n.resistance(y, x)?,
        n.voltage(z, x, y)? - n.voltage(z, y, x)?,
        n.resistance(x, y)? - n.voltage(x, y, z)? - n.voltage(y, x, z)?,
        two() * n.voltage(x, y, z)? - n.resistance(x, y)? - n.resistance(x, z)? + n.resistance(y, z)?,
        n.voltage(x, y, x)?,
        n.voltage(x, y, y)? - n.resistance(x, y)?,
        n.resistance(x, x)?,
    ])
}

/// Voltage transfer under shorting `p` to `q`: residual of
/// `j_u(t,s) = j^{G_pq}_u(t,s) + (j_p(q,u) - j_p(q,t))(j_p(q,u) - j_p(q,s)) / r(p,q)`,
/// together with the residual of the equivalent three-squares form.
pub fn voltage_transfer_shorting(
    n: &Network,
    p: VertexId,
    q: VertexId,
    s: VertexId,
    t: VertexId,
    u: VertexId,
) -> Result<[Rational; 2], NetworkError> {
    if p == q {
        n.graph().check_vertex(p)?;
        return Err(NetworkError::SameVertex { law: "voltage transfer under shorting" });
    }
    let (short, rename) = identified(n, vec![p, q])?;
    let lhs = n.voltage(u, t, s)?;
    let shorted = short.voltage(rename[&u], rename[&t], rename[&s])?;
    let rpq = n.resistance(p, q)?;
    let (ju, jt, js) = (n.voltage(p, q, u)?, n.voltage(p, q, t)?, n.voltage(p, q, s)?);
    let product = (&ju - &jt) * (&ju - &js) / &rpq;
    let squares = (sq(&(&jt - &ju)) + sq(&(&js - &ju)) - sq(&(&jt - &js))) / (two() * &rpq);
    Ok([&lhs - &shorted - product, &lhs - &shorted - squares])
}

/// The `u = p` specialisation:
/// `j_p(t,s) = j^{G_pq}_p(t,s) + j_p(q,t) j_p(q,s) / r(p,q)`.
pub fn voltage_shorting_at_p(n: &Network, p: VertexId, q: VertexId, s: VertexId, t: VertexId) -> Result<Rational, NetworkError> {
    if p == q {
        n.graph().check_vertex(p)?;
        return Err(NetworkError::SameVertex { law: "voltage transfer under shorting" });
    }
    let (short, rename) = identified(n, vec![p, q])?;
    let rhs = short.voltage(rename[&p], rename[&t], rename[&s])?
        + n.voltage(p, q, t)? * n.voltage(p, q, s)? / n.resistance(p, q)?;
    Ok(n.voltage(p, t, s)? - rhs)
}

/// The `t = p` specialisation:
/// `j_u(p,s) = j^{G_pq}_u(p,s) + (j_p(q,u)^2 - j_p(q,u) j_p(q,s)) / r(p,q)`.
pub fn voltage_shorting_through_p(n: &Network, p: VertexId, q: VertexId, s: VertexId, u: VertexId) -> Result<Rational, NetworkError> {
    if p == q {
        n.graph().check_vertex(p)?;
        return Err(NetworkError::SameVertex { law: "voltage transfer under shorting" });
    }
    let (short, rename) = identified(n, vec![p, q])?;
    let ju = n.voltage(p, q, u)?;
    let js = n.voltage(p, q, s)?;
    let rhs = short.voltage(rename[&u], rename[&p], rename[&s])? + (sq(&ju) - &ju * &js) / n.resistance(p, q)?;
    Ok(n.voltage(u, p, s)? - rhs)
}

/// Voltage transfer under deleting a non-bridge `e`: residual of
/// `j_u(t,s) = j^{G-e}_u(t,s) - (h(u) - h(t))(h(u) - h(s)) / (L + R)` with
/// `h(x) = j^{G-e}_p(q,x)`.
pub fn voltage_transfer_cutting(n: &Network, e: EdgeId, s: VertexId, t: VertexId, u: VertexId) -> Result<Rational, NetworkError> {
    let d = Deleted::new(n, e, "voltage transfer under cutting")?;
    let (hu, ht, hs) = (d.j(u)?, d.j(t)?, d.j(s)?);
    let rhs = d.net.voltage(u, t, s)? - (&hu - &ht) * (&hu - &hs) / (&d.length + &d.r_rest);
    Ok(n.voltage(u, t, s)? - rhs)
}

/// Voltage transfer under contracting a non-bridge `e`: residual of
/// `j_u(t,s) = j^{G/e}_u(t,s) + L/(R(L+R)) (h(u) - h(t))(h(u) - h(s))`.
/// A loop contracts to a deletion and the correction vanishes.
pub fn voltage_transfer_contraction(n: &Network, e: EdgeId, s: VertexId, t: VertexId, u: VertexId) -> Result<Rational, NetworkError> {
    let d = Deleted::new(n, e, "voltage transfer under contraction")?;
    let (short, rename) = contracted(n, e)?;
    let contracted_j = short.voltage(rename[&u], rename[&t], rename[&s])?;
    let correction = if d.p == d.q {
        Rational::zero()
    } else {
        let (hu, ht, hs) = (d.j(u)?, d.j(t)?, d.j(s)?);
        &d.length / (&d.r_rest * (&d.length + &d.r_rest)) * (&hu - &ht) * (&hu - &hs)
    };
    Ok(n.voltage(u, t, s)? - contracted_j - correction)
}

/// Foster's identity: returns `sum_e r(p_e, q_e) / L_e - (n - 1)`.
pub fn foster_residual(n: &Network) -> Result<Rational, NetworkError> {
    let mut total = Rational::zero();
    for e in n.graph().edges() {
        total += n.resistance(e.u, e.v)? / &e.length;
    }
    Ok(total - Rational::from_integer((n.graph().vertex_count() as i64 - 1).into()))
}
