//! One evaluator per tag. The exhaustive `match` in [`evaluate`] is the
//! coverage lock: a tag without an evaluator does not compile.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Instance, Item, Outcome, Slot, Tag};
use crate::exactnum::{from_bigint, rat, to_f64, Rational};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::resistnet::float::finite_difference_derivative;
use crate::resistnet::*;
use crate::spantree::*;

use Slot::{Edge as E, Vertex as V};

pub(crate) fn uses_unit(tag: Tag) -> bool {
    use Tag::*;
    matches!(
        tag,
        TreeResistance | TreeVoltage | Averaging | Unions | Quadratic | ContractId | DeleteId | SpanEuler | VertexDel | StarAug
    )
}

pub(crate) fn shape(tag: Tag) -> &'static [Slot] {
    use Tag::*;
    match tag {
        Magic | Shorting | Quadratic => &[V, V, V, V],
        Euler1 | Euler2 | TreeResistance | SpanEuler => &[V, V],
        Cutting | Monotonic1 | Monotonic2 | Convex | Derivative | ContractId | DeleteId => &[E, V, V],
        VolTransfer => &[E, V, V, V, V, V],
        TreeVoltage | Unions => &[V, V, V],
        VertexDel | StarAug => &[V],
        Averaging | Foster => &[],
    }
}

type Eval = Result<Outcome, String>;

fn s<T, E: ToString>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn exact(rs: Vec<Rational>) -> Eval {
    Ok(Outcome::Exact(rs))
}

fn is_bridge(g: &Multigraph, e: EdgeId) -> Result<bool, String> {
    s(g.is_bridge(e))
}

fn mt(g: &Multigraph) -> Result<BigInt, String> {
    s(count_matrix_tree(g))
}

fn diff(a: BigInt, b: BigInt) -> Rational {
    from_bigint(a - b)
}

pub(crate) fn evaluate(tag: Tag, inst: &Instance, sel: &[Item], rng: &mut ChaCha8Rng) -> Outcome {
    let mut run = || -> Eval {
        match tag {
            Tag::Magic => magic(inst, sel),
            Tag::Shorting => shorting(inst, sel),
            Tag::Euler1 => euler1(inst, sel),
            Tag::Euler2 => euler2(inst, sel),
            Tag::Cutting => cutting(inst, sel),
            Tag::Monotonic1 => monotonic1(inst, sel),
            Tag::Monotonic2 => monotonic2(inst, sel, rng),
            Tag::Convex => convex(inst, sel),
            Tag::VolTransfer => vol_transfer(inst, sel),
            Tag::TreeResistance => tree_resistance(inst, sel),
            Tag::TreeVoltage => tree_voltage(inst, sel),
            Tag::Averaging => averaging(inst),
            Tag::Unions => unions(inst, sel, rng),
            Tag::Quadratic => quadratic(inst, sel),
            Tag::ContractId => contract_id(inst, sel),
            Tag::DeleteId => delete_id(inst, sel),
            Tag::SpanEuler => span_euler(inst, sel),
            Tag::VertexDel => vertex_del(inst, sel),
            Tag::StarAug => star_aug(inst, sel, rng),
            Tag::Foster => foster(inst),
            Tag::Derivative => derivative(inst, sel),
        }
    };
    run().unwrap_or_else(Outcome::Error)
}

fn magic(inst: &Instance, sel: &[Item]) -> Eval {
    let (p, q, x, t) = (sel[0].v(), sel[1].v(), sel[2].v(), sel[3].v());
    let mut rs = s(magic_identities(&inst.net, p, q, x, t))?.to_vec();
    rs.extend(s(basic_relations(&inst.net, p, q, x))?);
    exact(rs)
}

fn shorting(inst: &Instance, sel: &[Item]) -> Eval {
    let (p, q, x, t) = (sel[0].v(), sel[1].v(), sel[2].v(), sel[3].v());
    if p == q {
        return Ok(Outcome::Skip);
    }
    let mut rs = vec![s(shorting_delta(&inst.net, p, q, x, t))?.residual];
    rs.extend(s(shorting_three_point(&inst.net, p, q, x))?);
    exact(rs)
}

fn euler1(inst: &Instance, sel: &[Item]) -> Eval {
    let (x, t) = (sel[0].v(), sel[1].v());
    let terms = s(euler_decomposition(&inst.net, x, t))?;
    let mut rs = vec![euler_total(&terms) - s(inst.net.resistance(x, t))?];
    for term in terms.iter().filter(|t| t.kind == EulerTermKind::NonBridge) {
        rs.push(&term.contribution - s(euler_term_via_deletion(&inst.net, term.edge, x, t))?);
    }
    exact(rs)
}

fn euler2(inst: &Instance, sel: &[Item]) -> Eval {
    let (x, t) = (sel[0].v(), sel[1].v());
    let terms = s(euler_decomposition_resistance_only(&inst.net, x, t))?;
    exact(vec![euler_total(&terms) - s(inst.net.resistance(x, t))?])
}

fn edge_pair(sel: &[Item]) -> (EdgeId, VertexId, VertexId) {
    (sel[0].e(), sel[1].v(), sel[2].v())
}

fn cutting(inst: &Instance, sel: &[Item]) -> Eval {
    let (e, x, t) = edge_pair(sel);
    if is_bridge(&inst.graph, e)? {
        return Ok(Outcome::Skip);
    }
    exact(vec![
        s(cutting_delta(&inst.net, e, x, t))?.residual,
        s(cutting_second_form(&inst.net, e, x, t))?,
    ])
}

fn monotonic1(inst: &Instance, sel: &[Item]) -> Eval {
    let (e, x, t) = edge_pair(sel);
    let mut rs = vec![s(contraction_delta(&inst.net, e, x, t))?.residual];
    let edge = s(inst.graph.edge(e))?;
    if !edge.is_loop() && !is_bridge(&inst.graph, e)? {
        rs.push(s(contraction_second_form(&inst.net, e, x, t))?);
    }
    exact(rs)
}

fn monotonic2(inst: &Instance, sel: &[Item], rng: &mut ChaCha8Rng) -> Eval {
    let (e, x, t) = edge_pair(sel);
    let new_length = rat(rng.gen_range(1..=5), rng.gen_range(1..=4));
    exact(vec![s(edge_modification_delta(&inst.net, e, &new_length, x, t))?.residual])
}

fn convex(inst: &Instance, sel: &[Item]) -> Eval {
    let (e, x, t) = edge_pair(sel);
    if is_bridge(&inst.graph, e)? {
        return Ok(Outcome::Skip);
    }
    exact(vec![s(convex_combination_check(&inst.net, e, x, t))?])
}

fn vol_transfer(inst: &Instance, sel: &[Item]) -> Eval {
    let e = sel[0].e();
    let (p, q, x, t, u) = (sel[1].v(), sel[2].v(), sel[3].v(), sel[4].v(), sel[5].v());
    if p == q || is_bridge(&inst.graph, e)? {
        return Ok(Outcome::Skip);
    }
    let n = &inst.net;
    let mut rs = s(voltage_transfer_shorting(n, p, q, x, t, u))?.to_vec();
    rs.push(s(voltage_shorting_at_p(n, p, q, x, t))?);
    rs.push(s(voltage_shorting_through_p(n, p, q, x, u))?);
    rs.push(s(voltage_transfer_cutting(n, e, x, t, u))?);
    rs.push(s(voltage_transfer_contraction(n, e, x, t, u))?);
    exact(rs)
}

fn tree_resistance(inst: &Instance, sel: &[Item]) -> Eval {
    let (p, q) = (sel[0].v(), sel[1].v());
    exact(vec![s(resistance_from_trees(&inst.unit, p, q))? - s(inst.unit_net.resistance(p, q))?])
}

fn tree_voltage(inst: &Instance, sel: &[Item]) -> Eval {
    let (p, q, x) = (sel[0].v(), sel[1].v(), sel[2].v());
    exact(vec![s(voltage_from_trees(&inst.unit, p, q, x))? - s(inst.unit_net.voltage(p, q, x))?])
}

fn averaging(inst: &Instance) -> Eval {
    let g = &inst.unit;
    let mut rs = vec![from_bigint(s(averaging_contractions(g))?.1)];
    let mut bridgeless = true;
    for e in g.edges() {
        if is_bridge(g, e.id)? {
            bridgeless = false;
        } else if !e.is_loop() {
            rs.extend(s(edge_ratio_residuals(g, e.id))?);
        }
    }
    if bridgeless {
        rs.push(from_bigint(s(averaging_deletions(g))?.1));
    }
    exact(rs)
}

fn glue_count(a: &Multigraph, b: &Multigraph, pairs: &[(VertexId, VertexId)]) -> Result<BigInt, String> {
    mt(&s(a.glue(b, pairs))?.0)
}

fn unions(inst: &Instance, sel: &[Item], rng: &mut ChaCha8Rng) -> Eval {
    let (g, h) = (&inst.unit, &inst.partner);
    let (p, q, x) = (sel[0].v(), sel[1].v(), sel[2].v());
    let hv = h.vertices();
    let (p2, q2, x2) = (hv[rng.gen_range(0..hv.len())], hv[rng.gen_range(0..hv.len())], hv[rng.gen_range(0..hv.len())]);
    let (tg, th) = (mt(g)?, mt(h)?);
    let mut rs = vec![diff(s(union_cut_vertex(&[tg.clone(), th.clone()]))?, glue_count(g, h, &[(p, p2)])?)];
    if p == q || p2 == q2 {
        return exact(rs);
    }
    let gpq = s(pair_count(g, p, q))?;
    let hpq = s(pair_count(h, p2, q2))?;
    rs.push(diff(union_two_vertices(&tg, &gpq, &th, &hpq), glue_count(g, h, &[(p, p2), (q, q2)])?));

    let gp = (g.clone(), p, q);
    let hp = (h.clone(), p2, q2);
    let three = [gp.clone(), hp.clone(), (g.clone(), q, p)];
    let banana = s(banana_of(&three))?.0;
    let formula = s(union_k_banana(&[tg.clone(), th.clone(), tg.clone()], &[gpq.clone(), hpq.clone(), gpq.clone()]))?;
    rs.push(diff(formula, mt(&banana)?));
    let cycle = s(cycle_of(&three))?;
    let formula = s(union_cycle_replacement(&[tg.clone(), th.clone(), tg.clone()], &[gpq.clone(), hpq.clone(), gpq.clone()]))?;
    rs.push(diff(formula, mt(&cycle)?));

    let path1 = s(chain(&[gp.clone(), hp.clone()]))?;
    let built = s(banana_of(&[path1, hp.clone()]))?.0;
    let formula = s(union_banana_of_paths(&[
        vec![(tg.clone(), gpq.clone()), (th.clone(), hpq.clone())],
        vec![(th.clone(), hpq.clone())],
    ]))?;
    rs.push(diff(formula, mt(&built)?));

    let copies = s(chain(&[gp.clone(), gp.clone()]))?;
    let built = s(banana_of(&[copies.clone(), copies]))?.0;
    rs.push(diff(s(union_banana_uniform(2, 2, &tg, &gpq))?, mt(&built)?));

    let k = rng.gen_range(2..=3);
    let mut path = Multigraph::with_vertices(k + 1);
    for i in 0..k {
        s(path.add_unit_edge(VertexId(i as u32), VertexId(i as u32 + 1)))?;
    }
    let attached = glue_count(g, &path, &[(p, VertexId(0)), (q, VertexId(k as u32))])?;
    rs.push(diff(union_path_attachment(k, &tg, &gpq), attached));

    if x != p && x != q && x2 != p2 && x2 != q2 {
        let pc = |m: &Multigraph, a, b, c| -> Result<(PairCounts, BigInt), String> {
            let pairs = PairCounts {
                ps: s(pair_count(m, a, c))?,
                pq: s(pair_count(m, a, b))?,
                qs: s(pair_count(m, b, c))?,
            };
            Ok((pairs, s(pairs_count(m, &[(a, b), (a, c)]))?))
        };
        let (g_pairs, g3) = pc(g, p, q, x)?;
        let (h_pairs, h3) = pc(h, p2, q2, x2)?;
        let formula = s(union_three_vertices(&tg, &th, &g_pairs, &h_pairs, &g3, &h3))?;
        rs.push(diff(formula, glue_count(g, h, &[(p, p2), (q, q2), (x, x2)])?));
        let twin = glue_count(g, g, &[(p, p), (q, q), (x, x)])?;
        rs.push(diff(union_three_vertices_identical(&tg, &g3), twin));
    }
    exact(rs)
}

fn quadratic(inst: &Instance, sel: &[Item]) -> Eval {
    let (p, q, x, t) = (sel[0].v(), sel[1].v(), sel[2].v(), sel[3].v());
    exact(vec![
        s(identification_quadratic(&inst.unit, p, q, x, t))?,
        s(identification_quadratic_three_point(&inst.unit, p, q, x))?,
    ])
}

fn contract_id(inst: &Instance, sel: &[Item]) -> Eval {
    let (e, x, t) = edge_pair(sel);
    exact(vec![s(contraction_identity(&inst.unit, e, x, t))?])
}

fn delete_id(inst: &Instance, sel: &[Item]) -> Eval {
    let (e, x, t) = edge_pair(sel);
    exact(vec![s(deletion_identity(&inst.unit, e, x, t))?])
}

fn span_euler(inst: &Instance, sel: &[Item]) -> Eval {
    let (x, t) = (sel[0].v(), sel[1].v());
    exact(vec![
        s(spanning_tree_euler(&inst.unit, x, t))?,
        s(spanning_tree_euler_bridges(&inst.unit, x, t))?,
    ])
}

fn vertex_del(inst: &Instance, sel: &[Item]) -> Eval {
    let g = &inst.unit;
    let u = sel[0].v();
    if g.vertex_count() > 1 && s(g.is_cut_vertex(u))? {
        return Ok(Outcome::Skip);
    }
    let t = mt(g)?;
    let mut rs = vec![
        diff(s(vertex_deletion_count(g, u))?.0, t.clone()),
        diff(s(count_deletion_contraction(g))?, t.clone()),
    ];
    if let Ok(by_enum) = count_enumeration(g) {
        rs.push(diff(by_enum, t));
    }
    exact(rs)
}

fn star_aug(inst: &Instance, sel: &[Item], rng: &mut ChaCha8Rng) -> Eval {
    let g = &inst.unit;
    let anchor = sel[0].v();
    let mut others: Vec<VertexId> = g.vertices().iter().copied().filter(|&v| v != anchor).collect();
    others.shuffle(rng);
    let k = rng.gen_range(0..=others.len().min(3));
    let targets = others[..k].iter().map(|&v| (v, rng.gen_range(1..=2))).collect();
    let spec = StarSpec { anchor, targets };
    exact(vec![diff(s(star_augmentation_count(g, &spec))?, mt(&s(spec.build(g))?)?)])
}

fn foster(inst: &Instance) -> Eval {
    exact(vec![s(foster_residual(&inst.net))?])
}

fn derivative(inst: &Instance, sel: &[Item]) -> Eval {
    let (e, x, t) = edge_pair(sel);
    let g = &inst.graph;
    let d = s(resistance_derivative(&inst.net, e, x, t))?;
    if is_bridge(g, e)? {
        let separated = !g.reachable_avoiding(x, Some(e)).contains(&t);
        let expected = if separated { rat(1, 1) } else { Rational::zero() };
        return exact(vec![d - expected]);
    }
    let fd = finite_difference_derivative(g, e, x, t, super::DERIVATIVE_STEP)
        .ok_or_else(|| "finite-difference network is singular".to_string())?;
    let d = to_f64(&d);
    Ok(Outcome::Float((fd - d).abs() / d.abs().max(1.0)))
}
