//! Acceptance suite: one PASS/FAIL line per criterion, with every tolerance
//! and time budget pinned below. Run with `--nocapture` to see the lines.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use rayleigh::exactnum::{from_bigint, rat, Rational};
use rayleigh::graph::families::{banana, complete, cycle, fan, path, wheel};
use rayleigh::graph::{EdgeId, Multigraph, VertexId};
use rayleigh::polyseq::{morgan_voyce, w_poly};
use rayleigh::reduction::{delta_y, reduce_two_terminal};
use rayleigh::resistnet::{resistance_derivative, Network};
use rayleigh::spantree::*;
use rayleigh::verify::{
    generate, run_tags, series_parallel, with_random_triangle, GraphGenSpec, LengthDist, SuiteConfig, SuiteReport, Tag,
    DERIVATIVE_TOLERANCE,
};

const BUDGET_CLOSED_FORMS: Duration = Duration::from_secs(1);
const BUDGET_FAN_WHEEL: Duration = Duration::from_secs(5);
const BUDGET_FOUR_WAY: Duration = Duration::from_secs(60);
const BUDGET_LAWS: Duration = Duration::from_secs(120);
const BUDGET_OTHER: Duration = Duration::from_secs(120);

/// Sampled tuples per instance and tag.
const TUPLES_PER_INSTANCE: usize = 20;
/// Base seed for every generated instance.
const SEED: u64 = 20240611;

type Outcome = Result<String, String>;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn mt(g: &Multigraph) -> BigInt {
    count_matrix_tree(g).unwrap()
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

/// Multigraphs on at most 6 vertices and 10 edges, rational lengths.
fn small_spec(seed: u64) -> GraphGenSpec {
    GraphGenSpec {
        vertices: 1..=6,
        edges: 0..=10,
        ..GraphGenSpec::small(seed)
    }
}

fn suite(spec: GraphGenSpec, count: usize, tags: &[Tag]) -> Result<SuiteReport, String> {
    let mut config = SuiteConfig::new(spec, count);
    config.cap = TUPLES_PER_INSTANCE;
    let report = run_tags(&config, tags).map_err(|e| e.to_string())?;
    if let Some(bad) = report.failures().next() {
        return Err(format!("failed: {}", bad.record()));
    }
    for &t in tags {
        check(report.count(t) > 0, || format!("tag {t} produced no reports"))?;
    }
    Ok(report)
}

fn summary(report: &SuiteReport) -> String {
    let skipped: usize = report.skipped.values().sum();
    format!("{} checks, {} selections filtered by hypotheses", report.reports.len(), skipped)
}

fn criterion_1() -> Outcome {
    for s in 1..=10usize {
        check(mt(&path(s)).is_one(), || format!("t(P_{s})"))?;
        check(mt(&cycle(s)) == b(s as i64), || format!("t(C_{s})"))?;
        check(mt(&banana(s)) == b(s as i64), || format!("t(B_{s})"))?;
        check(closed_form(Family::Cycle, s, 1).unwrap() == b(s as i64), || format!("closed t(C_{s})"))?;
        check(closed_form(Family::Banana, s, 1).unwrap() == b(s as i64), || format!("closed t(B_{s})"))?;
        check(closed_form(Family::Path, s, 1).unwrap().is_one(), || format!("closed t(P_{s})"))?;
    }
    for n in 1..=7usize {
        let cayley = if n == 1 { b(1) } else { Pow::pow(b(n as i64), (n - 2) as u32) };
        check(mt(&complete(n)) == cayley, || format!("t(K_{n})"))?;
        check(closed_form(Family::Complete, n, 1).unwrap() == cayley, || format!("closed t(K_{n})"))?;
    }
    let mut edges = 0;
    for n in 2..=7i64 {
        let k = complete(n as usize);
        // n^{n-3} as a rational so that n = 2 is covered
        let base = Pow::pow(Rational::from_integer(b(n)), (n - 3) as i32);
        for e in k.edges() {
            let contracted = from_bigint(mt(&k.contract_edge(e.id).unwrap().0));
            let deleted = from_bigint(mt(&k.delete_edge(e.id).unwrap()));
            check(contracted == &base * rat(2, 1), || format!("t(K_{n} / {})", e.id))?;
            check(deleted == &base * rat(n - 2, 1), || format!("t(K_{n} - {})", e.id))?;
            edges += 1;
        }
    }
    Ok(format!("families s <= 10, K_n n <= 7, {edges} per-edge values"))
}

fn criterion_2() -> Outcome {
    let fans: Vec<BigInt> = (1..=5).map(|n| closed_form(Family::Fan, n, 1).unwrap()).collect();
    check(fans == [1, 3, 8, 21, 55].map(b), || format!("fan values {fans:?}"))?;
    let wheels: Vec<BigInt> = (1..=5).map(|n| closed_form(Family::Wheel, n, 1).unwrap()).collect();
    check(wheels == [1, 5, 16, 45, 121].map(b), || format!("wheel values {wheels:?}"))?;
    for n in 1..=7usize {
        for a in 1..=3usize {
            let ab = b(a as i64);
            let fan_poly = &ab * morgan_voyce(n - 1).eval_int(&ab);
            check(mt(&fan(n, a)) == fan_poly, || format!("fan n={n} a={a}"))?;
            let wheel_poly = &ab * w_poly(n - 1).eval_int(&ab);
            check(mt(&wheel(n, a)) == wheel_poly, || format!("wheel n={n} a={a}"))?;
        }
    }
    Ok("n <= 7, a <= 3".into())
}

fn criterion_3() -> Outcome {
    let spec = small_spec(SEED);
    let mut vertex_expansions = 0;
    for i in 0..200 {
        let g = generate(&spec.for_instance(i, 0)).map_err(|e| e.to_string())?;
        let t = mt(&g);
        check(count_deletion_contraction(&g).unwrap() == t, || format!("instance {i}: deletion-contraction"))?;
        check(count_enumeration(&g).unwrap() == t, || format!("instance {i}: enumeration"))?;
        for &u in g.vertices() {
            if g.vertex_count() > 1 && g.is_cut_vertex(u).unwrap() {
                continue;
            }
            check(vertex_deletion_count(&g, u).unwrap().0 == t, || format!("instance {i}: deleting {u}"))?;
            vertex_expansions += 1;
        }
    }
    Ok(format!("200 instances, {vertex_expansions} vertex-deletion expansions"))
}

fn criterion_4() -> Outcome {
    use Tag::*;
    let report = suite(small_spec(SEED + 4), 100, &[Shorting, Cutting, Monotonic1, Monotonic2, Convex, VolTransfer, Magic])?;
    Ok(summary(&report))
}

fn criterion_5() -> Outcome {
    let report = suite(small_spec(SEED + 5), 100, &[Tag::Euler1, Tag::Euler2])?;
    let unit = GraphGenSpec {
        lengths: LengthDist::Unit,
        ..small_spec(SEED + 55)
    };
    let foster = suite(unit, 100, &[Tag::Foster])?;
    check(foster.reports.len() == 100, || "one Foster check per instance".into())?;
    Ok(format!("{}; Foster on 100 unit instances", summary(&report)))
}

fn criterion_6() -> Outcome {
    let unit = GraphGenSpec {
        lengths: LengthDist::Unit,
        ..small_spec(SEED + 6)
    };
    let report = suite(unit, 100, &[Tag::TreeResistance, Tag::TreeVoltage])?;
    Ok(summary(&report))
}

fn criterion_7() -> Outcome {
    check(union_two_vertices(&b(1), &b(3), &b(2), &b(6)) == b(12), || "two-vertex union 12".into())?;
    check(union_two_vertices(&b(8), &b(8), &b(13), &b(21)) == b(272), || "two-vertex union 272".into())?;
    check(union_three_vertices_identical(&b(27), &b(45)) == b(4860), || "three-vertex union 4860".into())?;
    // H = C_4 on 0..3 with p, q, s = 0, 1, 2; a new vertex joined by 2, 3, 1 edges
    let h = cycle(4);
    let (p, q, s) = (VertexId(0), VertexId(1), VertexId(2));
    let counts = [
        (vec![], b(4)),
        (vec![p, q], b(3)),
        (vec![p, s], b(4)),
        (vec![q, s], b(3)),
        (vec![p, q, s], b(2)),
    ];
    for (group, expected) in &counts {
        let got = if group.is_empty() {
            mt(&h)
        } else {
            count_identified(&h, &rayleigh::graph::VertexPartition::single(group.clone())).unwrap()
        };
        check(&got == expected, || format!("t(H_{group:?}) = {got}"))?;
    }
    let formula: BigInt = vertex_deletion_expansion(&[b(2), b(3), b(1)], |sub| {
        Ok(match sub {
            [] => b(4),
            [0, 1] => b(3),
            [0, 2] => b(4),
            [1, 2] => b(3),
            _ => b(2),
        })
    })
    .unwrap()
    .iter()
    .map(|(_, c, t)| c * t)
    .sum();
    check(formula == b(71), || format!("vertex-deletion formula gave {formula}"))?;
    let mut g = h.clone();
    let u = g.add_vertex();
    for (target, a) in [(p, 2), (q, 3), (s, 1)] {
        for _ in 0..a {
            g.add_unit_edge(u, target).unwrap();
        }
    }
    check(mt(&g) == b(71), || "constructed graph".into())?;
    check(vertex_deletion_count(&g, u).unwrap().0 == b(71), || "expansion on the graph".into())?;
    Ok("12, 272, 4860, 71".into())
}

fn criterion_8() -> Outcome {
    let unit = GraphGenSpec {
        lengths: LengthDist::Unit,
        ..small_spec(SEED + 8)
    };
    let report = suite(unit, 100, &[Tag::Quadratic, Tag::ContractId, Tag::DeleteId, Tag::SpanEuler])?;
    Ok(summary(&report))
}

fn criterion_9() -> Outcome {
    let report = suite(small_spec(SEED + 9), 50, &[Tag::Derivative])?;
    let worst = report
        .reports
        .iter()
        .map(|r| rayleigh::exactnum::to_f64(&r.residual))
        .fold(0.0f64, f64::max);
    check(worst <= DERIVATIVE_TOLERANCE, || format!("worst relative error {worst:e}"))?;
    // bridges: exactly 1 when separating, else 0
    let mut g = path(3);
    let tail = g.add_vertex();
    g.add_edge(VertexId(2), tail, rat(5, 2)).unwrap();
    g.add_unit_edge(VertexId(0), VertexId(1)).unwrap();
    let net = Network::new(g).unwrap();
    let (v0, v1, v2) = (VertexId(0), VertexId(1), VertexId(2));
    let cases = [
        (EdgeId(1), v0, v2, Rational::one()),
        (EdgeId(1), v2, v0, Rational::one()),
        (EdgeId(2), v0, v1, Rational::zero()),
        (EdgeId(2), v0, tail, Rational::one()),
        (EdgeId(1), v0, v1, Rational::zero()),
    ];
    for (e, s, t, expected) in cases {
        let d = resistance_derivative(&net, e, s, t).unwrap();
        check(d == expected, || format!("bridge {e} between {s},{t}: {d}"))?;
    }
    Ok(format!("{}; worst relative error {worst:.2e}; bridge cases exact", summary(&report)))
}

fn criterion_10() -> Outcome {
    let spec = small_spec(SEED + 10);
    let mut bridgeless = 0;
    for i in 0..100 {
        let g = generate(&spec.for_instance(i, 0)).map_err(|e| e.to_string())?;
        let (_, r) = averaging_contractions(&g).unwrap();
        check(r.is_zero(), || format!("instance {i}: contraction average"))?;
        if g.edges().iter().all(|e| !g.is_bridge(e.id).unwrap()) {
            let (_, r) = averaging_deletions(&g).unwrap();
            check(r.is_zero(), || format!("instance {i}: deletion average"))?;
            bridgeless += 1;
        }
    }
    check(bridgeless > 0, || "no bridgeless instance generated".into())?;
    Ok(format!("100 instances, {bridgeless} bridgeless"))
}

fn criterion_11() -> Outcome {
    for i in 0..50u64 {
        let (g, s, t) = series_parallel(SEED + i, 3 + (i as usize % 10), LengthDist::SmallRationals);
        let (value, _) = reduce_two_terminal(&g, s, t).map_err(|e| e.to_string())?;
        let exact = Network::new(g).unwrap().resistance(s, t).unwrap();
        check(value.as_ref() == Some(&exact), || format!("series-parallel {i}: {value:?} vs {exact}"))?;
    }
    let spec = small_spec(SEED + 11);
    for i in 0..50 {
        let (g, tri) = with_random_triangle(&spec.for_instance(i, 0)).map_err(|e| e.to_string())?;
        let before = Network::new(g.clone()).unwrap();
        let (h, _) = delta_y(&g, tri).map_err(|e| e.to_string())?;
        let after = Network::new(h).unwrap();
        for &x in g.vertices() {
            for &y in g.vertices() {
                let (r0, r1) = (before.resistance(x, y).unwrap(), after.resistance(x, y).unwrap());
                check(r0 == r1, || format!("triangle {i}: r({x},{y}) {r0} vs {r1}"))?;
            }
        }
    }
    Ok("50 series-parallel reductions, 50 Delta-Y transforms".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        ("closed-form tables", criterion_1, BUDGET_CLOSED_FORMS),
        ("fan and wheel sequences", criterion_2, BUDGET_FAN_WHEEL),
        ("four-way spanning-tree agreement", criterion_3, BUDGET_FOUR_WAY),
        ("explicit resistance laws", criterion_4, BUDGET_LAWS),
        ("Euler decompositions and Foster", criterion_5, BUDGET_OTHER),
        ("trees against pseudo-inverse", criterion_6, BUDGET_OTHER),
        ("union and vertex-deletion vectors", criterion_7, BUDGET_OTHER),
        ("quadratic identification identities", criterion_8, BUDGET_OTHER),
        ("resistance derivative", criterion_9, BUDGET_OTHER),
        ("averaging identities", criterion_10, BUDGET_OTHER),
        ("reduction oracle and Delta-Y", criterion_11, BUDGET_OTHER),
    ];
    let mut failed = Vec::new();
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(detail) if elapsed <= budget => Ok(detail),
            Ok(detail) => Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}")),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(e) => {
                println!("FAIL {:>2} {name}: {e} ({elapsed:.2?})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
