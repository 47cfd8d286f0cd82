use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::exactnum::{int, rat};

fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

fn row(f: impl Fn(usize, usize) -> BigInt, n: usize) -> Vec<BigInt> {
    (0..=n).map(|k| f(n, k)).collect()
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// Pascal's triangle, independent of `binomial`.
fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::from(1)]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut r = vec![BigInt::from(1); i + 1];
        for k in 1..i {
            r[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(r);
    }
    rows
}

#[test]
fn morgan_voyce_examples() {
    assert_eq!(morgan_voyce(0), p(&[1]));
    assert_eq!(morgan_voyce(1), p(&[2, 1]));
    assert_eq!(morgan_voyce(2), p(&[3, 4, 1]));
    assert_eq!(morgan_voyce(4), p(&[5, 20, 21, 8, 1]));
}

#[test]
fn w_examples() {
    assert_eq!(w_poly(0), p(&[1]));
    assert_eq!(w_poly(1), p(&[4, 1]));
    assert_eq!(w_poly(3), p(&[16, 20, 8, 1]));
    assert_eq!(w_poly(4), p(&[25, 50, 35, 10, 1]));
}

#[test]
fn closed_forms_match_recurrences() {
    for n in 0..=30 {
        assert_eq!(morgan_voyce(n), morgan_voyce_closed(n), "B_{n}");
        assert_eq!(w_poly(n), w_poly_closed(n), "W_{n}");
        for k in 0..=n {
            assert_eq!(companion(n).coefficient(k), companion_coefficient(n, k));
        }
    }
}

#[test]
fn binomial_matches_pascal() {
    let table = pascal(40);
    for (n, r) in table.iter().enumerate() {
        for (k, c) in r.iter().enumerate() {
            assert_eq!(&binomial(n as i64, k as i64), c);
        }
    }
    assert_eq!(binomial(3, 5), BigInt::from(0));
    assert_eq!(binomial(3, -1), BigInt::from(0));
}

#[test]
fn fibonacci_and_lucas_numbers() {
    assert_eq!(fibonacci(10), BigInt::from(55));
    assert_eq!(lucas(10), BigInt::from(123));
    let f: Vec<BigInt> = (0..8).map(fibonacci).collect();
    assert_eq!(f, ints(&[0, 1, 1, 2, 3, 5, 8, 13]));
    let l: Vec<BigInt> = (0..8).map(lucas).collect();
    assert_eq!(l, ints(&[2, 1, 3, 4, 7, 11, 18, 29]));
    for n in 0..20 {
        assert_eq!(fibonacci_poly(n).eval_int(&BigInt::from(1)), fibonacci(n));
        assert_eq!(lucas_poly(n).eval_int(&BigInt::from(1)), lucas(n));
    }
}

#[test]
fn fibonacci_poly_relation_small() {
    // x B_1(x^2) = 2x + x^3 = F_4(x)
    let lhs = &IntPolynomial::x() * &morgan_voyce(1).substitute_square();
    assert_eq!(lhs, p(&[0, 2, 0, 1]));
    assert_eq!(fibonacci_poly(4), lhs);
}

#[test]
fn polynomial_relations() {
    let two = IntPolynomial::constant(2);
    for n in 0..=15 {
        let fib = &IntPolynomial::x() * &morgan_voyce(n).substitute_square();
        assert_eq!(fib, fibonacci_poly(2 * n + 2));
        let x2 = p(&[0, 0, 1]);
        let luc = &(&x2 * &w_poly(n).substitute_square()) + &two;
        assert_eq!(luc, lucas_poly(2 * n + 2));
    }
    for n in 1..=10 {
        assert_eq!(companion(n), &(&IntPolynomial::x() * &w_poly(n - 1)) + &two);
    }
}

#[test]
fn triangles() {
    assert_eq!(triangular_fan(0, 0), BigInt::from(1));
    assert_eq!(row(triangular_fan, 1), ints(&[2, 1]));
    assert_eq!(row(triangular_fan, 2), ints(&[3, 4, 1]));
    assert_eq!(row(triangular_fan, 3), ints(&[4, 10, 6, 1]));
    assert_eq!(row(triangular_wheel, 0), ints(&[1]));
    assert_eq!(row(triangular_wheel, 1), ints(&[4, 1]));
    assert_eq!(row(triangular_wheel, 2), ints(&[9, 6, 1]));
    assert_eq!(row(triangular_wheel, 3), ints(&[16, 20, 8, 1]));
    assert_eq!(triangular_fan(2, 5), BigInt::from(0));
    for n in 0..12 {
        for k in 0..=n {
            assert_eq!(triangular_fan(n, k), morgan_voyce(n).coefficient(k));
            assert_eq!(triangular_wheel(n, k), w_poly(n).coefficient(k));
        }
    }
    // companion array: first column 1, diagonal 2
    for n in 1..10 {
        assert_eq!(triangular_companion(n, 0), BigInt::from(1));
        assert_eq!(triangular_companion(n, n), BigInt::from(2));
    }
    assert_eq!(row(triangular_companion, 3), ints(&[1, 6, 9, 2]));
}

#[test]
fn evaluation() {
    assert_eq!(eval(&morgan_voyce(2), &int(1)), int(8));
    assert_eq!(eval(&w_poly(2), &int(1)), int(16));
    assert_eq!(eval(&p(&[7, 3, 1]), &int(0)), int(7));
    assert_eq!(eval(&p(&[1, 1]), &rat(1, 2)), rat(3, 2));
    // fan and wheel counts at a = 1
    let fans: Vec<BigInt> = (1..=5).map(|n| morgan_voyce(n - 1).eval_int(&BigInt::from(1))).collect();
    assert_eq!(fans, ints(&[1, 3, 8, 21, 55]));
    let wheels: Vec<BigInt> = (1..=5).map(|n| w_poly(n - 1).eval_int(&BigInt::from(1))).collect();
    assert_eq!(wheels, ints(&[1, 5, 16, 45, 121]));
    for n in 1..=10 {
        assert_eq!(morgan_voyce(n - 1).eval_int(&BigInt::from(1)), fibonacci(2 * n));
        assert_eq!(w_poly(n - 1).eval_int(&BigInt::from(1)) + 2, lucas(2 * n));
    }
}

#[test]
fn display() {
    assert_eq!(morgan_voyce(2).to_string(), "3 + 4x + x^2");
    assert_eq!(p(&[0, -1, 0, 2]).to_string(), "-x + 2x^3");
    assert_eq!(IntPolynomial::zero().to_string(), "0");
    assert_eq!(IntPolynomial::zero().degree(), None);
    assert_eq!(p(&[1, 0, 0]).degree(), Some(0));
}

fn arb_poly() -> impl Strategy<Value = IntPolynomial> {
    proptest::collection::vec(-20i64..20, 0..6).prop_map(|c| IntPolynomial::from_i64(&c))
}

proptest! {
    #[test]
    fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), num in -5i64..5, den in 1i64..5) {
        let x = rat(num, den);
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        prop_assert_eq!(a.substitute_square().eval(&x), a.eval(&(&x * &x)));
    }
}
