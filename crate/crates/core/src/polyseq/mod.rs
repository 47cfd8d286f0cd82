//! Integer polynomial sequences behind the fan and wheel counts: Morgan-Voyce
//! `B_n`, the wheel family `W_n`, the companion `C_n`, and Fibonacci and Lucas
//! numbers and polynomials.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{from_bigint, Rational};

/// Polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// `[x^k] P`, zero past the degree.
    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coefficients.iter().map(|a| a * c).collect())
    }

    /// `P(x^2)`.
    pub fn substitute_square(&self) -> Self {
        let mut out = vec![BigInt::zero(); (2 * self.coefficients.len()).saturating_sub(1)];
        for (k, c) in self.coefficients.iter().enumerate() {
            out[2 * k] = c.clone();
        }
        Self::new(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + from_bigint(c.clone()))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        IntPolynomial::new((0..n).map(|k| self.coefficient(k) + rhs.coefficient(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        IntPolynomial::new((0..n).map(|k| self.coefficient(k) - rhs.coefficient(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    /// Ascending powers, e.g. `3 + 4x + x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Second-order recurrence `P_n = (x + 2) P_{n-1} - P_{n-2} + c`.
fn shifted_recurrence(n: usize, p0: IntPolynomial, p1: IntPolynomial, c: i64) -> IntPolynomial {
    if n == 0 {
        return p0;
    }
    let step = IntPolynomial::from_i64(&[2, 1]);
    let add = IntPolynomial::constant(c);
    let (mut prev, mut cur) = (p0, p1);
    for _ in 1..n {
        let next = &(&(&step * &cur) - &prev) + &add;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Morgan-Voyce `B_n`: `B_0 = 1`, `B_1 = 2 + x`, `B_n = (x + 2) B_{n-1} - B_{n-2}`.
pub fn morgan_voyce(n: usize) -> IntPolynomial {
    shifted_recurrence(n, IntPolynomial::constant(1), IntPolynomial::from_i64(&[2, 1]), 0)
}

/// `B_n` from its coefficients `C(n + k + 1, n - k)`.
pub fn morgan_voyce_closed(n: usize) -> IntPolynomial {
    let n = n as i64;
    IntPolynomial::new((0..=n).map(|k| binomial(n + k + 1, n - k)).collect())
}

/// `W_0 = 1`, `W_1 = 4 + x`, `W_n = (x + 2) W_{n-1} - W_{n-2} + 2`.
pub fn w_poly(n: usize) -> IntPolynomial {
    shifted_recurrence(n, IntPolynomial::constant(1), IntPolynomial::from_i64(&[4, 1]), 2)
}

/// `(2n + 2) C(n + 2 + k, n - k) / (n + 2 + k)`; the division is exact.
fn w_coefficient(n: i64, k: i64) -> BigInt {
    let num = binomial(n + 2 + k, n - k) * BigInt::from(2 * n + 2);
    let (q, r) = num.div_rem(&BigInt::from(n + 2 + k));
    assert!(r.is_zero(), "W_{n} coefficient {k} is not an integer");
    q
}

/// `W_n` from its closed-form coefficients.
pub fn w_poly_closed(n: usize) -> IntPolynomial {
    let n = n as i64;
    IntPolynomial::new((0..=n).map(|k| w_coefficient(n, k)).collect())
}

/// Companion Morgan-Voyce `C_n = x W_{n-1} + 2` for `n >= 1`; `C_0 = 2`.
pub fn companion(n: usize) -> IntPolynomial {
    if n == 0 {
        return IntPolynomial::constant(2);
    }
    &(&IntPolynomial::x() * &w_poly(n - 1)) + &IntPolynomial::constant(2)
}

/// `[x^k] C_n = 2n C(n + k, n - k) / (n + k)`, the wheel subset sums.
pub fn companion_coefficient(n: usize, k: usize) -> BigInt {
    if n == 0 {
        return if k == 0 { BigInt::from(2) } else { BigInt::zero() };
    }
    let (n, k) = (n as i64, k as i64);
    let num = binomial(n + k, n - k) * BigInt::from(2 * n);
    let (q, r) = num.div_rem(&BigInt::from(n + k));
    assert!(r.is_zero(), "C_{n} coefficient {k} is not an integer");
    q
}

fn linear_pair(n: usize, a: BigInt, b: BigInt) -> BigInt {
    let (mut a, mut b) = (a, b);
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `F_0 = 0`, `F_1 = 1`.
pub fn fibonacci(n: usize) -> BigInt {
    linear_pair(n, BigInt::zero(), BigInt::one())
}

/// `L_0 = 2`, `L_1 = 1`.
pub fn lucas(n: usize) -> BigInt {
    linear_pair(n, BigInt::from(2), BigInt::one())
}

fn poly_pair(n: usize, p0: IntPolynomial, p1: IntPolynomial) -> IntPolynomial {
    let x = IntPolynomial::x();
    let (mut a, mut b) = (p0, p1);
    for _ in 0..n {
        let next = &(&x * &b) + &a;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `F_0 = 0`, `F_1 = 1`, `F_n = x F_{n-1} + F_{n-2}`.
pub fn fibonacci_poly(n: usize) -> IntPolynomial {
    poly_pair(n, IntPolynomial::zero(), IntPolynomial::constant(1))
}

/// `L_0 = 2`, `L_1 = x`, `L_n = x L_{n-1} + L_{n-2}`.
pub fn lucas_poly(n: usize) -> IntPolynomial {
    poly_pair(n, IntPolynomial::constant(2), IntPolynomial::x())
}

/// Fan triangle: `T(0,0) = 1`, zero outside `0 <= k <= n`, and
/// `T(n,k) = T(n-1,k-1) + 2T(n-1,k) - T(n-2,k)`. Row `n` lists the
/// coefficients of `B_n`.
pub fn triangular_fan(n: usize, k: usize) -> BigInt {
    triangle(n, k, 0)
}

/// Wheel triangle: the same recurrence plus `2` in column zero, listing the
/// coefficients of `W_n`.
pub fn triangular_wheel(n: usize, k: usize) -> BigInt {
    triangle(n, k, 2)
}

fn triangle(n: usize, k: usize, column_zero_extra: i64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    // rows[r][c] = T(r, c); T(-1, *) = 0
    let mut prev2: Vec<BigInt> = Vec::new();
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    for row in 1..=n {
        let at = |v: &Vec<BigInt>, c: isize| -> BigInt {
            if c < 0 {
                BigInt::zero()
            } else {
                v.get(c as usize).cloned().unwrap_or_default()
            }
        };
        let cur: Vec<BigInt> = (0..=row as isize)
            .map(|c| {
                let extra = if c == 0 { column_zero_extra } else { 0 };
                at(&prev, c - 1) + at(&prev, c) * 2 - at(&prev2, c) + extra
            })
            .collect();
        prev2 = std::mem::replace(&mut prev, cur);
    }
    prev[k].clone()
}

/// Reversed companion array `T(n, j) = [x^{n-j}] C_n`, so `T(n,0) = 1` and
/// `T(n,n) = 2`; `T(n, n-k)` is the wheel subset sum for `k`-subsets.
pub fn triangular_companion(n: usize, j: usize) -> BigInt {
    if j > n {
        return BigInt::zero();
    }
    companion(n).coefficient(n - j)
}

pub fn eval(p: &IntPolynomial, x: &Rational) -> Rational {
    p.eval(x)
}

#[cfg(test)]
mod tests;
