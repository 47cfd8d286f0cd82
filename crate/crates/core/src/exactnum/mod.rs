//! Exact scalars and dense exact linear algebra.
//!
//! Integers and rationals are the arbitrary-precision types from `num-bigint`
//! and `num-rational`; [`BigRational`](num_rational::BigRational) reduces to
//! lowest terms with a positive denominator on every construction, so equality
//! against zero is literal.

mod matrix;

pub(crate) use matrix::bareiss_det;
pub use matrix::{MatrixError, RationalMatrix};
pub use num_bigint::BigInt;

use num_traits::{ToPrimitive, Zero};

/// Exact rational number, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn from_bigint(value: BigInt) -> Rational {
    Rational::from_integer(value)
}

/// Formats as `num/den`, including `0/1` and `n/1` for integers.
pub fn fraction_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `n` or `a/b` (optionally signed) into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Nearest `f64`. Goes through a scaled integer quotient when the parts
/// themselves overflow `f64`.
pub fn to_f64(value: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (value.numer().to_f64(), value.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let bits = value.numer().bits().max(value.denom().bits()) as i64;
    let shift = (bits - 900).max(0) as usize;
    let n = (value.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (value.denom() >> shift).to_f64().unwrap_or(1.0);
    n / d
}

/// Decimal rendering with `digits` significant digits (advisory output only).
pub fn decimal_string(value: &Rational, digits: usize) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let x = to_f64(value);
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Exact integer division; `None` when `den` does not divide `num`.
pub fn exact_div(num: &BigInt, den: &BigInt) -> Option<BigInt> {
    if den.is_zero() {
        return None;
    }
    let (q, r) = num_integer::Integer::div_rem(num, den);
    r.is_zero().then_some(q)
}

/// Returns the integer value if `value` has denominator one.
pub fn as_integer(value: &Rational) -> Option<BigInt> {
    value.is_integer().then(|| value.numer().clone())
}
