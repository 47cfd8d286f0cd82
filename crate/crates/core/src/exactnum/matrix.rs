use std::fmt;
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{BigInt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular (elimination failed at pivot {pivot})")]
    Singular { pivot: usize },
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::one(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Builds from nested rows; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Copy with row and column `k` removed (a principal minor).
    pub fn without_row_col(&self, k: usize) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| i != k).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|&j| j != k).collect();
        Self::from_fn(keep.len(), keep_c.len(), |i, j| self[(keep[i], keep_c[j])].clone())
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.mismatch(other));
        }
        Ok(())
    }

    fn mismatch(&self, other: &Self) -> MatrixError {
        MatrixError::DimensionMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(self.mismatch(other));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Each row is first scaled to integers by the lcm of its denominators;
    /// the elimination then runs entirely over `BigInt` and every division is
    /// exact.
    pub fn det_fraction_free(&self) -> Result<Rational, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let lcm = self
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            a.push(
                self.row(i)
                    .iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect(),
            );
            scale *= lcm;
        }
        let det = bareiss_det(a);
        Ok(Rational::new(det, scale))
    }

    /// Exact inverse by Gauss-Jordan elimination with pivot search.
    pub fn invert(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let pivot_row = (k..n)
                .find(|&i| !a[(i, k)].is_zero())
                .ok_or(MatrixError::Singular { pivot: k })?;
            if pivot_row != k {
                a.swap_rows(pivot_row, k);
                inv.swap_rows(pivot_row, k);
            }
            let p = a[(k, k)].recip();
            for j in 0..n {
                a[(k, j)] *= &p;
                inv[(k, j)] *= &p;
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in 0..n {
                    let ak = &a[(k, j)] * &f;
                    a[(i, j)] -= ak;
                    let ik = &inv[(k, j)] * &f;
                    inv[(i, j)] -= ik;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Bareiss elimination on an integer matrix; consumes its input.
pub(crate) fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // exact by Sylvester's identity
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    /// Laplace expansion along the first row; independent of elimination.
    fn cofactor_det(m: &RationalMatrix) -> Rational {
        let n = m.rows();
        if n == 0 {
            return Rational::one();
        }
        if n == 1 {
            return m[(0, 0)].clone();
        }
        let mut total = Rational::zero();
        for j in 0..n {
            let minor = RationalMatrix::from_fn(n - 1, n - 1, |r, c| {
                m[(r + 1, if c < j { c } else { c + 1 })].clone()
            });
            let term = &m[(0, j)] * cofactor_det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn det_small_cases() {
        let one = RationalMatrix::from_i64_rows(&[&[5]]);
        assert_eq!(one.det_fraction_free().unwrap(), int(5));
        let two = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 2]]);
        assert_eq!(two.det_fraction_free().unwrap(), int(3));
        let k4 = RationalMatrix::from_i64_rows(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]);
        assert_eq!(k4.det_fraction_free().unwrap(), int(16));
        assert_eq!(RationalMatrix::zeros(0, 0).det_fraction_free().unwrap(), int(1));
    }

    #[test]
    fn det_needs_row_swap() {
        let m = RationalMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det_fraction_free().unwrap(), int(-1));
        let m = RationalMatrix::from_i64_rows(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(m.det_fraction_free().unwrap(), int(-1));
    }

    #[test]
    fn det_rational_entries() {
        let m = RationalMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 5)]]);
        assert_eq!(m.det_fraction_free().unwrap(), rat(1, 10) - rat(1, 12));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = RationalMatrix::zeros(2, 3);
        assert_eq!(
            m.det_fraction_free(),
            Err(MatrixError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn invert_examples() {
        let i3 = RationalMatrix::identity(3);
        assert_eq!(i3.invert().unwrap(), i3);
        let d = RationalMatrix::from_i64_rows(&[&[2, 0], &[0, 4]]);
        let expected = RationalMatrix::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(0), rat(1, 4)]]);
        assert_eq!(d.invert().unwrap(), expected);
    }

    #[test]
    fn invert_singular_reports_pivot() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.invert(), Err(MatrixError::Singular { pivot: 1 }));
        let z = RationalMatrix::zeros(2, 2);
        assert_eq!(z.invert(), Err(MatrixError::Singular { pivot: 0 }));
    }

    #[test]
    fn arithmetic_identities() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(RationalMatrix::identity(2).mul(&m).unwrap(), m);
        assert_eq!(m.add(&RationalMatrix::zeros(2, 2)).unwrap(), m);
        let quarter = RationalMatrix::ones(4, 4).scale(&rat(1, 4));
        assert!(quarter.entries().iter().all(|x| *x == rat(1, 4)));
        assert!(m.mul(&RationalMatrix::zeros(3, 3)).is_err());
        assert!(m.add(&RationalMatrix::zeros(3, 2)).is_err());
    }

    fn int_matrix(max_n: usize) -> impl Strategy<Value = RationalMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(-6i64..7, n * n).prop_map(move |v| {
                RationalMatrix::from_fn(n, n, |i, j| int(v[i * n + j]))
            })
        })
    }

    fn rational_matrix(max_n: usize) -> impl Strategy<Value = RationalMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec((-6i64..7, 1i64..5), n * n).prop_map(move |v| {
                RationalMatrix::from_fn(n, n, |i, j| rat(v[i * n + j].0, v[i * n + j].1))
            })
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(m in int_matrix(4)) {
            prop_assert_eq!(m.det_fraction_free().unwrap(), cofactor_det(&m));
        }

        #[test]
        fn rational_det_matches_cofactor_expansion(m in rational_matrix(4)) {
            prop_assert_eq!(m.det_fraction_free().unwrap(), cofactor_det(&m));
        }

        #[test]
        fn inverse_is_exact(m in int_matrix(6)) {
            let det = m.det_fraction_free().unwrap();
            match m.invert() {
                Ok(inv) => {
                    prop_assert!(!det.is_zero());
                    prop_assert_eq!(inv.mul(&m).unwrap(), RationalMatrix::identity(m.rows()));
                    prop_assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(m.rows()));
                }
                Err(MatrixError::Singular { .. }) => prop_assert!(det.is_zero()),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }
}
