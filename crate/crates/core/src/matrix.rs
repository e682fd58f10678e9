//! Dense exact and floating matrices.
//!
//! `RationalMatrix` carries the exact layer: fraction-free Bareiss
//! determinants (denominators cleared to integers first), exact Gaussian
//! solves, and matrix algebra over Q. `RealMatrix` is the f64 stage consumed
//! by the numeric eigenvalue code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
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

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> RationalMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn matmul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zero(self.rows, other.cols);
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
        out
    }

    pub fn matvec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    /// Common denominator c and the integer entries of c*self.
    fn clear_denominators(&self) -> (Vec<BigInt>, BigInt) {
        let mut c = BigInt::one();
        for q in &self.entries {
            c = c.lcm(q.denom());
        }
        let ints = self
            .entries
            .iter()
            .map(|q| {
                let scaled = q * Rational::from_integer(c.clone());
                debug_assert!(rational::is_integer(&scaled));
                scaled.numer().clone()
            })
            .collect();
        (ints, c)
    }

    /// Exact determinant by fraction-free Bareiss elimination on the
    /// denominator-cleared integer matrix.
    pub fn det_bareiss(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (ints, c) = self.clear_denominators();
        let det_int = bareiss_int_det(ints, n);
        // det(self) = det(c*self) / c^n
        let mut denom = BigInt::one();
        for _ in 0..n {
            denom *= &c;
        }
        Ok(Rational::new(det_int, denom))
    }

    /// Solve self * x = rhs exactly; errors on non-square or singular systems.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_square() || self.rows != rhs.len() {
            return Err(Error::Shape("solve expects square matrix matching rhs".into()));
        }
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or_else(|| Error::Internal("singular linear system".into()))?;
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                b.swap(col, pivot_row);
            }
            let pivot = a[col * n + col].clone();
            for r in (col + 1)..n {
                let factor = &a[r * n + col] / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = &factor * &a[col * n + j];
                    a[r * n + j] -= sub;
                }
                let sub = &factor * &b[col];
                b[r] -= sub;
            }
        }
        let mut x = vec![Rational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = b[i].clone();
            for j in (i + 1)..n {
                acc -= &a[i * n + j] * &x[j];
            }
            x[i] = acc / &a[i * n + i];
        }
        Ok(x)
    }

    /// f64 image of the matrix.
    pub fn to_real(&self) -> RealMatrix {
        RealMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(rational::to_f64).collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

/// Bareiss single-step fraction-free elimination; exact over the integers.
fn bareiss_int_det(mut a: Vec<BigInt>, n: usize) -> BigInt {
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k].is_zero() {
            match ((k + 1)..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for j in 0..n {
                        a.swap(k * n + j, r * n + j);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i * n + j] = q;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    let det = a[(n - 1) * n + (n - 1)].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Dense double-precision matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl RealMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RealMatrix { rows, cols, entries: vec![0.0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RealMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
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

    pub fn transpose(&self) -> RealMatrix {
        let mut out = RealMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl std::ops::Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.entries[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn bareiss_det_small() {
        let m = RationalMatrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(3), rat(4)]]);
        assert_eq!(m.det_bareiss().unwrap(), rat(-2));
    }

    #[test]
    fn bareiss_det_rational_entries() {
        let m = RationalMatrix::from_rows(vec![
            vec![ratio(1, 2), rat(0)],
            vec![rat(7), ratio(2, 3)],
        ]);
        assert_eq!(m.det_bareiss().unwrap(), ratio(1, 3));
    }

    #[test]
    fn bareiss_det_singular_and_pivoting() {
        let m = RationalMatrix::from_rows(vec![
            vec![rat(0), rat(1), rat(2)],
            vec![rat(1), rat(0), rat(1)],
            vec![rat(1), rat(1), rat(3)],
        ]);
        assert_eq!(m.det_bareiss().unwrap(), rat(0));
        let m2 = RationalMatrix::from_rows(vec![
            vec![rat(0), rat(2)],
            vec![rat(3), rat(0)],
        ]);
        assert_eq!(m2.det_bareiss().unwrap(), rat(-6));
    }

    #[test]
    fn det_empty_matrix_is_one() {
        assert_eq!(RationalMatrix::zero(0, 0).det_bareiss().unwrap(), rat(1));
    }

    #[test]
    fn exact_solve() {
        let m = RationalMatrix::from_rows(vec![
            vec![rat(2), rat(1)],
            vec![rat(1), rat(3)],
        ]);
        let x = m.solve(&[rat(5), rat(10)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(3)]);
    }

    #[test]
    fn matmul_identity() {
        let m = RationalMatrix::from_rows(vec![
            vec![rat(1), ratio(1, 2)],
            vec![rat(0), rat(3)],
        ]);
        assert_eq!(m.matmul(&RationalMatrix::identity(2)), m);
    }
}
