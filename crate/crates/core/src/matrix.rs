//! Dense matrices over the integers with arbitrary-precision entries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`] but keeps the column count when there are no rows.
    pub fn from_rows_with_cols<R: AsRef<[i64]>>(rows: &[R], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column of wrong length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    fn get_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column_is_zero(&self, c: usize) -> bool {
        (0..self.rows).all(|r| self.get(r, c).is_zero())
    }

    /// First nonzero entry as `(row, col)`, scanning row-major.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|v| !v.is_zero())
            .map(|p| (p / self.cols, p % self.cols))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                m.set(r, j, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                m.set(i, c, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes for product");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *m.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }

    pub fn negate_column(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }

    /// Rank over the rationals by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let p = m.get(rank, col).clone();
            for r in rank + 1..m.rows {
                let f = m.get(r, col).clone();
                for c in col + 1..m.cols {
                    let v = (m.get(r, c) * &p - &f * m.get(rank, c)) / &prev;
                    m.set(r, c, v);
                }
                m.set(r, col, BigInt::zero());
            }
            prev = p;
            rank += 1;
        }
        rank
    }

    /// Determinant by Bareiss elimination. Panics on non-square input.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut prev = BigInt::one();
        let mut negate = false;
        for k in 0..n {
            let Some(pivot) = (k..n).find(|&r| !m.get(r, k).is_zero()) else {
                return BigInt::zero();
            };
            if pivot != k {
                m.swap_rows(k, pivot);
                negate = !negate;
            }
            let p = m.get(k, k).clone();
            for r in k + 1..n {
                let f = m.get(r, k).clone();
                for c in k + 1..n {
                    let v = (m.get(r, c) * &p - &f * m.get(k, c)) / &prev;
                    m.set(r, c, v);
                }
                m.set(r, k, BigInt::zero());
            }
            prev = p;
        }
        let det = m.get(n - 1, n - 1).clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// A basis of the integer kernel `{v in Z^cols : M v = 0}`, computed by
    /// unimodular column operations.
    pub fn integer_kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let mut a = self.clone();
        let mut u = IntMatrix::identity(self.cols);
        let mut pivot_col = 0;
        for r in 0..a.rows {
            if pivot_col >= a.cols {
                break;
            }
            for c in pivot_col + 1..a.cols {
                if a.get(r, c).is_zero() {
                    continue;
                }
                let p = a.get(r, pivot_col).clone();
                let q = a.get(r, c).clone();
                let eg = p.extended_gcd(&q);
                let (g, x, y) = (eg.gcd, eg.x, eg.y);
                let pg = &p / &g;
                let qg = &q / &g;
                // [x, -q/g; y, p/g] has determinant 1.
                a.combine_columns(pivot_col, c, &x, &y, &(-&qg), &pg);
                u.combine_columns(pivot_col, c, &x, &y, &(-&qg), &pg);
            }
            if !a.get(r, pivot_col).is_zero() {
                pivot_col += 1;
            }
        }
        (pivot_col..self.cols).map(|c| u.column(c)).collect()
    }

    /// Replaces columns `i`, `j` by `a*col_i + b*col_j` and `c*col_i + d*col_j`.
    fn combine_columns(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        for r in 0..self.rows {
            let vi = self.get(r, i).clone();
            let vj = self.get(r, j).clone();
            self.set(r, i, a * &vi + b * &vj);
            self.set(r, j, c * &vi + d * &vj);
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for c in 0..self.cols {
            let s = self.get(source, c);
            if !s.is_zero() {
                let v = factor * s;
                *self.get_mut(target, c) += v;
            }
        }
    }

    /// `col[target] += factor * col[source]`
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for r in 0..self.rows {
            let s = self.get(r, source);
            if !s.is_zero() {
                let v = factor * s;
                *self.get_mut(r, target) += v;
            }
        }
    }

    /// Largest absolute value of any entry, zero for an empty matrix.
    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_default()
    }

    pub(crate) fn entries(&self) -> &[BigInt] {
        &self.data
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}
