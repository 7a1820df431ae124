//! Dense matrices over a [`Field`] with exact rank, kernel and solve.
//!
//! Kernel bases are returned in reduced-echelon normal form: one vector per
//! non-pivot column, carrying a 1 in that column and 0 in every other
//! non-pivot column. That basis depends only on the row space, so it is the
//! same whichever elimination produced it.

pub mod bareiss;
pub mod gauss;

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Scalar> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = K::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<K>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<K>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    m[(i, j)] = v.clone();
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[K]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        self.rows_iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(K::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
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
                        let cur = std::mem::replace(&mut out[(i, j)], K::zero());
                        out[(i, j)] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn push_row(&mut self, row: Vec<K>) {
        assert_eq!(row.len(), self.cols, "ragged row");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> Matrix<L> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Rows that are not identically zero.
    pub(crate) fn nonzero_rows(&self) -> Vec<Vec<K>> {
        self.rows_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| r.to_vec())
            .collect()
    }
}

impl<K: Field> Matrix<K> {
    pub fn rank(&self) -> usize {
        K::matrix_rank(self)
    }

    /// Basis of the right null space, in reduced-echelon normal form.
    pub fn kernel_basis(&self) -> Vec<Vec<K>> {
        K::matrix_kernel(self)
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// One solution of `self * x = b`, or `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        // The last column is free exactly when b lies in the column space; its
        // normal-form kernel vector then reads (-x, 1) with free entries zero.
        aug.kernel_basis()
            .into_iter()
            .find(|v| v[self.cols] == K::one())
            .map(|v| v[..self.cols].iter().map(|x| -x.clone()).collect())
    }
}

impl<K> Index<(usize, usize)> for Matrix<K> {
    type Output = K;
    fn index(&self, (i, j): (usize, usize)) -> &K {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<K> IndexMut<(usize, usize)> for Matrix<K> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut K {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<K: Scalar> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in self.rows_iter() {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Kernel vectors in normal form from an echelon matrix given as
/// `(pivot column, row)` pairs, solved by back substitution.
pub(crate) fn kernel_from_echelon<K: Field>(cols: usize, echelon: &[(usize, Vec<K>)]) -> Vec<Vec<K>> {
    let mut is_pivot = vec![false; cols];
    for (p, _) in echelon {
        is_pivot[*p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&j| !is_pivot[j]) {
        let mut x = vec![K::zero(); cols];
        x[free] = K::one();
        for (p, row) in echelon.iter().rev() {
            let mut s = K::zero();
            for j in (p + 1)..cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s = s + row[j].clone() * x[j].clone();
                }
            }
            if !s.is_zero() {
                x[*p] = -s / row[*p].clone();
            }
        }
        basis.push(x);
    }
    basis
}
