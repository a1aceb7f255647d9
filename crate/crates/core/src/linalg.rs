//! Dense exact linear algebra over [`GaussRat`].
//!
//! Reduction is Gauss–Jordan with the first nonzero entry of each column as
//! pivot, so results depend only on the row and column order.

use num_traits::{One, Zero};

use crate::scalars::GaussRat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussRat>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GaussRat::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut out = Self::zero(size, size);
        for i in 0..size {
            out.set(i, i, GaussRat::one());
        }
        out
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(rows: Vec<Vec<GaussRat>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Self { rows: n, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<GaussRat>], rows: usize) -> Self {
        let mut out = Self::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged matrix columns");
            for (i, v) in col.iter().enumerate() {
                out.set(i, j, v.clone());
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussRat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[GaussRat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<GaussRat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Hermitian adjoint with respect to the standard inner product.
    pub fn conj_transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[GaussRat]) -> Vec<GaussRat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = GaussRat::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack needs equal column counts");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }
}

/// Reduced row echelon form with the pivot column of each nonzero row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The nonzero rows, a canonical basis of the row space.
    pub fn basis(&self) -> Vec<Vec<GaussRat>> {
        (0..self.rank()).map(|i| self.matrix.row(i).to_vec()).collect()
    }

    /// Subtracts the row-space component of `v` along the pivot columns.
    pub fn reduce(&self, v: &[GaussRat]) -> Vec<GaussRat> {
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let f = out[pc].clone();
            if f.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.matrix.row(r)) {
                if !x.is_zero() {
                    *o -= &(&f * x);
                }
            }
        }
        out
    }
}

pub fn rref(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else { continue };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).recip().expect("pivot is nonzero");
        for j in c..a.cols {
            let idx = r * a.cols + j;
            a.data[idx] = &a.data[idx] * &inv;
        }
        let pivot_row: Vec<GaussRat> = a.row(r).to_vec();
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                if !pv.is_zero() {
                    let idx = i * a.cols + j;
                    a.data[idx] -= &(&f * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank()
}

/// Canonical kernel basis: one vector per free column, with a 1 in that
/// column and zeros in the other free columns.
pub fn nullspace(m: &Matrix) -> Vec<Vec<GaussRat>> {
    let red = rref(m);
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![GaussRat::zero(); cols];
            v[f] = GaussRat::one();
            for (r, &pc) in red.pivots.iter().enumerate() {
                v[pc] = -red.matrix.get(r, f);
            }
            v
        })
        .collect()
}

/// RREF basis of the span of `vectors`, each of length `dim`.
pub fn span_basis(vectors: &[Vec<GaussRat>], dim: usize) -> Vec<Vec<GaussRat>> {
    rref(&Matrix::from_rows(vectors.to_vec(), dim)).basis()
}

/// Whether two families of vectors of length `dim` span the same space.
pub fn same_span(a: &[Vec<GaussRat>], b: &[Vec<GaussRat>], dim: usize) -> bool {
    span_basis(a, dim) == span_basis(b, dim)
}
