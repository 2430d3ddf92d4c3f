//! Dense matrices over exact rationals and the small amount of linear algebra
//! the verifiers need: products, row reduction, projectors, exact fits.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{dot, Q};

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Q::one() } else { Q::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Q>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        for r in rows {
            crate::error::check_dim(cols, r.len())?;
        }
        Ok(QMatrix { rows: rows.len(), cols, data: rows.iter().flatten().cloned().collect() })
    }

    /// Builds a matrix whose columns are the given vectors of length `dim`.
    pub fn from_columns(dim: usize, cols: &[Vec<Q>]) -> Result<Self> {
        for c in cols {
            crate::error::check_dim(dim, c.len())?;
        }
        Ok(Self::from_fn(dim, cols.len(), |i, j| cols[j][i].clone()))
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

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
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
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn neg(&self) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Block-diagonal matrix with the given square blocks along the diagonal.
    pub fn block_diag(blocks: &[QMatrix]) -> QMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = QMatrix::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &QMatrix) -> QMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Self::from_fn(rows, cols, |i, j| {
            self.get(i / other.rows, j / other.cols) * other.get(i % other.rows, j % other.cols)
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        self.rref_upto(self.cols)
    }

    /// Row reduction that only pivots on the first `limit` columns; the
    /// remaining columns are carried along.
    fn rref_upto(&self, limit: usize) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Q::one()
            } else {
                Q::zero()
            }
        });
        let (r, piv) = aug.rref();
        if piv.len() < n || (n > 0 && piv[n - 1] >= n) {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Basis of `{x : A x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<Q>> {
        let (r, piv) = self.rref();
        (0..self.cols)
            .filter(|c| !piv.contains(c))
            .map(|free| {
                let mut x = vec![Q::zero(); self.cols];
                x[free] = Q::one();
                for (row, &pc) in piv.iter().enumerate() {
                    x[pc] = -r.get(row, free).clone();
                }
                x
            })
            .collect()
    }

    /// A basis of the column space, taken from the pivot columns.
    pub fn column_space_basis(&self) -> Vec<Vec<Q>> {
        let (_, piv) = self.rref();
        piv.into_iter().map(|c| self.column(c)).collect()
    }
}

/// Basis of the orthogonal complement of `span(basis)` in `Q^dim`.
pub fn orthogonal_complement(dim: usize, basis: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    if basis.is_empty() {
        return Ok((0..dim).map(|i| (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect());
    }
    let bt = QMatrix::from_rows(basis)?;
    crate::error::check_dim(dim, bt.cols())?;
    Ok(bt.null_space())
}

/// Orthogonal projector `B (BᵀB)⁻¹ Bᵀ` onto the span of `basis` in `Q^dim`.
///
/// An empty basis yields the zero projector. Linearly dependent spanning sets
/// are reduced first.
pub fn projector(dim: usize, basis: &[Vec<Q>]) -> Result<QMatrix> {
    if basis.is_empty() {
        return Ok(QMatrix::zeros(dim, dim));
    }
    let b = QMatrix::from_columns(dim, basis)?;
    let b = QMatrix::from_columns(dim, &b.column_space_basis())?;
    let gram = b.transpose().mul(&b);
    let inv = gram
        .inverse()
        .ok_or_else(|| Error::InvalidArgument("degenerate subspace basis".into()))?;
    Ok(b.mul(&inv).mul(&b.transpose()))
}

/// Solution of an exact linear system `A x = b` that may be inconsistent.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFit {
    /// Values for the unknowns; free unknowns are set to zero.
    pub solution: Vec<Q>,
    /// `true` when every equation is satisfied by `solution`.
    pub consistent: bool,
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination.
///
/// Pivots are taken in column order, so an inconsistent system still yields
/// the solution of its leading pivot equations.
pub fn solve(a: &QMatrix, b: &[Q]) -> LinearFit {
    assert_eq!(a.rows(), b.len());
    let n = a.cols();
    let aug = QMatrix::from_fn(a.rows(), n + 1, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let (r, piv) = aug.rref_upto(n);
    let mut solution = vec![Q::zero(); n];
    for (row, &c) in piv.iter().enumerate() {
        solution[c] = r.get(row, n).clone();
    }
    let consistent = (piv.len()..r.rows()).all(|row| r.get(row, n).is_zero());
    LinearFit { solution, consistent }
}
