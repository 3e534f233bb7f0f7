//! Integral symmetric bilinear forms.
//!
//! An [`IntegralLattice`] is a symmetric integer matrix: the linking matrix of
//! a framed link, which is also the intersection form of the 4-manifold built
//! by attaching 2-handles along it. All arithmetic is exact.

mod diagonalize;
mod enumerate;
mod inertia;
mod snf;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Sign;

pub use diagonalize::{diagonalizable_over_z, Diagonalization};
pub use enumerate::short_vectors;
pub use inertia::{inertia, Inertia};
pub use snf::{
    homology_from_linking, smith_normal_form, AbelianGroupPresentation, SmithDecomposition,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("matrix rows have unequal lengths")]
    Ragged,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("slide needs two distinct indices, got {0} twice")]
    SameIndex(usize),
    #[error("blow-down pivot at index {0} is not +1 or -1")]
    PivotNotUnit(usize),
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("form is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
}

/// Dense row-major integer matrix.
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
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; an empty list gives the 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LatticeError::Ragged);
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LatticeError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product. Panics on a dimension mismatch.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

/// Exact determinant of a square matrix by fraction-free (Bareiss) elimination.
pub fn matrix_determinant(a: &IntMatrix) -> Result<BigInt, LatticeError> {
    if !a.is_square() {
        return Err(LatticeError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let mut m = a.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(if n == 0 {
        sign
    } else {
        sign * &m[n - 1][n - 1]
    })
}

/// Symmetric integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegralLattice {
    gram: IntMatrix,
}

impl IntegralLattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        if !gram.is_square() {
            return Err(LatticeError::NotSquare {
                rows: gram.rows,
                cols: gram.cols,
            });
        }
        if let Some((i, j)) = gram.first_asymmetry() {
            return Err(LatticeError::NotSymmetric(i, j));
        }
        Ok(IntegralLattice { gram })
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LatticeError> {
        Self::new(IntMatrix::from_i64_rows(rows)?)
    }

    pub fn empty() -> Self {
        IntegralLattice {
            gram: IntMatrix::zeros(0, 0),
        }
    }

    pub fn identity(n: usize) -> Self {
        IntegralLattice {
            gram: IntMatrix::identity(n),
        }
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut gram = IntMatrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            gram[(i, i)] = e.clone();
        }
        IntegralLattice { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.gram[(i, j)]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.gram.to_rows()
    }

    pub fn determinant(&self) -> BigInt {
        matrix_determinant(&self.gram).expect("lattice matrices are square")
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// `v^T L v`.
    pub fn norm(&self, v: &[BigInt]) -> BigInt {
        self.pairing(v, v)
    }

    /// `u^T L v`.
    pub fn pairing(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        assert_eq!(u.len(), self.dim());
        assert_eq!(v.len(), self.dim());
        let mut acc = BigInt::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                acc += ui * &self.gram[(i, j)] * vj;
            }
        }
        acc
    }

    /// Principal submatrix on `indices`, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> IntegralLattice {
        let mut gram = IntMatrix::zeros(indices.len(), indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                gram[(a, b)] = self.gram[(i, j)].clone();
            }
        }
        IntegralLattice { gram }
    }

    /// `B^T L B` for an `n x k` basis matrix `B`.
    pub fn restrict(&self, basis: &IntMatrix) -> IntegralLattice {
        let gram = basis.transpose().mul(&self.gram).mul(basis);
        IntegralLattice { gram }
    }

    fn check_index(&self, index: usize) -> Result<(), LatticeError> {
        if index >= self.dim() {
            return Err(LatticeError::IndexOutOfRange {
                index,
                dim: self.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for IntegralLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.gram.fmt(f)
    }
}

/// Handle slide as a change of basis: basis vector `i` becomes `e_i + s e_j`,
/// i.e. returns `E^T L E` with `E = I + s * unit(j, i)`.
pub fn congruence_slide(
    l: &IntegralLattice,
    i: usize,
    j: usize,
    s: Sign,
) -> Result<IntegralLattice, LatticeError> {
    l.check_index(i)?;
    l.check_index(j)?;
    if i == j {
        return Err(LatticeError::SameIndex(i));
    }
    let s = s.to_bigint();
    let mut g = l.gram.clone();
    // column i += s * column j, then row i += s * row j
    for r in 0..g.rows {
        let add = &s * &g[(r, j)];
        g[(r, i)] += add;
    }
    for c in 0..g.cols {
        let add = &s * &g[(j, c)];
        g[(i, c)] += add;
    }
    Ok(IntegralLattice { gram: g })
}

/// Block sum `L ⊕ [eps]`.
pub fn stabilize(l: &IntegralLattice, eps: Sign) -> IntegralLattice {
    direct_sum(l, &IntegralLattice::diagonal(&[eps.to_bigint()]))
}

/// Removes index `k` with pivot `L[k][k] = ±1`, replacing the rest by the
/// Schur complement `L[i][j] - L[i][k] L[k][j] / L[k][k]`.
pub fn blow_down(l: &IntegralLattice, k: usize) -> Result<IntegralLattice, LatticeError> {
    l.check_index(k)?;
    let pivot = Sign::from_unit(&l.gram[(k, k)]).ok_or(LatticeError::PivotNotUnit(k))?;
    let p = pivot.to_bigint();
    let keep: Vec<usize> = (0..l.dim()).filter(|&i| i != k).collect();
    let mut gram = IntMatrix::zeros(keep.len(), keep.len());
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            // dividing by ±1 is multiplying by it
            gram[(a, b)] = &l.gram[(i, j)] - &l.gram[(i, k)] * &l.gram[(k, j)] * &p;
        }
    }
    Ok(IntegralLattice { gram })
}

/// Orthogonal block sum.
pub fn direct_sum(a: &IntegralLattice, b: &IntegralLattice) -> IntegralLattice {
    let (n, m) = (a.dim(), b.dim());
    let mut gram = IntMatrix::zeros(n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = a.gram[(i, j)].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            gram[(n + i, n + j)] = b.gram[(i, j)].clone();
        }
    }
    IntegralLattice { gram }
}

/// Edges of the E8 tree on nodes `0..8`: the chain `0-1-2-3-4-5-6` with node
/// `7` attached to node `4`, giving arms of length 4, 2 and 1 around node 4.
pub const E8_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];

/// The positive definite E8 plumbing form: 2 on the diagonal, 1 on the edges
/// of [`E8_EDGES`].
pub fn e8_matrix() -> IntegralLattice {
    let mut gram = IntMatrix::zeros(8, 8);
    for i in 0..8 {
        gram[(i, i)] = BigInt::from(2);
    }
    for &(a, b) in &E8_EDGES {
        gram[(a, b)] = BigInt::one();
        gram[(b, a)] = BigInt::one();
    }
    IntegralLattice { gram }
}
