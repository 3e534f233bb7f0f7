use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::snf::snf_work;
use super::{inertia, short_vectors, IntMatrix, IntegralLattice, LatticeError};

/// Outcome of splitting `<1>` summands off a definite unimodular form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonalization {
    /// True iff the whole form split into `<1>` summands.
    pub diagonalizable: bool,
    /// Number of `<1>` summands split off.
    pub diagonal_part: usize,
    /// Orthogonal complement of the split summands, as a Gram matrix.
    pub residual: IntegralLattice,
}

/// Decides whether a positive definite unimodular form is congruent over Z to
/// the identity.
///
/// Repeatedly takes the first norm-1 vector `v`, passes to its orthogonal
/// complement (the kernel of the row `v^T L`, which is primitive because
/// `v^T L v = 1`; a basis comes from the Smith form of that row) and recurses
/// on the restricted Gram matrix.
pub fn diagonalizable_over_z(l: &IntegralLattice) -> Result<Diagonalization, LatticeError> {
    if !inertia(l).is_positive_definite() {
        return Err(LatticeError::NotPositiveDefinite);
    }
    let det = l.determinant();
    if !det.abs().is_one() {
        return Err(LatticeError::NotUnimodular(det));
    }
    let mut residual = l.clone();
    let mut diagonal_part = 0;
    while residual.dim() > 0 {
        let units = short_vectors(&residual, &BigInt::one())?;
        let Some(v) = units.first() else { break };
        residual = residual.restrict(&orthogonal_basis(&residual, v));
        diagonal_part += 1;
    }
    Ok(Diagonalization {
        diagonalizable: residual.dim() == 0,
        diagonal_part,
        residual,
    })
}

/// Columns spanning `{x : v^T L x = 0}` over Z.
fn orthogonal_basis(l: &IntegralLattice, v: &[BigInt]) -> IntMatrix {
    let n = l.dim();
    let row = IntMatrix::from_rows(alloc::vec![(0..n)
        .map(|j| v.iter().enumerate().map(|(i, vi)| vi * l.entry(i, j)).sum())
        .collect()])
    .expect("single row");
    // row = U S Q^-1 with S = [1 0 ... 0]; the kernel is Q applied to e_1..e_{n-1}
    let w = snf_work(&row);
    debug_assert!(w.b[(0, 0)].is_one());
    let mut basis = IntMatrix::zeros(n, n - 1);
    for r in 0..n {
        for c in 1..n {
            basis[(r, c - 1)] = w.q[(r, c)].clone();
        }
    }
    basis
}
