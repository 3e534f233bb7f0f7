use core::fmt;

use num_bigint::BigInt;

use crate::intlattice::{
    diagonalizable_over_z, inertia, Diagonalization, Inertia, IntegralLattice,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Positive definite, unimodular and not diagonalizable over Z.
    Obstructed,
    /// Positive definite and unimodular, but diagonalizable.
    NotObstructed,
    /// Not positive definite or not unimodular.
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Obstructed => "OBSTRUCTED",
            Verdict::NotObstructed => "NOT OBSTRUCTED",
            Verdict::NotApplicable => "NOT APPLICABLE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub inertia: Inertia,
    pub positive_definite: bool,
    pub determinant: BigInt,
    pub unimodular: bool,
    /// Computed only for positive definite unimodular forms.
    pub diagonalization: Option<Diagonalization>,
    pub verdict: Verdict,
}

/// Donaldson-type test on the linking matrix of a surgery presentation of a
/// homology sphere: a positive definite form that is not diagonalizable over
/// Z cannot be the intersection form of the complement of a separating
/// embedding in `(S^3 x I) # n CP^2-bar`.
pub fn donaldson_obstruction(l: &IntegralLattice) -> ObstructionReport {
    let inertia = inertia(l);
    let positive_definite = inertia.is_positive_definite();
    let determinant = l.determinant();
    let unimodular = l.is_unimodular();
    let diagonalization = if positive_definite && unimodular {
        Some(diagonalizable_over_z(l).expect("preconditions checked"))
    } else {
        None
    };
    let verdict = match &diagonalization {
        None => Verdict::NotApplicable,
        Some(d) if d.diagonalizable => Verdict::NotObstructed,
        Some(_) => Verdict::Obstructed,
    };
    ObstructionReport {
        inertia,
        positive_definite,
        determinant,
        unimodular,
        diagonalization,
        verdict,
    }
}
