use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::IntegralLattice;

/// Counts of positive, zero and negative eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Inertia {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn dim(&self) -> usize {
        self.positive + self.zero + self.negative
    }

    pub fn is_positive_definite(&self) -> bool {
        self.zero == 0 && self.negative == 0
    }
}

impl core::ops::Add for Inertia {
    type Output = Inertia;
    fn add(self, rhs: Inertia) -> Inertia {
        Inertia {
            positive: self.positive + rhs.positive,
            zero: self.zero + rhs.zero,
            negative: self.negative + rhs.negative,
        }
    }
}

/// Inertia by symmetric Gaussian reduction over the rationals.
///
/// A nonzero diagonal pivot is eliminated on its own. When every remaining
/// diagonal entry vanishes but some off-diagonal `b` does not, the pair is
/// eliminated as a hyperbolic block `[[0, b], [b, 0]]`, contributing one
/// positive and one negative direction.
pub fn inertia(l: &IntegralLattice) -> Inertia {
    let n = l.dim();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(l.entry(i, j).clone()))
                .collect()
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Inertia::default();

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.remove(pos);
            let pivot = a[p][p].clone();
            if pivot.is_positive() {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            for &r in &active {
                if a[r][p].is_zero() {
                    continue;
                }
                let f = &a[r][p] / &pivot;
                for &c in &active {
                    let d = &f * &a[p][c];
                    a[r][c] -= d;
                }
            }
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            out.zero += active.len();
            break;
        };
        active.retain(|&k| k != i && k != j);
        out.positive += 1;
        out.negative += 1;
        let b = a[i][j].clone();
        for &r in &active {
            for &c in &active {
                let d = (&a[r][i] * &a[j][c] + &a[r][j] * &a[i][c]) / &b;
                a[r][c] -= d;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlattice::{direct_sum, e8_matrix, stabilize};
    use crate::Sign;

    fn inr(p: usize, z: usize, n: usize) -> Inertia {
        Inertia {
            positive: p,
            zero: z,
            negative: n,
        }
    }

    #[test]
    fn standard_forms() {
        assert_eq!(inertia(&IntegralLattice::identity(4)), inr(4, 0, 0));
        assert_eq!(
            inertia(&IntegralLattice::from_i64_rows(&[[0, 1], [1, 0]]).unwrap()),
            inr(1, 0, 1)
        );
        assert_eq!(inertia(&e8_matrix()), inr(8, 0, 0));
        assert_eq!(inertia(&stabilize(&e8_matrix(), Sign::Minus)), inr(8, 0, 1));
        assert_eq!(
            inertia(&IntegralLattice::from_i64_rows(&[[0, 0], [0, 0]]).unwrap()),
            inr(0, 2, 0)
        );
        assert_eq!(inertia(&IntegralLattice::empty()), inr(0, 0, 0));
    }

    #[test]
    fn degenerate_mixed() {
        // [[1,1],[1,1]] has eigenvalues 2, 0
        assert_eq!(
            inertia(&IntegralLattice::from_i64_rows(&[[1, 1], [1, 1]]).unwrap()),
            inr(1, 1, 0)
        );
        // hyperbolic block next to a zero row
        let l = IntegralLattice::from_i64_rows(&[[0, 2, 0], [2, 0, 0], [0, 0, 0]]).unwrap();
        assert_eq!(inertia(&l), inr(1, 1, 1));
        let sum = direct_sum(&e8_matrix(), &e8_matrix());
        assert_eq!(inertia(&sum), inr(16, 0, 0));
    }
}
