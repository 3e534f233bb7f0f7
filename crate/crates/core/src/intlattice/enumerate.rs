use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{inertia, IntegralLattice, LatticeError};

/// All nonzero `v` with `v^T L v <= bound`, one per `±v` pair (first nonzero
/// coordinate positive), sorted by norm and then lexicographically.
///
/// Fincke–Pohst enumeration on the exact rational Cholesky form
/// `q(x) = Σ_i d_i (x_i + Σ_{j>i} m_ij x_j)^2`; every coordinate range comes
/// from exact rational comparisons.
pub fn short_vectors(
    l: &IntegralLattice,
    bound: &BigInt,
) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    if !inertia(l).is_positive_definite() {
        return Err(LatticeError::NotPositiveDefinite);
    }
    let n = l.dim();
    if n == 0 || !bound.is_positive() {
        return Ok(Vec::new());
    }
    let (d, mu) = rational_cholesky(l);
    let mut search = Search {
        d: &d,
        mu: &mu,
        x: vec![BigInt::zero(); n],
        found: Vec::new(),
    };
    search.descend(n, BigRational::from_integer(bound.clone()));

    let mut out: Vec<(BigInt, Vec<BigInt>)> = search
        .found
        .into_iter()
        .filter(|v| {
            v.iter()
                .find(|c| !c.is_zero())
                .is_some_and(Signed::is_positive)
        })
        .map(|v| (l.norm(&v), v))
        .collect();
    out.sort();
    Ok(out.into_iter().map(|(_, v)| v).collect())
}

/// `d_i` and the strictly upper `mu[i][j]` with `L = M^T diag(d) M`, `M = I + mu`.
fn rational_cholesky(l: &IntegralLattice) -> (Vec<BigRational>, Vec<Vec<BigRational>>) {
    let n = l.dim();
    let mut q: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(l.entry(i, j).clone()))
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            let v = &q[i][j] / &q[i][i];
            q[j][i] = q[i][j].clone();
            q[i][j] = v;
        }
        for k in i + 1..n {
            for m in k..n {
                let sub = &q[k][i] * &q[i][m];
                q[k][m] -= sub;
            }
        }
    }
    let d = (0..n).map(|i| q[i][i].clone()).collect();
    let mu = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j > i {
                        q[i][j].clone()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    (d, mu)
}

struct Search<'a> {
    d: &'a [BigRational],
    mu: &'a [Vec<BigRational>],
    x: Vec<BigInt>,
    found: Vec<Vec<BigInt>>,
}

impl Search<'_> {
    /// Coordinates `level..n` are fixed; `budget` is what remains of the bound.
    fn descend(&mut self, level: usize, budget: BigRational) {
        if level == 0 {
            if self.x.iter().any(|c| !c.is_zero()) {
                self.found.push(self.x.clone());
            }
            return;
        }
        let i = level - 1;
        let mut center = BigRational::zero();
        for j in level..self.x.len() {
            center -= &self.mu[i][j] * BigRational::from_integer(self.x[j].clone());
        }
        // integers t with d_i (t - center)^2 <= budget
        let radius_sq = &budget / &self.d[i];
        let slack = radius_sq.ceil().to_integer().sqrt() + BigInt::from(1);
        let lo = center.floor().to_integer() - &slack;
        let hi = center.ceil().to_integer() + &slack;
        let mut t = lo;
        while t <= hi {
            let off = BigRational::from_integer(t.clone()) - &center;
            let used = &self.d[i] * &off * &off;
            if used <= budget {
                self.x[i] = t.clone();
                self.descend(i, &budget - &used);
            }
            t += 1;
        }
        self.x[i] = BigInt::zero();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlattice::e8_matrix;

    #[test]
    fn unit_vectors_of_identity() {
        let v = short_vectors(&IntegralLattice::identity(3), &BigInt::from(1)).unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[0], vec![BigInt::zero(), BigInt::zero(), BigInt::from(1)]);
    }

    #[test]
    fn e8_has_no_norm_one() {
        assert!(short_vectors(&e8_matrix(), &BigInt::from(1))
            .unwrap()
            .is_empty());
        // 240 roots, 120 up to sign
        assert_eq!(
            short_vectors(&e8_matrix(), &BigInt::from(2)).unwrap().len(),
            120
        );
    }

    #[test]
    fn hexagonal() {
        let l = IntegralLattice::from_i64_rows(&[[2, 1], [1, 2]]).unwrap();
        assert_eq!(short_vectors(&l, &BigInt::from(2)).unwrap().len(), 3);
    }

    #[test]
    fn rejects_indefinite() {
        let l = IntegralLattice::from_i64_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(
            short_vectors(&l, &BigInt::from(1)),
            Err(LatticeError::NotPositiveDefinite)
        );
    }
}
