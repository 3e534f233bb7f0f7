use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, IntegralLattice};

/// `A = left * diagonal * right` with `left`, `right` unimodular and the
/// diagonal entries forming a divisibility chain (zeros last).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal entries `s_0 | s_1 | ...`, `min(rows, cols)` of them.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.diagonal.rows().min(self.diagonal.cols());
        (0..k).map(|i| self.diagonal[(i, i)].clone()).collect()
    }
}

/// Finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`, `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupPresentation {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupPresentation {
    pub fn trivial() -> Self {
        AbelianGroupPresentation {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d))
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            Ok(())
        };
        if self.rank > 0 {
            sep(f)?;
            if self.rank == 1 {
                f.write_str("Z")?;
            } else {
                write!(f, "Z^{}", self.rank)?;
            }
        }
        for d in &self.torsion {
            sep(f)?;
            write!(f, "Z/{d}")?;
        }
        Ok(())
    }
}

/// Elimination state: `B = P A Q`, with `U = P^-1` and `V = Q^-1` kept in step
/// so that `A = U B V` holds after every elementary operation.
pub(super) struct SnfWork {
    pub b: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub q: IntMatrix,
}

impl SnfWork {
    fn new(a: &IntMatrix) -> Self {
        SnfWork {
            b: a.clone(),
            u: IntMatrix::identity(a.rows()),
            v: IntMatrix::identity(a.cols()),
            q: IntMatrix::identity(a.cols()),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.b.cols() {
            let t = self.b[(i, c)].clone();
            self.b[(i, c)] = self.b[(j, c)].clone();
            self.b[(j, c)] = t;
        }
        for r in 0..self.u.rows() {
            let t = self.u[(r, i)].clone();
            self.u[(r, i)] = self.u[(r, j)].clone();
            self.u[(r, j)] = t;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.b.rows() {
            let t = self.b[(r, i)].clone();
            self.b[(r, i)] = self.b[(r, j)].clone();
            self.b[(r, j)] = t;
        }
        for r in 0..self.q.rows() {
            let t = self.q[(r, i)].clone();
            self.q[(r, i)] = self.q[(r, j)].clone();
            self.q[(r, j)] = t;
        }
        for c in 0..self.v.cols() {
            let t = self.v[(i, c)].clone();
            self.v[(i, c)] = self.v[(j, c)].clone();
            self.v[(j, c)] = t;
        }
    }

    /// row i += k * row j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for c in 0..self.b.cols() {
            let add = k * &self.b[(j, c)];
            self.b[(i, c)] += add;
        }
        // U <- U (I - k e_i e_j^T): column j -= k * column i
        for r in 0..self.u.rows() {
            let sub = k * &self.u[(r, i)];
            self.u[(r, j)] -= sub;
        }
    }

    /// col i += k * col j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for r in 0..self.b.rows() {
            let add = k * &self.b[(r, j)];
            self.b[(r, i)] += add;
        }
        for r in 0..self.q.rows() {
            let add = k * &self.q[(r, j)];
            self.q[(r, i)] += add;
        }
        // V <- (I - k e_j e_i^T) V: row j -= k * row i
        for c in 0..self.v.cols() {
            let sub = k * &self.v[(i, c)];
            self.v[(j, c)] -= sub;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.b.cols() {
            self.b[(i, c)] = -self.b[(i, c)].clone();
        }
        for r in 0..self.u.rows() {
            self.u[(r, i)] = -self.u[(r, i)].clone();
        }
    }

    /// Smallest nonzero |entry| in the block `t.., t..`, ties broken by row-major order.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.b.rows() {
            for j in t..self.b.cols() {
                let a = self.b[(i, j)].abs();
                if a.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, m)| a < *m) {
                    best = Some(((i, j), a));
                }
            }
        }
        best.map(|(ij, _)| ij)
    }

    fn run(&mut self) {
        let (m, n) = (self.b.rows(), self.b.cols());
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut remainder = false;
                for i in t + 1..m {
                    if self.b[(i, t)].is_zero() {
                        continue;
                    }
                    let k = -self.b[(i, t)].div_floor(&self.b[(t, t)]);
                    self.add_row(i, t, &k);
                    remainder |= !self.b[(i, t)].is_zero();
                }
                for j in t + 1..n {
                    if self.b[(t, j)].is_zero() {
                        continue;
                    }
                    let k = -self.b[(t, j)].div_floor(&self.b[(t, t)]);
                    self.add_col(j, t, &k);
                    remainder |= !self.b[(t, j)].is_zero();
                }
                if remainder {
                    let (pi, pj) = self.pivot(t).expect("nonzero remainder exists");
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                let p = self.b[(t, t)].clone();
                let offender =
                    (t + 1..m).find(|&i| (t + 1..n).any(|j| !self.b[(i, j)].is_multiple_of(&p)));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.b[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }
}

pub(super) fn snf_work(a: &IntMatrix) -> SnfWork {
    let mut w = SnfWork::new(a);
    w.run();
    w
}

/// Smith normal form `A = U S V`.
///
/// Pivots are the smallest nonzero absolute value in the remaining block, ties
/// broken by row-major scan, so the transforms are deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let w = snf_work(a);
    let d = SmithDecomposition {
        left: w.u,
        diagonal: w.b,
        right: w.v,
    };
    debug_assert_eq!(d.left.mul(&d.diagonal).mul(&d.right), *a);
    d
}

/// First homology of the manifold obtained by surgery on a framed link with
/// this linking matrix: the cokernel of the matrix.
pub fn homology_from_linking(l: &IntegralLattice) -> AbelianGroupPresentation {
    let factors = smith_normal_form(l.matrix()).invariant_factors();
    let rank = factors.iter().filter(|d| d.is_zero()).count();
    let torsion = factors.into_iter().filter(|d| *d > BigInt::one()).collect();
    AbelianGroupPresentation { rank, torsion }
}
