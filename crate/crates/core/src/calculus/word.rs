use alloc::vec::Vec;
use core::fmt;

use crate::Sign;

/// One letter `alpha_generator^exponent` of a free-group word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub exponent: Sign,
}

impl Letter {
    pub fn new(generator: usize, exponent: Sign) -> Self {
        Letter {
            generator,
            exponent,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.exponent != other.exponent
    }
}

/// A word in the free group on the meridians `alpha_1..alpha_n` of the discs
/// `D_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    pub letters: Vec<Letter>,
}

impl FreeWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        FreeWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match l.exponent {
                Sign::Plus => write!(f, "a{}", l.generator)?,
                Sign::Minus => write!(f, "a{}^-1", l.generator)?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordReduction {
    pub reduced: FreeWord,
    pub cyclically_reduced: FreeWord,
    pub trivial: bool,
}

/// Free reduction followed by cyclic reduction.
pub fn reduce_free_word(w: &FreeWord) -> WordReduction {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.letters {
        if stack.last().is_some_and(|&top| top.cancels(l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    let mut lo = 0;
    let mut hi = stack.len();
    while hi - lo >= 2 && stack[lo].cancels(stack[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    let cyclic = stack[lo..hi].to_vec();
    let trivial = stack.is_empty();
    WordReduction {
        reduced: FreeWord::new(stack),
        cyclically_reduced: FreeWord::new(cyclic),
        trivial,
    }
}

/// The word `alpha_{i_1}^{e_1} ... alpha_{i_k}^{e_k}` read off signed
/// intersections with the discs, in order.
pub fn word_from_intersections(seq: &[(usize, Sign)]) -> FreeWord {
    FreeWord::new(seq.iter().map(|&(g, e)| Letter::new(g, e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn w(seq: &[(usize, i64)]) -> FreeWord {
        FreeWord::new(
            seq.iter()
                .map(|&(g, e)| Letter::new(g, Sign::from_i64(e).unwrap()))
                .collect(),
        )
    }

    #[test]
    fn canceling_pair_is_trivial() {
        for i in 1..6 {
            let r = reduce_free_word(&word_from_intersections(&[
                (i, Sign::Plus),
                (i, Sign::Minus),
            ]));
            assert!(r.trivial);
            assert!(r.cyclically_reduced.is_empty());
        }
    }

    #[test]
    fn conjugate_of_generator() {
        let r = reduce_free_word(&w(&[(1, 1), (2, 1), (1, -1)]));
        assert!(!r.trivial);
        assert_eq!(r.reduced.len(), 3);
        assert_eq!(r.cyclically_reduced, w(&[(2, 1)]));
    }

    #[test]
    fn nested_cancellation() {
        assert!(reduce_free_word(&w(&[(1, 1), (2, 1), (2, -1), (1, -1)])).trivial);
    }

    #[test]
    fn same_sign_does_not_cancel() {
        let r = reduce_free_word(&w(&[(3, 1), (3, 1)]));
        assert_eq!(r.reduced.len(), 2);
        assert_eq!(r.cyclically_reduced.len(), 2);
    }

    #[test]
    fn cyclic_reduction_peels_several_layers() {
        let r = reduce_free_word(&w(&[(1, -1), (2, 1), (3, 1), (4, 1), (2, -1), (1, 1)]));
        assert_eq!(r.cyclically_reduced, w(&[(3, 1), (4, 1)]));
    }

    #[test]
    fn empty_word() {
        let r = reduce_free_word(&word_from_intersections(&[]));
        assert!(r.trivial);
        assert_eq!(r.reduced.to_string(), "1");
    }

    #[test]
    fn display() {
        assert_eq!(w(&[(3, 1), (1, -1)]).to_string(), "a3 a1^-1");
        assert_eq!(
            word_from_intersections(&[(3, Sign::Plus)]).letters,
            vec![Letter::new(3, Sign::Plus)]
        );
    }
}
