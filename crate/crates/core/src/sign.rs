use core::fmt;
use core::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_traits::Signed;

/// A unit sign, `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// `Some` iff `v` is `1` or `-1`.
    pub fn from_unit(v: &BigInt) -> Option<Sign> {
        if v.abs() != BigInt::from(1) {
            return None;
        }
        Some(if v.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        })
    }

    /// Sign of a nonzero integer; `None` for zero.
    pub fn of(v: &BigInt) -> Option<Sign> {
        if v.is_positive() {
            Some(Sign::Plus)
        } else if v.is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.value())
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}
