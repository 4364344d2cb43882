//! Half-integer exponents, stored exactly as twice their value.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// An element of `(1/2)Z`: the exponent of `p` stored as `2x` its value,
/// so `p^(3/2)` stores `3` and `p^2` stores `4`. Arithmetic never rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfExp(i64);

impl HalfExp {
    pub const ZERO: HalfExp = HalfExp(0);

    /// From twice the exponent value.
    pub const fn from_twice(twice: i64) -> Self {
        HalfExp(twice)
    }

    /// The integer exponent `n`.
    pub const fn int(n: i64) -> Self {
        HalfExp(2 * n)
    }

    /// `n + 1/2`.
    pub const fn int_plus_half(n: i64) -> Self {
        HalfExp(2 * n + 1)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Floor of the exponent as an integer.
    pub const fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn min(self, other: Self) -> Self {
        HalfExp(self.0.min(other.0))
    }

    pub fn max(self, other: Self) -> Self {
        HalfExp(self.0.max(other.0))
    }
}

impl Add for HalfExp {
    type Output = HalfExp;
    fn add(self, rhs: Self) -> Self {
        HalfExp(self.0 + rhs.0)
    }
}

impl Sub for HalfExp {
    type Output = HalfExp;
    fn sub(self, rhs: Self) -> Self {
        HalfExp(self.0 - rhs.0)
    }
}

impl Neg for HalfExp {
    type Output = HalfExp;
    fn neg(self) -> Self {
        HalfExp(-self.0)
    }
}

impl Mul<i64> for HalfExp {
    type Output = HalfExp;
    fn mul(self, rhs: i64) -> Self {
        HalfExp(self.0 * rhs)
    }
}

impl AddAssign for HalfExp {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl SubAssign for HalfExp {
    fn sub_assign(&mut self, rhs: Self) {
        self.0 -= rhs.0;
    }
}

impl fmt::Display for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = HalfExp::int_plus_half(1); // 3/2
        let b = HalfExp::int_plus_half(-1); // -1/2
        assert_eq!(a + b, HalfExp::int(1));
        assert_eq!(a - b, HalfExp::int(2));
        assert_eq!(-a, HalfExp::from_twice(-3));
        assert_eq!(a * 2, HalfExp::int(3));
        assert!(!a.is_integer());
        assert!((a + b).is_integer());
    }

    #[test]
    fn display() {
        assert_eq!(HalfExp::int(2).to_string(), "2");
        assert_eq!(HalfExp::int_plus_half(1).to_string(), "3/2");
        assert_eq!(HalfExp::from_twice(-1).to_string(), "-1/2");
    }
}
