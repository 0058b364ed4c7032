//! The two-element field. Addition is XOR, multiplication is AND.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};

/// A value in GF(2).
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2(bool);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(false);
    pub const ONE: Gf2 = Gf2(true);

    /// The residue of `n` mod 2.
    pub fn from_int(n: i64) -> Gf2 {
        Gf2(n & 1 != 0)
    }

    pub fn is_zero(self) -> bool {
        !self.0
    }

    pub fn is_one(self) -> bool {
        self.0
    }

    pub fn as_bit(self) -> u8 {
        self.0 as u8
    }
}

impl Add for Gf2 {
    type Output = Gf2;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf2 {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf2) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Gf2 {
    type Output = Gf2;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl Sum for Gf2 {
    fn sum<I: Iterator<Item = Gf2>>(iter: I) -> Gf2 {
        iter.fold(Gf2::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_bit())
    }
}
