//! Exact Laurent-polynomial arithmetic in one variable `s`.
//!
//! Values live either over the integers or over GF(2); the coefficient ring
//! is a tag carried by each value, and the GF(2) form is produced only by the
//! dedicated constructors and by [`LaurentPoly::reduce_mod2`]. Coefficients
//! are arbitrary precision; exponents may be negative and are bounded only by
//! the machine word.
//!
//! Canonical form stores no zero coefficients, so equality is structural.
//! Binary operations panic on operands over different coefficient rings.
//!
//! The textual form used everywhere downstream is a comma-separated list of
//! `exponent:coefficient` pairs, e.g. `-1:2, 0:-1, 3:1` for `2s⁻¹ - 1 + s³`.
//! The zero polynomial prints as `0:0`. Parsing accepts pairs in any order
//! and accumulates repeated exponents; printing emits ascending exponents.

use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::gf2::Gf2;

/// Coefficient ring tag.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    /// Integer coefficients.
    Int,
    /// Coefficients reduced mod 2; every stored coefficient is 1.
    Gf2,
}

/// A Laurent polynomial in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    ring: CoeffRing,
    coeffs: BTreeMap<i64, BigInt>,
}

/// Errors from the operations whose contract can fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LaurentError {
    /// A derivative was requested of a GF(2)-form value; the derivative is
    /// taken over the integers first.
    Gf2Operand,
    /// Exact division has no quotient.
    NotDivisible,
    /// Exact division by zero.
    DivisorZero,
}

impl fmt::Display for LaurentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentError::Gf2Operand => write!(f, "operation requires an integer-ring operand"),
            LaurentError::NotDivisible => write!(f, "numerator is not divisible by denominator"),
            LaurentError::DivisorZero => write!(f, "division by the zero polynomial"),
        }
    }
}

impl Error for LaurentError {}

fn normalize(ring: CoeffRing, mut coeffs: BTreeMap<i64, BigInt>) -> BTreeMap<i64, BigInt> {
    match ring {
        CoeffRing::Int => coeffs.retain(|_, c| !c.is_zero()),
        CoeffRing::Gf2 => {
            let mut reduced = BTreeMap::new();
            for (e, c) in coeffs {
                if c.is_odd() {
                    reduced.insert(e, BigInt::one());
                }
            }
            return reduced;
        }
    }
    coeffs
}

impl LaurentPoly {
    fn new(ring: CoeffRing, coeffs: BTreeMap<i64, BigInt>) -> LaurentPoly {
        LaurentPoly {
            ring,
            coeffs: normalize(ring, coeffs),
        }
    }

    pub fn zero() -> LaurentPoly {
        LaurentPoly::new(CoeffRing::Int, BTreeMap::new())
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: i64) -> LaurentPoly {
        LaurentPoly::monomial(0, c)
    }

    /// The generator `s`.
    pub fn var() -> LaurentPoly {
        LaurentPoly::monomial(1, 1)
    }

    /// `c·s^exp` over the integers.
    pub fn monomial(exp: i64, c: i64) -> LaurentPoly {
        LaurentPoly::from_terms(&[(exp, c)])
    }

    /// Integer-ring value from `(exponent, coefficient)` pairs; repeated
    /// exponents accumulate.
    pub fn from_terms(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_bigint_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    pub fn from_bigint_terms<I>(terms: I) -> LaurentPoly
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *coeffs.entry(e).or_insert_with(BigInt::zero) += c;
        }
        LaurentPoly::new(CoeffRing::Int, coeffs)
    }

    pub fn gf2_zero() -> LaurentPoly {
        LaurentPoly::new(CoeffRing::Gf2, BTreeMap::new())
    }

    pub fn gf2_one() -> LaurentPoly {
        LaurentPoly::gf2_from_exponents(&[0])
    }

    pub fn gf2_monomial(exp: i64) -> LaurentPoly {
        LaurentPoly::gf2_from_exponents(&[exp])
    }

    /// GF(2)-form value with a 1 at each listed exponent; repeated exponents
    /// cancel in pairs.
    pub fn gf2_from_exponents(exps: &[i64]) -> LaurentPoly {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for &e in exps {
            *coeffs.entry(e).or_insert_with(BigInt::zero) += 1;
        }
        LaurentPoly::new(CoeffRing::Gf2, coeffs)
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn is_gf2(&self) -> bool {
        self.ring == CoeffRing::Gf2
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// The coefficient of `s^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff_parity(&self, exp: i64) -> Gf2 {
        match self.coeffs.get(&exp) {
            Some(c) if c.is_odd() => Gf2::ONE,
            _ => Gf2::ZERO,
        }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn assert_same_ring(&self, rhs: &LaurentPoly) {
        assert_eq!(
            self.ring, rhs.ring,
            "mixed coefficient rings: {:?} vs {:?}",
            self.ring, rhs.ring
        );
    }

    /// The bar involution `s ↦ s⁻¹`, applied coefficient-wise.
    pub fn bar(&self) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect();
        LaurentPoly {
            ring: self.ring,
            coeffs,
        }
    }

    /// Multiply by the integer scalar `k`.
    pub fn scale(&self, k: i64) -> LaurentPoly {
        let k = BigInt::from(k);
        let coeffs = self.coeffs.iter().map(|(&e, c)| (e, c * &k)).collect();
        LaurentPoly::new(self.ring, coeffs)
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = match self.ring {
            CoeffRing::Int => LaurentPoly::one(),
            CoeffRing::Gf2 => LaurentPoly::gf2_one(),
        };
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The sum of all stored coefficients, i.e. evaluation at `s = 1`. For a
    /// GF(2)-form value this counts terms; the ring-correct value is
    /// [`LaurentPoly::eval_at_one_gf2`].
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Evaluation at `s = 1` reduced mod 2.
    pub fn eval_at_one_gf2(&self) -> Gf2 {
        self.coeffs
            .values()
            .map(|c| if c.is_odd() { Gf2::ONE } else { Gf2::ZERO })
            .sum()
    }

    /// Term-wise formal derivative `s^n ↦ n·s^(n-1)` over the integers.
    pub fn formal_derivative(&self) -> Result<LaurentPoly, LaurentError> {
        if self.is_gf2() {
            return Err(LaurentError::Gf2Operand);
        }
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&e, _)| e != 0)
            .map(|(&e, c)| (e - 1, c * BigInt::from(e)))
            .collect();
        Ok(LaurentPoly::new(CoeffRing::Int, coeffs))
    }

    /// The composite of formal derivative, evaluation at `s = 1`, and
    /// reduction mod 2; equals `Σₑ e·coeff(e) mod 2`. The same formula is
    /// well defined on GF(2)-form values, where it is the parity of the
    /// odd-exponent coefficients.
    pub fn phi(&self) -> Gf2 {
        self.coeffs
            .iter()
            .map(|(&e, c)| {
                if e % 2 != 0 && c.is_odd() {
                    Gf2::ONE
                } else {
                    Gf2::ZERO
                }
            })
            .sum()
    }

    /// Coefficient-wise reduction mod 2 into GF(2) form.
    pub fn reduce_mod2(&self) -> LaurentPoly {
        LaurentPoly::new(CoeffRing::Gf2, self.coeffs.clone())
    }

    /// Exact division in GF(2)[s, s⁻¹]. Operands are reduced mod 2 first.
    /// Returns the unique `q` with `q·den = num`, found by lowest-exponent
    /// long division and confirmed by re-multiplication.
    pub fn exact_divide_mod2(
        num: &LaurentPoly,
        den: &LaurentPoly,
    ) -> Result<LaurentPoly, LaurentError> {
        let num = num.reduce_mod2();
        let den = den.reduce_mod2();
        if den.is_zero() {
            return Err(LaurentError::DivisorZero);
        }
        if num.is_zero() {
            return Ok(LaurentPoly::gf2_zero());
        }

        let den_min = den.min_exp().unwrap();
        let den_max = den.max_exp().unwrap();
        // A quotient, if it exists, has exponents in this window.
        let q_max = num.max_exp().unwrap() - den_max;

        let mut rem = num.clone();
        let mut quotient = LaurentPoly::gf2_zero();
        while !rem.is_zero() {
            let q_exp = rem.min_exp().unwrap() - den_min;
            if q_exp > q_max {
                return Err(LaurentError::NotDivisible);
            }
            let step = LaurentPoly::gf2_monomial(q_exp);
            rem = &rem + &(&step * &den);
            quotient = &quotient + &step;
        }

        // re-multiplication check
        if &quotient * &den != num {
            return Err(LaurentError::NotDivisible);
        }
        Ok(quotient)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.assert_same_ring(rhs);
        let mut coeffs = self.coeffs.clone();
        for (&e, c) in &rhs.coeffs {
            *coeffs.entry(e).or_insert_with(BigInt::zero) += c;
        }
        LaurentPoly::new(self.ring, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(&e, c)| (e, -c)).collect();
        LaurentPoly::new(self.ring, coeffs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.assert_same_ring(rhs);
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                *coeffs.entry(e1 + e2).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        LaurentPoly::new(self.ring, coeffs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0:0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{e}:{c}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.ring {
            CoeffRing::Int => "Z",
            CoeffRing::Gf2 => "GF2",
        };
        write!(f, "{tag}[{self}]")
    }
}

/// Failure to read a polynomial from its textual pair form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParseError {
    /// Index of the offending pair in the comma-separated list.
    pub pair_index: usize,
    pub message: String,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pair {}: {}", self.pair_index, self.message)
    }
}

impl Error for PolyParseError {}

impl FromStr for LaurentPoly {
    type Err = PolyParseError;

    /// Parses the integer-ring textual form. The empty string is zero.
    fn from_str(s: &str) -> Result<LaurentPoly, PolyParseError> {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        if s.trim().is_empty() {
            return Ok(LaurentPoly::zero());
        }
        for (i, raw) in s.split(',').enumerate() {
            let pair = raw.trim();
            let err = |message: String| PolyParseError {
                pair_index: i,
                message,
            };
            let (e_str, c_str) = pair
                .split_once(':')
                .ok_or_else(|| err(format!("expected exponent:coefficient, got \"{pair}\"")))?;
            let e: i64 = e_str
                .trim()
                .parse()
                .map_err(|_| err(format!("bad exponent \"{}\"", e_str.trim())))?;
            let c: BigInt = c_str
                .trim()
                .parse()
                .map_err(|_| err(format!("bad coefficient \"{}\"", c_str.trim())))?;
            *coeffs.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Ok(LaurentPoly::new(CoeffRing::Int, coeffs))
    }
}
