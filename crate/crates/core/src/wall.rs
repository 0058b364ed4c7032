//! Wall intersection-number calculus specialized to an infinite-cyclic
//! fundamental group.
//!
//! With π₁ ≅ ℤ⟨s⟩ the group ring is the Laurent ring, loop classes are plain
//! exponents, and the self-intersection quotient identifies `s^e` with
//! `s^(-e)`. [`WallClass`] stores the canonical folded representative with
//! non-negative exponents. Whisker and basepoint choices drop out because the
//! group is abelian; all signs and exponents are taken as given input data.

use std::error::Error;
use std::fmt;

use crate::laurent::LaurentPoly;

/// Orientation sign of an intersection or double point.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_int(n: i64) -> Option<Sign> {
        match n {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// One transverse intersection point: its sign and the exponent of the loop
/// class through it in π₁ ≅ ℤ⟨s⟩.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SignedIntersection {
    pub sign: Sign,
    pub exponent: i64,
}

impl SignedIntersection {
    pub fn new(sign: Sign, exponent: i64) -> SignedIntersection {
        SignedIntersection { sign, exponent }
    }
}

/// An element of the quotient of the group ring by `{a - ā}`, represented by
/// the fold of every exponent onto its absolute value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallClass {
    rep: LaurentPoly,
}

impl WallClass {
    /// The folded canonical representative (non-negative exponents only).
    pub fn rep(&self) -> &LaurentPoly {
        &self.rep
    }

    pub fn into_poly(self) -> LaurentPoly {
        self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

impl fmt::Display for WallClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// Project a group-ring element into the quotient: every term `c·s^e` with
/// `e < 0` is folded onto `c·s^(-e)`. Folding is idempotent and kills the
/// subgroup `{a - ā}`.
pub fn q_fold(g: &LaurentPoly) -> WallClass {
    let folded = LaurentPoly::from_bigint_terms(g.terms().map(|(e, c)| (e.abs(), c.clone())));
    let rep = if g.is_gf2() {
        folded.reduce_mod2()
    } else {
        folded
    };
    WallClass { rep }
}

/// The self-intersection class `μ`: the folded signed sum of the loop
/// classes of the listed double points.
pub fn mu(points: &[SignedIntersection]) -> WallClass {
    let raw = LaurentPoly::from_terms(
        &points
            .iter()
            .map(|p| (p.exponent, p.sign.as_int()))
            .collect::<Vec<_>>(),
    );
    q_fold(&raw)
}

/// The reduced class `μ̂ = μ - self`, together with the signed
/// self-intersection count.
pub fn mu_hat(points: &[SignedIntersection]) -> (WallClass, i64) {
    let self_count: i64 = points.iter().map(|p| p.sign.as_int()).sum();
    let rep = &mu(points).into_poly() - &LaurentPoly::constant(self_count);
    (WallClass { rep }, self_count)
}

/// The loop class through two intersection points of the same pair of
/// surfaces: the difference of their exponents. Basepoint-independent since
/// the group is abelian.
pub fn lambda_pair_product(x: SignedIntersection, y: SignedIntersection) -> i64 {
    x.exponent - y.exponent
}

/// Intersection-number update after surgery along a dual curve of class
/// `s^delta2_exp`: returns `(1 - s^delta2_exp)·lam`.
pub fn surgery_lambda_update(lam: &LaurentPoly, delta2_exp: i64) -> LaurentPoly {
    let factor = &LaurentPoly::one() - &LaurentPoly::monomial(delta2_exp, 1);
    &factor * lam
}

/// Self-intersection update after surgery: the mod-2 sum of the two disk
/// contributions and `(D·D')·s^delta2_exp`, folded.
pub fn surgery_mu_update(
    mu_d: &WallClass,
    mu_dp: &WallClass,
    dd_count: i64,
    delta2_exp: i64,
) -> WallClass {
    let d = mu_d.rep().reduce_mod2();
    let dp = mu_dp.rep().reduce_mod2();
    let cross = if dd_count % 2 != 0 {
        LaurentPoly::gf2_monomial(delta2_exp)
    } else {
        LaurentPoly::gf2_zero()
    };
    q_fold(&(&(&d + &dp) + &cross))
}

/// Mismatched basis-coefficient lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthMismatch {
    pub plus: usize,
    pub minus: usize,
}

impl fmt::Display for LengthMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coefficient lists have different lengths: {} vs {}",
            self.plus, self.minus
        )
    }
}

impl Error for LengthMismatch {}

/// The mod-2 self-intersection value of a sphere expanded over a basis of
/// disjoint 2-spheres whose diagonal intersection is `s + s⁻¹`:
/// `(s+s⁻¹)·Σᵢ [cᵢ⁺·bar(cᵢ⁺) + cᵢ⁻·bar(cᵢ⁻)]`. Cross terms between distinct
/// basis spheres vanish because the spheres are mutually disjoint. Operands
/// are reduced mod 2; the result is bar-symmetric with zero constant term.
pub fn gram_lambda_self(
    c_plus: &[LaurentPoly],
    c_minus: &[LaurentPoly],
) -> Result<LaurentPoly, LengthMismatch> {
    if c_plus.len() != c_minus.len() {
        return Err(LengthMismatch {
            plus: c_plus.len(),
            minus: c_minus.len(),
        });
    }
    let mut total = LaurentPoly::gf2_zero();
    for (cp, cm) in c_plus.iter().zip(c_minus) {
        let cp = cp.reduce_mod2();
        let cm = cm.reduce_mod2();
        total = &total + &(&cp * &cp.bar());
        total = &total + &(&cm * &cm.bar());
    }
    let s_plus_sinv = LaurentPoly::gf2_from_exponents(&[1, -1]);
    Ok(&s_plus_sinv * &total)
}
