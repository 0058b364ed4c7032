//! The σ↔ω relation engine.
//!
//! σ₊ determines ω₋: writing `σ₊ = Σ_{n≥1} aₙ(sⁿ - 1)`, the ω₋ invariant is
//! the mod-2 sum of the `aₙ` over `n ≡ 2 (mod 4)`. This module holds the
//! pieces of that statement — the image decomposition of σ sums, the
//! coefficient read-off, the quartic factorization of the symmetric basis
//! elements — and [`replay_derivation`], which re-derives the relation on a
//! concrete witness set with every intermediate identity checked, so that a
//! failure localizes to a specific equation.
//!
//! Nothing here proves the relation; it checks instances.

use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::gf2::Gf2;
use crate::laurent::{LaurentError, LaurentPoly};
use crate::linkmap::{omega_from_witness, ConstructedDiskWitness, WitnessViolation};
use crate::wall;

/// Errors from the decomposition and solve operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremError {
    /// The polynomial is not of the form `a₀ + Σ_{n≥2} aₙ(n²s - sⁿ)`.
    NotInImage { reason: &'static str },
    /// The polynomial is not a σ value (negative exponents, or nonzero at 1).
    NotSigmaShaped { reason: &'static str },
    /// The quartic factor does not divide; never expected to occur.
    DivisionFailed,
    /// The value is outside the span of the symmetric basis elements.
    NotInSpan { condition: &'static str },
}

impl fmt::Display for TheoremError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremError::NotInImage { reason } => write!(f, "not in the image: {reason}"),
            TheoremError::NotSigmaShaped { reason } => write!(f, "not sigma-shaped: {reason}"),
            TheoremError::DivisionFailed => write!(f, "quartic factor does not divide"),
            TheoremError::NotInSpan { condition } => {
                write!(f, "not in the symmetric span: {condition}")
            }
        }
    }
}

impl Error for TheoremError {}

/// Coefficients of the image form `a₀ + Σ_{n≥2} aₙ(n²s - sⁿ)`; `a` stores
/// only nonzero entries, keyed by n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KirkDecomposition {
    pub a0: BigInt,
    pub a: BTreeMap<i64, BigInt>,
}

/// Rebuild the polynomial a decomposition came from.
pub fn kirk_compose(d: &KirkDecomposition) -> LaurentPoly {
    let mut terms: Vec<(i64, BigInt)> = vec![(0, d.a0.clone())];
    for (&n, an) in &d.a {
        terms.push((1, an * BigInt::from(n * n)));
        terms.push((n, -an.clone()));
    }
    LaurentPoly::from_bigint_terms(terms)
}

/// Decompose a polynomial as `a₀ + Σ_{n≥2} aₙ(n²s - sⁿ)`. The coefficient of
/// `s` is determined by the others; membership fails exactly when that
/// constraint fails or a negative exponent is present.
pub fn kirk_decompose(p: &LaurentPoly) -> Result<KirkDecomposition, TheoremError> {
    if p.min_exp().is_some_and(|e| e < 0) {
        return Err(TheoremError::NotInImage {
            reason: "negative exponent present",
        });
    }
    let mut a = BTreeMap::new();
    let mut s_forced = BigInt::zero();
    for (e, c) in p.terms() {
        if e >= 2 {
            let an = -c;
            s_forced += &an * BigInt::from(e * e);
            a.insert(e, an);
        }
    }
    if p.coeff(1) != s_forced {
        return Err(TheoremError::NotInImage {
            reason: "coefficient of s differs from the forced value",
        });
    }
    Ok(KirkDecomposition { a0: p.coeff(0), a })
}

/// Read off integers `aₙ` with `σ₊ = Σ_{n≥1} aₙ(sⁿ - 1)`. Only the nonzero
/// coefficients are returned, in ascending n. The constant term is forced
/// because σ values vanish at `s = 1`.
pub fn theorem_coeffs(sigma_plus: &LaurentPoly) -> Result<Vec<(i64, BigInt)>, TheoremError> {
    if sigma_plus.min_exp().is_some_and(|e| e < 0) {
        return Err(TheoremError::NotSigmaShaped {
            reason: "negative exponent present",
        });
    }
    if !sigma_plus.eval_at_one().is_zero() {
        return Err(TheoremError::NotSigmaShaped {
            reason: "value at s=1 is nonzero",
        });
    }
    Ok(sigma_plus
        .terms()
        .filter(|&(e, _)| e >= 1)
        .map(|(e, c)| (e, c.clone()))
        .collect())
}

/// The ω₋ value determined by a coefficient list: the parity of
/// `Σ {aₙ : n ≡ 2 (mod 4)}`. Entries may repeat; only per-n sums matter.
pub fn predicted_omega_from_coeffs(coeffs: &[(i64, BigInt)]) -> Gf2 {
    coeffs
        .iter()
        .filter(|(n, _)| n.rem_euclid(4) == 2)
        .map(|(_, c)| if c.is_odd() { Gf2::ONE } else { Gf2::ZERO })
        .sum()
}

/// The ω₋ value determined by σ₊.
pub fn predicted_omega(sigma_plus: &LaurentPoly) -> Result<Gf2, TheoremError> {
    Ok(predicted_omega_from_coeffs(&theorem_coeffs(sigma_plus)?))
}

/// Factor the symmetric basis element `sⁿ + s⁻ⁿ + n(s + s⁻¹)` mod 2 as
/// `(1+s)⁴·rₙ(s)`, returning `rₙ` and `rₙ(1)`. The evaluation parity is
/// `n/2 mod 2` for even n and 0 for odd n, i.e. 1 exactly when
/// `n ≡ 2 (mod 4)`; this is asserted.
pub fn lambda_n_decompose(n: i64) -> Result<(LaurentPoly, Gf2), TheoremError> {
    assert!(n >= 2, "basis elements start at n = 2");
    let mut exps = vec![n, -n];
    if n % 2 != 0 {
        exps.push(1);
        exps.push(-1);
    }
    let numerator = LaurentPoly::gf2_from_exponents(&exps);
    let quartic = LaurentPoly::gf2_from_exponents(&[0, 1]).pow(4);
    let r = match LaurentPoly::exact_divide_mod2(&numerator, &quartic) {
        Ok(r) => r,
        Err(LaurentError::NotDivisible) | Err(LaurentError::DivisorZero) => {
            return Err(TheoremError::DivisionFailed)
        }
        Err(LaurentError::Gf2Operand) => unreachable!("operands are GF(2) by construction"),
    };
    let r_at_1 = r.eval_at_one_gf2();
    let expected = if n % 2 == 0 {
        Gf2::from_int(n / 2)
    } else {
        Gf2::ZERO
    };
    assert_eq!(r_at_1, expected, "r_{n}(1) parity breaks the factorization");
    Ok((r, r_at_1))
}

/// Mod-2 coefficients `aₙ` (n ≥ 2) of a value in the span of the symmetric
/// basis elements; only the nonzero entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThetaCoefficients {
    a: BTreeMap<i64, Gf2>,
}

impl ThetaCoefficients {
    pub fn get(&self, n: i64) -> Gf2 {
        self.a.get(&n).copied().unwrap_or(Gf2::ZERO)
    }

    /// The n with aₙ = 1, ascending.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.a.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `Σ {aₙ : n ≡ 2 (mod 4)}` over GF(2).
    pub fn predicted_omega(&self) -> Gf2 {
        self.support()
            .filter(|n| n.rem_euclid(4) == 2)
            .map(|_| Gf2::ONE)
            .sum()
    }
}

impl fmt::Display for ThetaCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a.is_empty() {
            return write!(f, "all zero");
        }
        let mut first = true;
        for n in self.support() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "a_{n}=1")?;
            first = false;
        }
        Ok(())
    }
}

/// Solve `T = Σ_{n≥2} aₙ[sⁿ + s⁻ⁿ + n(s + s⁻¹)]` for the aₙ mod 2. Accepts
/// exactly the bar-symmetric values with zero constant term whose
/// s-coefficient matches `Σ n·aₙ`.
pub fn symmetric_span_solve(t: &LaurentPoly) -> Result<ThetaCoefficients, TheoremError> {
    let t = t.reduce_mod2();
    if t.bar() != t {
        return Err(TheoremError::NotInSpan {
            condition: "not bar-symmetric",
        });
    }
    if t.coeff_parity(0) != Gf2::ZERO {
        return Err(TheoremError::NotInSpan {
            condition: "nonzero constant term",
        });
    }
    let mut a = BTreeMap::new();
    let mut forced_linear = Gf2::ZERO;
    for (e, _) in t.terms() {
        if e >= 2 {
            a.insert(e, Gf2::ONE);
            forced_linear += Gf2::from_int(e);
        }
    }
    if t.coeff_parity(1) != forced_linear {
        return Err(TheoremError::NotInSpan {
            condition: "s-coefficient differs from the forced parity",
        });
    }
    Ok(ThetaCoefficients { a })
}

/// Every intermediate value of a derivation replay, for inspection and for
/// verbose reporting.
#[derive(Clone, Debug)]
pub struct ReplayTrace {
    /// Basis coefficients of the other component mod 2, one per witness.
    pub c_plus: Vec<LaurentPoly>,
    pub c_minus: Vec<LaurentPoly>,
    /// The self-intersection value `λ(f,f)` mod 2.
    pub lambda_ff: LaurentPoly,
    /// Solved basis coefficients of `lambda_ff`.
    pub theta: ThetaCoefficients,
    /// The divisor `(s+s⁻¹)(1+s⁻¹)` mod 2.
    pub divisor: LaurentPoly,
    /// `lambda_ff` divided by `divisor`.
    pub quotient: LaurentPoly,
    /// The same quotient summed directly from the witness polynomials.
    pub quotient_direct: LaurentPoly,
    /// The derivative-evaluation parity of the quotient.
    pub phi_quotient: Gf2,
    /// `Σ aₙ·rₙ(1)` over the solved coefficients.
    pub weighted_r_sum: Gf2,
    /// `Σ u_i(1)` over the even-n witnesses.
    pub even_u_sum: Gf2,
}

/// Verdict of one replay: the two ω computations and whether they agree.
#[derive(Clone, Debug)]
pub struct TheoremVerdict {
    pub omega_direct: Gf2,
    pub omega_predicted: Gf2,
    pub agrees: bool,
    pub trace: ReplayTrace,
}

/// Replay failure, tagged with the step (1–6) it occurred in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayError {
    Witness {
        step: usize,
        violation: WitnessViolation,
    },
    Span {
        step: usize,
        condition: &'static str,
    },
    Identity {
        step: usize,
        identity: &'static str,
    },
}

impl fmt::Display for ReplayError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayError::Witness { step, violation } => {
                write!(f, "step {step}: {violation}")
            }
            ReplayError::Span { step, condition } => {
                write!(f, "step {step}: not in the symmetric span: {condition}")
            }
            ReplayError::Identity { step, identity } => {
                write!(f, "step {step}: identity failed: {identity}")
            }
        }
    }
}

impl Error for ReplayError {}

/// Replay the derivation relating σ₊ to ω₋ on one witness set:
///
/// 1. form the basis coefficients `cᵢ⁺ ≡ qᵢ`, `cᵢ⁻ ≡ qᵢ + (1+s)uᵢ` mod 2;
/// 2. compute `λ(f,f)` from them and check the bracket expansion in the
///    witness polynomials;
/// 3. solve `λ(f,f)` over the symmetric basis;
/// 4. divide by `(s+s⁻¹)(1+s⁻¹)` exactly, check the quotient against the
///    direct summation, and extract the derivative-evaluation parity both as
///    `Σ aₙ·rₙ(1)` and as the even-n sum of the `uᵢ(1)`;
/// 5. read the predicted ω₋ as `Σ {aₙ : n ≡ 2 (mod 4)}`;
/// 6. compute ω₋ directly from the witness disks and compare.
///
/// Every congruence along the way is asserted; a failure names its step.
pub fn replay_derivation(
    witnesses: &[ConstructedDiskWitness],
) -> Result<TheoremVerdict, ReplayError> {
    // step 1: witness invariants and basis coefficients
    for (i, w) in witnesses.iter().enumerate() {
        w.validate().map_err(|error| ReplayError::Witness {
            step: 1,
            violation: WitnessViolation { witness: i, error },
        })?;
    }
    let one_plus_s = LaurentPoly::from_terms(&[(0, 1), (1, 1)]);
    let c_plus: Vec<LaurentPoly> = witnesses.iter().map(|w| w.q.reduce_mod2()).collect();
    let c_minus: Vec<LaurentPoly> = witnesses
        .iter()
        .map(|w| (&w.q + &(&one_plus_s * &w.u)).reduce_mod2())
        .collect();

    // step 2: λ(f,f) over the basis, and its expansion in q and u
    let lambda_ff = wall::gram_lambda_self(&c_plus, &c_minus)
        .expect("coefficient lists have equal length by construction");
    let one_plus_s2 = one_plus_s.reduce_mod2();
    let one_plus_sinv = LaurentPoly::gf2_from_exponents(&[0, -1]);
    let s_plus_sinv = LaurentPoly::gf2_from_exponents(&[1, -1]);
    let mut bracket = LaurentPoly::gf2_zero();
    for w in witnesses {
        let q = w.q.reduce_mod2();
        let u = w.u.reduce_mod2();
        let term = &(&(&one_plus_s2 * &u) * &q.bar()) + &(&(&one_plus_sinv * &q) * &u.bar());
        let term = &term + &(&(&one_plus_s2 * &one_plus_sinv) * &(&u * &u.bar()));
        bracket = &bracket + &term;
    }
    let expansion = &s_plus_sinv * &bracket;
    if lambda_ff != expansion {
        return Err(ReplayError::Identity {
            step: 2,
            identity: "bracket expansion of lambda(f,f)",
        });
    }

    // step 3: solve over the symmetric basis
    let theta = match symmetric_span_solve(&lambda_ff) {
        Ok(theta) => theta,
        Err(TheoremError::NotInSpan { condition }) => {
            return Err(ReplayError::Span { step: 3, condition })
        }
        Err(_) => unreachable!("span solve only fails with NotInSpan"),
    };

    // step 4: exact division and the derivative-evaluation extraction
    let divisor = &s_plus_sinv * &one_plus_sinv;
    let quotient = LaurentPoly::exact_divide_mod2(&lambda_ff, &divisor).map_err(|_| {
        ReplayError::Identity {
            step: 4,
            identity: "exact divisibility by (s+s^-1)(1+s^-1)",
        }
    })?;
    let s_gf2 = LaurentPoly::gf2_monomial(1);
    let mut quotient_direct = LaurentPoly::gf2_zero();
    for w in witnesses {
        let q = w.q.reduce_mod2();
        let u = w.u.reduce_mod2();
        let term = &(&(&u * &q.bar()) * &s_gf2) + &(&q * &u.bar());
        let term = &term + &(&one_plus_s2 * &(&u * &u.bar()));
        quotient_direct = &quotient_direct + &term;
    }
    if quotient != quotient_direct {
        return Err(ReplayError::Identity {
            step: 4,
            identity: "quotient equals the direct summation",
        });
    }
    let phi_quotient = quotient.phi();
    let mut weighted_r_sum = Gf2::ZERO;
    for n in theta.support() {
        let (_, r_at_1) = lambda_n_decompose(n).map_err(|_| ReplayError::Identity {
            step: 4,
            identity: "quartic factorization of a basis element",
        })?;
        weighted_r_sum += r_at_1;
    }
    if phi_quotient != weighted_r_sum {
        return Err(ReplayError::Identity {
            step: 4,
            identity: "phi of the quotient equals the weighted r sum",
        });
    }
    let even_u_sum: Gf2 = witnesses
        .iter()
        .filter(|w| w.n % 2 == 0)
        .map(|w| w.u.eval_at_one_gf2())
        .sum();
    if phi_quotient != even_u_sum {
        return Err(ReplayError::Identity {
            step: 4,
            identity: "phi of the quotient equals the even-n u sum",
        });
    }

    // step 5: the predicted value
    let omega_predicted = theta.predicted_omega();
    if omega_predicted != weighted_r_sum {
        return Err(ReplayError::Identity {
            step: 5,
            identity: "r_n(1) is 1 exactly for n = 2 mod 4",
        });
    }

    // step 6: the direct value
    let omega_direct = omega_from_witness(witnesses)
        .map_err(|violation| ReplayError::Witness { step: 6, violation })?;
    if omega_direct != even_u_sum {
        return Err(ReplayError::Identity {
            step: 6,
            identity: "direct omega equals the even-n u sum",
        });
    }

    let agrees = omega_direct == omega_predicted;
    Ok(TheoremVerdict {
        omega_direct,
        omega_predicted,
        agrees,
        trace: ReplayTrace {
            c_plus,
            c_minus,
            lambda_ff,
            theta,
            divisor,
            quotient,
            quotient_direct,
            phi_quotient,
            weighted_r_sum,
            even_u_sum,
        },
    })
}
