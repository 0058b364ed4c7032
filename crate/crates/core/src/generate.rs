//! Seed-reproducible sampling of consistent model instances.
//!
//! An instance is a witness set together with a double-point model realizing
//! it: the minus component gets one canceling pair per witness, and the plus
//! component realizes an integer lift of the solved mod-2 coefficients, so
//! the emitted σ₊ matches the witness data exactly. Draws that fall outside
//! the symmetric span are resampled and counted rather than treated as
//! errors.

use std::error::Error;
use std::fmt;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf2::Gf2;
use crate::laurent::LaurentPoly;
use crate::linkmap::{ConstructedDiskWitness, DoublePoint, LinkMapModel, WitnessHandle};
use crate::theorem::{replay_derivation, ReplayError, TheoremVerdict, ThetaCoefficients};
use crate::wall::Sign;

/// Size bounds for sampled instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Maximum number of witnesses (double-point pairs of the minus side).
    pub max_d: usize,
    /// Maximum accessory linking number per witness.
    pub max_n: u32,
    /// Exponents of sampled polynomials stay within ±this.
    pub max_degree: i64,
    /// Maximum handles per witness.
    pub max_handles: usize,
    /// How many span misses to absorb before giving up.
    pub resample_budget: u32,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            max_d: 4,
            max_n: 6,
            max_degree: 6,
            max_handles: 3,
            resample_budget: 64,
        }
    }
}

/// Sampling exhausted its resample budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationExhausted {
    pub budget: u32,
}

impl fmt::Display for GenerationExhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "instance generation exhausted its resample budget of {}",
            self.budget
        )
    }
}

impl Error for GenerationExhausted {}

/// A sampled instance: the double-point model, the witness set it carries,
/// the replay verdict, and the number of span misses absorbed on the way.
#[derive(Clone, Debug)]
pub struct GeneratedInstance {
    pub model: LinkMapModel,
    pub witnesses: Vec<ConstructedDiskWitness>,
    pub verdict: TheoremVerdict,
    pub not_in_span_resamples: u32,
}

fn sample_poly(rng: &mut ChaCha8Rng, max_degree: i64) -> LaurentPoly {
    let terms = rng.gen_range(0..=4);
    let mut pairs = Vec::with_capacity(terms);
    for _ in 0..terms {
        let e = rng.gen_range(-max_degree..=max_degree);
        let c = rng.gen_range(-3i64..=3);
        pairs.push((e, c));
    }
    LaurentPoly::from_terms(&pairs)
}

/// Random polynomial with a prescribed value at `s = 1`, obtained by fixing
/// up the constant term.
fn sample_poly_with_eval(rng: &mut ChaCha8Rng, max_degree: i64, target: i64) -> LaurentPoly {
    let draft = sample_poly(rng, max_degree);
    let correction = BigInt::from(target) - draft.eval_at_one();
    &draft + &LaurentPoly::from_bigint_terms([(0, correction)])
}

/// Random polynomial whose value at `s = 1` has a prescribed parity.
fn sample_poly_with_parity(rng: &mut ChaCha8Rng, max_degree: i64, parity: Gf2) -> LaurentPoly {
    let draft = sample_poly(rng, max_degree);
    if draft.eval_at_one_gf2() == parity {
        draft
    } else {
        &draft + &LaurentPoly::one()
    }
}

fn sample_witness(rng: &mut ChaCha8Rng, bounds: &Bounds) -> ConstructedDiskWitness {
    let n = rng.gen_range(0..=bounds.max_n);
    let handle_count = rng.gen_range(0..=bounds.max_handles);
    let mut handles = Vec::with_capacity(handle_count);
    for _ in 0..handle_count {
        let m_bit = Gf2::from_int(rng.gen_range(0..=1));
        let pair_count = m_bit.as_bit() as usize + 2 * rng.gen_range(0..=1usize);
        let pair_bits = (0..pair_count)
            .map(|_| {
                let b = Gf2::from_int(rng.gen_range(0..=1));
                (b, b + Gf2::ONE)
            })
            .collect();
        handles.push(WitnessHandle {
            m_bit,
            pair_count,
            pair_bits,
        });
    }
    let q = sample_poly_with_eval(rng, bounds.max_degree, n as i64);
    let m_sum: Gf2 = handles.iter().map(|h| h.m_bit).sum();
    let u = sample_poly_with_parity(rng, bounds.max_degree, m_sum);
    ConstructedDiskWitness { n, handles, u, q }
}

/// Sample one witness set within the bounds.
pub fn sample_witnesses(rng: &mut ChaCha8Rng, bounds: &Bounds) -> Vec<ConstructedDiskWitness> {
    let d = rng.gen_range(0..=bounds.max_d);
    (0..d).map(|_| sample_witness(rng, bounds)).collect()
}

/// Signed double points realizing `σ₊ = Σ aₙ(sⁿ - 1)` for an integer lift of
/// the solved coefficients, with zero-n points appended to balance the sign
/// sum. The lift keeps every required parity: odd entries on the solved
/// support, even noise elsewhere, and the forced parity at n = 1.
fn realize_plus_points(
    rng: &mut ChaCha8Rng,
    theta: &ThetaCoefficients,
    bounds: &Bounds,
) -> Vec<DoublePoint> {
    let mut lifts: Vec<(i64, i64)> = Vec::new();
    let mut forced_linear = 0i64;
    for n in theta.support() {
        let odd_lift = *[-3i64, -1, 1, 3].choose(rng).unwrap();
        lifts.push((n, odd_lift));
        forced_linear += n;
    }
    // even noise at a few exponents off the support
    for n in 2..=(bounds.max_n as i64) {
        if theta.get(n) == Gf2::ZERO && rng.gen_range(0..4) == 0 {
            lifts.push((n, *[-2i64, 2].choose(rng).unwrap()));
        }
    }
    let a1 = (forced_linear & 1) + 2 * rng.gen_range(-1i64..=1);
    if a1 != 0 {
        lifts.push((1, a1));
    }

    let mut points = Vec::new();
    let mut sign_sum = 0i64;
    for (n, a_n) in lifts {
        let sign = if a_n > 0 { Sign::Plus } else { Sign::Minus };
        for _ in 0..a_n.abs() {
            let n_signed = if rng.gen_range(0..2) == 0 { n } else { -n };
            points.push(DoublePoint::new(sign, n_signed));
            sign_sum += sign.as_int();
        }
    }
    let balance = if sign_sum > 0 {
        Sign::Minus
    } else {
        Sign::Plus
    };
    for _ in 0..sign_sum.abs() {
        points.push(DoublePoint::new(balance, 0));
    }
    points.shuffle(rng);
    points
}

/// One canceling pair of minus-side double points per witness.
fn realize_minus_points(
    rng: &mut ChaCha8Rng,
    witnesses: &[ConstructedDiskWitness],
) -> Vec<DoublePoint> {
    let mut points = Vec::new();
    for w in witnesses {
        let n = w.n as i64;
        let flip = |rng: &mut ChaCha8Rng, n: i64| if rng.gen_range(0..2) == 0 { n } else { -n };
        points.push(DoublePoint::new(Sign::Plus, flip(rng, n)));
        points.push(DoublePoint::new(Sign::Minus, flip(rng, n)));
    }
    points.shuffle(rng);
    points
}

/// Generate one full instance deterministically from a seed. Witness draws
/// whose self-intersection value falls outside the symmetric span are
/// resampled (and counted); any other replay failure would mean the sampler
/// built inconsistent witnesses and panics.
pub fn generate_instance(
    seed: u64,
    bounds: &Bounds,
) -> Result<GeneratedInstance, GenerationExhausted> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut resamples = 0u32;
    loop {
        let witnesses = sample_witnesses(&mut rng, bounds);
        let verdict = match replay_derivation(&witnesses) {
            Ok(v) => v,
            Err(ReplayError::Span { .. }) => {
                resamples += 1;
                if resamples > bounds.resample_budget {
                    return Err(GenerationExhausted {
                        budget: bounds.resample_budget,
                    });
                }
                continue;
            }
            Err(other) => panic!("sampler produced inconsistent witnesses: {other}"),
        };
        let plus_points = realize_plus_points(&mut rng, &verdict.trace.theta, bounds);
        let minus_points = realize_minus_points(&mut rng, &witnesses);
        return Ok(GeneratedInstance {
            model: LinkMapModel::new(plus_points, minus_points),
            witnesses,
            verdict,
            not_in_span_resamples: resamples,
        });
    }
}
