//! Acceptance suite: one test per criterion, each printing a pass line with
//! its case counts (visible with `--nocapture`). All batteries are seeded
//! and exact-count; every tolerance is pinned in the assertions below.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linkhom_core::generate::{generate_instance, Bounds};
use linkhom_core::gf2::Gf2;
use linkhom_core::laurent::LaurentPoly;
use linkhom_core::linkmap::{
    self, ConstructedDiskWitness, DoublePoint, LinkMapModel, Side, WhitneyDiskDatum, WitnessHandle,
};
use linkhom_core::theorem::{
    kirk_compose, kirk_decompose, lambda_n_decompose, predicted_omega, replay_derivation,
    KirkDecomposition, TheoremError,
};
use linkhom_core::wall::Sign;

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream)
}

fn random_poly(
    rng: &mut ChaCha8Rng,
    max_exp: i64,
    max_coeff: i64,
    max_terms: usize,
) -> LaurentPoly {
    let terms = rng.gen_range(0..=max_terms);
    let pairs: Vec<(i64, i64)> = (0..terms)
        .map(|_| {
            (
                rng.gen_range(-max_exp..=max_exp),
                rng.gen_range(-max_coeff..=max_coeff),
            )
        })
        .collect();
    LaurentPoly::from_terms(&pairs)
}

fn random_points(rng: &mut ChaCha8Rng, max_len: usize, max_n: i64) -> Vec<DoublePoint> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let sign = if rng.gen_range(0..2) == 0 {
                Sign::Plus
            } else {
                Sign::Minus
            };
            DoublePoint::new(sign, rng.gen_range(-max_n..=max_n))
        })
        .collect()
}

#[test]
fn c1_phi_rules_random_battery() {
    let mut rng = rng(101);
    let start = Instant::now();
    for _ in 0..1000 {
        let g = random_poly(&mut rng, 8, 9, 6);
        // (i) invariance under the bar involution
        assert_eq!(g.bar().phi(), g.phi());
        // (ii) shift rule
        let shifted = &LaurentPoly::var() * &g;
        assert_eq!(shifted.phi(), g.eval_at_one_gf2() + g.phi());
        // (iii) cyclotomic-factor rule for n in [-6, 6]
        let n = rng.gen_range(-6i64..=6);
        let factor = &LaurentPoly::one() + &LaurentPoly::monomial(n, 1);
        assert_eq!((&factor * &g).phi(), Gf2::from_int(n) * g.eval_at_one_gf2());
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("[acceptance] criterion 1 (phi rules, 1000 cases, {elapsed:?}): PASS");
}

#[test]
fn c2_lambda_n_factorization_range() {
    let start = Instant::now();
    for n in 2..=64 {
        let (r, r_at_1) = lambda_n_decompose(n).expect("quartic factor must divide");
        // independent re-multiplication of the claimed factorization
        let quartic = LaurentPoly::gf2_from_exponents(&[0, 1]).pow(4);
        let mut exps = vec![n, -n];
        if n % 2 != 0 {
            exps.extend([1, -1]);
        }
        assert_eq!(&quartic * &r, LaurentPoly::gf2_from_exponents(&exps));
        let expected = if n % 2 == 0 {
            Gf2::from_int(n / 2)
        } else {
            Gf2::ZERO
        };
        assert_eq!(r_at_1, expected, "n = {n}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("[acceptance] criterion 2 (quartic factorization for n in [2,64], {elapsed:?}): PASS");
}

#[test]
fn c3_kirk_round_trip_and_rejects() {
    let mut rng = rng(303);
    let start = Instant::now();
    for _ in 0..1000 {
        let mut a = std::collections::BTreeMap::new();
        for _ in 0..rng.gen_range(0..5) {
            let n = rng.gen_range(2i64..=10);
            let c = rng.gen_range(-5i64..=5);
            if c != 0 {
                a.insert(n, BigInt::from(c));
            }
        }
        let d = KirkDecomposition {
            a0: BigInt::from(rng.gen_range(-9i64..=9)),
            a,
        };
        assert_eq!(kirk_decompose(&kirk_compose(&d)).unwrap(), d);
    }
    let mut rejected = 0;
    while rejected < 100 {
        let mut a = std::collections::BTreeMap::new();
        for _ in 0..rng.gen_range(0..5) {
            let n = rng.gen_range(2i64..=10);
            let c = rng.gen_range(-5i64..=5);
            if c != 0 {
                a.insert(n, BigInt::from(c));
            }
        }
        let d = KirkDecomposition {
            a0: BigInt::from(rng.gen_range(-9i64..=9)),
            a,
        };
        // break the forced s-coefficient by an odd offset
        let crafted =
            &kirk_compose(&d) + &LaurentPoly::monomial(1, 2 * rng.gen_range(0i64..=2) + 1);
        match kirk_decompose(&crafted) {
            Err(TheoremError::NotInImage { .. }) => rejected += 1,
            other => panic!("crafted non-member was accepted: {other:?}"),
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!(
        "[acceptance] criterion 3 (image round-trip, 1000 + 100 reject cases, {elapsed:?}): PASS"
    );
}

fn acceptance_bounds() -> Bounds {
    Bounds {
        max_d: 4,
        max_n: 6,
        max_degree: 6,
        max_handles: 3,
        resample_budget: 64,
    }
}

#[test]
fn c4_replay_battery_and_worked_instance() {
    let start = Instant::now();
    let bounds = acceptance_bounds();
    for seed in 0..1000 {
        let inst = generate_instance(seed, &bounds).expect("generation within budget");
        assert!(
            inst.verdict.agrees,
            "seed {seed}: omega_direct = {}, omega_predicted = {}",
            inst.verdict.omega_direct, inst.verdict.omega_predicted
        );
    }
    // the worked instance: n=2, q=1+s, u=1, one handle with m=1
    let worked = ConstructedDiskWitness {
        n: 2,
        handles: vec![WitnessHandle {
            m_bit: Gf2::ONE,
            pair_count: 1,
            pair_bits: vec![(Gf2::ONE, Gf2::ZERO)],
        }],
        u: LaurentPoly::one(),
        q: LaurentPoly::from_terms(&[(0, 1), (1, 1)]),
    };
    let verdict = replay_derivation(&[worked]).unwrap();
    assert_eq!(verdict.omega_direct, Gf2::ONE);
    assert_eq!(verdict.omega_predicted, Gf2::ONE);
    assert!(verdict.agrees);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!(
        "[acceptance] criterion 4 (1000-instance replay battery + worked instance, {elapsed:?}): PASS"
    );
}

#[test]
fn c5_vanishing_even4_coefficients_force_zero_omega() {
    let bounds = acceptance_bounds();
    let mut filtered = 0;
    for seed in 0..1000 {
        let inst = generate_instance(seed, &bounds).expect("generation within budget");
        let sigma_plus = linkmap::sigma(&inst.model, Side::Plus);
        if predicted_omega(&sigma_plus).unwrap() == Gf2::ZERO {
            filtered += 1;
            assert_eq!(inst.verdict.omega_predicted, Gf2::ZERO, "seed {seed}");
            assert_eq!(inst.verdict.omega_direct, Gf2::ZERO, "seed {seed}");
        }
    }
    assert!(filtered > 0, "the filtered family must be nonempty");

    // directed family with sigma_plus identically zero: every witness has
    // even-coefficient u, so the witness data carries no mod-2 content
    let mut rng = rng(505);
    for case in 0..100 {
        let d = rng.gen_range(0..=3);
        let witnesses: Vec<ConstructedDiskWitness> = (0..d)
            .map(|_| {
                let n = rng.gen_range(0..=6);
                let handles = (0..rng.gen_range(0..=2))
                    .map(|_| {
                        let b = Gf2::from_int(rng.gen_range(0..=1));
                        WitnessHandle {
                            m_bit: Gf2::ZERO,
                            pair_count: 2,
                            pair_bits: vec![(b, b + Gf2::ONE), (b + Gf2::ONE, b)],
                        }
                    })
                    .collect();
                let q_draft = random_poly(&mut rng, 6, 3, 4);
                let correction = BigInt::from(n) - q_draft.eval_at_one();
                let q = &q_draft + &LaurentPoly::from_bigint_terms([(0, correction)]);
                let u = random_poly(&mut rng, 6, 3, 4).scale(2);
                ConstructedDiskWitness {
                    n: n as u32,
                    handles,
                    u,
                    q,
                }
            })
            .collect();
        let verdict = replay_derivation(&witnesses)
            .unwrap_or_else(|e| panic!("case {case}: directed family must replay cleanly: {e}"));
        assert!(verdict.trace.lambda_ff.is_zero(), "case {case}");
        assert_eq!(verdict.omega_predicted, Gf2::ZERO, "case {case}");
        assert_eq!(verdict.omega_direct, Gf2::ZERO, "case {case}");
        // a vanishing sigma_plus predicts zero through the coefficient route
        assert_eq!(predicted_omega(&LaurentPoly::zero()).unwrap(), Gf2::ZERO);
    }
    println!(
        "[acceptance] criterion 5 (zero prediction forces zero omega; {filtered}/1000 filtered + 100 directed): PASS"
    );
}

#[test]
fn c6_sigma_two_routes_agree() {
    let mut rng = rng(606);
    for _ in 0..1000 {
        let model = LinkMapModel::new(
            random_points(&mut rng, 12, 6),
            random_points(&mut rng, 12, 6),
        );
        for side in [Side::Plus, Side::Minus] {
            assert_eq!(
                linkmap::sigma(&model, side),
                linkmap::sigma_via_mu(&model, side)
            );
        }
    }
    println!("[acceptance] criterion 6 (sigma agrees with its mu-route, 1000 models): PASS");
}

#[test]
fn c7_point_weight_two_routes_agree() {
    let mut rng = rng(707);
    for _ in 0..1000 {
        let n = rng.gen_range(0u32..=6);
        let len = rng.gen_range(0..=8);
        let points = (0..len)
            .map(|_| Gf2::from_int(rng.gen_range(0..=1)))
            .collect();
        let disk = WhitneyDiskDatum::new(n, points);
        assert_eq!(
            linkmap::l_minus_from_weights(&disk),
            linkmap::l_minus_shortcut(&disk)
        );
    }
    println!("[acceptance] criterion 7 (weight sum equals parity shortcut, 1000 disks): PASS");
}

// exhaustive matcher, independent of the greedy implementation
fn brute_force_pairable(points: &[DoublePoint]) -> bool {
    fn go(remaining: &mut Vec<DoublePoint>) -> bool {
        if remaining.is_empty() {
            return true;
        }
        let first = remaining.remove(0);
        for j in 0..remaining.len() {
            if remaining[j].sign == first.sign.opposite() && remaining[j].n.abs() == first.n.abs() {
                let partner = remaining.remove(j);
                if go(remaining) {
                    return true;
                }
                remaining.insert(j, partner);
            }
        }
        remaining.insert(0, first);
        false
    }
    let mut points = points.to_vec();
    points.len().is_multiple_of(2) && go(&mut points)
}

#[test]
fn c8_pairability_iff_sigma_minus_vanishes() {
    let mut rng = rng(808);
    for _ in 0..500 {
        let minus = random_points(&mut rng, 8, 6);
        let model = LinkMapModel::new(vec![], minus.clone());
        let report = linkmap::validate(&model);
        let oracle = brute_force_pairable(&minus);
        assert_eq!(report.pairable, oracle);
        let self_sum: i64 = minus.iter().map(|p| p.sign.as_int()).sum();
        let algebraic = linkmap::sigma(&model, Side::Minus).is_zero() && self_sum == 0;
        assert_eq!(report.pairable, algebraic);
        if let Some(pairs) = report.pairs {
            for (i, j) in pairs {
                assert_eq!(minus[i].sign, minus[j].sign.opposite());
                assert_eq!(minus[i].n.abs(), minus[j].n.abs());
            }
        }
    }
    println!(
        "[acceptance] criterion 8 (pairable iff sigma_minus and self vanish, 500 models): PASS"
    );
}

#[test]
fn c9_not_in_span_rate_reported_and_no_disagreements() {
    let bounds = acceptance_bounds();
    let mut resamples = 0u64;
    for seed in 0..1000 {
        let inst = generate_instance(seed, &bounds).expect("generation within budget");
        resamples += inst.not_in_span_resamples as u64;
        assert!(inst.verdict.agrees, "seed {seed}");
    }
    println!(
        "[acceptance] criterion 9 (span-miss resamples over 1000 instances: {resamples}; no disagreements): PASS"
    );
}
