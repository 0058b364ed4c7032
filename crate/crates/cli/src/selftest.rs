//! The built-in verification battery: the phi rules, the quartic
//! factorization range, the image round-trip, and a full generate→parse→
//! replay pipeline over many seeds.
//!
//! A mutation mode deliberately corrupts the battery's independent
//! per-point weight oracle, to demonstrate that the pipeline comparisons
//! are sensitive to an error in the weight formula.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linkhom_core::generate::{generate_instance, Bounds};
use linkhom_core::gf2::Gf2;
use linkhom_core::laurent::LaurentPoly;
use linkhom_core::theorem::{
    kirk_compose, kirk_decompose, lambda_n_decompose, KirkDecomposition, TheoremError,
};

use crate::commands::instance_file;
use crate::model::{emit_model, parse_model, to_domain};
use crate::report::Report;

/// A deliberately injected defect, for exercising the battery.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Flip the parity of the linking-number term in the per-point weight
    /// formula used by the battery's independent omega oracle.
    PointWeight,
}

impl Mutation {
    pub fn parse(name: &str) -> Option<Mutation> {
        match name {
            "point-weight" => Some(Mutation::PointWeight),
            _ => None,
        }
    }
}

struct Suite {
    name: &'static str,
    cases: u64,
    failures: u64,
    first_failure: Option<String>,
    note: Option<String>,
}

impl Suite {
    fn new(name: &'static str) -> Suite {
        Suite {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
            note: None,
        }
    }

    fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let terms = rng.gen_range(0..=6);
    let pairs: Vec<(i64, i64)> = (0..terms)
        .map(|_| (rng.gen_range(-8i64..=8), rng.gen_range(-9i64..=9)))
        .collect();
    LaurentPoly::from_terms(&pairs)
}

fn phi_rules(case_count: u64) -> Suite {
    let mut suite = Suite::new("phi-rules");
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37);
    for _ in 0..case_count {
        let g = random_poly(&mut rng);
        let n = rng.gen_range(-6i64..=6);
        let bar_ok = g.bar().phi() == g.phi();
        let shift_ok = (&LaurentPoly::var() * &g).phi() == g.eval_at_one_gf2() + g.phi();
        let factor = &LaurentPoly::one() + &LaurentPoly::monomial(n, 1);
        let cyc_ok = (&factor * &g).phi() == Gf2::from_int(n) * g.eval_at_one_gf2();
        suite.case(bar_ok && shift_ok && cyc_ok, || format!("g = {g}, n = {n}"));
    }
    suite
}

fn quartic_factorization() -> Suite {
    let mut suite = Suite::new("quartic-factorization");
    for n in 2..=64i64 {
        let ok = match lambda_n_decompose(n) {
            Ok((_, r_at_1)) => (r_at_1 == Gf2::ONE) == (n.rem_euclid(4) == 2),
            Err(_) => false,
        };
        suite.case(ok, || format!("n = {n}"));
    }
    suite
}

fn kirk_round_trip(case_count: u64) -> Suite {
    let mut suite = Suite::new("kirk-image-round-trip");
    let mut rng = ChaCha8Rng::seed_from_u64(0x517c);
    for _ in 0..case_count {
        let mut a = std::collections::BTreeMap::new();
        for _ in 0..rng.gen_range(0..5) {
            let c = rng.gen_range(-5i64..=5);
            if c != 0 {
                a.insert(rng.gen_range(2i64..=10), BigInt::from(c));
            }
        }
        let d = KirkDecomposition {
            a0: BigInt::from(rng.gen_range(-9i64..=9)),
            a,
        };
        let ok = kirk_decompose(&kirk_compose(&d)) == Ok(d.clone());
        suite.case(ok, || format!("decomposition {d:?}"));
    }
    for _ in 0..case_count.div_ceil(10) {
        let crafted = &LaurentPoly::monomial(2, rng.gen_range(1i64..=5))
            + &LaurentPoly::monomial(1, 2 * rng.gen_range(0i64..=4) + 1);
        let ok = matches!(
            kirk_decompose(&crafted),
            Err(TheoremError::NotInImage { .. })
        );
        suite.case(ok, || format!("crafted non-member {crafted}"));
    }
    suite
}

/// The weight a single interior intersection point contributes, as the
/// battery computes it independently of the library path. The mutation
/// flips the parity of the linking-number term.
fn point_weight(n: u32, m: Gf2, mutation: Option<Mutation>) -> Gf2 {
    let mut n_term = Gf2::from_int(n as i64);
    if mutation == Some(Mutation::PointWeight) {
        n_term += Gf2::ONE;
    }
    n_term + n_term * m + m
}

fn replay_battery(seed_count: u64, mutation: Option<Mutation>) -> Suite {
    let mut suite = Suite::new("replay-battery");
    let bounds = Bounds::default();
    let mut resamples: u64 = 0;
    for seed in 0..seed_count {
        let outcome = battery_case(seed, &bounds, mutation);
        match outcome {
            Ok(r) => {
                resamples += r;
                suite.case(true, String::new);
            }
            Err(detail) => suite.case(false, || format!("seed {seed}: {detail}")),
        }
    }
    suite.note = Some(format!("span-miss resamples: {resamples}"));
    suite
}

fn battery_case(seed: u64, bounds: &Bounds, mutation: Option<Mutation>) -> Result<u64, String> {
    let inst = generate_instance(seed, bounds).map_err(|e| e.to_string())?;
    if !inst.verdict.agrees {
        return Err("replay disagrees".into());
    }

    // full pipeline: emit the instance as a file, re-parse, recompute
    let file = instance_file(seed, bounds)?;
    let text = emit_model(&file);
    let parsed = parse_model(&text).map_err(|e| e.to_string())?;
    let domain = to_domain(&parsed).map_err(|e| e.to_string())?;
    let report: Report = crate::commands::report_for(&domain, false)?;
    if report.exit_code() != 0 {
        return Err("recomputed report does not agree".into());
    }

    // independent omega from the per-point weight formula
    let omega_oracle: Gf2 = inst
        .witnesses
        .iter()
        .map(|w| {
            let disk = w.expand_disk();
            disk.points
                .iter()
                .map(|&m| point_weight(disk.n, m, mutation))
                .sum::<Gf2>()
        })
        .sum();
    if omega_oracle != inst.verdict.omega_direct {
        return Err(format!(
            "per-point weight oracle gives {omega_oracle}, library path gives {}",
            inst.verdict.omega_direct
        ));
    }
    Ok(inst.not_in_span_resamples as u64)
}

/// Run every suite; returns the process exit code.
pub fn run(quick: bool, mutation: Option<Mutation>) -> i32 {
    let (cases, seeds) = if quick { (200, 100) } else { (1000, 1000) };
    let suites = vec![
        phi_rules(cases),
        quartic_factorization(),
        kirk_round_trip(cases),
        replay_battery(seeds, mutation),
    ];
    let mut all_ok = true;
    for suite in &suites {
        let note = suite
            .note
            .as_ref()
            .map(|n| format!(" ({n})"))
            .unwrap_or_default();
        println!(
            "suite {:<24} {} cases, {} failures{}",
            format!("{}:", suite.name),
            suite.cases,
            suite.failures,
            note
        );
        if suite.failures > 0 {
            all_ok = false;
            if let Some(first) = &suite.first_failure {
                println!("  first failure: {first}");
            }
        }
    }
    if all_ok {
        println!("selftest: PASS");
        0
    } else {
        println!("selftest: FAIL");
        1
    }
}
