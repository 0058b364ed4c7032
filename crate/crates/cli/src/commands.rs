//! The command implementations. Each returns its process exit code; input
//! problems are reported as `Err` strings and exit with code 2.
//!
//! Exit-code contract for `compute`: 0 when the verdict agrees or the file
//! carries no witnesses, 1 when a replay disagrees (a falsifying instance),
//! 2 on any input error. The query commands exit 0 on an answer, 1 when
//! `kirk` reports non-membership, and 2 on unusable input.

use std::fs;
use std::path::Path;

use serde::Serialize;

use linkhom_core::generate::{generate_instance, Bounds};
use linkhom_core::laurent::LaurentPoly;
use linkhom_core::linkmap::{self, ConstructedDiskWitness, Side};
use linkhom_core::theorem::{
    self, kirk_decompose, lambda_n_decompose, predicted_omega, replay_derivation, theorem_coeffs,
    TheoremError, TheoremVerdict,
};

use crate::model::{
    emit_model, from_domain, parse_model, to_domain, DomainModel, Metadata, ModelFile,
};
use crate::report::{trace_lines, Report};

pub type CmdResult = Result<i32, String>;

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn parse_poly_arg(text: &str) -> Result<LaurentPoly, String> {
    text.parse::<LaurentPoly>()
        .map_err(|e| format!("bad polynomial argument: {e}"))
}

/// Build the full report for already-validated domain content. Witness
/// files must satisfy the hypothesis σ₋ = 0 on a good, pairable minus
/// component, and the witness data must be consistent with the model.
pub fn report_for(domain: &DomainModel, verbose: bool) -> Result<Report, String> {
    let validation = linkmap::validate(&domain.model);
    let sigma_plus = linkmap::sigma(&domain.model, Side::Plus);
    let sigma_minus = linkmap::sigma(&domain.model, Side::Minus);
    let omega_predicted =
        predicted_omega(&sigma_plus).expect("sigma of a model is non-negative and vanishes at 1");

    let mut report = Report {
        sigma_plus: sigma_plus.to_string(),
        sigma_minus: sigma_minus.to_string(),
        plus_good: validation.plus_good,
        minus_good: validation.minus_good,
        pairable: validation.pairable,
        pairs: validation.pairs.clone(),
        omega_direct: 0,
        omega_predicted: omega_predicted.as_bit(),
        verdict: None,
        trace: None,
    };

    match &domain.witnesses {
        None => {
            report.omega_direct = linkmap::omega_minus(&domain.disks).as_bit();
        }
        Some(witnesses) => {
            if !domain.disks.is_empty() {
                return Err("provide raw disks or constructed witnesses, not both".into());
            }
            if !sigma_minus.is_zero() {
                return Err("theorem hypothesis sigma_minus = 0 violated".into());
            }
            if !report.plus_good {
                return Err(
                    "plus component is not good (signed self-intersection count nonzero)".into(),
                );
            }
            let pairs = validation
                .pairs
                .as_ref()
                .ok_or("minus component double points are not pairable")?;

            // each witness must pair one double-point pair with matching |n|
            let mut pair_ns: Vec<i64> = pairs
                .iter()
                .map(|&(i, _)| domain.model.minus_points[i].n.abs())
                .collect();
            let mut witness_ns: Vec<i64> = witnesses.iter().map(|w| w.n as i64).collect();
            pair_ns.sort_unstable();
            witness_ns.sort_unstable();
            if pair_ns != witness_ns {
                return Err("witness linking numbers do not match the double-point pairing".into());
            }

            let verdict = run_replay(witnesses)?;

            // the witness data must carry the same mod-2 self-intersection
            // value as the model's sigma_plus
            let t_from_sigma = (&sigma_plus + &sigma_plus.bar()).reduce_mod2();
            if t_from_sigma != verdict.trace.lambda_ff {
                return Err(
                    "sigma_plus is inconsistent with the witness data (self-intersection values differ mod 2)"
                        .into(),
                );
            }
            debug_assert_eq!(omega_predicted, verdict.omega_predicted);

            report.omega_direct = verdict.omega_direct.as_bit();
            report.omega_predicted = verdict.omega_predicted.as_bit();
            report.verdict = Some(
                if verdict.agrees {
                    "agrees"
                } else {
                    "disagrees"
                }
                .into(),
            );
            if verbose {
                report.trace = Some(trace_lines(&verdict));
            }
        }
    }
    Ok(report)
}

fn run_replay(witnesses: &[ConstructedDiskWitness]) -> Result<TheoremVerdict, String> {
    replay_derivation(witnesses).map_err(|e| format!("witness replay failed: {e}"))
}

pub fn cmd_compute(path: &Path, verbose: bool, json: bool) -> CmdResult {
    let text = read_file(path)?;
    let file = parse_model(&text).map_err(|e| e.to_string())?;
    let domain = to_domain(&file).map_err(|e| e.to_string())?;
    let report = report_for(&domain, verbose)?;
    if json {
        print!("{}", report.render_json());
    } else {
        print!("{}", report.render_text());
    }
    Ok(report.exit_code())
}

/// Build the canonical file form of a generated instance.
pub fn instance_file(seed: u64, bounds: &Bounds) -> Result<ModelFile, String> {
    let inst = generate_instance(seed, bounds).map_err(|e| e.to_string())?;
    let domain = DomainModel {
        metadata: Metadata {
            description: format!(
                "generated instance (max_d={}, max_n={}, max_deg={}, max_handles={})",
                bounds.max_d, bounds.max_n, bounds.max_degree, bounds.max_handles
            ),
            seed: Some(seed),
            not_in_span_resamples: Some(inst.not_in_span_resamples as u64),
        },
        model: inst.model,
        disks: Vec::new(),
        witnesses: Some(inst.witnesses),
    };
    Ok(from_domain(&domain))
}

pub fn cmd_generate(seed: u64, bounds: &Bounds, output: &Path) -> CmdResult {
    let file = instance_file(seed, bounds)?;
    let text = emit_model(&file);
    fs::write(output, text).map_err(|e| format!("cannot write {}: {e}", output.display()))?;
    println!("wrote {}", output.display());
    Ok(0)
}

#[derive(Serialize)]
struct LambdaNAnswer {
    n: i64,
    r_n: String,
    r_n_at_1: u8,
}

pub fn cmd_lambda_n(n: i64, json: bool) -> CmdResult {
    if n < 2 {
        return Err(format!("n must be at least 2, got {n}"));
    }
    let (r, r_at_1) = lambda_n_decompose(n).map_err(|e| e.to_string())?;
    let answer = LambdaNAnswer {
        n,
        r_n: r.to_string(),
        r_n_at_1: r_at_1.as_bit(),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&answer).unwrap());
    } else {
        println!("r_n:     {}", answer.r_n);
        println!("r_n(1):  {}", answer.r_n_at_1);
    }
    Ok(0)
}

#[derive(Serialize)]
struct KirkAnswer {
    input: String,
    a0: String,
    a: Vec<(i64, String)>,
}

pub fn cmd_kirk(poly: &str, json: bool) -> CmdResult {
    let p = parse_poly_arg(poly)?;
    match kirk_decompose(&p) {
        Ok(d) => {
            let answer = KirkAnswer {
                input: p.to_string(),
                a0: d.a0.to_string(),
                a: d.a.iter().map(|(&n, c)| (n, c.to_string())).collect(),
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&answer).unwrap());
            } else {
                println!("input:   {}", answer.input);
                println!("a0:      {}", answer.a0);
                for (n, c) in &answer.a {
                    println!("a_{n}:     {c}");
                }
            }
            Ok(0)
        }
        Err(e @ TheoremError::NotInImage { .. }) => {
            println!("{e}");
            Ok(1)
        }
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Serialize)]
struct PredictAnswer {
    sigma_plus: String,
    coefficients: Vec<(i64, String)>,
    omega_predicted: u8,
}

pub fn cmd_predict(poly: &str, json: bool) -> CmdResult {
    let p = parse_poly_arg(poly)?;
    let coeffs = theorem_coeffs(&p).map_err(|e| e.to_string())?;
    let omega = theorem::predicted_omega_from_coeffs(&coeffs);
    let answer = PredictAnswer {
        sigma_plus: p.to_string(),
        coefficients: coeffs.iter().map(|(n, c)| (*n, c.to_string())).collect(),
        omega_predicted: omega.as_bit(),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&answer).unwrap());
    } else {
        println!("sigma_plus:       {}", answer.sigma_plus);
        let rendered = if answer.coefficients.is_empty() {
            "all zero".to_string()
        } else {
            answer
                .coefficients
                .iter()
                .map(|(n, c)| format!("a_{n}={c}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        println!("coefficients:     {rendered}");
        println!("omega_predicted:  {}", answer.omega_predicted);
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report_for_text(text: &str) -> Result<Report, String> {
        let file = parse_model(text).map_err(|e| e.to_string())?;
        let domain = to_domain(&file).map_err(|e| e.to_string())?;
        report_for(&domain, false)
    }

    #[test]
    fn empty_model_reports_zeros() {
        let report = report_for_text("{}").unwrap();
        assert_eq!(report.sigma_plus, "0:0");
        assert_eq!(report.omega_direct, 0);
        assert_eq!(report.omega_predicted, 0);
        assert_eq!(report.verdict, None);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn witnesses_with_nonzero_sigma_minus_are_rejected() {
        let text = r#"{
            "minus_double_points": [{"sign": 1, "n": 2}, {"sign": -1, "n": 1}],
            "witnesses": []
        }"#;
        let err = report_for_text(text).unwrap_err();
        assert!(err.contains("sigma_minus = 0"), "{err}");
    }

    #[test]
    fn witness_count_must_match_pairing() {
        let text = r#"{
            "minus_double_points": [{"sign": 1, "n": 2}, {"sign": -1, "n": 2}],
            "witnesses": []
        }"#;
        let err = report_for_text(text).unwrap_err();
        assert!(err.contains("do not match"), "{err}");
    }

    #[test]
    fn sigma_plus_must_match_witness_data() {
        // witness data gives lambda(f,f) = s^2 + s^-2 but sigma_plus = 0
        let text = r#"{
            "minus_double_points": [{"sign": 1, "n": 2}, {"sign": -1, "n": 2}],
            "witnesses": [{"n": 2,
                           "handles": [{"m_bit": 1, "pair_count": 1, "pair_bits": [[1, 0]]}],
                           "u": "0:1",
                           "q": "0:1, 1:1"}]
        }"#;
        let err = report_for_text(text).unwrap_err();
        assert!(err.contains("inconsistent"), "{err}");
    }

    #[test]
    fn worked_instance_agrees() {
        let text = r#"{
            "plus_double_points": [{"sign": 1, "n": 2}, {"sign": -1, "n": 0}],
            "minus_double_points": [{"sign": 1, "n": 2}, {"sign": -1, "n": 2}],
            "witnesses": [{"n": 2,
                           "handles": [{"m_bit": 1, "pair_count": 1, "pair_bits": [[1, 0]]}],
                           "u": "0:1",
                           "q": "0:1, 1:1"}]
        }"#;
        let report = report_for_text(text).unwrap();
        assert_eq!(report.omega_direct, 1);
        assert_eq!(report.omega_predicted, 1);
        assert_eq!(report.verdict.as_deref(), Some("agrees"));
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn generated_instances_compute_cleanly() {
        let bounds = Bounds::default();
        for seed in 0..25 {
            let file = instance_file(seed, &bounds).unwrap();
            let domain = to_domain(&file).unwrap();
            let report = report_for(&domain, true).unwrap();
            assert_eq!(report.verdict.as_deref(), Some("agrees"), "seed {seed}");
            assert_eq!(report.exit_code(), 0, "seed {seed}");
        }
    }
}
