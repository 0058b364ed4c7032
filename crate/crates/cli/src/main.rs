use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use linkhom_cli::commands;
use linkhom_cli::selftest::{self, Mutation};
use linkhom_core::generate::Bounds;

/// Exact computation of the sigma and omega link-homotopy invariants of
/// two-component 2-sphere link maps, with an instance-level check that
/// omega_minus is determined by sigma_plus.
#[derive(Parser)]
#[command(name = "linkhom", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the invariant report for a model file.
    ///
    /// Exit code 0 when the replay agrees or the file has no witnesses,
    /// 1 on a disagreement, 2 on input errors.
    Compute {
        /// Path to a JSON model file.
        file: PathBuf,
        /// Include the full derivation trace in the report.
        #[arg(long)]
        verbose: bool,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Generate a consistent random instance; identical seeds and bounds
    /// give byte-identical files.
    Generate {
        /// RNG seed.
        #[arg(long)]
        seed: u64,
        /// Maximum number of double-point pairs on the minus component.
        #[arg(long, default_value_t = 4)]
        max_d: usize,
        /// Maximum accessory linking number per pair.
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        /// Exponent bound for the witness polynomials.
        #[arg(long, default_value_t = 6)]
        max_deg: i64,
        /// Maximum handles per witness.
        #[arg(long, default_value_t = 3)]
        max_handles: usize,
        /// Output path.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Factor s^n + s^-n + n(s + s^-1) as (1+s)^4 r_n(s) mod 2.
    LambdaN {
        n: i64,
        #[arg(long)]
        json: bool,
    },
    /// Decompose a polynomial as a0 + sum of a_n (n^2 s - s^n).
    ///
    /// Exit code 1 when the polynomial is not of that form.
    Kirk {
        /// Comma-separated exponent:coefficient pairs, e.g. "0:3, 1:-4, 2:1".
        poly: String,
        #[arg(long)]
        json: bool,
    },
    /// Predict omega_minus from a sigma_plus polynomial.
    Predict {
        /// Comma-separated exponent:coefficient pairs, e.g. "0:3, 1:-4, 2:1".
        poly: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in verification battery.
    Selftest {
        /// Reduced case counts; still covers every suite.
        #[arg(long)]
        quick: bool,
        /// Inject a deliberate defect into the battery's independent omega
        /// oracle (site: "point-weight"); the battery is expected to fail.
        #[arg(long, value_name = "SITE")]
        mutate: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute {
            file,
            verbose,
            json,
        } => commands::cmd_compute(&file, verbose, json),
        Command::Generate {
            seed,
            max_d,
            max_n,
            max_deg,
            max_handles,
            output,
        } => {
            let bounds = Bounds {
                max_d,
                max_n,
                max_degree: max_deg,
                max_handles,
                ..Bounds::default()
            };
            commands::cmd_generate(seed, &bounds, &output)
        }
        Command::LambdaN { n, json } => commands::cmd_lambda_n(n, json),
        Command::Kirk { poly, json } => commands::cmd_kirk(&poly, json),
        Command::Predict { poly, json } => commands::cmd_predict(&poly, json),
        Command::Selftest { quick, mutate } => {
            let mutation = match mutate.as_deref() {
                None => None,
                Some(site) => match Mutation::parse(site) {
                    Some(m) => Some(m),
                    None => {
                        eprintln!("error: unknown mutation site \"{site}\" (try \"point-weight\")");
                        return ExitCode::from(2);
                    }
                },
            };
            Ok(selftest::run(quick, mutation))
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
