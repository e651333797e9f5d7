use std::io::Read;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use bwm_core::error::BwmError;
use bwm_core::io::parse_pcs_or_group;
use bwm_core::report::{analyze_group, render, AnalysisOptions};
use bwm_core::scale::ScaleId;
use bwm_core::service::{aggregate_systems, ci_table_for, error_json, serve};
use bwm_core::verify::{summarize, verify_pcs, verify_random};

const EXIT_INVALID: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "bwm",
    version,
    about = "Best-worst method weights, deviations and consistency"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a comparison system (JSON or CSV; a JSON array is aggregated first).
    Analyze {
        /// Input file, or `-` for standard input.
        #[arg(default_value = "-")]
        input: String,
        /// Scale for linguistic terms and range warnings, when the input names none.
        #[arg(long)]
        scale: Option<ScaleId>,
        /// Include the legacy closed-form results.
        #[arg(long)]
        legacy: bool,
        /// Round numbers in the output to this many decimals.
        #[arg(long)]
        round: Option<u32>,
        /// Cross-check against the brute-force oracle; exit 3 on mismatch.
        #[arg(long)]
        verify: bool,
    },
    /// Compare closed forms with the oracle on a file or on random systems.
    Verify {
        input: Option<String>,
        /// Number of seeded random systems to check.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "saaty")]
        scale: ScaleId,
    },
    /// Print the consistency index for every level of a scale.
    Ci {
        #[arg(long, default_value = "saaty")]
        scale: String,
        #[arg(long)]
        json: bool,
    },
    /// Merge several decision makers' systems by geometric mean and analyze.
    Aggregate {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long)]
        scale: Option<ScaleId>,
        #[arg(long)]
        round: Option<u32>,
    },
    /// Run the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Directory of static files to serve at `/`.
        #[arg(long)]
        static_dir: Option<PathBuf>,
    },
}

enum Failure {
    Invalid(String),
    Mismatch(String),
}

impl From<BwmError> for Failure {
    fn from(e: BwmError) -> Self {
        Failure::Invalid(error_json(&e))
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| {
        Failure::Invalid(
            json!({"error": {"code": "Io", "message": format!("{path}: {e}"), "field": null}})
                .to_string(),
        )
    })?;
    Ok(text)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Analyze {
            input,
            scale,
            legacy,
            round,
            verify,
        } => {
            let systems = parse_pcs_or_group(&read_input(&input)?, scale)?;
            let options = AnalysisOptions {
                legacy,
                round,
                verify,
            };
            let (_, report) = analyze_group(&systems, &options)?;
            let out = render(&report, round);
            if report.verified() {
                Ok(out)
            } else {
                Err(Failure::Mismatch(out))
            }
        }
        Command::Verify {
            input,
            random,
            seed,
            scale,
        } => {
            let report = match (input, random) {
                (Some(path), _) => {
                    let systems = parse_pcs_or_group(&read_input(&path)?, Some(scale))?;
                    summarize(
                        systems
                            .iter()
                            .enumerate()
                            .map(|(k, p)| verify_pcs(p, format!("{path}#{k}")))
                            .collect(),
                    )
                }
                (None, count) => {
                    let s = scale.scale().ok_or_else(|| BwmError::InvalidScale {
                        scale: scale.to_string(),
                        reason: "random systems need a built-in scale".into(),
                    })?;
                    verify_random(&s, count.unwrap_or(100), seed)
                }
            };
            let out = render(&report, None);
            if report.passed {
                Ok(out)
            } else {
                Err(Failure::Mismatch(out))
            }
        }
        Command::Ci { scale, json } => {
            let table = ci_table_for(&scale)?;
            if json {
                return Ok(render(&table, None));
            }
            let mut out = format!("{:>8}  {:>8}\n", "a_bw", "CI");
            for row in &table.rows {
                out.push_str(&format!("{:>8.4}  {:>8.4}\n", row.abw, row.ci));
            }
            Ok(out)
        }
        Command::Aggregate {
            inputs,
            scale,
            round,
        } => {
            let mut systems = Vec::new();
            for path in &inputs {
                systems.extend(parse_pcs_or_group(&read_input(path)?, scale)?);
            }
            let options = AnalysisOptions {
                round,
                ..Default::default()
            };
            Ok(aggregate_systems(&systems, &options)?)
        }
        Command::Serve {
            port,
            host,
            static_dir,
        } => {
            let addr = SocketAddr::new(host, port);
            let runtime =
                tokio::runtime::Runtime::new().map_err(|e| Failure::Invalid(e.to_string()))?;
            eprintln!("listening on http://{addr}");
            runtime.block_on(serve(addr, static_dir)).map_err(|e| {
                Failure::Invalid(
                    json!({"error": {"code": "Io", "message": e.to_string(), "field": null}})
                        .to_string(),
                )
            })?;
            Ok(String::new())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(line)) => {
            eprintln!("{line}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::Mismatch(out)) => {
            print!("{out}");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}
