//! `condlab`: scans, checks, feasibility decisions and simulations.
//!
//! Exit codes: 0 holds/feasible, 3 violated/infeasible, 4 statistical flag,
//! 2 usage, 1 I/O or internal failure.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use condlab_core::{
    compare_to_theory, decide_feasibility, maximize_violation, quantum_wigner_conditional, run_protocol,
    scan_violations, targets_from_quantum, Comparison, Error, FeasibilityResult, FrequencyTable, InequalityReport,
    Minimizer, PairwiseTargets, ProtocolSpec,
};
use serde::{Deserialize, Serialize};

const EXIT_OK: u8 = 0;
const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VIOLATED: u8 = 3;
const EXIT_FLAGGED: u8 = 4;

#[derive(Parser)]
#[command(name = "condlab", version, about = "Classical vs. quantum conditional probability laboratory")]
struct Cli {
    /// Output format; defaults to csv for `scan`, json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for `simulate`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Read every angle argument in degrees.
    #[arg(long, global = true)]
    degrees: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate f(θ) = cos²3θ + sin²2θ − cos²θ on a uniform grid.
    #[command(allow_negative_numbers = true)]
    Scan {
        #[arg(long, default_value_t = 0.0)]
        min: f64,
        #[arg(long, default_value_t = FRAC_PI_2)]
        max: f64,
        #[arg(long, default_value_t = 1801)]
        steps: usize,
    },
    /// Conditional Wigner inequality for σ(θ1), σ(θ2), σ(θ3).
    #[command(allow_negative_numbers = true)]
    Check { theta1: f64, theta2: f64, theta3: f64 },
    /// Decide whether a classical model reproduces the quantum pairwise statistics.
    #[command(allow_negative_numbers = true)]
    Fit {
        theta1: f64,
        theta2: f64,
        theta3: f64,
        #[arg(long, default_value_t = 1_000_000)]
        denom: u64,
    },
    /// Monte Carlo of measure σ(first), collapse, measure σ(second), from (1, 0).
    #[command(allow_negative_numbers = true)]
    Simulate {
        #[arg(long)]
        first: f64,
        #[arg(long)]
        second: f64,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
    },
    /// Locate the most negative f(θ) on an interval.
    #[command(allow_negative_numbers = true)]
    Maximize {
        #[arg(long, default_value_t = 0.0)]
        lo: f64,
        #[arg(long, default_value_t = FRAC_PI_6)]
        hi: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Serialize, Deserialize)]
struct FitOutput {
    targets: PairwiseTargets,
    result: FeasibilityResult,
}

#[derive(Serialize, Deserialize)]
struct SimulateOutput {
    table: FrequencyTable,
    comparison: Comparison,
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::MissingCertificate | Error::CrossCheckFailed(_) => Failure::Io(format!("internal error: {e}")),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Output {
    body: String,
    summary: String,
    code: u8,
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output") + "\n"
}

fn report_csv(r: &InequalityReport) -> String {
    format!(
        "kind,lhs,rhs,slack,violated\n{:?},{},{},{},{}\n",
        r.kind,
        r.lhs.to_f64(),
        r.rhs.to_f64(),
        r.slack.to_f64(),
        r.violated
    )
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let angle = |x: f64| if cli.degrees { x.to_radians() } else { x };
    let format = cli.format;
    match cli.command {
        Command::Scan { min, max, steps } => {
            let scan = scan_violations(angle(min), angle(max), steps)?;
            let worst = scan.worst_report();
            let summary = match scan.violation_extent() {
                Some((lo, hi)) => format!(
                    "{} of {} points violate, over [{lo}, {hi}]; worst f = {} at theta = {}",
                    scan.violation_count(),
                    scan.grid.len(),
                    worst.slack.to_f64(),
                    scan.grid[scan.worst]
                ),
                None => format!(
                    "no violations in {} points; minimum f = {} at theta = {}",
                    scan.grid.len(),
                    worst.slack.to_f64(),
                    scan.grid[scan.worst]
                ),
            };
            let body = match format.unwrap_or(Format::Csv) {
                Format::Csv => scan.to_csv(),
                Format::Json => json(&scan.reports),
            };
            Ok(Output { body, summary, code: EXIT_OK })
        }
        Command::Check { theta1, theta2, theta3 } => {
            let report = quantum_wigner_conditional(angle(theta1), angle(theta2), angle(theta3))?;
            let verdict = if report.violated { "violated" } else { "holds" };
            let summary = format!(
                "{verdict}: lhs = {}, rhs = {}, slack = {}",
                report.lhs.to_f64(),
                report.rhs.to_f64(),
                report.slack.to_f64()
            );
            let code = if report.violated { EXIT_VIOLATED } else { EXIT_OK };
            let body = match format.unwrap_or(Format::Json) {
                Format::Json => json(&report),
                Format::Csv => report_csv(&report),
            };
            Ok(Output { body, summary, code })
        }
        Command::Fit { theta1, theta2, theta3, denom } => {
            if format == Some(Format::Csv) {
                return Err(Failure::Usage("fit supports --format json only".into()));
            }
            let targets = targets_from_quantum(angle(theta1), angle(theta2), angle(theta3), denom)?;
            let result = decide_feasibility(&targets)?;
            let (summary, code) = match &result {
                FeasibilityResult::Feasible { .. } => ("feasible: classical model exists".to_string(), EXIT_OK),
                FeasibilityResult::Infeasible { certificate } => (
                    format!(
                        "infeasible: {} fails by {}",
                        certificate.facet.label, certificate.deficit
                    ),
                    EXIT_VIOLATED,
                ),
            };
            Ok(Output {
                body: json(&FitOutput { targets, result }),
                summary,
                code,
            })
        }
        Command::Simulate { first, second, trials } => {
            let spec = ProtocolSpec::from_angles(angle(first), angle(second), trials, cli.seed)?;
            let table = run_protocol(&spec)?;
            let comparison = compare_to_theory(&spec, &table);
            let code = if comparison.flagged { EXIT_FLAGGED } else { EXIT_OK };
            let summary = format!(
                "counts {:?}; {}",
                table.counts,
                if comparison.flagged {
                    "deviation above 4 standard errors"
                } else {
                    "consistent with theory"
                }
            );
            let body = match format.unwrap_or(Format::Json) {
                Format::Json => json(&SimulateOutput { table, comparison }),
                Format::Csv => {
                    let mut s = String::from("first,second,count\n");
                    for (i, row) in table.counts.iter().enumerate() {
                        for (j, n) in row.iter().enumerate() {
                            let sign = |k| if k == 0 { "+1" } else { "-1" };
                            s.push_str(&format!("{},{},{}\n", sign(i), sign(j), n));
                        }
                    }
                    s
                }
            };
            Ok(Output { body, summary, code })
        }
        Command::Maximize { lo, hi, tol } => {
            let m: Minimizer = maximize_violation(angle(lo), angle(hi), tol)?;
            let summary = format!("minimum f = {} at theta = {}", m.value, m.theta);
            let body = match format.unwrap_or(Format::Json) {
                Format::Json => json(&m),
                Format::Csv => format!("theta,f\n{},{}\n", m.theta, m.value),
            };
            Ok(Output { body, summary, code: EXIT_OK })
        }
    }
}

fn emit(out: &Option<PathBuf>, body: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            if let Err(e) = emit(&cli.out, &output.body) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(EXIT_IO);
            }
            eprintln!("{}", output.summary);
            ExitCode::from(output.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
