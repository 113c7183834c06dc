use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use graded_pi::freegr::GradedPoly;
use graded_pi::galg::{AlgebraSpec, GradedAlgebra};
use graded_pi::regular::analyze;
use graded_pi_cli::ops::{decide, matrix_literal, verdict_name, DEFAULT_NMAX};
use graded_pi_cli::scenarios::{self, RunOptions, Scenario};

#[derive(Parser)]
#[command(name = "gpi", version, about = "Graded polynomial identities and central polynomials, exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in scenario by id, or a scenario JSON file.
    Run {
        scenario: String,
        /// Write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Bound for the regularity search where a step does not set one.
        #[arg(long, default_value_t = DEFAULT_NMAX)]
        nmax: usize,
        /// Run independent steps concurrently.
        #[arg(long)]
        parallel: bool,
    },
    /// List the built-in scenarios.
    List,
    /// Decide whether a polynomial is an identity or central on an algebra.
    Check {
        /// Algebra description: a JSON file or inline JSON.
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        poly: String,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        json: bool,
    },
    /// Regularity, commutation matrix, minimality and coarsening of an algebra.
    Analyze {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = DEFAULT_NMAX)]
        nmax: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Identity,
    Central,
    Proper,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("unknown scenario {0:?} (try `gpi list`)")]
    UnknownScenario(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{origin}: {source}")]
    Json { origin: String, source: serde_json::Error },
    #[error("invalid scenario: {0}")]
    Scenario(String),
    #[error(transparent)]
    Engine(#[from] graded_pi::Error),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load_algebra(arg: &str) -> Result<GradedAlgebra, CliError> {
    let (origin, text) = if arg.trim_start().starts_with('{') {
        ("inline algebra".to_string(), arg.to_string())
    } else {
        (arg.to_string(), read(Path::new(arg))?)
    };
    let spec: AlgebraSpec = serde_json::from_str(&text).map_err(|source| CliError::Json { origin, source })?;
    Ok(spec.build()?)
}

fn load_scenario(arg: &str) -> Result<Scenario, CliError> {
    if let Some(s) = scenarios::find(arg) {
        return Ok(s);
    }
    let path = Path::new(arg);
    if !path.is_file() {
        return Err(CliError::UnknownScenario(arg.to_string()));
    }
    let s: Scenario =
        serde_json::from_str(&read(path)?).map_err(|source| CliError::Json { origin: arg.to_string(), source })?;
    s.validate().map_err(CliError::Scenario)?;
    Ok(s)
}

fn to_json(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::List => {
            for s in scenarios::builtin() {
                println!("{:<18} {}", s.id, s.description);
            }
            Ok(true)
        }
        Command::Run { scenario, out, json, nmax, parallel } => {
            let report = load_scenario(&scenario)?.run(RunOptions { nmax, parallel });
            if let Some(path) = &out {
                std::fs::write(path, report.to_json())
                    .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            }
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            Ok(report.passed())
        }
        Command::Check { algebra, poly, mode, json } => {
            let a = load_algebra(&algebra)?;
            let f = GradedPoly::parse(&poly, a.group())?;
            let v = decide(&f, &a)?;
            if json {
                println!("{}", to_json(&v));
            } else {
                let text = match (v.is_identity, v.is_central) {
                    (true, _) => "identity",
                    (false, true) => "central, proper",
                    (false, false) => "not central",
                };
                println!("{text}");
                if let Some(w) = v.noncentral_witness.as_ref().filter(|_| !v.is_central) {
                    println!("witness: {} gives {}", fmt_assignment(&w.assignment), w.value);
                    if let Some(b) = &w.against {
                        println!("  which does not commute with {b}");
                    }
                } else if let Some(w) = &v.nonidentity_witness {
                    println!("nonzero at: {} gives {}", fmt_assignment(&w.assignment), w.value);
                }
            }
            Ok(match mode {
                None => true,
                Some(Mode::Identity) => v.is_identity,
                Some(Mode::Central) => v.is_central,
                Some(Mode::Proper) => v.is_proper_central,
            })
        }
        Command::Analyze { algebra, nmax, json } => {
            let a = load_algebra(&algebra)?;
            let cert = analyze(&a, nmax)?;
            if json {
                println!("{}", to_json(&cert));
            } else {
                println!("group: {}", cert.group);
                println!("verdict: {}", verdict_name(&cert.verdict));
                if let graded_pi::regular::Verdict::NotRegular { witness } = &cert.verdict {
                    println!("witness: ({})", witness.join(", "));
                }
                if let Some(b) = &cert.beta {
                    println!("beta: {}", matrix_literal(b));
                }
                if let Some(issue) = &cert.beta_issue {
                    println!("commutation scalars: {issue}");
                }
                if let Some(d) = &cert.det {
                    println!("det M^A: {d}");
                }
                if let Some(m) = cert.minimal {
                    println!("minimal: {m}");
                }
                if let Some(g0) = &cert.g0 {
                    println!("G0: {{{}}}", g0.join(","));
                }
                if let Some(c) = &cert.coarsening {
                    println!("minimal coarsening: {} with theta {} (minimal: {})", c.quotient, matrix_literal(&c.theta), c.minimal);
                }
            }
            Ok(true)
        }
    }
}

fn fmt_assignment(m: &std::collections::BTreeMap<String, String>) -> String {
    m.iter().map(|(k, v)| format!("{k} = {v}")).collect::<Vec<_>>().join(", ")
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("gpi: {e}");
            ExitCode::from(2)
        }
    }
}
