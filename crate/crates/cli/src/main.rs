//! `filiform`: build family algebras, classify algebras given as JSON, and
//! reproduce the strong-nilpotency theorems on random samples.

mod params;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use filiform::classify::{
    analyze, catalan, catalan_convolution_check, catalan_convolution_check_printed, census,
    cross_check, verify_theorem, TheoremId,
};
use filiform::{Algebra, Error};

use params::{family_params, RawParams};

#[derive(Parser)]
#[command(name = "filiform", version, about = "Exact computations on filiform Leibniz algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the structure table of a family member as algebra JSON.
    Build {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// `4=1,6=-2` or a dense list `α_4,…,α_n`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta3: Option<String>,
        #[arg(long)]
        alpha_flag: Option<u8>,
        /// Extra product `i,j:k=c,...` (repeatable).
        #[arg(long, allow_hyphen_values = true)]
        skew: Vec<String>,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify an algebra given as JSON.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Compare Engel-flag verdicts against the trace-polynomial oracle.
        #[arg(long)]
        cross_check: bool,
    },
    /// Check a theorem's predictions against computed verdicts.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Tally verdicts over random family members.
    Census {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Fuss-Catalan numbers.
    Catalan {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        /// Print both sides of the convolution identity instead.
        #[arg(long)]
        identity: bool,
    },
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_internal() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn emit<T: Serialize>(value: &T, path: Option<&Path>) -> Outcome {
    let mut text = serde_json::to_string_pretty(value).map_err(Error::from)?;
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_analyze(input: &Path, report: Option<&Path>, check: bool) -> Outcome {
    let text = fs::read_to_string(input)
        .map_err(|e| Failure::from(std::io::Error::new(e.kind(), format!("{}: {e}", input.display()))))?;
    let a = Algebra::from_json_str(&text)?;
    let violations = a.leibniz_violations();
    if let Some(v) = violations.first() {
        return Err(Failure {
            code: 1,
            message: format!(
                "not a Leibniz algebra: identity fails at ({}, {}, {}) ({} violating triple(s))",
                v.i,
                v.j,
                v.k,
                violations.len()
            ),
        });
    }
    let mut analysis = analyze(&a)?;
    if check {
        let agree = cross_check(&mut analysis)?.agree;
        emit(&analysis.report, report)?;
        if !agree {
            return Err(Failure {
                code: 2,
                message: "Engel-flag verdict disagrees with the trace oracle".into(),
            });
        }
        return Ok(());
    }
    emit(&analysis.report, report)
}

fn cmd_catalan(p: u32, n: u32, identity: bool) -> Outcome {
    if !identity {
        println!("{}", catalan(p, n)?);
        return Ok(());
    }
    if p < 2 {
        catalan(p, n)?;
    }
    let show = |label: &str, c: filiform::classify::ConvolutionCheck| {
        let rel = if c.equal { "=" } else { "≠" };
        println!("{label}: {} {rel} {}", c.lhs, c.rhs);
    };
    show("corrected", catalan_convolution_check(p, n)?);
    show("printed", catalan_convolution_check_printed(p, n)?);
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Build {
            family,
            n,
            alpha,
            theta,
            beta,
            gamma,
            theta1,
            theta2,
            theta3,
            alpha_flag,
            skew,
            out,
        } => {
            let raw = RawParams {
                alpha: alpha.as_deref(),
                theta: theta.as_deref(),
                beta: beta.as_deref(),
                gamma: gamma.as_deref(),
                theta1: theta1.as_deref(),
                theta2: theta2.as_deref(),
                theta3: theta3.as_deref(),
                alpha_flag,
                skew: &skew,
            };
            let a = family_params(&family, n, &raw)?.build()?;
            emit(&a.to_json(), out.as_deref())
        }
        Command::Analyze {
            input,
            report,
            cross_check,
        } => cmd_analyze(&input, report.as_deref(), cross_check),
        Command::Verify {
            theorem,
            n,
            samples,
            seed,
            report,
        } => {
            let id: TheoremId = theorem.parse()?;
            let verdict = verify_theorem(id, n, samples, seed)?;
            emit(&verdict, report.as_deref())?;
            if verdict.reproduced() {
                Ok(())
            } else {
                Err(Failure {
                    code: 2,
                    message: format!(
                        "theorem {id} not reproduced at n = {n}: {} mismatch(es)",
                        verdict.mismatches.len()
                    ),
                })
            }
        }
        Command::Census {
            family,
            n,
            samples,
            seed,
            report,
        } => emit(&census(&family, n, samples, seed)?, report.as_deref()),
        Command::Catalan { p, n, identity } => cmd_catalan(p, n, identity),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
