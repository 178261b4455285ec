//! Command-line surface and dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{InputError, OutputFormat, RunConfig, DEFAULT_TOL};
use crate::plot::emit_plot_csv;
use crate::report::{exit, RunReport};
use crate::run::{check, parse_case_file, run, run_batch, verify};

pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Certify hypotheses and locate witness points of polynomial mean value
/// theorems in exact rational arithmetic.
///
/// Negative numbers are accepted directly after the flag that takes them,
/// e.g. `--interval -2 2` or `--f -x^2`. Put `--` before positional-looking
/// values elsewhere.
#[derive(Debug, Parser)]
#[command(name = "mvt", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Check hypotheses and find every witness in (a, b).
    Find(CaseArgs),
    /// Check hypotheses only.
    Check(CaseArgs),
    /// Evaluate the theorem's equation at a claimed witness.
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, allow_hyphen_values = true, value_name = "RATIONAL")]
        xi: String,
    },
    /// Print CSV samples `x,aux,aux_prime` of the auxiliary function.
    Plot {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Run `find` on every line of a JSON-lines case file; prints one JSON report per line.
    Batch {
        #[arg(long)]
        cases: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the JSON schema of the report.
    Schema,
}

#[derive(Debug, Args)]
pub struct CaseArgs {
    /// lagrange, integral-mean, flett, egmvt or egfmvt.
    #[arg(long)]
    pub theorem: String,
    /// The function f (for integral-mean, the integrand).
    #[arg(long = "f", allow_hyphen_values = true, value_name = "EXPR")]
    pub f: String,
    /// A comparison function; repeat for g1, g2, ...
    #[arg(long = "g", allow_hyphen_values = true, value_name = "EXPR")]
    pub g: Vec<String>,
    /// Endpoints a < b as integers or p/q, e.g. `--interval -2 5/2`.
    #[arg(
        long,
        num_args = 2,
        value_names = ["A", "B"],
        allow_hyphen_values = true,
        required = true
    )]
    pub interval: Vec<String>,
    /// Derivative order for egmvt.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Bracket width for irrational witnesses, as a rational.
    #[arg(long, default_value = DEFAULT_TOL, allow_hyphen_values = true)]
    pub tol: String,
    /// Refuse to search when a hypothesis fails.
    #[arg(long)]
    pub strict: bool,
    /// JSON report on stdout.
    #[arg(long)]
    pub json: bool,
}

impl CaseArgs {
    pub fn to_config(&self, plot_samples: Option<usize>) -> RunConfig {
        RunConfig {
            theorem: self.theorem.clone(),
            f: self.f.clone(),
            g: self.g.clone(),
            a: self.interval[0].clone(),
            b: self.interval[1].clone(),
            k: self.k,
            tol: self.tol.clone(),
            strict: self.strict,
            output: if self.json {
                OutputFormat::Json
            } else {
                OutputFormat::Text
            },
            plot_samples,
        }
    }
}

fn emit(report: &RunReport, format: OutputFormat, out: &mut dyn Write) -> i32 {
    let text = match format {
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Text => report.to_text(),
    };
    let _ = out.write_all(text.as_bytes());
    report.exit_status
}

fn fail(err: &dyn std::fmt::Display, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "mvt: error: {err}");
    exit::INPUT
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit status.
pub fn execute<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return exit::OK;
        }
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return exit::INPUT;
        }
    };
    dispatch(cli.command, stdout, stderr)
}

fn dispatch(cmd: Cmd, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let finish = |r: Result<RunReport, InputError>,
                  stdout: &mut dyn Write,
                  stderr: &mut dyn Write| {
        match r {
            Ok(report) => emit(&report, report.config.output, stdout),
            Err(e) => fail(&e, stderr),
        }
    };
    match cmd {
        Cmd::Find(case) => finish(run(&case.to_config(None)), stdout, stderr),
        Cmd::Check(case) => finish(check(&case.to_config(None)), stdout, stderr),
        Cmd::Verify { case, xi } => finish(verify(&case.to_config(None), &xi), stdout, stderr),
        Cmd::Plot { case, samples } => {
            let config = case.to_config(Some(samples));
            let prepared = match config.prepare() {
                Ok(p) => p,
                Err(e) => return fail(&e, stderr),
            };
            match emit_plot_csv(&prepared.case, samples) {
                Ok(csv) => {
                    let _ = stdout.write_all(csv.as_bytes());
                    exit::OK
                }
                Err(e) => {
                    let _ = writeln!(stderr, "mvt: {e}");
                    exit::HYPOTHESES
                }
            }
        }
        Cmd::Batch { cases, jobs } => {
            let text = match std::fs::read_to_string(&cases) {
                Ok(t) => t,
                Err(e) => return fail(&format!("{}: {e}", cases.display()), stderr),
            };
            let configs = match parse_case_file(&text) {
                Ok(c) => c,
                Err(e) => return fail(&e, stderr),
            };
            let mut worst = exit::OK;
            for (i, result) in run_batch(&configs, jobs).into_iter().enumerate() {
                match result {
                    Ok(report) => {
                        let line = serde_json::to_string(&report).expect("report serializes");
                        let _ = writeln!(stdout, "{line}");
                        worst = worst.max(report.exit_status);
                    }
                    Err(e) => {
                        let _ = writeln!(stderr, "mvt: case {}: {e}", i + 1);
                        worst = worst.max(exit::INPUT);
                    }
                }
            }
            worst
        }
        Cmd::Schema => {
            let _ = stdout.write_all(SCHEMA.as_bytes());
            exit::OK
        }
    }
}
