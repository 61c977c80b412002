//! `zetaflow` command-line front end.

mod commands;
mod parse;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::parse::Selection;

#[derive(Parser, Debug)]
#[command(name = "zetaflow", version, about = "Hurwitz zeta zeros: evaluation, scanning, counting and tracking")]
struct Cli {
    /// Base evaluation tolerance; overrides ZETAFLOW_TOL.
    #[arg(long, global = true, value_parser = parse::real, allow_hyphen_values = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate ζ(s, α) or a combination spec at one point.
    Eval(EvalArgs),
    /// Locate all zeros inside a rectangle.
    Scan(ScanArgs),
    /// Compare the scanned zero count with the counting formula.
    Count(CountArgs),
    /// Follow zeros along a parameter flow.
    Track(TrackArgs),
    /// Rank and null space of the prime symmetry matrices.
    Nullspace(NullspaceArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// Hurwitz parameter α.
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// JSON combination spec.
    #[arg(long)]
    pub family_spec: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deriv {
    S,
    Alpha,
    Param,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Point as a+bi.
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub s: zetaflow::Complex64,
    #[command(flatten)]
    pub target: Target,
    /// Print a derivative instead of the value.
    #[arg(long, value_enum)]
    pub deriv: Option<Deriv>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// σ_min,σ_max,t_min,t_max
    #[arg(long, value_parser = |s: &str| parse::real_list(s, Some(4)), allow_hyphen_values = true)]
    pub rect: parse::Reals,
    #[command(flatten)]
    pub target: Target,
    /// Zero CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    pub tmax: f64,
    /// Also emit counts every ΔT = 10 as CSV.
    #[arg(long)]
    pub sweep: bool,
    /// Sweep CSV path; stdout when absent.
    #[arg(long, requires = "sweep")]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyName {
    Hurwitz,
    Psi5o,
    Psie5,
    Psip,
}

#[derive(Args, Debug)]
pub struct TrackArgs {
    #[arg(long, value_enum, conflicts_with = "family_spec", required_unless_present = "family_spec")]
    pub family: Option<FamilyName>,
    /// Track a tagged JSON combination spec along its own flow parameter.
    #[arg(long)]
    pub family_spec: Option<PathBuf>,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    pub from: Option<f64>,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    pub to: Option<f64>,
    /// Full circuits of the flow parameter when --to is absent.
    #[arg(long, default_value_t = 1)]
    pub turns: u32,
    /// 1-based zero indices: all, k or a..b.
    #[arg(long, value_parser = parse::selection, default_value = "all")]
    pub zeros: Selection,
    /// t range of the seed scan, t_min,t_max.
    #[arg(long, value_parser = |s: &str| parse::real_list(s, Some(2)), allow_hyphen_values = true)]
    pub window: Option<parse::Reals>,
    /// Seed zeros from a scan CSV instead of scanning.
    #[arg(long)]
    pub seeds: Option<PathBuf>,
    #[arg(long, value_parser = parse::real, allow_hyphen_values = true)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub p: Option<u32>,
    /// Null-space direction, comma separated.
    #[arg(long = "X", value_parser = |s: &str| parse::real_list(s, None), allow_hyphen_values = true)]
    pub x: Option<parse::Reals>,
    /// Trajectory CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Events JSON path; defaults to the CSV path with an .events.json suffix.
    #[arg(long)]
    pub events: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct NullspaceArgs {
    #[arg(long, conflicts_with = "primes_up_to", required_unless_present = "primes_up_to")]
    pub p: Option<u64>,
    #[arg(long)]
    pub primes_up_to: Option<u64>,
    /// Print the null-space basis vectors.
    #[arg(long)]
    pub basis: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = commands::base_tolerance(cli.tol).and_then(|tol| match cli.command {
        Command::Eval(a) => commands::eval(&a, tol),
        Command::Scan(a) => commands::scan(&a, tol),
        Command::Count(a) => commands::count(&a, tol),
        Command::Track(a) => commands::track(&a, tol),
        Command::Nullspace(a) => commands::nullspace(&a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
