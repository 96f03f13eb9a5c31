//! `crossing`: evaluate, verify, tabulate and simulate percolation crossing
//! formulas.

mod commands;
mod output;
mod simulate;
mod symbols;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "crossing", version, about = "Crossing formulas for critical percolation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a crossing function at one point.
    Eval(commands::EvalArgs),
    /// Run an invariant suite; exit status 1 if any check fails.
    Verify(commands::VerifyArgs),
    /// Tabulate a crossing function over a range.
    Table(commands::TableArgs),
    /// Monte Carlo estimates compared with the formula values.
    Simulate(simulate::SimulateArgs),
    /// Render, shift, pull back and compare Riemann P-symbols.
    Psymbol(symbols::PsymbolArgs),
}

/// Exactly one coordinate for the point(s) of evaluation.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct CoordinateArgs {
    /// Half-plane coordinate.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    /// Rectangle aspect ratio (width over height).
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    /// Fraction `t` along the side, `w = B + t (C - B)` (the base `B'C'` for P_surr).
    #[arg(long = "w-fraction", visible_alias = "t", allow_hyphen_values = true)]
    w_fraction: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Output sink: a file when `path` is given, stdout otherwise.
pub fn sink(path: Option<&PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::BufWriter::new(std::io::stdout().lock())),
    })
}

/// What a command reports when it completes without an error.
pub enum Outcome {
    Success,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => commands::eval(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Table(a) => commands::table(&a),
        Command::Simulate(a) => simulate::simulate(&a),
        Command::Psymbol(a) => symbols::psymbol(&a),
    };
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
