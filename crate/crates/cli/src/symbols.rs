use anyhow::{anyhow, Context};
use clap::{Args, Subcommand};
use crossing_core::psymbol::{catalog, equals, hyper_psymbol_exact, pullback, shift_by_prefactor, Exponent, Point};
use crossing_core::{BranchMap, PSymbol};

use crate::output::{OutputRecord, Provenance};
use crate::{Format, Outcome};

#[derive(Debug, Args)]
#[command(after_help = "SYMBOL: `0: 0, 1/3 | 1: 0, 1/3 | inf: 0, 1/3; z` or a catalog entry \
    @cardy, @watts, @fifth-order, @surround, @whipple-left, @whipple-right.\n\
    MAP: `0 -> 0 x2, -i -> 1, i -> 1, inf -> inf x2; z` or @schwarz, @quadratic, \
    @surround, @whipple, @whipple2.")]
pub struct PsymbolArgs {
    #[command(subcommand)]
    action: Action,
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Action {
    /// Print a tableau.
    Render {
        #[arg(allow_hyphen_values = true)]
        symbol: String,
    },
    /// Pull a tableau back along a branched map.
    Pullback {
        #[arg(allow_hyphen_values = true)]
        symbol: String,
        #[arg(long, allow_hyphen_values = true)]
        map: String,
    },
    /// Multiply by `(x - point)^by` (`x^by` at 0), compensating at infinity.
    Shift {
        #[arg(allow_hyphen_values = true)]
        symbol: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// The tableau of a generalized hypergeometric function.
    Hyper {
        /// Comma-separated numerator parameters (affine in a, b, c).
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        /// Comma-separated denominator parameters.
        #[arg(long, allow_hyphen_values = true)]
        den: String,
    },
    /// Compare two tableaux up to ordinary columns; exit status 1 if they differ.
    Equals {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
}

fn symbol(text: &str) -> anyhow::Result<PSymbol> {
    Ok(match text.strip_prefix('@') {
        Some("cardy") => catalog::cardy(),
        Some("watts") => catalog::watts(),
        Some("fifth-order") => catalog::fifth_order(),
        Some("surround") => catalog::surround(),
        Some("whipple-left") => catalog::whipple_left(),
        Some("whipple-right") => catalog::whipple_right(),
        Some(other) => return Err(anyhow!("no catalog symbol @{other}")),
        None => text.parse().with_context(|| format!("reading symbol {text:?}"))?,
    })
}

fn branch_map(text: &str) -> anyhow::Result<BranchMap> {
    Ok(match text.strip_prefix('@') {
        Some("schwarz") => catalog::schwarz_map(),
        Some("quadratic") => catalog::quadratic_map(),
        Some("surround") => catalog::surround_map(),
        Some("whipple") => catalog::whipple_map(),
        Some("whipple2") => catalog::whipple2_map(),
        Some(other) => return Err(anyhow!("no catalog map @{other}")),
        None => text.parse().with_context(|| format!("reading map {text:?}"))?,
    })
}

fn exponents(list: &str) -> anyhow::Result<Vec<Exponent>> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',')
        .map(|s| s.trim().parse::<Exponent>().with_context(|| format!("reading exponent {s:?}")))
        .collect()
}

fn emit(format: Format, action: &str, result: &PSymbol, inputs: &[(&str, &str)]) {
    match format {
        Format::Text | Format::Csv => println!("{}", result.render()),
        Format::Json => {
            let mut r = OutputRecord::new("psymbol", Provenance::IdentityCheck).input("action", action);
            for (k, v) in inputs {
                r = r.input(k, *v);
            }
            let r = r
                .output("symbol", result.to_line())
                .output("trivial", result.is_trivial());
            println!("{}", r.to_line());
        }
    }
}

pub fn psymbol(args: &PsymbolArgs) -> anyhow::Result<Outcome> {
    match &args.action {
        Action::Render { symbol: s } => {
            emit(args.format, "render", &symbol(s)?, &[("symbol", s)]);
        }
        Action::Pullback { symbol: s, map } => {
            let result = pullback(&symbol(s)?, &branch_map(map)?)?;
            emit(args.format, "pullback", &result, &[("symbol", s), ("map", map)]);
        }
        Action::Shift { symbol: s, at, by } => {
            let point: Point = at.parse().with_context(|| format!("reading point {at:?}"))?;
            let c: Exponent = by.parse().with_context(|| format!("reading exponent {by:?}"))?;
            let result = shift_by_prefactor(&symbol(s)?, &point, c)?;
            emit(args.format, "shift", &result, &[("symbol", s), ("at", at), ("by", by)]);
        }
        Action::Hyper { num, den } => {
            let result = hyper_psymbol_exact(&exponents(num)?, &exponents(den)?)?;
            emit(args.format, "hyper", &result, &[("num", num), ("den", den)]);
        }
        Action::Equals { left, right } => {
            let same = equals(&symbol(left)?, &symbol(right)?);
            match args.format {
                Format::Json => {
                    let r = OutputRecord::new("psymbol", Provenance::IdentityCheck)
                        .input("action", "equals")
                        .input("left", left.as_str())
                        .input("right", right.as_str())
                        .output("equal", same);
                    println!("{}", r.to_line());
                }
                _ => println!("{}", if same { "equal" } else { "different" }),
            }
            if !same {
                return Ok(Outcome::Failed);
            }
        }
    }
    Ok(Outcome::Success)
}
