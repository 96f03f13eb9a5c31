use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::Args;
use crossing_core::conformal::{schwarz_r, schwarz_s, IsoscelesDomain, TriangleDomain};
use crossing_core::crossing::aspect_ratio_to_z;
use crossing_core::verify::{run_suite, Suite, VerifyOptions};
use crossing_core::{Complex, CrossingFunction, EquianharmonicContext};
use serde_json::{Map, Value};

use crate::output::{json_line, num, print_lines, sig17, OutputRecord, Provenance};
use crate::{sink, CoordinateArgs, Format, Outcome};

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// P_h, P_hv, P_hbar_v, N_h or P_surr.
    function: String,
    #[command(flatten)]
    at: CoordinateArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// identities, whipple, elliptic, psymbol, ode-residuals or all.
    suite: String,
    /// Points of the z grid for the linear identity.
    #[arg(long, default_value_t = 50)]
    grid: usize,
    /// Random parameter sets per quadratic transformation.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Subdivisions per side of the triangle grid for the elliptic checks.
    #[arg(long, default_value_t = 19)]
    divisions: usize,
    /// Interior points for the conformal round trip.
    #[arg(long, default_value_t = 20)]
    points: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    function: String,
    /// Ranges are `start:stop:step`, both ends included.
    #[command(flatten)]
    over: CoordinateArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn parse_function(s: &str) -> anyhow::Result<CrossingFunction> {
    s.parse().map_err(|_| anyhow!("unknown function {s:?}; expected P_h, P_hv, P_hbar_v, N_h or P_surr"))
}

fn parse_number(s: &str) -> anyhow::Result<f64> {
    s.trim().parse().with_context(|| format!("not a number: {s:?}"))
}

/// `start:stop:step` as an increasing list, both ends included.
pub fn parse_range(s: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts[..] else {
        bail!("range {s:?} is not start:stop:step");
    };
    let (lo, hi, step) = (parse_number(lo)?, parse_number(hi)?, parse_number(step)?);
    if !(step > 0.0) || !(hi >= lo) || !(lo.is_finite() && hi.is_finite()) {
        bail!("range {s:?} needs finite start <= stop and a positive step");
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    if n > 10_000_000 {
        bail!("range {s:?} has too many points");
    }
    // snap to 12 decimals so 0.01 + 2 * 0.01 prints as 0.03
    Ok((0..=n)
        .map(|k| ((lo + k as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Coordinate {
    Z,
    R,
    WFraction,
}

impl Coordinate {
    fn of(args: &CoordinateArgs) -> (Coordinate, &str) {
        match (&args.z, &args.r, &args.w_fraction) {
            (Some(v), _, _) => (Coordinate::Z, v),
            (_, Some(v), _) => (Coordinate::R, v),
            (_, _, Some(v)) => (Coordinate::WFraction, v),
            _ => unreachable!("clap requires one coordinate"),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Coordinate::Z => "z",
            Coordinate::R => "r",
            Coordinate::WFraction => "w_fraction",
        }
    }
}

/// Value at one point plus the conversions used to get there.
struct Evaluation {
    value: f64,
    z: Option<f64>,
    w: Option<Complex>,
}

fn evaluate(ctx: &EquianharmonicContext, f: CrossingFunction, coord: Coordinate, x: f64) -> anyhow::Result<Evaluation> {
    Ok(match coord {
        Coordinate::Z => Evaluation {
            value: f.at_z(x)?,
            z: None,
            w: None,
        },
        Coordinate::R => {
            let z = aspect_ratio_to_z(x)?;
            Evaluation {
                value: f.at_z(z)?,
                z: Some(z),
                w: None,
            }
        }
        Coordinate::WFraction => {
            if !(0.0..=1.0).contains(&x) {
                bail!("w-fraction {x} outside [0, 1]");
            }
            let (w, z) = if f == CrossingFunction::Psurr {
                let w = IsoscelesDomain::new(ctx).point_on_base(x);
                (w, schwarz_r(ctx, w).ok().map(|v| v.re))
            } else {
                let w = TriangleDomain::new(ctx).point_on_bc(x);
                (w, schwarz_s(ctx, w).ok().map(|v| v.re))
            };
            Evaluation {
                value: f.at_w(ctx, w)?,
                z,
                w: Some(w),
            }
        }
    })
}

fn complex_value(w: Complex) -> Value {
    let mut m = Map::new();
    m.insert("re".into(), num(w.re));
    m.insert("im".into(), num(w.im));
    Value::Object(m)
}

pub fn eval(args: &EvalArgs) -> anyhow::Result<Outcome> {
    let f = parse_function(&args.function)?;
    let (coord, text) = Coordinate::of(&args.at);
    let x = parse_number(text)?;
    let ctx = EquianharmonicContext::new();
    let e = evaluate(&ctx, f, coord, x)?;
    let mut record = OutputRecord::new("eval", Provenance::Formula)
        .input("function", f.name())
        .input(coord.name(), num(x))
        .output("value", num(e.value));
    if let Some(w) = e.w {
        record = record.output("w", complex_value(w));
    }
    if let Some(z) = e.z {
        record = record.output("z", num(z));
    }
    println!("{}", record.to_line());
    Ok(Outcome::Success)
}

pub fn table(args: &TableArgs) -> anyhow::Result<Outcome> {
    let f = parse_function(&args.function)?;
    let (coord, text) = Coordinate::of(&args.over);
    let xs = parse_range(text)?;
    let ctx = EquianharmonicContext::new();
    let rows = xs
        .iter()
        .map(|&x| {
            evaluate(&ctx, f, coord, x)
                .map(|e| (x, e.value))
                .with_context(|| format!("{} at {} = {x}", f.name(), coord.name()))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut out = sink(args.output.as_ref())?;
    match args.format {
        Format::Csv | Format::Text => {
            writeln!(out, "{},{}", coord.name(), f.name())?;
            for (x, v) in &rows {
                writeln!(out, "{},{}", sig17(*x), sig17(*v))?;
            }
        }
        Format::Json => {
            for (x, v) in &rows {
                let mut m = Map::new();
                m.insert(coord.name().into(), num(*x));
                m.insert(f.name().into(), num(*v));
                writeln!(out, "{}", json_line(&Value::Object(m)))?;
            }
        }
    }
    out.flush()?;
    Ok(Outcome::Success)
}

pub fn verify(args: &VerifyArgs) -> anyhow::Result<Outcome> {
    let suite: Suite = args
        .suite
        .parse()
        .map_err(|_| anyhow!("unknown suite {:?}; expected identities, whipple, elliptic, psymbol, ode-residuals or all", args.suite))?;
    let opts = VerifyOptions {
        grid: args.grid,
        samples: args.samples,
        seed: args.seed,
        triangle_divisions: args.divisions,
        round_trip_points: args.points,
    };
    let checks = run_suite(suite, &opts);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut out = sink(None)?;
    match args.format {
        Format::Text => {
            for c in &checks {
                let verdict = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{verdict} [{}] {}: {:.3e} <= {:.0e}", c.suite, c.name, c.residual, c.tolerance)?;
                if let Some(d) = &c.detail {
                    writeln!(out, "     {d}")?;
                }
            }
            writeln!(out, "{} checks, {failed} failed", checks.len())?;
        }
        Format::Json | Format::Csv => {
            let records: Vec<OutputRecord> = checks
                .iter()
                .map(|c| {
                    let mut r = OutputRecord::new("verify", Provenance::IdentityCheck)
                        .input("suite", c.suite.name())
                        .input("check", c.name.as_str())
                        .output("residual", num(c.residual))
                        .output("tolerance", num(c.tolerance))
                        .output("passed", c.passed);
                    if let Some(d) = &c.detail {
                        r = r.output("detail", d.as_str());
                    }
                    r
                })
                .collect();
            print_lines(&mut out, &records)?;
            let summary = OutputRecord::new("verify", Provenance::IdentityCheck)
                .input("suite", suite.name())
                .output("checks", checks.len())
                .output("failed", failed)
                .output("passed", failed == 0);
            writeln!(out, "{}", summary.to_line())?;
        }
    }
    out.flush()?;
    Ok(if failed == 0 { Outcome::Success } else { Outcome::Failed })
}
