use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use crossing_core::percsim::{continuum_value, run, run_with_workers};
use crossing_core::{Geometry, LatticeKind, LatticeRun, Observable};
use serde_json::Value;

use crate::output::{num, sig17, OutputRecord, Provenance};
use crate::{sink, Format};

pub const SEED_VAR: &str = "CROSSING_SEED";
const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryName {
    Rectangle,
    Triangle,
    Schramm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeName {
    TriangularSite,
    SquareBond,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// JSON file with the run fields; flags given on the command line win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    geometry: Option<GeometryName>,
    /// Rectangle aspect ratio (width over height).
    #[arg(long)]
    r: Option<f64>,
    /// Split point on the side (triangle) or base (schramm).
    #[arg(long)]
    t: Option<f64>,
    /// Sites along the side or base.
    #[arg(long = "L", visible_alias = "side")]
    side: Option<usize>,
    #[arg(long)]
    trials: Option<u64>,
    /// Defaults to $CROSSING_SEED, then 42.
    #[arg(long)]
    seed: Option<u64>,
    /// Occupation probability.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, value_enum)]
    lattice: Option<LatticeName>,
    /// Report only these observables (repeatable).
    #[arg(long = "observable")]
    observables: Vec<String>,
    /// Worker threads; all cores when omitted. Results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// Config file contents: the run fields plus optional `observables` and `workers`.
#[derive(Debug, Default)]
struct FileConfig {
    run: Option<Value>,
    observables: Vec<Observable>,
    workers: Option<usize>,
}

fn read_config(path: &PathBuf) -> anyhow::Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let obj = value
        .as_object_mut()
        .with_context(|| format!("{} must hold a JSON object", path.display()))?;
    let observables = match obj.remove("observables") {
        Some(v) => serde_json::from_value(v).context("observables")?,
        None => Vec::new(),
    };
    let workers = match obj.remove("workers") {
        Some(v) => Some(serde_json::from_value(v).context("workers")?),
        None => None,
    };
    Ok(FileConfig {
        run: Some(value),
        observables,
        workers,
    })
}

fn default_seed() -> anyhow::Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().with_context(|| format!("{SEED_VAR}={s:?} is not a seed")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// The run described by the config file (if any) with the flags applied on top.
fn resolve(args: &SimulateArgs) -> anyhow::Result<(LatticeRun, Vec<Observable>, Option<usize>)> {
    let file = match &args.config {
        Some(p) => read_config(p)?,
        None => FileConfig::default(),
    };
    let base: Option<LatticeRun> = match file.run {
        Some(mut v) => {
            let obj = v.as_object_mut().expect("checked object");
            if !obj.contains_key("seed") {
                obj.insert("seed".into(), default_seed()?.into());
            }
            Some(serde_json::from_value(v).context("config file does not describe a lattice run")?)
        }
        None => None,
    };
    let geometry = match (args.geometry, base.as_ref().map(|b| b.geometry)) {
        (Some(name), prior) => {
            let prior_t = match prior {
                Some(Geometry::EquilateralTriangle { t } | Geometry::IsoscelesSchramm { t }) => Some(t),
                _ => None,
            };
            let prior_r = match prior {
                Some(Geometry::Rectangle { aspect }) => Some(aspect),
                _ => None,
            };
            match name {
                GeometryName::Rectangle => Geometry::Rectangle {
                    aspect: args.r.or(prior_r).unwrap_or(1.0),
                },
                GeometryName::Triangle => Geometry::EquilateralTriangle {
                    t: args.t.or(prior_t).unwrap_or(0.5),
                },
                GeometryName::Schramm => Geometry::IsoscelesSchramm {
                    t: args.t.or(prior_t).unwrap_or(0.5),
                },
            }
        }
        (None, Some(g)) => match g {
            Geometry::Rectangle { aspect } => Geometry::Rectangle {
                aspect: args.r.unwrap_or(aspect),
            },
            Geometry::EquilateralTriangle { t } => Geometry::EquilateralTriangle { t: args.t.unwrap_or(t) },
            Geometry::IsoscelesSchramm { t } => Geometry::IsoscelesSchramm { t: args.t.unwrap_or(t) },
        },
        (None, None) => bail!("give --geometry or --config"),
    };
    let mut run = match base {
        Some(b) => LatticeRun { geometry, ..b },
        None => LatticeRun::new(geometry, 128, 10_000, default_seed()?),
    };
    if let Some(v) = args.side {
        run.side_sites = v;
    }
    if let Some(v) = args.trials {
        run.trials = v;
    }
    if let Some(v) = args.seed {
        run.seed = v;
    }
    if let Some(v) = args.p {
        run.occupation_p = v;
    }
    if let Some(v) = args.lattice {
        run.lattice = match v {
            LatticeName::TriangularSite => LatticeKind::TriangularSite,
            LatticeName::SquareBond => LatticeKind::SquareBond,
        };
    }
    run.validate()?;
    let mut observables = if args.observables.is_empty() {
        file.observables
    } else {
        args.observables
            .iter()
            .map(|s| s.parse::<Observable>())
            .collect::<Result<Vec<_>, _>>()?
    };
    let measured = run.geometry.observables();
    if let Some(o) = observables.iter().find(|o| !measured.contains(o)) {
        bail!("{o} is not measured in this geometry; choose from {measured:?}");
    }
    if observables.is_empty() {
        observables = measured.to_vec();
    }
    Ok((run, observables, args.workers.or(file.workers)))
}

fn geometry_inputs(record: OutputRecord, run: &LatticeRun) -> OutputRecord {
    let record = match run.geometry {
        Geometry::Rectangle { aspect } => record.input("geometry", "rectangle").input("r", num(aspect)),
        Geometry::EquilateralTriangle { t } => record.input("geometry", "triangle").input("t", num(t)),
        Geometry::IsoscelesSchramm { t } => record.input("geometry", "schramm").input("t", num(t)),
    };
    let lattice = match run.lattice {
        LatticeKind::TriangularSite => "triangular-site",
        LatticeKind::SquareBond => "square-bond",
    };
    record
        .input("L", run.side_sites)
        .input("trials", run.trials)
        .input("seed", run.seed)
        .input("p", num(run.occupation_p))
        .input("lattice", lattice)
}

pub fn simulate(args: &SimulateArgs) -> anyhow::Result<crate::Outcome> {
    let (run_cfg, observables, workers) = resolve(args)?;
    let estimates = match workers {
        Some(n) => run_with_workers(&run_cfg, n)?,
        None => run(&run_cfg)?,
    };
    let mut out = sink(args.output.as_ref())?;
    if args.format == Format::Csv {
        writeln!(out, "observable,mean,stderr,trials,formula,z_score")?;
    }
    for e in estimates.iter().filter(|e| observables.contains(&e.observable)) {
        let formula = continuum_value(&run_cfg.geometry, e.observable)?;
        let z_score = (e.mean - formula) / e.stderr;
        match args.format {
            Format::Csv => writeln!(
                out,
                "{},{},{},{},{},{}",
                e.observable,
                sig17(e.mean),
                sig17(e.stderr),
                e.trials,
                sig17(formula),
                if z_score.is_finite() { sig17(z_score) } else { String::new() }
            )?,
            Format::Json | Format::Text => {
                let estimate = geometry_inputs(OutputRecord::new("simulate", Provenance::Simulation), &run_cfg)
                    .output("observable", e.observable.name())
                    .output("mean", num(e.mean))
                    .output("stderr", num(e.stderr))
                    .output("trials", e.trials);
                let comparison = geometry_inputs(OutputRecord::new("simulate", Provenance::Formula), &run_cfg)
                    .output("observable", e.observable.name())
                    .output("formula", num(formula))
                    .output("difference", num(e.mean - formula))
                    .output("z_score", num(z_score));
                writeln!(out, "{}", estimate.to_line())?;
                writeln!(out, "{}", comparison.to_line())?;
            }
        }
    }
    out.flush()?;
    Ok(crate::Outcome::Success)
}
