//! Monte Carlo site percolation on the triangular lattice, as an empirical
//! check of the crossing formulas.
//!
//! Each trial draws its own ChaCha8 stream, keyed by the run seed and the
//! trial index, and the per-trial outcomes are reduced with integer counts, so
//! the aggregates do not depend on how trials are scheduled across threads.

mod lattice;
mod observe;
mod unionfind;

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use lattice::{Boundary, Layout, MAX_SITES};
pub use observe::{flood_fill_labels, same_partition, Configuration, TrialOutcome, Workspace};
pub use unionfind::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Geometry {
    /// Width over height `aspect`; crossing between the vertical sides.
    Rectangle { aspect: f64 },
    /// Side `BC` split at `w = B + t (C - B)`.
    EquilateralTriangle { t: f64 },
    /// Base `B'C'` split at `w = B' + t (C' - B')`, edges at the apex identified.
    IsoscelesSchramm { t: f64 },
}

impl Geometry {
    pub fn observables(&self) -> &'static [Observable] {
        match self {
            Geometry::IsoscelesSchramm { .. } => &[Observable::Psurr],
            _ => &[Observable::Ph, Observable::Phv, Observable::Nh],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    #[default]
    TriangularSite,
    /// Bond percolation on the square lattice (rectangles only).
    SquareBond,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Observable {
    #[serde(rename = "P_h")]
    Ph,
    #[serde(rename = "P_hv")]
    Phv,
    #[serde(rename = "N_h")]
    Nh,
    #[serde(rename = "P_surr")]
    Psurr,
}

impl Observable {
    pub fn name(self) -> &'static str {
        match self {
            Observable::Ph => "P_h",
            Observable::Phv => "P_hv",
            Observable::Nh => "N_h",
            Observable::Psurr => "P_surr",
        }
    }

    fn value(self, o: &TrialOutcome) -> u64 {
        match self {
            Observable::Ph => o.horizontal as u64,
            Observable::Phv => o.four_sides as u64,
            Observable::Nh => o.crossing_clusters as u64,
            Observable::Psurr => o.surrounded as u64,
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Observable::Ph, Observable::Phv, Observable::Nh, Observable::Psurr]
            .into_iter()
            .find(|o| o.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown observable {s:?}")))
    }
}

fn half() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeRun {
    pub geometry: Geometry,
    pub side_sites: usize,
    #[serde(default = "half")]
    pub occupation_p: f64,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub lattice: LatticeKind,
}

impl LatticeRun {
    pub fn new(geometry: Geometry, side_sites: usize, trials: u64, seed: u64) -> Self {
        LatticeRun {
            geometry,
            side_sites,
            occupation_p: 0.5,
            trials,
            seed,
            lattice: LatticeKind::TriangularSite,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.occupation_p > 0.0 && self.occupation_p < 1.0) {
            return bad(format!("occupation_p = {} must lie in (0, 1)", self.occupation_p));
        }
        if self.side_sites < 8 {
            return bad(format!("side_sites = {} must be at least 8", self.side_sites));
        }
        if self.trials == 0 {
            return bad("trials must be positive".into());
        }
        match self.geometry {
            Geometry::Rectangle { aspect } if !(aspect > 0.0 && aspect.is_finite()) => {
                bad(format!("aspect = {aspect} must be positive and finite"))
            }
            Geometry::EquilateralTriangle { t } | Geometry::IsoscelesSchramm { t } if !(t > 0.0 && t < 1.0) => {
                bad(format!("t = {t} must lie in (0, 1)"))
            }
            Geometry::EquilateralTriangle { .. } | Geometry::IsoscelesSchramm { .. }
                if self.lattice == LatticeKind::SquareBond =>
            {
                bad("square-lattice bond percolation supports only the rectangle".into())
            }
            _ => Ok(()),
        }
    }

    pub fn layout(&self) -> Result<Layout> {
        self.validate()?;
        Layout::new(self.geometry, self.side_sites, self.lattice)
    }
}

/// Sample mean of an observable with its standard error `s / sqrt(trials)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingEstimate {
    pub observable: Observable,
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
}

impl CrossingEstimate {
    fn from_sums(observable: Observable, sum: u64, sum_sq: u64, trials: u64) -> Self {
        let n = trials as f64;
        let mean = sum as f64 / n;
        let var = if trials > 1 {
            ((sum_sq as f64 - n * mean * mean) / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        CrossingEstimate {
            observable,
            mean,
            stderr: (var / n).sqrt(),
            trials,
        }
    }

    /// True when `|mean - target| <= sigmas * stderr + cushion`.
    pub fn agrees_with(&self, target: f64, sigmas: f64, cushion: f64) -> bool {
        (self.mean - target).abs() <= sigmas * self.stderr + cushion
    }
}

fn threshold(p: f64) -> u64 {
    (p * 4_294_967_296.0) as u64
}

/// The configuration of trial `trial`: one 32-bit draw per site (or bond),
/// open when below `p 2^32`. Wired boundary sites are open regardless.
pub fn sample(layout: &Layout, p: f64, seed: u64, trial: u64) -> Configuration {
    let mut config = Configuration::all_closed(layout);
    sample_into(layout, threshold(p), seed, trial, &mut config);
    config
}

fn sample_into(layout: &Layout, cut: u64, seed: u64, trial: u64, config: &mut Configuration) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let draws = match config.bonds.as_mut() {
        Some(bonds) => bonds,
        None => &mut config.sites,
    };
    for d in draws.iter_mut() {
        *d = u64::from(rng.next_u32()) < cut;
    }
    if let Boundary::Surround { wired, .. } = layout.boundary() {
        for &s in wired {
            config.sites[s as usize] = true;
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    sums: [u64; 4],
    squares: [u64; 4],
}

const ORDER: [Observable; 4] = [Observable::Ph, Observable::Phv, Observable::Nh, Observable::Psurr];

impl Tally {
    fn add(mut self, o: &TrialOutcome) -> Self {
        for (k, obs) in ORDER.iter().enumerate() {
            let v = obs.value(o);
            self.sums[k] += v;
            self.squares[k] += v * v;
        }
        self
    }

    fn merge(mut self, other: Tally) -> Self {
        for k in 0..4 {
            self.sums[k] += other.sums[k];
            self.squares[k] += other.squares[k];
        }
        self
    }
}

/// Outcome of trial `trial`, for inspection and for the property suites.
pub fn trial_outcome(config: &LatticeRun, layout: &Layout, trial: u64) -> TrialOutcome {
    let c = sample(layout, config.occupation_p, config.seed, trial);
    Workspace::new().observe(layout, &c)
}

fn tally(config: &LatticeRun, layout: &Layout) -> Tally {
    let cut = threshold(config.occupation_p);
    (0..config.trials)
        .into_par_iter()
        .fold(
            || (Workspace::new(), Configuration::all_closed(layout), Tally::default()),
            |(mut ws, mut c, t), trial| {
                sample_into(layout, cut, config.seed, trial, &mut c);
                let o = ws.observe(layout, &c);
                (ws, c, t.add(&o))
            },
        )
        .map(|(_, _, t)| t)
        .reduce(Tally::default, Tally::merge)
}

fn estimates(config: &LatticeRun, t: Tally) -> Vec<CrossingEstimate> {
    config
        .geometry
        .observables()
        .iter()
        .map(|&obs| {
            let k = ORDER.iter().position(|&o| o == obs).unwrap_or(0);
            CrossingEstimate::from_sums(obs, t.sums[k], t.squares[k], config.trials)
        })
        .collect()
}

/// Estimates of every observable the geometry supports, on the global pool.
pub fn run(config: &LatticeRun) -> Result<Vec<CrossingEstimate>> {
    let layout = config.layout()?;
    Ok(estimates(config, tally(config, &layout)))
}

/// As [`run`], on a dedicated pool of `workers` threads.
pub fn run_with_workers(config: &LatticeRun, workers: usize) -> Result<Vec<CrossingEstimate>> {
    let layout = config.layout()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let t = pool.install(|| tally(config, &layout));
    Ok(estimates(config, t))
}

/// The estimate of one observable.
pub fn estimate(config: &LatticeRun, observable: Observable) -> Result<CrossingEstimate> {
    run(config)?
        .into_iter()
        .find(|e| e.observable == observable)
        .ok_or_else(|| Error::Config(format!("{observable} is not measured in this geometry")))
}

/// The continuum value the estimate of `observable` converges to as the
/// lattice is refined.
pub fn continuum_value(geometry: &Geometry, observable: Observable) -> Result<f64> {
    use crate::conformal::{IsoscelesDomain, TriangleDomain};
    use crate::crossing::{aspect_ratio_to_z, CrossingFunction};
    use crate::elliptic::EquianharmonicContext;

    let f = match observable {
        Observable::Ph => CrossingFunction::Ph,
        Observable::Phv => CrossingFunction::Phv,
        Observable::Nh => CrossingFunction::Nh,
        Observable::Psurr => CrossingFunction::Psurr,
    };
    let unsupported = || Err(Error::Config(format!("{observable} is not measured in {geometry:?}")));
    if !geometry.observables().contains(&observable) {
        return unsupported();
    }
    match *geometry {
        Geometry::Rectangle { aspect } => f.at_z(aspect_ratio_to_z(aspect)?),
        Geometry::EquilateralTriangle { t } => {
            let ctx = EquianharmonicContext::new();
            f.at_w(&ctx, TriangleDomain::new(&ctx).point_on_bc(t))
        }
        Geometry::IsoscelesSchramm { t } => {
            let ctx = EquianharmonicContext::new();
            f.at_w(&ctx, IsoscelesDomain::new(&ctx).point_on_base(t))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continuum_values() {
        let v = |g, o| continuum_value(&g, o).unwrap();
        assert!((v(Geometry::Rectangle { aspect: 1.0 }, Observable::Ph) - 0.5).abs() < 1e-12);
        assert!((v(Geometry::Rectangle { aspect: 1.0 }, Observable::Phv) - 0.322_120_455_283_302_8).abs() < 1e-11);
        assert!((v(Geometry::EquilateralTriangle { t: 0.25 }, Observable::Ph) - 0.25).abs() < 1e-10);
        assert!((v(Geometry::IsoscelesSchramm { t: 0.5 }, Observable::Psurr) - 0.5).abs() < 1e-10);
        assert!(continuum_value(&Geometry::IsoscelesSchramm { t: 0.5 }, Observable::Ph).is_err());
    }

    fn rect(side: usize) -> Layout {
        Layout::new(Geometry::Rectangle { aspect: 1.0 }, side, LatticeKind::TriangularSite).unwrap()
    }

    fn observe(layout: &Layout, c: &Configuration) -> TrialOutcome {
        Workspace::new().observe(layout, c)
    }

    #[test]
    fn extreme_configurations() {
        for layout in [
            rect(8),
            Layout::new(Geometry::EquilateralTriangle { t: 0.5 }, 8, LatticeKind::TriangularSite).unwrap(),
            Layout::new(Geometry::Rectangle { aspect: 1.0 }, 8, LatticeKind::SquareBond).unwrap(),
        ] {
            let open = observe(&layout, &Configuration::all_open(&layout));
            assert!(open.horizontal && open.four_sides);
            assert_eq!(open.crossing_clusters, 1);
            let closed = observe(&layout, &Configuration::all_closed(&layout));
            assert!(!closed.horizontal && !closed.four_sides);
            assert_eq!(closed.crossing_clusters, 0);
        }
    }

    #[test]
    fn single_path_crosses() {
        // L = 4: one open row crosses; the same row with a gap does not
        let layout = Layout::new(Geometry::Rectangle { aspect: 1.0 }, 4, LatticeKind::TriangularSite).unwrap();
        let mut c = Configuration::all_closed(&layout);
        for (k, &(_, j)) in layout.coords().iter().enumerate() {
            c.sites[k] = j == 1;
        }
        let o = observe(&layout, &c);
        assert!(o.horizontal);
        assert!(!o.four_sides);
        assert_eq!(o.crossing_clusters, 1);
        let gap = layout.site_index((1, 1)).unwrap();
        c.sites[gap as usize] = false;
        assert!(!observe(&layout, &c).horizontal);
    }

    #[test]
    fn three_sided_cluster_is_not_four_sided() {
        // bottom row plus the left and right columns: touches three sides only
        let layout = rect(8);
        let Boundary::Crossing { sides } = layout.boundary() else { panic!() };
        let mut c = Configuration::all_closed(&layout);
        for s in sides[0].iter().chain(&sides[1]).chain(&sides[2]) {
            c.sites[*s as usize] = true;
        }
        for &s in &sides[3] {
            c.sites[s as usize] = false;
        }
        let o = observe(&layout, &c);
        assert!(o.horizontal);
        assert!(!o.four_sides);
        assert_eq!(flood_fill_labels(&layout, &c).iter().flatten().max(), Some(&0));
    }

    #[test]
    fn two_lanes_count_twice() {
        let layout = Layout::new(Geometry::Rectangle { aspect: 1.0 }, 6, LatticeKind::TriangularSite).unwrap();
        let mut c = Configuration::all_closed(&layout);
        for (k, &(_, j)) in layout.coords().iter().enumerate() {
            c.sites[k] = j == 1 || j == 4;
        }
        let o = observe(&layout, &c);
        assert_eq!(o.crossing_clusters, 2);
        let labels = flood_fill_labels(&layout, &c);
        assert_eq!(labels.iter().flatten().max(), Some(&1));
    }

    #[test]
    fn surround_extremes() {
        let layout = Layout::new(Geometry::IsoscelesSchramm { t: 0.5 }, 16, LatticeKind::TriangularSite).unwrap();
        let Boundary::Surround { wired, .. } = layout.boundary() else { panic!() };
        assert!(observe(&layout, &Configuration::all_open(&layout)).surrounded);
        let mut c = Configuration::all_closed(&layout);
        for &s in wired {
            c.sites[s as usize] = true;
        }
        assert!(!observe(&layout, &c).surrounded);
        // an open double ring around the apex, joined to the wired arc along
        // the seam, surrounds it
        for (k, &(i, j)) in layout.coords().iter().enumerate() {
            if i + 2 * j == 5 || i + 2 * j == 6 || (j == 0 && i >= 6) {
                c.sites[k] = true;
            }
        }
        assert!(observe(&layout, &c).surrounded);
    }

    #[test]
    fn union_find_matches_flood_fill() {
        let layout = rect(16);
        let mut ws = Workspace::new();
        for trial in 0..20 {
            let c = sample(&layout, 0.5, 11, trial);
            assert!(same_partition(&ws.cluster_labels(&layout, &c), &flood_fill_labels(&layout, &c)));
        }
    }

    #[test]
    fn sampling_is_keyed_by_seed_and_trial() {
        let layout = rect(16);
        assert_eq!(sample(&layout, 0.5, 3, 7), sample(&layout, 0.5, 3, 7));
        assert_ne!(sample(&layout, 0.5, 3, 7), sample(&layout, 0.5, 3, 8));
        assert_ne!(sample(&layout, 0.5, 3, 7), sample(&layout, 0.5, 4, 7));
        let open = sample(&layout, 0.5, 1, 0).sites.iter().filter(|&&x| x).count();
        let frac = open as f64 / layout.sites() as f64;
        assert!((frac - 0.5).abs() < 0.05, "{frac}");
    }

    #[test]
    fn config_validation() {
        let ok = LatticeRun::new(Geometry::Rectangle { aspect: 1.0 }, 16, 10, 1);
        assert!(ok.validate().is_ok());
        let mut bad = ok.clone();
        bad.occupation_p = 1.0;
        assert!(bad.validate().is_err());
        let mut bad = ok.clone();
        bad.side_sites = 7;
        assert!(bad.validate().is_err());
        let mut bad = ok.clone();
        bad.trials = 0;
        assert!(bad.validate().is_err());
        let mut bad = ok.clone();
        bad.geometry = Geometry::EquilateralTriangle { t: 1.0 };
        assert!(bad.validate().is_err());
        let mut bad = ok.clone();
        bad.geometry = Geometry::IsoscelesSchramm { t: 0.5 };
        bad.lattice = LatticeKind::SquareBond;
        assert!(bad.validate().is_err());
        assert!(run(&bad).is_err());
    }

    #[test]
    fn config_serde() {
        let json = r#"{"geometry":{"kind":"equilateral_triangle","t":0.25},"side_sites":32,"trials":100,"seed":9}"#;
        let run: LatticeRun = serde_json::from_str(json).unwrap();
        assert_eq!(run.occupation_p, 0.5);
        assert_eq!(run.lattice, LatticeKind::TriangularSite);
        assert_eq!(run.geometry, Geometry::EquilateralTriangle { t: 0.25 });
        let back: LatticeRun = serde_json::from_str(&serde_json::to_string(&run).unwrap()).unwrap();
        assert_eq!(back, run);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let cfg = LatticeRun::new(Geometry::Rectangle { aspect: 1.0 }, 16, 500, 5);
        let one = run_with_workers(&cfg, 1).unwrap();
        assert_eq!(one, run_with_workers(&cfg, 3).unwrap());
        assert_eq!(one.len(), 3);
        assert_eq!(trial_outcome(&cfg, &cfg.layout().unwrap(), 0), trial_outcome(&cfg, &cfg.layout().unwrap(), 0));
    }

    #[test]
    fn small_run_is_plausible() {
        let cfg = LatticeRun::new(Geometry::Rectangle { aspect: 1.0 }, 32, 2000, 1);
        let ph = estimate(&cfg, Observable::Ph).unwrap();
        assert!(ph.agrees_with(0.5, 4.0, 0.03), "{ph:?}");
        let nh = estimate(&cfg, Observable::Nh).unwrap();
        assert!(nh.mean >= ph.mean);
        assert!(estimate(&cfg, Observable::Psurr).is_err());
    }
}
