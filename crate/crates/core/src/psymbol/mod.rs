//! Riemann P-symbols with exact exponents, prefactor shifts and pullbacks
//! along branched covers of the sphere.

pub mod catalog;
mod exponent;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::HyperParams;

pub use exponent::Exponent;

/// A point of the Riemann sphere, or a named point such as `[A]` or `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Finite(Rational64),
    Infinity,
    Named(String),
}

impl Point {
    pub fn int(n: i64) -> Self {
        Point::Finite(Rational64::from_integer(n))
    }

    pub fn named(label: impl Into<String>) -> Self {
        Point::Named(label.into())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(q) => f.pad(&q.to_string()),
            Point::Infinity => f.pad("inf"),
            Point::Named(s) => f.pad(s),
        }
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty point label".into()));
        }
        if ["inf", "infinity", "∞", "oo"].iter().any(|t| s.eq_ignore_ascii_case(t)) {
            return Ok(Point::Infinity);
        }
        if let Ok(q) = s.parse::<Rational64>() {
            return Ok(Point::Finite(q));
        }
        if s.contains(|c: char| c == '|' || c == ':' || c == ',') {
            return Err(Error::Parse(format!("invalid point label {s:?}")));
        }
        Ok(Point::Named(s.to_string()))
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Column {
    pub point: Point,
    pub exponents: Vec<Exponent>,
}

impl Column {
    /// Exponents `0, 1, ..., n-1`: the column of an ordinary point.
    pub fn is_ordinary(&self) -> bool {
        is_ordinary_signature(&self.exponents)
    }
}

fn is_ordinary_signature(exponents: &[Exponent]) -> bool {
    let mut values: Vec<Rational64> = match exponents.iter().map(Exponent::as_constant).collect() {
        Some(v) => v,
        None => return false,
    };
    values.sort();
    values
        .iter()
        .enumerate()
        .all(|(j, v)| *v == Rational64::from_integer(j as i64))
}

fn ordinary_column(point: Point, order: usize) -> Column {
    Column {
        point,
        exponents: (0..order as i64).map(Exponent::int).collect(),
    }
}

/// An exponent tableau: one column of `order` exponents per singular point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PSymbol {
    order: usize,
    variable: String,
    columns: Vec<Column>,
}

impl PSymbol {
    pub fn new(order: usize, variable: impl Into<String>, columns: Vec<Column>) -> Result<Self> {
        if order == 0 {
            return Err(Error::PSymbol("order must be positive".into()));
        }
        for (i, col) in columns.iter().enumerate() {
            if col.exponents.len() != order {
                return Err(Error::PSymbol(format!(
                    "column {} has {} exponents, expected {order}",
                    col.point,
                    col.exponents.len()
                )));
            }
            if columns[..i].iter().any(|c| c.point == col.point) {
                return Err(Error::PSymbol(format!("point {} appears twice", col.point)));
            }
        }
        Ok(PSymbol {
            order,
            variable: variable.into(),
            columns,
        })
    }

    /// Builds a symbol from `(point, exponents)` pairs, inferring the order.
    pub fn from_columns<P, E>(variable: &str, columns: Vec<(P, Vec<E>)>) -> Result<Self>
    where
        P: Into<Point>,
        E: Into<Exponent>,
    {
        let order = columns.first().map_or(0, |c| c.1.len());
        let cols = columns
            .into_iter()
            .map(|(p, e)| Column {
                point: p.into(),
                exponents: e.into_iter().map(Into::into).collect(),
            })
            .collect();
        PSymbol::new(order, variable, cols)
    }

    /// The symbol with no singular points, of the given order.
    pub fn empty(order: usize, variable: impl Into<String>) -> Self {
        PSymbol {
            order: order.max(1),
            variable: variable.into(),
            columns: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column(&self, point: &Point) -> Option<&Column> {
        self.columns.iter().find(|c| &c.point == point)
    }

    pub fn with_variable(mut self, variable: impl Into<String>) -> Self {
        self.variable = variable.into();
        self
    }

    /// Columns whose exponents are not the ordinary signature.
    pub fn singular_columns(&self) -> impl Iterator<Item = &Column> {
        self.columns.iter().filter(|c| !c.is_ordinary())
    }

    /// True when every column is ordinary.
    pub fn is_trivial(&self) -> bool {
        self.singular_columns().next().is_none()
    }

    pub fn exponent_sum(&self) -> Exponent {
        self.columns
            .iter()
            .flat_map(|c| c.exponents.iter().copied())
            .fold(Exponent::int(0), |acc, e| acc + e)
    }

    /// Drops ordinary columns.
    pub fn reduced(&self) -> PSymbol {
        PSymbol {
            order: self.order,
            variable: self.variable.clone(),
            columns: self.singular_columns().cloned().collect(),
        }
    }

    /// Aligned text tableau, points in the header row and the variable at the right.
    pub fn render(&self) -> String {
        text::render(self)
    }

    /// Tableau in the one-line input format accepted by [`PSymbol::from_str`].
    pub fn to_line(&self) -> String {
        text::to_line(self)
    }
}

impl fmt::Display for PSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for PSymbol {
    type Err = Error;

    /// Parses `0: 0, 1/3 | 1: 0, 1/3 | inf: 0, 1/3`, optionally followed by
    /// `; z` naming the variable.
    fn from_str(s: &str) -> Result<Self> {
        text::parse_symbol(s)
    }
}

/// One branch point of a cover: `preimage` maps to `image` with local multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchPoint {
    pub preimage: Point,
    pub image: Point,
    pub multiplicity: u32,
}

/// The preimages of the singular points under a map `z = R(w)`, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchMap {
    variable: String,
    branch_points: Vec<BranchPoint>,
}

impl BranchMap {
    pub fn new(variable: impl Into<String>, branch_points: Vec<BranchPoint>) -> Result<Self> {
        for (i, bp) in branch_points.iter().enumerate() {
            if bp.multiplicity == 0 {
                return Err(Error::PSymbol(format!(
                    "multiplicity of {} must be at least 1",
                    bp.preimage
                )));
            }
            if branch_points[..i].iter().any(|o| o.preimage == bp.preimage) {
                return Err(Error::PSymbol(format!("preimage {} listed twice", bp.preimage)));
            }
        }
        Ok(BranchMap {
            variable: variable.into(),
            branch_points,
        })
    }

    /// Builds a map from `(preimage, image, multiplicity)` triples.
    pub fn from_triples<P, Q>(variable: &str, triples: Vec<(P, Q, u32)>) -> Result<Self>
    where
        P: Into<Point>,
        Q: Into<Point>,
    {
        let bps = triples
            .into_iter()
            .map(|(p, q, m)| BranchPoint {
                preimage: p.into(),
                image: q.into(),
                multiplicity: m,
            })
            .collect();
        BranchMap::new(variable, bps)
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn branch_points(&self) -> &[BranchPoint] {
        &self.branch_points
    }
}

impl FromStr for BranchMap {
    type Err = Error;

    /// Parses `[A] -> inf x3, [B] -> 0 x3, [C] -> 1 x3`, optionally followed by
    /// `; w` naming the new variable.
    fn from_str(s: &str) -> Result<Self> {
        text::parse_map(s)
    }
}

impl From<Rational64> for Point {
    fn from(q: Rational64) -> Self {
        Point::Finite(q)
    }
}

impl From<i64> for Point {
    fn from(n: i64) -> Self {
        Point::int(n)
    }
}

impl From<&str> for Point {
    fn from(s: &str) -> Self {
        s.parse().unwrap_or_else(|_| Point::named(s))
    }
}

/// The symbol of `q+1 F q (alpha; beta | z)`: `0, 1-beta_j` at 0,
/// `0, 1, ..., q-1, s` at 1 and `alpha_i` at infinity, `s = sum beta - sum alpha`.
pub fn hyper_psymbol_exact(numerator: &[Exponent], denominator: &[Exponent]) -> Result<PSymbol> {
    let q = denominator.len();
    if q == 0 || numerator.len() != q + 1 {
        return Err(Error::InvalidParameters(format!(
            "expected q+1 numerator and q >= 1 denominator parameters, got {} and {q}",
            numerator.len()
        )));
    }
    let sum = |xs: &[Exponent]| xs.iter().fold(Exponent::int(0), |acc, &x| acc + x);
    let s = sum(denominator) - sum(numerator);
    let at_zero = std::iter::once(Exponent::int(0))
        .chain(denominator.iter().map(|&b| Exponent::int(1) - b))
        .collect();
    let at_one = (0..q as i64).map(Exponent::int).chain(std::iter::once(s)).collect();
    PSymbol::new(
        q + 1,
        "z",
        vec![
            Column {
                point: Point::int(0),
                exponents: at_zero,
            },
            Column {
                point: Point::int(1),
                exponents: at_one,
            },
            Column {
                point: Point::Infinity,
                exponents: numerator.to_vec(),
            },
        ],
    )
}

const MAX_DENOMINATOR: i64 = 10_000;

fn rationalize(x: f64) -> Option<Rational64> {
    if !x.is_finite() {
        return None;
    }
    (1..=MAX_DENOMINATOR).find_map(|d| {
        let n = (x * d as f64).round();
        let exact = ((n / d as f64) - x).abs() <= 1e-12 * x.abs().max(1.0);
        (exact && n.abs() < 1e15).then(|| Rational64::new(n.to_i64().unwrap_or(0), d))
    })
}

/// [`hyper_psymbol_exact`] for numeric parameters. Each parameter must be real
/// and a rational with denominator at most 10^4.
pub fn hyper_psymbol(params: &HyperParams) -> Result<PSymbol> {
    let convert = |xs: &[crate::Complex]| -> Result<Vec<Exponent>> {
        xs.iter()
            .map(|x| {
                if !x.im.is_zero() {
                    return Err(Error::InvalidParameters(format!("parameter {x} is not real")));
                }
                rationalize(x.re)
                    .map(Exponent::constant)
                    .ok_or_else(|| Error::InvalidParameters(format!("parameter {} is not a small rational", x.re)))
            })
            .collect()
    };
    hyper_psymbol_exact(&convert(params.numerator())?, &convert(params.denominator())?)
}

/// Multiplies the solutions by `(z - point)^c`: adds `c` at `point` and `-c`
/// at infinity. A finite point without a column gets an ordinary one first.
pub fn shift_by_prefactor(p: &PSymbol, point: &Point, c: impl Into<Exponent>) -> Result<PSymbol> {
    let c = c.into();
    match point {
        Point::Infinity => {
            return Err(Error::PSymbol(
                "the prefactor point must be finite; infinity receives -c".into(),
            ))
        }
        Point::Named(_) if p.column(point).is_none() => {
            return Err(Error::PSymbol(format!("unknown point label {point}")));
        }
        _ => {}
    }
    let mut out = p.clone();
    for target in [point.clone(), Point::Infinity] {
        if out.column(&target).is_none() {
            out.columns.push(ordinary_column(target, out.order));
        }
    }
    for col in out.columns.iter_mut() {
        let delta = if &col.point == point {
            c
        } else if col.point == Point::Infinity {
            -c
        } else {
            continue;
        };
        for e in col.exponents.iter_mut() {
            *e = *e + delta;
        }
    }
    Ok(out)
}

/// Transports `p` along the map: the column at each preimage carries the
/// image's exponents times the multiplicity. Ordinary results are dropped.
pub fn pullback(p: &PSymbol, m: &BranchMap) -> Result<PSymbol> {
    for col in p.singular_columns() {
        if !m.branch_points.iter().any(|bp| bp.image == col.point) {
            return Err(Error::PSymbol(format!(
                "singular point {} has no preimage in the map",
                col.point
            )));
        }
    }
    let mut columns = Vec::with_capacity(m.branch_points.len());
    for bp in &m.branch_points {
        let image = p.column(&bp.image).ok_or_else(|| {
            Error::PSymbol(format!("image point {} has no column", bp.image))
        })?;
        let col = Column {
            point: bp.preimage.clone(),
            exponents: image
                .exponents
                .iter()
                .map(|&e| e * i64::from(bp.multiplicity))
                .collect(),
        };
        if !col.is_ordinary() {
            columns.push(col);
        }
    }
    PSymbol::new(p.order, m.variable.clone(), columns)
}

fn canonical(p: &PSymbol) -> BTreeMap<&Point, Vec<Exponent>> {
    p.singular_columns()
        .map(|c| {
            let mut e = c.exponents.clone();
            e.sort();
            (&c.point, e)
        })
        .collect()
}

/// Equality up to column order, exponent order within a column and ordinary
/// columns. Symbols of different order are never equal.
pub fn equals(p1: &PSymbol, p2: &PSymbol) -> bool {
    p1.order == p2.order && canonical(p1) == canonical(p2)
}
