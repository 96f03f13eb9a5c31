//! Generalized hypergeometric series `_{q+1}F_q`.

use crate::error::{domain, Error, Result};
use crate::specfun::gamma::nonpositive_integer;
use crate::Complex;

/// Numerator and denominator parameters of `_{q+1}F_q`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperParams {
    numerator: Vec<Complex>,
    denominator: Vec<Complex>,
}

impl HyperParams {
    pub fn new(numerator: Vec<Complex>, denominator: Vec<Complex>) -> Result<Self> {
        if denominator.is_empty() {
            return Err(Error::InvalidParameters(
                "at least one denominator parameter is required (q >= 1)".into(),
            ));
        }
        if numerator.len() != denominator.len() + 1 {
            return Err(Error::InvalidParameters(format!(
                "expected {} numerator parameters for {} denominator parameters, got {}",
                denominator.len() + 1,
                denominator.len(),
                numerator.len()
            )));
        }
        if let Some(b) = denominator
            .iter()
            .find(|b| nonpositive_integer(**b).is_some())
        {
            return Err(Error::InvalidParameters(format!(
                "denominator parameter {b} is a nonpositive integer"
            )));
        }
        Ok(HyperParams {
            numerator,
            denominator,
        })
    }

    /// Convenience constructor for real parameters.
    pub fn real(numerator: &[f64], denominator: &[f64]) -> Result<Self> {
        let lift = |xs: &[f64]| xs.iter().map(|&x| Complex::new(x, 0.0)).collect();
        Self::new(lift(numerator), lift(denominator))
    }

    pub fn numerator(&self) -> &[Complex] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[Complex] {
        &self.denominator
    }

    pub fn q(&self) -> usize {
        self.denominator.len()
    }

    /// `s = sum(beta) - sum(alpha)`; the series converges on `|z| = 1` iff `Re s > 0`.
    pub fn excess(&self) -> Complex {
        self.denominator.iter().sum::<Complex>() - self.numerator.iter().sum::<Complex>()
    }

    /// `t_{k+1} / (t_k z)`.
    fn ratio(&self, k: u64) -> Complex {
        let kf = k as f64;
        let mut num = Complex::new(1.0, 0.0);
        for a in &self.numerator {
            num *= a + kf;
        }
        let mut den = Complex::new(kf + 1.0, 0.0);
        for b in &self.denominator {
            den *= b + kf;
        }
        num / den
    }

    fn terminating_degree(&self) -> Option<u64> {
        self.numerator
            .iter()
            .filter_map(|a| nonpositive_integer(*a))
            .min()
    }
}

/// Stopping rule for series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Hard cap on the number of terms summed.
    pub max_terms: usize,
    /// Stop once the estimated tail is below `rel_tol * |sum|` for three
    /// consecutive terms.
    pub rel_tol: f64,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            max_terms: 100_000,
            rel_tol: 1e-15,
        }
    }
}

/// Neumaier compensated summation over complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: Complex,
    comp: Complex,
}

impl CompensatedSum {
    pub(crate) fn new(initial: Complex) -> Self {
        CompensatedSum {
            sum: initial,
            comp: Complex::new(0.0, 0.0),
        }
    }

    pub(crate) fn add(&mut self, x: Complex) {
        self.sum.re = neumaier(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = neumaier(self.sum.im, x.im, &mut self.comp.im);
    }

    pub(crate) fn value(&self) -> Complex {
        self.sum + self.comp
    }
}

fn neumaier(sum: f64, x: f64, comp: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *comp += (sum - t) + x;
    } else {
        *comp += (x - t) + sum;
    }
    t
}

/// `_{q+1}F_q(params; z)` by direct summation of the defining series.
///
/// At `z = 1` (with `Re s > 0`) the partial sums converge only algebraically;
/// they are sampled at doubling term counts and Richardson-extrapolated using
/// the known tail exponents `s, s + 1, s + 2, ...`.
pub fn hyper(params: &HyperParams, z: Complex) -> Result<Complex> {
    hyper_with(params, z, SeriesOptions::default())
}

pub fn hyper_with(params: &HyperParams, z: Complex, opts: SeriesOptions) -> Result<Complex> {
    if let Some(m) = params.terminating_degree() {
        return Ok(polynomial(params, z, m));
    }
    let modulus = z.norm();
    if modulus > 1.0 + 1e-12 {
        return Err(domain(
            "hyper",
            format!("|z| = {modulus} > 1; the series diverges"),
        ));
    }
    let s = params.excess();
    if (z - 1.0).norm() <= 4.0 * f64::EPSILON {
        if s.re <= 0.0 {
            return Err(Error::NonConvergence {
                function: "hyper",
                detail: format!("z = 1 with Re(s) = {} <= 0", s.re),
            });
        }
        return Ok(unit_argument(params, opts));
    }
    direct(params, z, opts)
}

fn polynomial(params: &HyperParams, z: Complex, degree: u64) -> Complex {
    let mut term = Complex::new(1.0, 0.0);
    let mut acc = CompensatedSum::new(term);
    for k in 0..degree {
        term *= params.ratio(k) * z;
        acc.add(term);
    }
    acc.value()
}

fn direct(params: &HyperParams, z: Complex, opts: SeriesOptions) -> Result<Complex> {
    let modulus = z.norm();
    let mut term = Complex::new(1.0, 0.0);
    let mut acc = CompensatedSum::new(term);
    let mut largest = 1.0f64;
    let mut quiet = 0;
    for k in 0..opts.max_terms as u64 {
        let ratio = params.ratio(k) * z;
        term *= ratio;
        acc.add(term);
        let t = term.norm();
        largest = largest.max(t);
        // asymptotic ratio is |z| from below; bound the tail geometrically
        let rho = ratio.norm().max(modulus);
        let tail = if t == 0.0 {
            0.0
        } else if rho < 1.0 {
            t * rho / (1.0 - rho)
        } else {
            f64::INFINITY
        };
        let scale = acc.value().norm().max(largest * f64::EPSILON);
        if tail <= opts.rel_tol * scale {
            quiet += 1;
            if quiet >= 3 {
                return Ok(acc.value());
            }
        } else {
            quiet = 0;
        }
    }
    if modulus >= 1.0 - 1e-12 && params.excess().re <= 0.0 {
        return Err(Error::NonConvergence {
            function: "hyper",
            detail: format!(
                "term cap {} reached at |z| = {modulus} with Re(s) <= 0",
                opts.max_terms
            ),
        });
    }
    Ok(acc.value())
}

const UNIT_FIRST_CHECKPOINT: u64 = 32;

fn unit_argument(params: &HyperParams, opts: SeriesOptions) -> Complex {
    let s = params.excess();
    let ln2 = std::f64::consts::LN_2;
    let mut term = Complex::new(1.0, 0.0);
    let mut acc = CompensatedSum::new(term);
    let mut checkpoint = UNIT_FIRST_CHECKPOINT;
    let mut table: Vec<Vec<Complex>> = Vec::new();
    let mut best = (f64::INFINITY, Complex::new(0.0, 0.0));
    let mut k = 0u64;
    while checkpoint <= opts.max_terms as u64 {
        // acc holds terms 0..=k
        while k + 1 < checkpoint {
            term *= params.ratio(k);
            acc.add(term);
            k += 1;
        }
        let i = table.len();
        let mut row = vec![acc.value()];
        for j in 1..=i {
            let p = s + (j - 1) as f64;
            let factor = (p * ln2).exp() - 1.0;
            let prev = row[j - 1];
            row.push(prev + (prev - table[i - 1][j - 1]) / factor);
        }
        if i > 0 {
            let diag = row[i];
            let err = (diag - table[i - 1][i - 1]).norm();
            if err < best.0 {
                best = (err, diag);
            }
            if err <= opts.rel_tol * diag.norm() {
                return diag;
            }
        }
        table.push(row);
        checkpoint *= 2;
    }
    best.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma_real;

    fn f(num: &[f64], den: &[f64], z: f64) -> f64 {
        hyper(&HyperParams::real(num, den).unwrap(), Complex::new(z, 0.0))
            .unwrap()
            .re
    }

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(f(&[0.3, 1.7], &[2.2], 0.0), 1.0);
        assert_eq!(f(&[1.0, 1.0, 4.0 / 3.0], &[2.0, 5.0 / 3.0], 0.0), 1.0);
    }

    #[test]
    fn parameter_validation() {
        assert!(HyperParams::real(&[1.0, 1.0], &[-2.0]).is_err());
        assert!(HyperParams::real(&[1.0], &[2.0]).is_err());
        assert!(HyperParams::real(&[1.0], &[]).is_err());
        let p = HyperParams::real(&[1.0, 1.0, 4.0 / 3.0], &[2.0, 5.0 / 3.0]).unwrap();
        assert!((p.excess().re - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(p.q(), 2);
    }

    #[test]
    fn domain_and_divergence() {
        let p = HyperParams::real(&[0.5, 0.5], &[1.5]).unwrap();
        assert!(matches!(
            hyper(&p, Complex::new(1.2, 0.0)),
            Err(Error::Domain { .. })
        ));
        let bad = HyperParams::real(&[1.0, 1.0], &[1.5]).unwrap();
        assert!(matches!(
            hyper(&bad, Complex::new(1.0, 0.0)),
            Err(Error::NonConvergence { .. })
        ));
        let opts = SeriesOptions {
            max_terms: 1000,
            rel_tol: 1e-15,
        };
        assert!(matches!(
            hyper_with(&bad, Complex::new(-1.0, 0.0), opts),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn closed_forms_inside_disk() {
        // 2F1(1,1;2;z) = -log(1-z)/z
        for &z in &[0.1, 0.5, -0.7, 0.9] {
            let want = -(1.0f64 - z).ln() / z;
            assert!((f(&[1.0, 1.0], &[2.0], z) - want).abs() < 1e-14 * want.abs());
        }
        // 2F1(a,b;b;z) = (1-z)^-a
        let want = (1.0f64 - 0.6).powf(-1.0 / 3.0);
        assert!((f(&[1.0 / 3.0, 0.5], &[0.5], 0.6) - want).abs() < 1e-14);
    }

    #[test]
    fn terminating_series_is_a_polynomial() {
        // 2F1(-2, b; c; z) = 1 - 2bz/c + b(b+1)z^2/(c(c+1))
        let (b, c, z) = (0.7, 1.9, 3.0);
        let want = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
        assert!((f(&[-2.0, b], &[c], z) - want).abs() < 1e-13);
    }

    #[test]
    fn unit_argument_matches_gauss() {
        let (a, b, c) = (1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0);
        let want = gamma_real(c).unwrap() * gamma_real(c - a - b).unwrap()
            / (gamma_real(c - a).unwrap() * gamma_real(c - b).unwrap());
        let got = f(&[a, b], &[c], 1.0);
        assert!((got - want).abs() <= 1e-12 * want, "{got} vs {want}");
        // mpmath
        assert!((got - 1.766_638_750_285_449_957).abs() < 1e-12);
    }

    #[test]
    fn unit_argument_3f2_reference() {
        // mpmath, 30 digits
        let got = f(&[1.0, 1.0, 7.0 / 6.0], &[2.0, 5.0 / 3.0], 1.0);
        assert!((got - 2.581_102_440_939_340_028).abs() < 1e-11, "{got}");
        let got = f(&[1.0, 1.0, 0.5], &[2.0, 2.0], 1.0);
        assert!((got - 1.227_411_277_760_218_762).abs() < 1e-11, "{got}");
    }

    #[test]
    fn watts_series_at_half() {
        let got = f(&[1.0, 1.0, 4.0 / 3.0], &[2.0, 5.0 / 3.0], 0.5);
        assert!((got - 1.290_551_220_469_670_014).abs() < 1e-14);
    }
}
