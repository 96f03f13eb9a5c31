//! Gauss `2F1` on the plane cut along `[1, inf)`.
//!
//! The power series only covers the unit disk. Outside it (and near its rim)
//! the classical linear transformations move the argument to one of
//! `z/(z-1)`, `1-z`, `1/z`, `1/(1-z)`, whichever is smallest. The `1-z`
//! transformation needs `c-a-b` non-integral and the two inversions need
//! `a-b` non-integral; Pfaff's transformation always applies.

use crate::error::{domain, Result};
use crate::specfun::gamma::{gamma, nonpositive_integer, rgamma};
use crate::specfun::hyper::{hyper, HyperParams};
use crate::Complex;

const DIRECT_RADIUS: f64 = 0.75;

fn integral(x: Complex) -> bool {
    x.im.abs() < 1e-14 && (x.re - x.re.round()).abs() < 1e-13
}

fn series(a: Complex, b: Complex, c: Complex, z: Complex) -> Result<Complex> {
    hyper(&HyperParams::new(vec![a, b], vec![c])?, z)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Route {
    Direct,
    Pfaff,
    OneMinus,
    Inverse,
    InverseOneMinus,
}

/// `2F1(a, b; c; z)` for any `z` off the cut `(1, inf)`.
pub fn hyp2f1(a: Complex, b: Complex, c: Complex, z: Complex) -> Result<Complex> {
    if nonpositive_integer(c).is_some() {
        return Err(domain("hyp2f1", format!("c = {c} is a nonpositive integer")));
    }
    if z.im == 0.0 && z.re > 1.0 {
        return Err(domain("hyp2f1", format!("z = {} lies on the branch cut", z.re)));
    }
    if z.norm() <= DIRECT_RADIUS {
        return series(a, b, c, z);
    }
    let one = Complex::new(1.0, 0.0);
    let mut candidates = vec![(Route::Direct, z.norm()), (Route::Pfaff, (z / (z - one)).norm())];
    if !integral(c - a - b) {
        candidates.push((Route::OneMinus, (one - z).norm()));
    }
    if !integral(a - b) {
        candidates.push((Route::Inverse, (one / z).norm()));
        candidates.push((Route::InverseOneMinus, (one / (one - z)).norm()));
    }
    // |z| = 1 is still summable for the direct series when Re(c-a-b) > 0
    let route = candidates
        .iter()
        .filter(|(r, m)| *r != Route::Direct || *m < 1.0 || (c - a - b).re > 0.0)
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .map(|(r, _)| *r)
        .unwrap_or(Route::Pfaff);

    match route {
        Route::Direct => series(a, b, c, z),
        Route::Pfaff => Ok((one - z).powc(-a) * series(a, c - b, c, z / (z - one))?),
        Route::OneMinus => {
            let w = one - z;
            let gc = gamma(c)?;
            let first = gc * gamma(c - a - b)? * rgamma(c - a) * rgamma(c - b);
            let second = gc * gamma(a + b - c)? * rgamma(a) * rgamma(b);
            let mut acc = first * series(a, b, a + b - c + 1.0, w)?;
            if second != Complex::new(0.0, 0.0) {
                acc += second * w.powc(c - a - b) * series(c - a, c - b, c - a - b + 1.0, w)?;
            }
            Ok(acc)
        }
        Route::Inverse => {
            let w = one / z;
            let mz = -z;
            let gc = gamma(c)?;
            let first = gc * gamma(b - a)? * rgamma(b) * rgamma(c - a);
            let second = gc * gamma(a - b)? * rgamma(a) * rgamma(c - b);
            Ok(first * mz.powc(-a) * series(a, a - c + 1.0, a - b + 1.0, w)?
                + second * mz.powc(-b) * series(b, b - c + 1.0, b - a + 1.0, w)?)
        }
        Route::InverseOneMinus => {
            let w = one / (one - z);
            let gc = gamma(c)?;
            let first = gc * gamma(b - a)? * rgamma(b) * rgamma(c - a);
            let second = gc * gamma(a - b)? * rgamma(a) * rgamma(c - b);
            Ok(first * (one - z).powc(-a) * series(a, c - b, a - b + 1.0, w)?
                + second * (one - z).powc(-b) * series(b, c - a, b - a + 1.0, w)?)
        }
    }
}

/// Real-parameter convenience wrapper.
pub fn hyp2f1_real(a: f64, b: f64, c: f64, z: Complex) -> Result<Complex> {
    hyp2f1(
        Complex::new(a, 0.0),
        Complex::new(b, 0.0),
        Complex::new(c, 0.0),
        z,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    // 2F1(a, b; b; z) = (1 - z)^(-a): a - b and c - a - b both non-integral, so
    // every route is exercised by moving z around the plane.
    #[test]
    fn binomial_identity_everywhere() {
        let (a, b) = (1.0 / 3.0, 0.5);
        let points = [
            Complex::new(0.2, 0.1),
            Complex::new(0.9, 0.2),
            Complex::new(-3.0, 0.5),
            Complex::new(-40.0, 0.0),
            Complex::new(0.5, 1.0),
            Complex::new(2.0, 1.5),
            Complex::new(1.5, -0.3),
            Complex::new(0.98, 0.0),
        ];
        for z in points {
            let got = hyp2f1_real(a, b, b, z).unwrap();
            let want = (Complex::new(1.0, 0.0) - z).powc(Complex::new(-a, 0.0));
            assert!((got - want).norm() < 1e-12 * want.norm(), "z = {z}: {got} vs {want}");
        }
    }

    #[test]
    fn logarithm_via_pfaff() {
        // a - b = 0 and c - a - b = 0: only Pfaff is available
        for &x in &[-0.9, -5.0, -100.0, 0.95] {
            let z = Complex::new(x, 0.0);
            let got = hyp2f1_real(1.0, 1.0, 2.0, z).unwrap().re;
            let want = -(1.0f64 - x).ln() / x;
            assert!((got - want).abs() < 1e-12 * want.abs(), "x = {x}");
        }
    }

    #[test]
    fn arctangent_for_large_negative_argument() {
        // 2F1(1/2, 1; 3/2; -x^2) = atan(x) / x
        for &x in &[0.5, 1.0, 3.0, 20.0] {
            let got = hyp2f1_real(0.5, 1.0, 1.5, Complex::new(-x * x, 0.0)).unwrap().re;
            let want = f64::atan(x) / x;
            assert!((got - want).abs() < 1e-12, "x = {x}: {got} vs {want}");
        }
    }

    #[test]
    fn cut_is_rejected() {
        assert!(hyp2f1_real(0.5, 0.5, 1.0, Complex::new(2.0, 0.0)).is_err());
    }
}
