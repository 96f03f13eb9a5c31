//! Closed-form summations and quadratic transformations of `3F2`.

use crate::error::{domain, Error, Result};
use crate::specfun::gamma::{digamma, gamma, nonpositive_integer, rgamma};
use crate::specfun::hyper::{hyper, HyperParams};
use crate::Complex;

fn c(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

fn is_one(x: Complex) -> bool {
    (x - 1.0).norm() < 1e-14
}

/// Gauss's summation `2F1(a, b; c; 1) = G(c) G(c-a-b) / (G(c-a) G(c-b))`.
pub fn gauss_sum_at_1(a: Complex, b: Complex, c: Complex) -> Result<Complex> {
    let s = c - a - b;
    if s.re <= 0.0 {
        return Err(domain("gauss_sum_at_1", format!("Re(c-a-b) = {} <= 0", s.re)));
    }
    if nonpositive_integer(c).is_some() {
        return Err(domain("gauss_sum_at_1", format!("c = {c} is a nonpositive integer")));
    }
    Ok(gamma(c)? * gamma(s)? * rgamma(c - a) * rgamma(c - b))
}

/// `3F2(1, 1, a; 2, c; 1) = ((c-1)/(a-1)) [psi(c-1) - psi(c-a)]`.
///
/// At `c = 1` the prefactor vanishes against a pole of `psi(c-1)`; the
/// limit is `1/(1-a)`.
pub fn three_f2_unit_value(a: Complex, c: Complex) -> Result<Complex> {
    if is_one(a) {
        return Err(domain("three_f2_unit_value", "a = 1"));
    }
    if (c - a).re <= 0.0 {
        return Err(domain("three_f2_unit_value", format!("Re(c-a) = {} <= 0", (c - a).re)));
    }
    if is_one(c) {
        return Ok(1.0 / (1.0 - a));
    }
    Ok((c - 1.0) / (a - 1.0) * (digamma(c - 1.0)? - digamma(c - a)?))
}

/// Whether `w` lies in the loop of `|4w| = |1-w|^2` about the origin.
pub fn in_whipple_region(w: Complex) -> bool {
    w.norm() < 1.0 && 4.0 * w.norm() < (1.0 - w).norm_sqr()
}

/// Whether `w` lies in the closed left lobe of `|4w(1-w)| = 1` and the unit disk.
pub fn in_whipple2_region(w: Complex) -> bool {
    w.norm() < 1.0 && w.re <= 0.5 && (4.0 * w * (1.0 - w)).norm() <= 1.0 + 1e-15
}

/// `|LHS - RHS|` of Whipple's quadratic transformation
///
/// `3F2(a, b, c; a-b+1, a-c+1; w)
///   = (1-w)^(-a) 3F2(a-b-c+1, a/2, (a+1)/2; a-b+1, a-c+1; -4w/(1-w)^2)`.
pub fn whipple_residual(a: Complex, b: Complex, cc: Complex, w: Complex) -> Result<f64> {
    if !in_whipple_region(w) {
        return Err(domain("whipple_residual", format!("w = {w} outside the convergence loop")));
    }
    let d1 = a - b + 1.0;
    let d2 = a - cc + 1.0;
    let lhs = hyper(&HyperParams::new(vec![a, b, cc], vec![d1, d2])?, w)?;
    let arg = -4.0 * w / ((1.0 - w) * (1.0 - w));
    let rhs_params = HyperParams::new(vec![a - b - cc + 1.0, a / 2.0, (a + 1.0) / 2.0], vec![d1, d2])?;
    let rhs = (c(1.0) - w).powc(-a) * hyper(&rhs_params, arg)?;
    Ok((lhs - rhs).norm())
}

/// `|LHS - RHS|` of the quadratic transformation
///
/// `3F2(a, b, c; 2, (a+b+c)/2; w)
///   = (1-w) 3F2((a+1)/2, (b+1)/2, (c+1)/2; 2, (a+b+c)/2; 4w(1-w))`,
///
/// valid when one of `a, b, c` is 1.
pub fn whipple2_residual(a: Complex, b: Complex, cc: Complex, w: Complex) -> Result<f64> {
    if !(is_one(a) || is_one(b) || is_one(cc)) {
        return Err(Error::Precondition {
            function: "whipple2_residual",
            detail: "one of a, b, c must equal 1".into(),
        });
    }
    if !in_whipple2_region(w) {
        return Err(domain("whipple2_residual", format!("w = {w} outside the convergence lobe")));
    }
    let e = (a + b + cc) / 2.0;
    let lhs = hyper(&HyperParams::new(vec![a, b, cc], vec![c(2.0), e])?, w)?;
    let rhs_params = HyperParams::new(
        vec![(a + 1.0) / 2.0, (b + 1.0) / 2.0, (cc + 1.0) / 2.0],
        vec![c(2.0), e],
    )?;
    let rhs = (1.0 - w) * hyper(&rhs_params, 4.0 * w * (1.0 - w))?;
    Ok((lhs - rhs).norm())
}

/// Deterministic pseudo-random parameter sets inside the validity regions.
///
/// Returns `(a, b, c, w)` tuples; `quadratic2` selects the second
/// transformation, for which one parameter is pinned to 1.
pub fn whipple_samples(count: usize, seed: u64, quadratic2: bool) -> Vec<[Complex; 4]> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = rng.gen_range(0.2..2.0);
        let b = rng.gen_range(0.1..a + 0.8);
        let cc = rng.gen_range(0.1..a + 0.8);
        let radius = if quadratic2 { 0.2 } else { 0.15 };
        let r = radius * rng.gen::<f64>().sqrt();
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let w = Complex::from_polar(r, theta);
        let params = if quadratic2 {
            match rng.gen_range(0..3) {
                0 => [c(1.0), c(b), c(cc)],
                1 => [c(a), c(1.0), c(cc)],
                _ => [c(a), c(b), c(1.0)],
            }
        } else {
            [c(a), c(b), c(cc)]
        };
        out.push([params[0], params[1], params[2], w]);
    }
    out
}
