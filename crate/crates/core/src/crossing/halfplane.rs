//! Crossing functions in the half-plane coordinate `z`.
//!
//! The designated boundary arcs are `[0, z]` and `[1, inf]` with `z in (0, 1)`.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::specfun::{gamma_real, hyp2f1_real, hyper, HyperParams};
use crate::{Complex, SQRT3};

/// `N_h` switches from the direct `(1-z)` series to the linear identity with
/// `P_h` and `P_hv` below this point, where the direct series needs more than
/// a few thousand terms.
pub const N_H_DIRECT_THRESHOLD: f64 = 0.01;

fn c(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

fn check_unit(function: &'static str, z: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&z) {
        return Err(domain(function, format!("z = {z} outside [0, 1]")));
    }
    Ok(())
}

fn check_open_unit(function: &'static str, z: f64) -> Result<()> {
    if !(z > 0.0 && z < 1.0) {
        return Err(domain(function, format!("z = {z} outside (0, 1)")));
    }
    Ok(())
}

/// `3 Gamma(2/3) / Gamma(1/3)^2`.
pub fn cardy_prefactor() -> f64 {
    3.0 * gamma_real(2.0 / 3.0).unwrap() / gamma_real(1.0 / 3.0).unwrap().powi(2)
}

fn watts_params() -> HyperParams {
    HyperParams::real(&[1.0, 1.0, 4.0 / 3.0], &[2.0, 5.0 / 3.0]).unwrap()
}

// 3F2(1, 1, 4/3; 2, 5/3; x)
fn watts_series(x: f64) -> Result<f64> {
    Ok(hyper(&watts_params(), c(x))?.re)
}

fn cardy_series(z: f64) -> Result<f64> {
    let p = HyperParams::real(&[1.0 / 3.0, 2.0 / 3.0], &[4.0 / 3.0])?;
    Ok(cardy_prefactor() * z.cbrt() * hyper(&p, c(z))?.re)
}

/// Horizontal crossing probability `P_h(z)`.
pub fn p_h(z: f64) -> Result<f64> {
    check_unit("P_h", z)?;
    if z == 0.0 || z == 1.0 {
        return Ok(z);
    }
    if z <= 0.5 {
        cardy_series(z)
    } else {
        Ok(1.0 - cardy_series(1.0 - z)?)
    }
}

/// `P_h` continued analytically off the real segment (principal `z^(1/3)`,
/// cut along `(-inf, 0]` and `[1, inf)`).
pub fn p_h_complex(z: Complex) -> Result<Complex> {
    if z.norm() == 0.0 {
        return Ok(c(0.0));
    }
    let f = hyp2f1_real(1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, z)?;
    Ok(cardy_prefactor() * z.powf(1.0 / 3.0) * f)
}

/// The horizontal-but-not-vertical probability straight from its series,
/// `(sqrt 3 / 2 pi) z 3F2(1, 1, 4/3; 2, 5/3; z)`, with no symmetry applied.
pub fn p_hbar_v_series(z: f64) -> Result<f64> {
    check_unit("P_hbar_v", z)?;
    Ok(SQRT3 / (2.0 * PI) * z * watts_series(z)?)
}

/// Horizontal-but-not-vertical probability `P_h - P_hv`.
pub fn p_hbar_v(z: f64) -> Result<f64> {
    check_unit("P_hbar_v", z)?;
    if z == 0.0 || z == 1.0 {
        return Ok(z);
    }
    if z <= 0.5 {
        p_hbar_v_series(z)
    } else {
        let w = 1.0 - z;
        Ok(p_h(z)? - p_h(w)? + p_hbar_v_series(w)?)
    }
}

/// Probability of a cluster touching all four sides, `P_hv(z)`.
pub fn p_hv(z: f64) -> Result<f64> {
    check_unit("P_hv", z)?;
    if z == 0.0 || z == 1.0 {
        return Ok(0.0);
    }
    let x = if z <= 0.5 { z } else { 1.0 - z };
    Ok(p_h(x)? - p_hbar_v_series(x)?)
}

/// `P_h(z) - P_hbar_v(z)` with both terms evaluated at `z` itself.
pub fn p_hv_series(z: f64) -> Result<f64> {
    Ok(p_h(z)? - p_hbar_v_series(z)?)
}

/// `(sqrt 3 / 2 pi) log(1/(1-z))`.
fn log_term(z: f64) -> f64 {
    -SQRT3 / (2.0 * PI) * (-z).ln_1p()
}

/// Expected number of crossing clusters from the direct series in `1-z`.
pub fn n_h_direct(z: f64) -> Result<f64> {
    check_open_unit("N_h", z)?;
    let w = 1.0 - z;
    Ok(0.5 - SQRT3 / (4.0 * PI) * ((-z).ln_1p() + w * watts_series(w)?))
}

/// Expected number of crossing clusters `N_h(z)`.
///
/// Uses the direct series down to [`N_H_DIRECT_THRESHOLD`] and
/// `(P_h + P_hv + (sqrt 3/2 pi) log(1/(1-z))) / 2` below it.
pub fn n_h(z: f64) -> Result<f64> {
    check_open_unit("N_h", z)?;
    if z >= N_H_DIRECT_THRESHOLD {
        n_h_direct(z)
    } else {
        Ok(0.5 * (p_h(z)? + p_hv(z)? + log_term(z)))
    }
}

/// `Gamma(2/3) / (sqrt(pi) Gamma(1/6))`.
pub fn surround_prefactor() -> f64 {
    gamma_real(2.0 / 3.0).unwrap() / (PI.sqrt() * gamma_real(1.0 / 6.0).unwrap())
}

/// Probability that the bulk point is surrounded by the hull of the wired
/// segment `[-inf, z]`: `1/2 + k z 2F1(1/2, 2/3; 3/2; -z^2)`.
pub fn p_surr(z: f64) -> Result<f64> {
    if z.is_nan() {
        return Err(domain("P_surr", "z is NaN"));
    }
    if z.is_infinite() {
        return Ok(if z > 0.0 { 1.0 } else { 0.0 });
    }
    if z == 0.0 {
        return Ok(0.5);
    }
    let f = hyp2f1_real(0.5, 2.0 / 3.0, 1.5, c(-z * z))?;
    Ok(0.5 + surround_prefactor() * z * f.re)
}

/// `|2 N_h - P_h - P_hv - (sqrt 3/2 pi) log(1/(1-z))|`, with `N_h` from the
/// direct series so the check does not presuppose the identity.
pub fn identity_residual(z: f64) -> Result<f64> {
    check_open_unit("identity_residual", z)?;
    Ok((2.0 * n_h_direct(z)? - p_h(z)? - p_hv(z)? - log_term(z)).abs())
}

/// The constant `k` in `P_surr(z) = 1/2 + k [P_h(1/2 + i z/2) - 1/2]`, fitted
/// at `z = at`. It is purely imaginary.
pub fn surround_constant(at: f64) -> Result<Complex> {
    let ph = p_h_complex(Complex::new(0.5, at / 2.0))?;
    Ok((p_surr(at)? - 0.5) / (ph - 0.5))
}

/// `1/2 + k [P_h(1/2 + i z/2) - 1/2]`.
pub fn p_surr_via_cardy(z: f64, k: Complex) -> Result<Complex> {
    let ph = p_h_complex(Complex::new(0.5, z / 2.0))?;
    Ok(0.5 + k * (ph - 0.5))
}
