//! Rectangle aspect ratio to half-plane coordinate.
//!
//! A rectangle of width `r` and height 1 maps conformally onto the upper half
//! plane with its corners going to `0, z, 1, inf`, the vertical sides becoming
//! `[0, z]` and `[1, inf]`. The cross-ratio is the elliptic modular lambda
//! function, `z = lambda(i r) = (theta2(q) / theta3(q))^4` with `q = exp(-pi r)`;
//! equivalently `r = K(1-z) / K(z)`.

use std::f64::consts::PI;

use crate::error::{domain, Result};

fn theta2_theta3(q: f64) -> (f64, f64) {
    let mut t2 = 0.0;
    let mut t3 = 1.0;
    for n in 0..200 {
        let half = n as f64 + 0.5;
        let a = 2.0 * q.powf(half * half);
        let b = if n > 0 { 2.0 * q.powi((n * n) as i32) } else { 0.0 };
        t2 += a;
        t3 += b;
        if a < 1e-18 * t2 && (n > 0 && b < 1e-18 * t3) {
            break;
        }
    }
    (t2, t3)
}

/// Half-plane coordinate `z` of a rectangle with aspect ratio `r` (width over
/// height, crossing measured between the vertical sides).
pub fn aspect_ratio_to_z(r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain("aspect_ratio_to_z", format!("r = {r} must be positive")));
    }
    if r.is_infinite() {
        return Ok(0.0);
    }
    if r < 1.0 {
        return Ok(1.0 - aspect_ratio_to_z(1.0 / r)?);
    }
    let (t2, t3) = theta2_theta3((-PI * r).exp());
    Ok((t2 / t3).powi(4))
}

/// Complete elliptic integral of the first kind in the parameter `m = k^2`.
pub fn elliptic_k(m: f64) -> f64 {
    let mut a = 1.0;
    let mut b = (1.0 - m).sqrt();
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    PI / (2.0 * a)
}

/// Inverse of [`aspect_ratio_to_z`]: `r = K(1-z) / K(z)`.
pub fn z_to_aspect_ratio(z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(domain("z_to_aspect_ratio", format!("z = {z} outside (0, 1)")));
    }
    Ok(elliptic_k(1.0 - z) / elliptic_k(z))
}
