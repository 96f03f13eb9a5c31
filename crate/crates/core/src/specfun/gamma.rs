use std::f64::consts::PI;

use crate::error::{pole, Result};
use crate::Complex;

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients). Relative error
// is below 2e-15 on the positive real axis.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Returns `Some(n)` when `x` is (numerically) the nonpositive integer `-n`.
pub(crate) fn nonpositive_integer(x: Complex) -> Option<u64> {
    if x.im.abs() > 1e-14 * (1.0 + x.re.abs()) || x.re > 0.5 {
        return None;
    }
    let r = x.re.round();
    if (x.re - r).abs() <= 1e-13 * (1.0 + r.abs()) {
        Some((-r) as u64)
    } else {
        None
    }
}

fn lanczos_sum(z: Complex) -> Complex {
    // z is already shifted by -1
    let mut acc = Complex::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    acc
}

/// The gamma function on the complex plane.
pub fn gamma(z: Complex) -> Result<Complex> {
    if nonpositive_integer(z).is_some() {
        return Err(pole("gamma", z));
    }
    Ok(gamma_unchecked(z))
}

fn gamma_unchecked(z: Complex) -> Complex {
    if z.re < 0.5 {
        // reflection
        let s = (z * PI).sin();
        return PI / (s * gamma_unchecked(1.0 - z));
    }
    let zm = z - 1.0;
    let t = zm + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(zm + 0.5) * (-t).exp() * lanczos_sum(zm)
}

/// Reciprocal gamma, entire: zero at the nonpositive integers.
pub fn rgamma(z: Complex) -> Complex {
    if nonpositive_integer(z).is_some() {
        Complex::new(0.0, 0.0)
    } else {
        1.0 / gamma_unchecked(z)
    }
}

/// Rising factorial `(alpha)_k = alpha (alpha + 1) ... (alpha + k - 1)`, with
/// `(alpha)_0 = 1`.
pub fn pochhammer(alpha: Complex, k: u64) -> Complex {
    let mut acc = Complex::new(1.0, 0.0);
    for j in 0..k {
        acc *= alpha + j as f64;
    }
    acc
}

// B_{2k} / (2k), k = 1..8
const DIGAMMA_ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
    -3_617.0 / 8_160.0,
];

/// The digamma function `psi = Gamma' / Gamma`.
///
/// Reflection for `Re x < 0`, upward recurrence to `Re x >= 10`, then the
/// Bernoulli asymptotic series.
pub fn digamma(x: Complex) -> Result<Complex> {
    if nonpositive_integer(x).is_some() {
        return Err(pole("digamma", x));
    }
    if x.re < 0.0 {
        // psi(x) = psi(1 - x) - pi cot(pi x)
        let pix = x * PI;
        return Ok(digamma(1.0 - x)? - PI * pix.cos() / pix.sin());
    }
    let mut z = x;
    let mut shift = Complex::new(0.0, 0.0);
    while z.re < 10.0 {
        shift += 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut series = Complex::new(0.0, 0.0);
    let mut pow = inv2;
    for &c in DIGAMMA_ASYMPTOTIC.iter() {
        series += c * pow;
        pow *= inv2;
    }
    Ok(z.ln() - 0.5 / z - series - shift)
}

pub fn digamma_real(x: f64) -> Result<f64> {
    digamma(Complex::new(x, 0.0)).map(|v| v.re)
}

pub(crate) fn gamma_real(x: f64) -> Result<f64> {
    gamma(Complex::new(x, 0.0)).map(|v| v.re)
}
