//! Numerical derivatives by Richardson-extrapolated central differences.
//!
//! A Ridders-style tableau: the order-`n` central difference with step `h`
//! has an error expansion in even powers of `h`, so successive step halvings
//! are combined Neville-fashion. The estimate with the smallest internal
//! error indicator is returned.

use crate::Complex;

const SHRINK: f64 = 1.6;
const TABLE: usize = 10;

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn central<F: Fn(Complex) -> Complex>(f: &F, x: Complex, order: u32, h: f64) -> Complex {
    let half = order as f64 / 2.0;
    let mut acc = Complex::new(0.0, 0.0);
    for k in 0..=order {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binomial(order, k) * f(x + (half - k as f64) * h);
    }
    acc / h.powi(order as i32)
}

/// Derivative of order `order` of a holomorphic (or smooth real) function,
/// sampled along the real direction. Returns the estimate and an error
/// indicator.
pub fn derivative<F: Fn(Complex) -> Complex>(
    f: F,
    x: Complex,
    order: u32,
    initial_step: f64,
) -> (Complex, f64) {
    let ratio2 = SHRINK * SHRINK;
    let mut prev: Vec<Complex> = Vec::with_capacity(TABLE);
    let mut best = central(&f, x, order, initial_step);
    let mut best_err = f64::INFINITY;
    let mut h = initial_step;
    for i in 0..TABLE {
        let mut row = Vec::with_capacity(i + 1);
        row.push(central(&f, x, order, h));
        let mut fac = ratio2;
        for j in 1..=i {
            let v = (row[j - 1] * fac - prev[j - 1]) / (fac - 1.0);
            fac *= ratio2;
            let err = (v - row[j - 1]).norm().max((v - prev[j - 1]).norm());
            if err <= best_err {
                best_err = err;
                best = v;
            }
            row.push(v);
        }
        if i > 0 && (row[i] - prev[i - 1]).norm() >= 2.0 * best_err {
            break;
        }
        prev = row;
        h /= SHRINK;
    }
    (best, best_err)
}

/// [`derivative`] for real functions of a real variable.
pub fn derivative_real<F: Fn(f64) -> f64>(f: F, x: f64, order: u32, initial_step: f64) -> f64 {
    derivative(
        |z: Complex| Complex::new(f(z.re), 0.0),
        Complex::new(x, 0.0),
        order,
        initial_step,
    )
    .0
    .re
}
