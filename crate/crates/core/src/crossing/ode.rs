//! Residuals of the third- and fifth-order Fuchsian operators.
//!
//! With `v = z(z-1)`:
//!
//! * third order: `d/dz v^(1/3) d/dz v^(2/3) d/dz F
//!   = v F''' + (5/3)(2z-1) F'' + (4/3) F'`;
//! * fifth order: `d^3/dz^3 v^(4/3) d/dz v^(2/3) d/dz F = K'''` with
//!   `K = p F' + q F''`, `p = (2/3) v v'`, `q = v^2`.
//!
//! Derivatives of `F` come from [`crate::numdiff`].

use crate::crossing::{halfplane, CrossingFunction};
use crate::error::{domain, Error, Result};
use crate::numdiff::derivative_real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FuchsianOrder {
    ThirdOrder,
    FifthOrder,
}

fn function_of(f: CrossingFunction) -> Result<fn(f64) -> Result<f64>> {
    match f {
        CrossingFunction::Ph => Ok(halfplane::p_h),
        CrossingFunction::Phv => Ok(halfplane::p_hv),
        CrossingFunction::PhbarV => Ok(halfplane::p_hbar_v),
        CrossingFunction::Nh => Ok(halfplane::n_h),
        CrossingFunction::Psurr => Err(Error::Precondition {
            function: "fuchsian_residual",
            detail: "P_surr does not solve these operators".into(),
        }),
    }
}

/// Absolute residual of the chosen operator applied to `f` at `z`.
pub fn fuchsian_residual(which: FuchsianOrder, f: CrossingFunction, z: f64) -> Result<f64> {
    if !(z > 0.05 && z < 0.95) {
        return Err(domain("fuchsian_residual", format!("z = {z} outside (0.05, 0.95)")));
    }
    if which == FuchsianOrder::ThirdOrder && f == CrossingFunction::Nh {
        return Err(Error::Precondition {
            function: "fuchsian_residual",
            detail: "N_h solves only the fifth-order equation".into(),
        });
    }
    let func = function_of(f)?;
    let top = match which {
        FuchsianOrder::ThirdOrder => 3,
        FuchsianOrder::FifthOrder => 5,
    };
    // the widest stencil reaches z +- (top/2) h
    let h0 = (0.1f64).min(0.8 * z.min(1.0 - z) * 2.0 / top as f64);
    let eval = |x: f64| func(x).unwrap_or(f64::NAN);
    let d: Vec<f64> = (1..=top).map(|n| derivative_real(eval, z, n, h0)).collect();
    if d.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonConvergence {
            function: "fuchsian_residual",
            detail: format!("numerical derivative failed at z = {z}"),
        });
    }
    let v = z * (z - 1.0);
    Ok(match which {
        FuchsianOrder::ThirdOrder => {
            (v * d[2] + 5.0 / 3.0 * (2.0 * z - 1.0) * d[1] + 4.0 / 3.0 * d[0]).abs()
        }
        FuchsianOrder::FifthOrder => {
            let z2 = z * z;
            let p = 2.0 / 3.0 * (2.0 * z2 * z - 3.0 * z2 + z);
            let p1 = 2.0 / 3.0 * (6.0 * z2 - 6.0 * z + 1.0);
            let p2 = 2.0 / 3.0 * (12.0 * z - 6.0);
            let p3 = 8.0;
            let q = v * v;
            let q1 = 4.0 * z2 * z - 6.0 * z2 + 2.0 * z;
            let q2 = 12.0 * z2 - 12.0 * z + 2.0;
            let q3 = 24.0 * z - 12.0;
            let k3 = p3 * d[0]
                + 3.0 * p2 * d[1]
                + 3.0 * p1 * d[2]
                + p * d[3]
                + q3 * d[1]
                + 3.0 * q2 * d[2]
                + 3.0 * q1 * d[3]
                + q * d[4];
            k3.abs()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_order_annihilates_crossing_probabilities() {
        for &z in &[0.3, 0.4, 0.5, 0.7] {
            let r = fuchsian_residual(FuchsianOrder::ThirdOrder, CrossingFunction::Ph, z).unwrap();
            assert!(r <= 1e-5, "P_h at {z}: {r}");
            let r = fuchsian_residual(FuchsianOrder::ThirdOrder, CrossingFunction::Phv, z).unwrap();
            assert!(r <= 1e-5, "P_hv at {z}: {r}");
        }
    }

    #[test]
    fn fifth_order_annihilates_cluster_count() {
        let r = fuchsian_residual(FuchsianOrder::FifthOrder, CrossingFunction::Nh, 0.5).unwrap();
        assert!(r <= 1e-3, "{r}");
        let r = fuchsian_residual(FuchsianOrder::FifthOrder, CrossingFunction::Ph, 0.4).unwrap();
        assert!(r <= 1e-3, "{r}");
    }

    #[test]
    fn cluster_count_fails_third_order() {
        // the logarithm is not a solution of the third-order operator
        assert!(fuchsian_residual(FuchsianOrder::ThirdOrder, CrossingFunction::Nh, 0.5).is_err());
        let log_only = |z: f64| -(1.0 - z).ln();
        let d: Vec<f64> = (1..=3).map(|n| derivative_real(log_only, 0.5, n, 0.1)).collect();
        let v = -0.25;
        assert!((v * d[2] + 4.0 / 3.0 * d[0]).abs() > 0.1);
    }

    #[test]
    fn domain_checks() {
        assert!(fuchsian_residual(FuchsianOrder::ThirdOrder, CrossingFunction::Ph, 0.01).is_err());
        assert!(fuchsian_residual(FuchsianOrder::FifthOrder, CrossingFunction::Psurr, 0.5).is_err());
    }
}
