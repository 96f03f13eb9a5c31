//! The four crossing functions, in half-plane and triangle coordinates.

mod aspect;
pub mod halfplane;
mod ode;
pub mod triangle;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conformal::{schwarz_s, TriangleDomain};
use crate::elliptic::EquianharmonicContext;
use crate::error::{domain, Error, Result};
use crate::Complex;

pub use aspect::{aspect_ratio_to_z, elliptic_k, z_to_aspect_ratio};
pub use halfplane::{
    identity_residual, n_h, n_h_direct, p_h, p_h_complex, p_hbar_v, p_hbar_v_series, p_hv,
    p_hv_series, p_surr, p_surr_via_cardy, surround_constant, N_H_DIRECT_THRESHOLD,
};
pub use ode::{fuchsian_residual, FuchsianOrder};
pub use triangle::{n_h_triangle, p_h_triangle, p_hbar_v_triangle, p_hv_triangle, p_surr_triangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingFunction {
    #[serde(rename = "P_h")]
    Ph,
    #[serde(rename = "P_hv")]
    Phv,
    #[serde(rename = "P_hbar_v")]
    PhbarV,
    #[serde(rename = "N_h")]
    Nh,
    #[serde(rename = "P_surr")]
    Psurr,
}

impl CrossingFunction {
    pub const ALL: [CrossingFunction; 5] = [
        CrossingFunction::Ph,
        CrossingFunction::Phv,
        CrossingFunction::PhbarV,
        CrossingFunction::Nh,
        CrossingFunction::Psurr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CrossingFunction::Ph => "P_h",
            CrossingFunction::Phv => "P_hv",
            CrossingFunction::PhbarV => "P_hbar_v",
            CrossingFunction::Nh => "N_h",
            CrossingFunction::Psurr => "P_surr",
        }
    }

    /// Value at a half-plane coordinate.
    pub fn at_z(self, z: f64) -> Result<f64> {
        match self {
            CrossingFunction::Ph => p_h(z),
            CrossingFunction::Phv => p_hv(z),
            CrossingFunction::PhbarV => p_hbar_v(z),
            CrossingFunction::Nh => n_h(z),
            CrossingFunction::Psurr => p_surr(z),
        }
    }

    /// Value at a point of the triangle side (the base `B'C'` for `P_surr`).
    pub fn at_w(self, ctx: &EquianharmonicContext, w: Complex) -> Result<f64> {
        match self {
            CrossingFunction::Ph => p_h_triangle(ctx, w),
            CrossingFunction::Phv => p_hv_triangle(ctx, w),
            CrossingFunction::PhbarV => p_hbar_v_triangle(ctx, w),
            CrossingFunction::Nh => n_h_triangle(ctx, w),
            CrossingFunction::Psurr => p_surr_triangle(ctx, w),
        }
    }

    pub fn evaluate(self, ctx: &EquianharmonicContext, point: CrossingPoint) -> Result<f64> {
        match point.coordinate {
            Coordinate::TriangleW => self.at_w(ctx, point.value),
            _ => self.at_z(point.to_z(ctx)?),
        }
    }
}

impl fmt::Display for CrossingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CrossingFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CrossingFunction::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown function {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coordinate {
    HalfPlaneZ,
    TriangleW,
    AspectRatioR,
}

/// A point given in one of the three coordinate systems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingPoint {
    pub coordinate: Coordinate,
    pub value: Complex,
}

impl CrossingPoint {
    pub fn z(z: f64) -> Self {
        CrossingPoint {
            coordinate: Coordinate::HalfPlaneZ,
            value: Complex::new(z, 0.0),
        }
    }

    pub fn w(w: Complex) -> Self {
        CrossingPoint {
            coordinate: Coordinate::TriangleW,
            value: w,
        }
    }

    /// `w = B + t (C - B)` on the side `BC`.
    pub fn w_fraction(ctx: &EquianharmonicContext, t: f64) -> Self {
        CrossingPoint::w(TriangleDomain::new(ctx).point_on_bc(t))
    }

    pub fn r(r: f64) -> Self {
        CrossingPoint {
            coordinate: Coordinate::AspectRatioR,
            value: Complex::new(r, 0.0),
        }
    }

    /// The half-plane coordinate of this point (through `S` for triangle points).
    pub fn to_z(&self, ctx: &EquianharmonicContext) -> Result<f64> {
        match self.coordinate {
            Coordinate::HalfPlaneZ => {
                if self.value.im != 0.0 {
                    return Err(domain("CrossingPoint", "z must be real"));
                }
                Ok(self.value.re)
            }
            Coordinate::AspectRatioR => aspect_ratio_to_z(self.value.re),
            Coordinate::TriangleW => {
                let s = schwarz_s(ctx, self.value)?;
                if s.im.abs() > 1e-8 {
                    return Err(domain("CrossingPoint", format!("w = {} is off the side BC", self.value)));
                }
                Ok(s.re)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in CrossingFunction::ALL {
            assert_eq!(f.name().parse::<CrossingFunction>().unwrap(), f);
        }
        assert!("P_x".parse::<CrossingFunction>().is_err());
    }

    #[test]
    fn coordinate_dispatch() {
        let ctx = EquianharmonicContext::new();
        let by_r = CrossingFunction::Ph.evaluate(&ctx, CrossingPoint::r(1.0)).unwrap();
        assert!((by_r - 0.5).abs() < 1e-14);
        let by_w = CrossingFunction::Nh
            .evaluate(&ctx, CrossingPoint::w_fraction(&ctx, 0.5))
            .unwrap();
        let by_z = CrossingFunction::Nh.evaluate(&ctx, CrossingPoint::z(0.5)).unwrap();
        assert!((by_w - by_z).abs() < 1e-10);
        let p = CrossingPoint::w_fraction(&ctx, 0.3);
        let z = p.to_z(&ctx).unwrap();
        assert!((CrossingFunction::Phv.evaluate(&ctx, p).unwrap() - p_hv(z).unwrap()).abs() < 1e-10);
    }
}
