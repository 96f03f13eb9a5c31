//! Crossing functions on the equilateral triangle `A = 0`, `B = conj(W0)`,
//! `C = W0`, parametrised by the point `w` on the side `BC`, and the
//! surrounding probability on the isosceles triangle `W0, 0, 2 omega2`.

use std::f64::consts::PI;

use crate::conformal::{IsoscelesDomain, TriangleDomain};
use crate::elliptic::EquianharmonicContext;
use crate::error::{domain, Error, Result};
use crate::{Complex, SQRT3};

const ON_SEGMENT: f64 = 1e-9;
const MAX_IMAG: f64 = 1e-8;

fn on_bc(ctx: &EquianharmonicContext, function: &'static str, w: Complex) -> Result<f64> {
    TriangleDomain::new(ctx)
        .bc_fraction(w, ON_SEGMENT)
        .ok_or_else(|| domain(function, format!("w = {w} is not on the side BC")))
}

fn real_part(function: &'static str, v: Complex) -> Result<f64> {
    if v.im.abs() > MAX_IMAG {
        return Err(Error::Precondition {
            function,
            detail: format!("value {v} is not real on BC"),
        });
    }
    Ok(v.re)
}

/// `(w - B) / (C - B)`: crossing probability is linear along `BC`.
pub fn p_h_triangle(ctx: &EquianharmonicContext, w: Complex) -> Result<f64> {
    on_bc(ctx, "P_h_triangle", w)?;
    let tri = TriangleDomain::new(ctx);
    Ok(((w - tri.b) / (tri.c - tri.b)).re)
}

/// `-(3 sqrt 3 / pi) Log sigma(w) + (3/2)(w / omega2) - 1/2`.
pub fn p_hv_triangle(ctx: &EquianharmonicContext, w: Complex) -> Result<f64> {
    on_bc(ctx, "P_hv_triangle", w)?;
    let v = -3.0 * SQRT3 / PI * ctx.log_sigma(w)? + 1.5 * w / ctx.omega2() - 0.5;
    real_part("P_hv_triangle", v)
}

/// `P_h - P_hv` on `BC`.
pub fn p_hbar_v_triangle(ctx: &EquianharmonicContext, w: Complex) -> Result<f64> {
    Ok(p_h_triangle(ctx, w)? - p_hv_triangle(ctx, w)?)
}

/// `-(sqrt 3/4 pi) {6 Log sigma(w) + Log[1/2 - wp'(w)/2i]}
///  + ((3 - sqrt 3 i)/4)(w/omega2) + sqrt 3 i/4`.
pub fn n_h_triangle(ctx: &EquianharmonicContext, w: Complex) -> Result<f64> {
    let t = on_bc(ctx, "N_h_triangle", w)?;
    let tri = TriangleDomain::new(ctx);
    if (w - tri.c).norm() < 1e-9 || t >= 1.0 {
        return Err(domain("N_h_triangle", "logarithmic divergence at C"));
    }
    let i = Complex::new(0.0, 1.0);
    let one_minus_s = 0.5 - ctx.wp_prime(w)? / (2.0 * i);
    let braces = 6.0 * ctx.log_sigma(w)? + one_minus_s.ln();
    let v = -SQRT3 / (4.0 * PI) * braces
        + Complex::new(3.0, -SQRT3) / 4.0 * (w / ctx.omega2())
        + i * (SQRT3 / 4.0);
    real_part("N_h_triangle", v)
}

/// `(w - B') / (C' - B') = w / (2 omega2)` on the base `[0, 2 omega2]`.
pub fn p_surr_triangle(ctx: &EquianharmonicContext, w: Complex) -> Result<f64> {
    IsoscelesDomain::new(ctx)
        .base_fraction(w, ON_SEGMENT)
        .ok_or_else(|| domain("P_surr_triangle", format!("w = {w} is not on the base B'C'")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::{schwarz_r, schwarz_s};
    use crate::crossing::halfplane::{n_h, p_h, p_hv, p_surr};

    fn ctx() -> EquianharmonicContext {
        EquianharmonicContext::new()
    }

    fn mid(c: &EquianharmonicContext) -> Complex {
        Complex::new(c.omega2(), 0.0)
    }

    #[test]
    fn midpoint_values() {
        let c = ctx();
        let m = mid(&c);
        assert!((p_h_triangle(&c, m).unwrap() - 0.5).abs() < 1e-15);
        let phv = 0.25 + SQRT3 / (4.0 * PI) * (3.0 * 3f64.ln() - 4.0 * 2f64.ln());
        assert!((p_hv_triangle(&c, m).unwrap() - phv).abs() < 1e-12);
        let nh = 0.375 + SQRT3 / (8.0 * PI) * (3.0 * 3f64.ln() - 2.0 * 2f64.ln());
        assert!((n_h_triangle(&c, m).unwrap() - nh).abs() < 1e-12);
        assert!((p_surr_triangle(&c, m).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn endpoints() {
        let c = ctx();
        let tri = TriangleDomain::new(&c);
        assert!(p_h_triangle(&c, tri.b).unwrap().abs() < 1e-15);
        assert!((p_h_triangle(&c, tri.c).unwrap() - 1.0).abs() < 1e-15);
        assert!(p_hv_triangle(&c, tri.b).unwrap().abs() < 1e-10);
        assert!(p_hv_triangle(&c, tri.c).unwrap().abs() < 1e-10);
        assert!(n_h_triangle(&c, tri.c).is_err());
        assert_eq!(p_surr_triangle(&c, Complex::new(0.0, 0.0)).unwrap(), 0.0);
        assert_eq!(p_surr_triangle(&c, Complex::new(2.0 * c.omega2(), 0.0)).unwrap(), 1.0);
    }

    #[test]
    fn off_segment_is_rejected() {
        let c = ctx();
        assert!(p_h_triangle(&c, Complex::new(1.0, 0.0)).is_err());
        assert!(p_hv_triangle(&c, Complex::new(0.5, 0.1)).is_err());
        assert!(p_surr_triangle(&c, Complex::new(1.0, 0.2)).is_err());
    }

    #[test]
    fn reference_values() {
        let c = ctx();
        let tri = TriangleDomain::new(&c);
        let v = p_hv_triangle(&c, tri.point_on_bc(0.3)).unwrap();
        assert!((v - 0.259_562_172_010_377_382).abs() < 1e-13);
        let v = p_hv_triangle(&c, tri.point_on_bc(0.4)).unwrap();
        assert!((v - 0.306_019_415_547_802_724).abs() < 1e-13);
    }

    #[test]
    fn cubic_contact_at_b() {
        let c = ctx();
        let tri = TriangleDomain::new(&c);
        let gap = |t: f64| {
            let w = tri.point_on_bc(t);
            p_h_triangle(&c, w).unwrap() - p_hv_triangle(&c, w).unwrap()
        };
        let ratio = gap(2e-2) / gap(1e-2);
        assert!((ratio - 8.0).abs() < 0.16, "ratio {ratio}");
    }

    #[test]
    fn agreement_through_schwarz_map() {
        let c = ctx();
        let tri = TriangleDomain::new(&c);
        let w = tri.point_on_bc(0.3);
        let z = schwarz_s(&c, w).unwrap().re;
        assert!((p_h_triangle(&c, w).unwrap() - p_h(z).unwrap()).abs() < 1e-10);
        let w = tri.point_on_bc(0.4);
        let z = schwarz_s(&c, w).unwrap().re;
        assert!((n_h_triangle(&c, w).unwrap() - n_h(z).unwrap()).abs() < 1e-9);
        let w = tri.point_on_bc(0.6);
        let z = schwarz_s(&c, w).unwrap().re;
        let lhs = 2.0 * n_h_triangle(&c, w).unwrap() - p_h_triangle(&c, w).unwrap() - p_hv_triangle(&c, w).unwrap();
        assert!((lhs - SQRT3 / (2.0 * PI) * (1.0 / (1.0 - z)).ln()).abs() < 1e-9);
        for k in 1..20 {
            let w = tri.point_on_bc(0.02 + 0.96 * k as f64 / 20.0);
            let z = schwarz_s(&c, w).unwrap().re;
            assert!((p_hv_triangle(&c, w).unwrap() - p_hv(z).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn surround_linearity_through_r() {
        let c = ctx();
        for &f in &[0.25, 0.5, 0.8, 1.3, 1.7] {
            let w = Complex::new(f * c.omega2(), 0.0);
            let z = schwarz_r(&c, w).unwrap();
            assert!(z.im.abs() < 1e-12);
            let want = p_surr_triangle(&c, w).unwrap();
            assert!((p_surr(z.re).unwrap() - want).abs() <= 1e-9, "w = {w}");
        }
    }
}
