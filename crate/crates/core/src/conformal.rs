//! Schwarz maps between the upper half plane and equilateral geometry.
//!
//! `S(w) = 1/2 + wp'(w)/(2i)` sends the triangle with vertices
//! `A = 0`, `B = conj(W0)`, `C = W0` onto the upper half plane, with
//! `A, B, C -> inf, 0, 1`. `R(w) = wp'(w)` sends the isosceles triangle
//! `W0, 0, 2 omega2` onto the upper half plane slit along `[i, i inf)`.

use std::f64::consts::PI;

use crate::elliptic::EquianharmonicContext;
use crate::error::{domain, Error, Result};
use crate::Complex;

const VERTEX_SNAP: f64 = 1e-8;
const MAX_NEWTON: usize = 100;

fn i() -> Complex {
    Complex::new(0.0, 1.0)
}

fn interior_angle(v: Complex, p: Complex, q: Complex) -> f64 {
    ((p - v) / (q - v)).arg().abs()
}

fn segment_param(p: Complex, q: Complex, w: Complex, tol: f64) -> Option<f64> {
    let d = q - p;
    let t = ((w - p) * d.conj()).re / d.norm_sqr();
    let tc = t.clamp(0.0, 1.0);
    if (p + d * tc - w).norm() <= tol {
        Some(tc)
    } else {
        None
    }
}

/// The equilateral triangle `A = 0`, `B = conj(W0)`, `C = W0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleDomain {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
}

impl TriangleDomain {
    pub fn new(ctx: &EquianharmonicContext) -> Self {
        TriangleDomain {
            a: Complex::new(0.0, 0.0),
            b: ctx.w0().conj(),
            c: ctx.w0(),
        }
    }

    /// Interior angles at `A, B, C`.
    pub fn angles(&self) -> [f64; 3] {
        [
            interior_angle(self.a, self.b, self.c),
            interior_angle(self.b, self.c, self.a),
            interior_angle(self.c, self.a, self.b),
        ]
    }

    /// `B + t (C - B)`.
    pub fn point_on_bc(&self, t: f64) -> Complex {
        self.b + (self.c - self.b) * t
    }

    /// Fraction along `BC`, if `w` lies within `tol` of the segment.
    pub fn bc_fraction(&self, w: Complex, tol: f64) -> Option<f64> {
        segment_param(self.b, self.c, w, tol)
    }

    /// Whether `w` lies in the closed triangle, up to `tol`.
    pub fn contains(&self, w: Complex, tol: f64) -> bool {
        contains(&[self.a, self.b, self.c], w, tol)
    }

    pub fn barycenter(&self) -> Complex {
        (self.a + self.b + self.c) / 3.0
    }
}

/// The isosceles triangle `A' = W0`, `B' = 0`, `C' = 2 omega2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoscelesDomain {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
}

impl IsoscelesDomain {
    pub fn new(ctx: &EquianharmonicContext) -> Self {
        IsoscelesDomain {
            a: ctx.w0(),
            b: Complex::new(0.0, 0.0),
            c: Complex::new(2.0 * ctx.omega2(), 0.0),
        }
    }

    /// Interior angles at `A', B', C'`.
    pub fn angles(&self) -> [f64; 3] {
        [
            interior_angle(self.a, self.b, self.c),
            interior_angle(self.b, self.c, self.a),
            interior_angle(self.c, self.a, self.b),
        ]
    }

    /// `B' + t (C' - B')`.
    pub fn point_on_base(&self, t: f64) -> Complex {
        self.b + (self.c - self.b) * t
    }

    /// Fraction along `B'C'`, if `w` lies within `tol` of the segment.
    pub fn base_fraction(&self, w: Complex, tol: f64) -> Option<f64> {
        segment_param(self.b, self.c, w, tol)
    }

    pub fn contains(&self, w: Complex, tol: f64) -> bool {
        contains(&[self.a, self.b, self.c], w, tol)
    }
}

fn contains(v: &[Complex; 3], w: Complex, tol: f64) -> bool {
    let orient = |p: Complex, q: Complex| ((q - p).conj() * (w - p)).im / (q - p).norm();
    let signs = [orient(v[0], v[1]), orient(v[1], v[2]), orient(v[2], v[0])];
    signs.iter().all(|&s| s >= -tol) || signs.iter().all(|&s| s <= tol)
}

/// `S(w) = 1/2 + wp'(w)/(2i)`.
pub fn schwarz_s(ctx: &EquianharmonicContext, w: Complex) -> Result<Complex> {
    Ok(0.5 + ctx.wp_prime(w)? / (2.0 * i()))
}

/// `S'(w) = wp''(w)/(2i) = -3i wp(w)^2`.
pub fn schwarz_s_prime(ctx: &EquianharmonicContext, w: Complex) -> Result<Complex> {
    let p = ctx.wp(w)?;
    Ok(-3.0 * i() * p * p)
}

/// `R(w) = wp'(w)`.
pub fn schwarz_r(ctx: &EquianharmonicContext, w: Complex) -> Result<Complex> {
    ctx.wp_prime(w)
}

fn tolerance(z: Complex) -> f64 {
    1e-10 * z.norm().max(1.0)
}

/// Inverse of [`schwarz_s`] on the closed upper half plane.
///
/// Real arguments are located on the matching edge by bisection (the edge
/// parametrisations are monotone), then polished by Newton. Other arguments
/// are reached by continuation in `z` from the image of the barycenter,
/// `exp(i pi/3)`, with a Newton correction at each step.
pub fn schwarz_inverse(ctx: &EquianharmonicContext, z: Complex) -> Result<Complex> {
    let tri = TriangleDomain::new(ctx);
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(domain("schwarz_inverse", format!("z = {z} is not finite")));
    }
    if z.im < -1e-12 * z.norm().max(1.0) {
        return Err(domain("schwarz_inverse", format!("z = {z} is below the real axis")));
    }
    if z.norm() <= VERTEX_SNAP {
        return Ok(tri.b);
    }
    if (z - 1.0).norm() <= VERTEX_SNAP {
        return Ok(tri.c);
    }
    let w = if z.im.abs() <= 1e-14 * z.norm().max(1.0) {
        boundary_inverse(ctx, &tri, z.re)?
    } else {
        continuation_inverse(ctx, &tri, z)?
    };
    if !tri.contains(w, 1e-8) {
        return Err(Error::NonConvergence {
            function: "schwarz_inverse",
            detail: format!("solution {w} for z = {z} left the triangle"),
        });
    }
    Ok(w)
}

fn boundary_inverse(ctx: &EquianharmonicContext, tri: &TriangleDomain, x: f64) -> Result<Complex> {
    // edge(s), s in (0, 1], traced so that Re S increases with s
    let (start, end, increasing): (Complex, Complex, bool) = if x < 0.0 {
        (tri.a, tri.b, true)
    } else if x < 1.0 {
        (tri.b, tri.c, true)
    } else {
        (tri.a, tri.c, false)
    };
    let edge = |s: f64| start + (end - start) * s;
    let value = |s: f64| -> Result<f64> { Ok(schwarz_s(ctx, edge(s))?.re) };
    let (mut lo, mut hi) = if x >= 0.0 && x < 1.0 { (0.0, 1.0) } else { (1e-6, 1.0) };
    if x < 0.0 || x >= 1.0 {
        // widen the bracket towards the pole at A
        while (value(lo)? - x) * (value(hi)? - x) > 0.0 && lo > 1e-300 {
            lo *= 1e-3;
        }
    }
    for _ in 0..200 {
        if hi - lo <= 1e-15 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let below = value(mid)? < x;
        if below == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let w = edge(0.5 * (lo + hi));
    newton(ctx, Complex::new(x, 0.0), w).or(Ok(w))
}

fn newton(ctx: &EquianharmonicContext, z: Complex, mut w: Complex) -> Result<Complex> {
    let tol = tolerance(z);
    for _ in 0..MAX_NEWTON {
        let f = schwarz_s(ctx, w)? - z;
        if f.norm() <= tol {
            return Ok(w);
        }
        let d = schwarz_s_prime(ctx, w)?;
        if d.norm() == 0.0 {
            break;
        }
        w -= f / d;
    }
    let f = schwarz_s(ctx, w)? - z;
    if f.norm() <= tol {
        return Ok(w);
    }
    Err(Error::NonConvergence {
        function: "schwarz_inverse",
        detail: format!("Newton residual {} at z = {z}", f.norm()),
    })
}

// a few Newton steps that must contract; used inside the continuation
fn corrector(ctx: &EquianharmonicContext, tri: &TriangleDomain, z: Complex, w: Complex) -> Option<Complex> {
    let tol = tolerance(z);
    let mut w = w;
    let mut last = f64::INFINITY;
    for _ in 0..8 {
        let f = schwarz_s(ctx, w).ok()? - z;
        let r = f.norm();
        if r <= tol {
            return Some(w);
        }
        if r >= last {
            return None;
        }
        last = r;
        w -= f / schwarz_s_prime(ctx, w).ok()?;
        if !tri.contains(w, 1e-6) {
            return None;
        }
    }
    let r = (schwarz_s(ctx, w).ok()? - z).norm();
    (r <= 1e-6 * z.norm().max(1.0)).then_some(w)
}

fn continuation_inverse(ctx: &EquianharmonicContext, tri: &TriangleDomain, z: Complex) -> Result<Complex> {
    let z0 = Complex::from_polar(1.0, PI / 3.0);
    let mut w = tri.barycenter();
    let mut s: f64 = 0.0;
    let mut step: f64 = 0.25;
    let mut steps = 0;
    while s < 1.0 {
        steps += 1;
        if steps > 10_000 || step < 1e-12 {
            return Err(Error::NonConvergence {
                function: "schwarz_inverse",
                detail: format!("continuation stalled at fraction {s} for z = {z}"),
            });
        }
        let next = (s + step).min(1.0);
        let target = z0 + (z - z0) * next;
        match corrector(ctx, tri, target, w) {
            Some(wn) => {
                w = wn;
                s = next;
                step *= 1.5;
            }
            None => step *= 0.5,
        }
    }
    newton(ctx, z, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> EquianharmonicContext {
        EquianharmonicContext::new()
    }

    #[test]
    fn triangle_angles() {
        let c = ctx();
        for a in TriangleDomain::new(&c).angles() {
            assert!((a - PI / 3.0).abs() < 1e-12);
        }
        let iso = IsoscelesDomain::new(&c);
        let [a, b, cc] = iso.angles();
        assert!((a - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!((b - PI / 6.0).abs() < 1e-12);
        assert!((cc - PI / 6.0).abs() < 1e-12);
        let scaled = Complex::new(1.0, 3f64.sqrt() / 3.0) * c.omega2();
        assert!((iso.a - scaled).norm() < 1e-15);
    }

    #[test]
    fn anchor_values() {
        let c = ctx();
        let tri = TriangleDomain::new(&c);
        let mid = Complex::new(c.omega2(), 0.0);
        assert!((schwarz_s(&c, mid).unwrap() - 0.5).norm() < 1e-10);
        assert!(schwarz_s(&c, tri.b).unwrap().norm() < 1e-10);
        assert!((schwarz_s(&c, tri.c).unwrap() - 1.0).norm() < 1e-10);
        assert!((schwarz_r(&c, c.w0()).unwrap() - i()).norm() < 1e-11);
        assert!((schwarz_r(&c, c.w0().conj()).unwrap() + i()).norm() < 1e-11);
        assert!(schwarz_r(&c, mid).unwrap().norm() < 1e-11);
    }

    #[test]
    fn reference_points_on_bc() {
        let c = ctx();
        let tri = TriangleDomain::new(&c);
        let cases = [
            (0.3, 0.138_352_683_051_042_983),
            (0.4, 0.297_704_694_279_660_096),
            (0.6, 0.702_295_305_720_339_904),
        ];
        for (t, want) in cases {
            let s = schwarz_s(&c, tri.point_on_bc(t)).unwrap();
            assert!((s - want).norm() < 1e-13, "t = {t}: {s}");
        }
    }

    #[test]
    fn bc_maps_into_unit_interval() {
        let c = ctx();
        let tri = TriangleDomain::new(&c);
        let mut prev = 0.0;
        for k in 1..50 {
            let s = schwarz_s(&c, tri.point_on_bc(k as f64 / 50.0)).unwrap();
            assert!(s.im.abs() <= 1e-10);
            assert!(s.re > prev && s.re < 1.0);
            prev = s.re;
        }
    }

    #[test]
    fn edges_map_to_real_rays() {
        let c = ctx();
        let tri = TriangleDomain::new(&c);
        for k in 1..20 {
            let s = k as f64 / 20.0;
            let ab = schwarz_s(&c, tri.b * s).unwrap();
            assert!(ab.im.abs() <= 1e-9 * ab.norm().max(1.0) && ab.re <= 1e-9);
            let ca = schwarz_s(&c, tri.c * s).unwrap();
            assert!(ca.im.abs() <= 1e-9 * ca.norm().max(1.0) && ca.re >= 1.0 - 1e-9);
        }
    }

    fn interior_samples(tri: &TriangleDomain, n: usize) -> Vec<Complex> {
        let mut pts = Vec::new();
        let mut state = 12_345u64;
        let mut next = || {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1);
            ((state >> 11) as f64) / (1u64 << 53) as f64
        };
        while pts.len() < n {
            let (u, v) = (next(), next());
            if u + v < 0.96 && u > 0.02 && v > 0.02 {
                pts.push(tri.a + (tri.b - tri.a) * u + (tri.c - tri.a) * v);
            }
        }
        pts
    }

    #[test]
    fn interior_maps_to_upper_half_plane() {
        let c = ctx();
        let tri = TriangleDomain::new(&c);
        for w in interior_samples(&tri, 100) {
            assert!(schwarz_s(&c, w).unwrap().im > 0.0, "w = {w}");
        }
    }

    #[test]
    fn round_trip_from_triangle() {
        let c = ctx();
        let tri = TriangleDomain::new(&c);
        for w in interior_samples(&tri, 20) {
            let z = schwarz_s(&c, w).unwrap();
            let back = schwarz_inverse(&c, z).unwrap();
            assert!((back - w).norm() <= 1e-9, "w = {w}, back = {back}");
        }
    }

    #[test]
    fn round_trip_from_half_plane() {
        let c = ctx();
        let pts = [
            Complex::new(0.5, 0.0),
            Complex::new(0.05, 0.0),
            Complex::new(0.93, 0.0),
            Complex::new(-2.0, 0.0),
            Complex::new(7.0, 0.0),
            Complex::new(0.3, 0.2),
            Complex::new(-5.0, 0.1),
            Complex::new(1.2, 3.0),
            Complex::new(0.0, 0.05),
            Complex::new(40.0, 15.0),
        ];
        for z in pts {
            let w = schwarz_inverse(&c, z).unwrap();
            let back = schwarz_s(&c, w).unwrap();
            assert!((back - z).norm() <= 1e-10 * z.norm().max(1.0), "z = {z}: {back}");
        }
    }

    #[test]
    fn inverse_anchors() {
        let c = ctx();
        let tri = TriangleDomain::new(&c);
        let mid = schwarz_inverse(&c, Complex::new(0.5, 0.0)).unwrap();
        assert!((mid - c.omega2()).norm() < 1e-10);
        assert_eq!(schwarz_inverse(&c, Complex::new(0.0, 0.0)).unwrap(), tri.b);
        assert_eq!(schwarz_inverse(&c, Complex::new(1.0, 0.0)).unwrap(), tri.c);
        assert!(schwarz_inverse(&c, Complex::new(0.3, -0.1)).is_err());
    }
}
