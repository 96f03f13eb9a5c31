//! Equianharmonic Weierstrass functions, `g2 = 0`, `g3 = 1`.
//!
//! The period lattice `L = 2 omega Z + 2 omega' Z` is triangular with a
//! rotational symmetry of order six. Arguments are first reduced to the
//! Voronoi cell of the origin (the hexagon of points closer to 0 than to any
//! other lattice point), where `|w| <= 2 omega2 / sqrt 3`. The Laurent series
//! about 0 converges for `|w| < 2 omega2`, and because only every third
//! coefficient is nonzero the series is really one in `w^6` whose terms shrink
//! at least by a factor 27 per step on the cell.
//!
//! `zeta` and `log_sigma` pick up the quasi-periods `eta = zeta(omega)`,
//! `eta' = zeta(omega')` when the reduction moves the argument.

use std::f64::consts::PI;

use crate::error::{domain, pole, Result};
use crate::specfun::gamma_real;
use crate::{Complex, SQRT3};

const SERIES_TERMS: usize = 24;
const POLE_RADIUS: f64 = 1e-9;

/// Lattice offset `(m, n)`: `w = w' + 2 m omega + 2 n omega'`.
pub type LatticeOffset = (i64, i64);

/// Precomputed constants and series coefficients for `g2 = 0`, `g3 = 1`.
#[derive(Debug, Clone)]
pub struct EquianharmonicContext {
    omega2: f64,
    omega: Complex,
    omega_prime: Complex,
    w0: Complex,
    eta: Complex,
    eta_prime: Complex,
    // c_k for k = 0..=3*SERIES_TERMS, with c_0 = c_1 = 0
    wp_coeffs: Vec<f64>,
    // coefficients of Log(sigma(w)/w) in powers of w^6
    sigma_coeffs: Vec<f64>,
    branch_radius: f64,
}

impl Default for EquianharmonicContext {
    fn default() -> Self {
        Self::new()
    }
}

impl EquianharmonicContext {
    pub fn new() -> Self {
        let kmax = 3 * SERIES_TERMS;
        let mut c = vec![0.0; kmax + 1];
        c[3] = 1.0 / 28.0;
        for k in 4..=kmax {
            let s: f64 = (2..=k - 2).map(|m| c[m] * c[k - m]).sum();
            c[k] = 3.0 * s / ((2 * k + 1) as f64 * (k - 3) as f64);
        }
        let sigma_coeffs = (1..=SERIES_TERMS)
            .map(|j| {
                let k = 3 * j;
                -c[k] / ((2 * k - 1) as f64 * (2 * k) as f64)
            })
            .collect();

        let omega2 = gamma_real(1.0 / 3.0).expect("gamma(1/3)").powi(3) / (4.0 * PI);
        let omega = Complex::new(0.5, -SQRT3 / 2.0) * omega2;
        let omega_prime = omega.conj();
        let mut ctx = EquianharmonicContext {
            omega2,
            omega,
            omega_prime,
            w0: Complex::new(1.0, SQRT3 / 3.0) * omega2,
            eta: Complex::new(0.0, 0.0),
            eta_prime: Complex::new(0.0, 0.0),
            wp_coeffs: c,
            sigma_coeffs,
            branch_radius: 2.0 * omega2 / SQRT3 * (1.0 + 1e-12),
        };
        ctx.eta = ctx.zeta_series(omega);
        ctx.eta_prime = ctx.eta.conj();
        ctx
    }

    /// A context whose `log_sigma` accepts arguments up to `radius` in modulus.
    pub fn with_branch_radius(mut self, radius: f64) -> Self {
        self.branch_radius = radius;
        self
    }

    /// Real half-period `Gamma(1/3)^3 / (4 pi)`.
    pub fn omega2(&self) -> f64 {
        self.omega2
    }

    pub fn omega(&self) -> Complex {
        self.omega
    }

    pub fn omega_prime(&self) -> Complex {
        self.omega_prime
    }

    /// The triangle vertex `(1 + i/sqrt 3) omega2`, where `wp` vanishes.
    pub fn w0(&self) -> Complex {
        self.w0
    }

    /// `zeta(omega)`.
    pub fn eta(&self) -> Complex {
        self.eta
    }

    pub fn eta_prime(&self) -> Complex {
        self.eta_prime
    }

    /// Circumradius of the Voronoi cell, `2 omega2 / sqrt 3 = |W0|`.
    pub fn cell_radius(&self) -> f64 {
        2.0 * self.omega2 / SQRT3
    }

    pub fn branch_radius(&self) -> f64 {
        self.branch_radius
    }

    /// Laurent coefficients `c_k` of `wp(w) = 1/w^2 + sum c_k w^(2k-2)`.
    pub fn wp_coeffs(&self) -> &[f64] {
        &self.wp_coeffs
    }

    /// Coefficients `s_j` of `Log(sigma(w)/w) = sum s_j w^(6j)`, `j >= 1`.
    pub fn sigma_coeffs(&self) -> &[f64] {
        &self.sigma_coeffs
    }

    /// Reduces `w` modulo the lattice to the Voronoi cell of the origin.
    /// Points already in the closed cell are returned unchanged.
    pub fn reduce_to_fundamental(&self, w: Complex) -> (Complex, LatticeOffset) {
        if w.norm() <= self.cell_radius() * (1.0 + 1e-12) && self.nearest_is_origin(w) {
            return (w, (0, 0));
        }
        let a = 2.0 * self.omega;
        let b = 2.0 * self.omega_prime;
        // solve w = x a + y b over the reals
        let det = a.re * b.im - a.im * b.re;
        let x = (w.re * b.im - w.im * b.re) / det;
        let y = (a.re * w.im - a.im * w.re) / det;
        let (x0, y0) = (x.floor() as i64, y.floor() as i64);
        let mut best = (w, (0, 0), f64::INFINITY);
        for m in x0 - 1..=x0 + 2 {
            for n in y0 - 1..=y0 + 2 {
                let r = w - a * m as f64 - b * n as f64;
                if r.norm() < best.2 {
                    best = (r, (m, n), r.norm());
                }
            }
        }
        (best.0, best.1)
    }

    fn nearest_is_origin(&self, w: Complex) -> bool {
        // the six nearest lattice points are the rotations of 2 omega2
        let mut p = Complex::new(2.0 * self.omega2, 0.0);
        let rot = Complex::from_polar(1.0, PI / 3.0);
        for _ in 0..6 {
            if (w - p).norm() < w.norm() * (1.0 - 1e-12) {
                return false;
            }
            p *= rot;
        }
        true
    }

    fn lattice_point(&self, (m, n): LatticeOffset) -> Complex {
        2.0 * self.omega * m as f64 + 2.0 * self.omega_prime * n as f64
    }

    fn reduce_checked(&self, function: &'static str, w: Complex) -> Result<(Complex, LatticeOffset)> {
        let (r, off) = self.reduce_to_fundamental(w);
        if r.norm() < POLE_RADIUS {
            return Err(pole(function, w));
        }
        Ok((r, off))
    }

    // sum_j c_{3j} u^j * weight(j), u = w^6
    fn series(&self, w: Complex, weight: impl Fn(usize) -> f64) -> Complex {
        let u = w.powi(6);
        let mut acc = Complex::new(0.0, 0.0);
        for j in (1..=SERIES_TERMS).rev() {
            acc = (acc + self.wp_coeffs[3 * j] * weight(j)) * u;
        }
        acc
    }

    fn zeta_series(&self, w: Complex) -> Complex {
        (1.0 - self.series(w, |j| 1.0 / (6 * j - 1) as f64)) / w
    }

    /// `wp(w)`.
    pub fn wp(&self, w: Complex) -> Result<Complex> {
        let (r, _) = self.reduce_checked("wp", w)?;
        Ok((1.0 + self.series(r, |_| 1.0)) / (r * r))
    }

    /// `wp'(w)`.
    pub fn wp_prime(&self, w: Complex) -> Result<Complex> {
        let (r, _) = self.reduce_checked("wp_prime", w)?;
        Ok((-2.0 + self.series(r, |j| (6 * j - 2) as f64)) / (r * r * r))
    }

    /// `wp''(w) = 6 wp(w)^2`.
    pub fn wp_double_prime(&self, w: Complex) -> Result<Complex> {
        let p = self.wp(w)?;
        Ok(6.0 * p * p)
    }

    /// Weierstrass `zeta(w)`, with `zeta' = -wp`.
    pub fn zeta(&self, w: Complex) -> Result<Complex> {
        let (r, (m, n)) = self.reduce_checked("zeta", w)?;
        let shift = 2.0 * self.eta * m as f64 + 2.0 * self.eta_prime * n as f64;
        Ok(self.zeta_series(r) + shift)
    }

    /// Principal branch of `log sigma(w)`, for `|w|` up to the branch radius.
    pub fn log_sigma(&self, w: Complex) -> Result<Complex> {
        if w.norm() > self.branch_radius {
            return Err(domain(
                "log_sigma",
                format!("|w| = {} exceeds the branch radius {}", w.norm(), self.branch_radius),
            ));
        }
        let (r, off) = self.reduce_checked("log_sigma", w)?;
        Ok(wrap_principal(self.log_sigma_unwrapped(r, off)))
    }

    fn log_sigma_unwrapped(&self, r: Complex, off: LatticeOffset) -> Complex {
        let u = r.powi(6);
        let mut acc = Complex::new(0.0, 0.0);
        for s in self.sigma_coeffs.iter().rev() {
            acc = (acc + s) * u;
        }
        r.ln() + acc + self.quasi_log_factor(r, off)
    }

    // log of (-1)^(m+n+mn) exp(H (r + Omega/2)), H = 2 m eta + 2 n eta'
    fn quasi_log_factor(&self, r: Complex, (m, n): LatticeOffset) -> Complex {
        if (m, n) == (0, 0) {
            return Complex::new(0.0, 0.0);
        }
        let h = 2.0 * self.eta * m as f64 + 2.0 * self.eta_prime * n as f64;
        let mut v = h * (r + self.lattice_point((m, n)) / 2.0);
        if (m + n + m * n).rem_euclid(2) == 1 {
            v += Complex::new(0.0, PI);
        }
        v
    }

    /// `sigma(w)`, entire; any argument.
    pub fn sigma(&self, w: Complex) -> Complex {
        let (r, off) = self.reduce_to_fundamental(w);
        if r.norm() < POLE_RADIUS {
            return r * self.quasi_log_factor(r, off).exp();
        }
        self.log_sigma_unwrapped(r, off).exp()
    }
}

fn wrap_principal(v: Complex) -> Complex {
    let mut im = v.im.rem_euclid(2.0 * PI);
    if im > PI {
        im -= 2.0 * PI;
    }
    Complex::new(v.re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numdiff::derivative;

    fn ctx() -> EquianharmonicContext {
        EquianharmonicContext::new()
    }

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    fn triangle_grid(c: &EquianharmonicContext, n: usize) -> Vec<Complex> {
        // barycentric grid over the triangle 0, conj(W0), W0
        let (b, cc) = (c.w0().conj(), c.w0());
        let mut pts = Vec::new();
        for i in 0..=n {
            for j in 0..=n - i {
                let (s, t) = (i as f64 / n as f64, j as f64 / n as f64);
                let w = b * s + cc * t;
                if w.norm() > 1e-3 {
                    pts.push(w);
                }
            }
        }
        pts
    }

    #[test]
    fn constants() {
        let c = ctx();
        assert!((c.omega2() - 1.529_954_037_057_192_875).abs() < 1e-14);
        assert!(close(c.omega() + c.omega_prime(), Complex::new(c.omega2(), 0.0), 1e-15));
        let eta = Complex::new(0.296_381_348_769_632_065, 0.513_347_554_484_794_295);
        assert!(close(c.eta(), eta, 1e-14));
        // Legendre relation: eta omega' - eta' omega = i pi / 2
        let lhs = c.eta() * c.omega_prime() - c.eta_prime() * c.omega();
        assert!(close(lhs, Complex::new(0.0, PI / 2.0), 1e-13));
    }

    #[test]
    fn coefficients_vanish_off_multiples_of_three() {
        let c = ctx();
        for (k, &v) in c.wp_coeffs().iter().enumerate() {
            if k % 3 != 0 {
                assert_eq!(v, 0.0, "c_{k}");
            }
        }
        assert!((c.wp_coeffs()[6] - 1.0 / (28.0 * 28.0 * 13.0)).abs() < 1e-18);
    }

    #[test]
    fn reference_values() {
        let c = ctx();
        let w = Complex::new(0.7, 0.0);
        assert!(close(c.wp(w).unwrap(), Complex::new(2.049_394_098_682_584_684, 0.0), 1e-14));
        assert!(close(c.wp_prime(w).unwrap(), Complex::new(-5.781_864_182_660_865_558, 0.0), 1e-14));
        assert!(close(c.zeta(w).unwrap(), Complex::new(1.427_370_752_175_527_466, 0.0), 1e-14));
        assert!(close(c.log_sigma(w).unwrap(), Complex::new(-0.356_815_012_561_335_775, 0.0), 1e-14));

        let w = Complex::new(1.2, 0.4);
        let cases = [
            (c.wp(w).unwrap(), Complex::new(0.524_577_520_046_327_434, -0.287_313_740_403_381_877)),
            (c.wp_prime(w).unwrap(), Complex::new(-0.405_805_376_336_883_618, 1.052_094_622_832_054_441)),
            (c.zeta(w).unwrap(), Complex::new(0.750_986_382_745_511_931, -0.273_066_901_325_208_330)),
            (c.log_sigma(w).unwrap(), Complex::new(0.236_727_577_407_369_115, 0.317_194_676_922_819_616)),
        ];
        for (got, want) in cases {
            assert!(close(got, want, 1e-13), "{got} vs {want}");
        }
    }

    #[test]
    fn special_points() {
        let c = ctx();
        let mid = Complex::new(c.omega2(), 0.0);
        assert!((c.wp(mid).unwrap() - 4f64.powf(-1.0 / 3.0)).norm() < 1e-12);
        assert!(c.wp_prime(mid).unwrap().norm() < 1e-12);
        for w in [c.w0(), c.w0().conj()] {
            assert!(c.wp(w).unwrap().norm() < 1e-12);
        }
        assert!((c.wp_prime(c.w0()).unwrap() - Complex::new(0.0, 1.0)).norm() < 1e-11);
        assert!((c.wp_prime(c.w0().conj()).unwrap() - Complex::new(0.0, -1.0)).norm() < 1e-11);

        let base = PI / (2.0 * SQRT3 * c.omega2());
        let z_bar = c.zeta(c.w0().conj()).unwrap() - base;
        assert!((z_bar - Complex::new(0.0, PI / (6.0 * c.omega2()))).norm() < 1e-12);
        let z = c.zeta(c.w0()).unwrap() - base;
        assert!((z - Complex::new(0.0, -PI / (6.0 * c.omega2()))).norm() < 1e-12);
    }

    #[test]
    fn log_sigma_special_values() {
        let c = ctx();
        let mid = Complex::new(c.omega2(), 0.0);
        let want = PI / (4.0 * SQRT3) + 2f64.ln() / 3.0 - 3f64.ln() / 4.0;
        assert!((c.log_sigma(mid).unwrap() - want).norm() < 1e-11);
        let want_b = Complex::new(PI / (3.0 * SQRT3), -PI / 6.0);
        assert!((c.log_sigma(c.w0().conj()).unwrap() - want_b).norm() < 1e-12);
        let double = -c.log_sigma(mid).unwrap() + base_slope(&c) * mid - PI / (6.0 * SQRT3);
        let want_d = (PI / SQRT3 + 3.0 * 3f64.ln() - 4.0 * 2f64.ln()) / 12.0;
        assert!((double - want_d).norm() < 1e-12);
    }

    fn base_slope(c: &EquianharmonicContext) -> f64 {
        PI / (2.0 * SQRT3 * c.omega2())
    }

    #[test]
    fn log_sigma_outside_branch_region() {
        let c = ctx();
        assert!(c.log_sigma(Complex::new(2.0, 0.0)).is_err());
        let wide = ctx().with_branch_radius(10.0);
        // sigma is odd with a simple zero at each lattice point
        let w = Complex::new(2.0, 0.3);
        let direct = wide.sigma(w);
        assert!((wide.log_sigma(w).unwrap().exp() - direct).norm() < 1e-12 * direct.norm());
    }

    #[test]
    fn reduction_examples() {
        let c = ctx();
        let (r, off) = c.reduce_to_fundamental(Complex::new(2.0 * c.omega2() + 0.1, 0.0));
        assert!((r - Complex::new(0.1, 0.0)).norm() < 1e-14);
        assert_eq!(off, (1, 1));
        assert_eq!(c.reduce_to_fundamental(Complex::new(0.3, 0.0)), (Complex::new(0.3, 0.0), (0, 0)));
        let (r, off) = c.reduce_to_fundamental(-2.0 * c.omega() + Complex::new(0.0, 0.2));
        assert!((r - Complex::new(0.0, 0.2)).norm() < 1e-14);
        assert_eq!(off, (-1, 0));
    }

    #[test]
    fn poles() {
        let c = ctx();
        assert!(c.wp(Complex::new(0.0, 0.0)).is_err());
        assert!(c.wp(2.0 * c.omega()).is_err());
        assert!(c.zeta(Complex::new(2.0 * c.omega2(), 0.0)).is_err());
    }

    #[test]
    fn differential_equation_on_triangle() {
        let c = ctx();
        let grid = triangle_grid(&c, 19);
        assert!(grid.len() >= 200);
        for w in grid {
            let p = c.wp(w).unwrap();
            let dp = c.wp_prime(w).unwrap();
            let res = (dp * dp - 4.0 * p * p * p + 1.0).norm();
            assert!(res <= 1e-10 * p.norm().powi(3).max(1.0), "w = {w}: {res}");
        }
    }

    #[test]
    fn parity_rotation_periodicity() {
        let c = ctx();
        let rot = Complex::from_polar(1.0, PI / 3.0);
        let rot2 = Complex::from_polar(1.0, -2.0 * PI / 3.0);
        for w in triangle_grid(&c, 12) {
            let p = c.wp(w).unwrap();
            let dp = c.wp_prime(w).unwrap();
            assert!(close(c.wp(-w).unwrap(), p, 1e-11));
            assert!(close(c.wp_prime(-w).unwrap(), -dp, 1e-11));
            assert!(close(c.zeta(-w).unwrap(), -c.zeta(w).unwrap(), 1e-11));
            assert!(close(c.wp(rot * w).unwrap(), rot2 * p, 1e-11));
            assert!(close(c.wp_prime(rot * w).unwrap(), -dp, 1e-11));
            assert!(close(c.wp(w + 2.0 * c.omega()).unwrap(), p, 1e-10));
            assert!(close(c.wp(w + 2.0 * c.omega_prime()).unwrap(), p, 1e-10));
        }
    }

    #[test]
    fn derivative_consistency() {
        let c = ctx();
        for w in [Complex::new(0.7, 0.1), Complex::new(1.2, -0.3), Complex::new(1.4, 0.5)] {
            let (dwp, _) = derivative(|x| c.wp(x).unwrap(), w, 1, 0.05);
            assert!(close(dwp, c.wp_prime(w).unwrap(), 1e-7));
            let (dz, _) = derivative(|x| c.zeta(x).unwrap(), w, 1, 0.05);
            assert!(close(dz, -c.wp(w).unwrap(), 1e-7));
            let (dls, _) = derivative(|x| c.log_sigma(x).unwrap(), w, 1, 0.05);
            assert!(close(dls, c.zeta(w).unwrap(), 1e-7));
        }
    }

    #[test]
    fn quasi_periodicity_of_zeta() {
        let c = ctx();
        let w = Complex::new(0.4, 0.2);
        let shifted = c.zeta(w + 2.0 * c.omega()).unwrap();
        assert!(close(shifted, c.zeta(w).unwrap() + 2.0 * c.eta(), 1e-12));
    }
}
