//! Weierstrass elliptic functions for the lattice spanned by `1` and `tau`.
//!
//! Sums over the lattice are done one row at a time: the inner sum over
//! `m + n tau` for fixed `n` has the closed form `pi^2 csc^2(pi (z - n tau))`,
//! and the remaining sum over rows converges geometrically. The invariants
//! `g2`, `g3` come from the Eisenstein q-expansions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::Laurent;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Distance to the lattice below which a point counts as a lattice point.
pub const LATTICE_POINT_TOL: f64 = 1e-8;

/// Highest derivative of `wp` that can be evaluated.
pub const MAX_DERIVATIVE: usize = 9;

/// A lattice `Z + tau Z` with its invariants and quasi-periods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    tau: Complex64,
    g2: Complex64,
    g3: Complex64,
    eta1: Complex64,
    eta2: Complex64,
    rows: i64,
}

/// `wp^(k)` written as `P(wp)` for even `k` and `P(wp) wp'` for odd `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeForm {
    pub poly: Vec<Complex64>,
    pub has_wp_prime: bool,
}

fn csc2(w: Complex64) -> Complex64 {
    let s = w.sin();
    (s * s).inv()
}

impl Lattice {
    pub fn new(tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::InvalidLattice(tau));
        }
        // tail rows decay like exp(-2 pi n Im tau)
        let rows = (6.8 / tau.im).ceil() as i64 + 1;
        let (g2, g3) = eisenstein_invariants(tau);
        let mut eta1 = Complex64::new(PI * PI / 3.0, 0.0);
        for n in 1..=rows {
            eta1 += 2.0 * PI * PI * csc2(PI * tau * n as f64);
        }
        let mut lat = Self {
            tau,
            g2,
            g3,
            eta1,
            eta2: ZERO,
            rows,
        };
        // eta2 from a zeta difference; the Legendre relation is checked, not imposed
        let z0 = Complex64::new(0.1337, 0.2711);
        lat.eta2 = lat.zeta_rows(z0 + tau) - lat.zeta_rows(z0);
        Ok(lat)
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn g2(&self) -> Complex64 {
        self.g2
    }

    pub fn g3(&self) -> Complex64 {
        self.g3
    }

    /// Quasi-periods `(eta1, eta2)` with `zeta(z + 1) = zeta(z) + eta1`
    /// and `zeta(z + tau) = zeta(z) + eta2`.
    pub fn quasi_periods(&self) -> (Complex64, Complex64) {
        (self.eta1, self.eta2)
    }

    /// Split `z = r + m + n tau` with `r` in the centered period parallelogram.
    pub fn reduce(&self, z: Complex64) -> (Complex64, i64, i64) {
        let t = z.im / self.tau.im;
        let s = z.re - t * self.tau.re;
        let (m, n) = (s.round(), t.round());
        (z - m - self.tau * n, m as i64, n as i64)
    }

    /// Lattice coordinates `(s, t)` with `z = s + t tau`.
    pub fn coordinates(&self, z: Complex64) -> (f64, f64) {
        let t = z.im / self.tau.im;
        (z.re - t * self.tau.re, t)
    }

    /// Distance from `z` to the nearest lattice point.
    pub fn distance_to_lattice(&self, z: Complex64) -> f64 {
        let (r, _, _) = self.reduce(z);
        let mut best = f64::INFINITY;
        for m in -1..=1 {
            for n in -1..=1 {
                best = best.min((r - m as f64 - self.tau * n as f64).norm());
            }
        }
        best
    }

    pub fn is_lattice_point(&self, z: Complex64) -> bool {
        self.distance_to_lattice(z) < LATTICE_POINT_TOL
    }

    fn check_pole(&self, z: Complex64) -> Result<Complex64> {
        if self.is_lattice_point(z) {
            return Err(Error::PoleAt(z));
        }
        Ok(self.reduce(z).0)
    }

    /// `wp(z)`.
    pub fn wp(&self, z: Complex64) -> Result<Complex64> {
        let r = self.check_pole(z)?;
        let mut sum = -self.eta1;
        for n in -self.rows..=self.rows {
            sum += PI * PI * csc2(PI * (r - self.tau * n as f64));
        }
        Ok(sum)
    }

    /// `wp'(z)`.
    pub fn wp_prime(&self, z: Complex64) -> Result<Complex64> {
        let r = self.check_pole(z)?;
        let mut sum = ZERO;
        for n in -self.rows..=self.rows {
            let w = PI * (r - self.tau * n as f64);
            let s = w.sin();
            sum += -2.0 * PI.powi(3) * w.cos() / (s * s * s);
        }
        Ok(sum)
    }

    /// `wp(z)` and `wp'(z)` together.
    pub fn wp_pair(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let r = self.check_pole(z)?;
        let mut p = -self.eta1;
        let mut dp = ZERO;
        for n in -self.rows..=self.rows {
            let w = PI * (r - self.tau * n as f64);
            let s = w.sin();
            let c2 = (s * s).inv();
            p += PI * PI * c2;
            dp += -2.0 * PI.powi(3) * w.cos() * c2 / s;
        }
        Ok((p, dp))
    }

    /// Polynomial form of the `k`-th derivative of `wp`.
    pub fn derivative_form(&self, k: usize) -> DerivativeForm {
        let mut form = DerivativeForm {
            poly: vec![ZERO, ONE],
            has_wp_prime: false,
        };
        for _ in 0..k {
            form = differentiate_form(&form, self.g2, self.g3);
        }
        form
    }

    /// `wp^(k)(z)` for `k <= MAX_DERIVATIVE`.
    pub fn wp_derivative(&self, k: usize, z: Complex64) -> Result<Complex64> {
        if k > MAX_DERIVATIVE {
            return Err(Error::Unsupported(format!("derivative order {k} of wp")));
        }
        let (p, dp) = self.wp_pair(z)?;
        Ok(self.eval_form(&self.derivative_form(k), p, dp))
    }

    /// All derivatives `wp^(0..=k_max)(z)` from a single lattice sum.
    pub fn wp_derivatives(&self, k_max: usize, z: Complex64) -> Result<Vec<Complex64>> {
        if k_max > MAX_DERIVATIVE {
            return Err(Error::Unsupported(format!("derivative order {k_max} of wp")));
        }
        let (p, dp) = self.wp_pair(z)?;
        let mut form = self.derivative_form(0);
        let mut out = Vec::with_capacity(k_max + 1);
        for _ in 0..=k_max {
            out.push(self.eval_form(&form, p, dp));
            form = differentiate_form(&form, self.g2, self.g3);
        }
        Ok(out)
    }

    fn eval_form(&self, form: &DerivativeForm, p: Complex64, dp: Complex64) -> Complex64 {
        let v = form.poly.iter().rev().fold(ZERO, |acc, c| acc * p + c);
        if form.has_wp_prime {
            v * dp
        } else {
            v
        }
    }

    /// Weierstrass zeta function.
    pub fn zeta(&self, z: Complex64) -> Result<Complex64> {
        let (r, m, n) = (self.check_pole(z)?, self.reduce(z).1, self.reduce(z).2);
        Ok(self.zeta_rows(r) + self.eta1 * m as f64 + self.eta2 * n as f64)
    }

    /// Row sum for zeta, valid for any `z` off the lattice.
    fn zeta_rows(&self, z: Complex64) -> Complex64 {
        let center = (z.im / self.tau.im).round() as i64;
        let lo = center.min(0) - self.rows;
        let hi = center.max(0) + self.rows;
        let mut sum = self.eta1 * z;
        for n in lo..=hi {
            let w = PI * (z - self.tau * n as f64);
            sum += PI * w.cos() / w.sin();
            if n != 0 {
                let v = PI * self.tau * n as f64;
                sum += PI * v.cos() / v.sin();
            }
        }
        sum
    }

    /// Laurent coefficients of `wp` at the origin: `c[k]` multiplies `z^(2k)`
    /// for `k >= 1`, with the leading `z^-2` implied.
    pub fn wp_laurent_coefficients(&self, n: usize) -> Vec<Complex64> {
        let mut c = vec![ZERO; n + 1];
        if n >= 1 {
            c[1] = self.g2 / 20.0;
        }
        if n >= 2 {
            c[2] = self.g3 / 28.0;
        }
        for k in 3..=n {
            let mut s = ZERO;
            for m in 1..=(k - 2) {
                s += c[m] * c[k - 1 - m];
            }
            c[k] = s * 3.0 / (((2 * k + 3) * (k - 2)) as f64);
        }
        c
    }

    /// Laurent series of `wp^(k)` at the origin, known through `z^(max_power)`.
    pub fn wp_laurent(&self, k: usize, max_power: i32) -> Laurent {
        let n_even = ((max_power + k as i32).max(0) / 2 + 1) as usize;
        let c = self.wp_laurent_coefficients(n_even);
        let val = -2;
        let len = (max_power + k as i32 - val + 1).max(1) as usize;
        let mut coeffs = vec![ZERO; len];
        coeffs[0] = ONE;
        for (j, ck) in c.iter().enumerate().skip(1) {
            let idx = (2 * j as i32 - val) as usize;
            if idx < len {
                coeffs[idx] = *ck;
            }
        }
        let mut s = Laurent::new(val, coeffs);
        for _ in 0..k {
            s = s.derivative();
        }
        s
    }
}

fn differentiate_form(form: &DerivativeForm, g2: Complex64, g3: Complex64) -> DerivativeForm {
    let dpoly: Vec<Complex64> = form
        .poly
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    if !form.has_wp_prime {
        // d/dz P(wp) = P'(wp) wp'
        return DerivativeForm {
            poly: dpoly,
            has_wp_prime: true,
        };
    }
    // d/dz Q(wp) wp' = Q'(wp) wp'^2 + Q(wp) wp''
    let cubic = [-g3, -g2, ZERO, Complex64::new(4.0, 0.0)];
    let second = [-g2 / 2.0, ZERO, Complex64::new(6.0, 0.0)];
    let mut out = vec![ZERO; form.poly.len() + 3];
    for (i, a) in dpoly.iter().enumerate() {
        for (j, b) in cubic.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    for (i, a) in form.poly.iter().enumerate() {
        for (j, b) in second.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    while out.len() > 1 && out.last() == Some(&ZERO) {
        out.pop();
    }
    DerivativeForm {
        poly: out,
        has_wp_prime: false,
    }
}

fn divisor_power_sum(k: u64, p: u32) -> f64 {
    let mut s = 0.0;
    let mut d = 1;
    while d * d <= k {
        if k % d == 0 {
            s += (d as f64).powi(p as i32);
            let e = k / d;
            if e != d {
                s += (e as f64).powi(p as i32);
            }
        }
        d += 1;
    }
    s
}

/// `(g2, g3)` from the Eisenstein series `E4`, `E6` in `q = exp(2 pi i tau)`.
fn eisenstein_invariants(tau: Complex64) -> (Complex64, Complex64) {
    let q = (2.0 * PI * I * tau).exp();
    let mut e4 = ONE;
    let mut e6 = ONE;
    let mut qk = ONE;
    for k in 1..100_000u64 {
        qk *= q;
        let t4 = 240.0 * divisor_power_sum(k, 3) * qk;
        let t6 = -504.0 * divisor_power_sum(k, 5) * qk;
        e4 += t4;
        e6 += t6;
        if t4.norm() < 1e-18 * e4.norm() && t6.norm() < 1e-18 * e6.norm().max(1e-300) {
            break;
        }
        if qk.norm() == 0.0 {
            break;
        }
    }
    let pi4 = PI.powi(4);
    let g2 = 60.0 * (pi4 / 45.0) * e4;
    let g3 = 140.0 * (2.0 * PI.powi(6) / 945.0) * e6;
    (g2, g3)
}

/// `wp^(k)(z)` on the lattice `Z + tau Z`, for `k` in `0..=3`.
pub fn wp_eval(tau: Complex64, z: Complex64, derivative_index: usize) -> Result<Complex64> {
    if derivative_index > 3 {
        return Err(Error::Unsupported(format!(
            "derivative index {derivative_index}; expected 0..=3"
        )));
    }
    Lattice::new(tau)?.wp_derivative(derivative_index, z)
}

pub fn zeta_eval(tau: Complex64, z: Complex64) -> Result<Complex64> {
    Lattice::new(tau)?.zeta(z)
}

/// `(g2, g3)` for the lattice `Z + tau Z`.
pub fn lattice_invariants(tau: Complex64) -> Result<(Complex64, Complex64)> {
    let l = Lattice::new(tau)?;
    Ok((l.g2, l.g3))
}

/// `(eta1, eta2)` for the lattice `Z + tau Z`.
pub fn quasi_periods(tau: Complex64) -> Result<(Complex64, Complex64)> {
    Ok(Lattice::new(tau)?.quasi_periods())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Symmetric square truncation of the defining lattice sum.
    fn wp_direct(tau: Complex64, z: Complex64, r: i64) -> Complex64 {
        let mut s = z.powi(-2);
        for m in -r..=r {
            for n in -r..=r {
                if m == 0 && n == 0 {
                    continue;
                }
                let w = c(m as f64, 0.0) + tau * n as f64;
                s += (z - w).powi(-2) - w.powi(-2);
            }
        }
        s
    }

    #[test]
    fn agrees_with_direct_sum() {
        let tau = c(0.3, 1.1);
        let l = Lattice::new(tau).unwrap();
        let z = c(0.21, 0.17);
        let direct = wp_direct(tau, z, 150);
        // the truncation error of the direct sum is of order 1/R^2
        assert!((l.wp(z).unwrap() - direct).norm() < 1e-3);
    }

    #[test]
    fn legendre_relation() {
        for tau in [c(0.0, 1.0), c(0.5, 3f64.sqrt() / 2.0), c(-0.3, 0.8), c(0.2, 2.5)] {
            let (e1, e2) = Lattice::new(tau).unwrap().quasi_periods();
            assert!((e1 * tau - e2 - 2.0 * PI * I).norm() < 1e-10, "tau = {tau}");
        }
    }

    #[test]
    fn invariants_match_half_period_values() {
        let tau = c(0.17, 0.93);
        let l = Lattice::new(tau).unwrap();
        let e1 = l.wp(c(0.5, 0.0)).unwrap();
        let e2 = l.wp(tau / 2.0).unwrap();
        let e3 = l.wp((ONE + tau) / 2.0).unwrap();
        assert!((e1 + e2 + e3).norm() < 1e-9 * e1.norm());
        let g2 = -4.0 * (e1 * e2 + e2 * e3 + e3 * e1);
        let g3 = 4.0 * e1 * e2 * e3;
        assert!((g2 - l.g2()).norm() < 1e-9 * g2.norm());
        assert!((g3 - l.g3()).norm() < 1e-9 * g3.norm());
    }

    #[test]
    fn square_lattice_invariants() {
        // g2 = Gamma(1/4)^8 / (16 pi^2) for the lattice Z + iZ
        let gamma_quarter: f64 = 3.625_609_908_221_908_3;
        let expect = gamma_quarter.powi(8) / (16.0 * PI * PI);
        let l = Lattice::new(I).unwrap();
        assert!((l.g2().re - expect).abs() < 1e-9 * expect);
        assert!(l.g3().norm() < 1e-9);
        let (e1, e2) = l.quasi_periods();
        assert!((e1 - c(PI, 0.0)).norm() < 1e-10);
        assert!((e2 - c(0.0, -PI)).norm() < 1e-10);
    }

    #[test]
    fn hexagonal_lattice_has_vanishing_g2() {
        let tau = c(0.5, 3f64.sqrt() / 2.0);
        let l = Lattice::new(tau).unwrap();
        assert!(l.g2().norm() < 1e-9);
        assert!((l.quasi_periods().0 - c(2.0 * PI / 3f64.sqrt(), 0.0)).norm() < 1e-10);
    }

    #[test]
    fn derivative_forms_match_known_identities() {
        let l = Lattice::new(c(0.1, 1.3)).unwrap();
        let z = c(0.31, -0.22);
        let d = l.wp_derivatives(5, z).unwrap();
        let (p, dp) = (d[0], d[1]);
        let (g2, g3) = (l.g2(), l.g3());
        let tol = 1e-10;
        assert!((d[2] - (6.0 * p * p - g2 / 2.0)).norm() < tol * d[2].norm());
        assert!((d[3] - 12.0 * p * dp).norm() < tol * d[3].norm());
        assert!((d[4] - (120.0 * p.powi(3) - 18.0 * g2 * p - 12.0 * g3)).norm() < tol * d[4].norm());
        assert!((d[5] - (360.0 * p * p - 18.0 * g2) * dp).norm() < tol * d[5].norm());
    }

    #[test]
    fn wp_prime_matches_finite_difference() {
        let l = Lattice::new(c(-0.2, 0.9)).unwrap();
        let z = c(0.27, 0.19);
        let h = 1e-5;
        let fd = (l.wp(z + h).unwrap() - l.wp(z - h).unwrap()) / (2.0 * h);
        assert!((fd - l.wp_prime(z).unwrap()).norm() < 1e-6 * fd.norm());
    }

    #[test]
    fn zeta_is_an_antiderivative_of_minus_wp() {
        let l = Lattice::new(c(0.3, 1.2)).unwrap();
        let z = c(1.37, 2.05);
        let h = 1e-5;
        let fd = (l.zeta(z + h).unwrap() - l.zeta(z - h).unwrap()) / (2.0 * h);
        assert!((fd + l.wp(z).unwrap()).norm() < 1e-6 * fd.norm());
    }

    #[test]
    fn laurent_series_approximates_wp_near_origin() {
        let l = Lattice::new(c(0.0, 1.0)).unwrap();
        for k in 0..4 {
            let s = l.wp_laurent(k, 14);
            let z = c(0.05, 0.03);
            let exact = l.wp_derivative(k, z).unwrap();
            assert!((s.eval(z) - exact).norm() < 1e-9 * exact.norm(), "k = {k}");
        }
    }

    #[test]
    fn pole_and_lattice_errors() {
        let l = Lattice::new(I).unwrap();
        assert!(matches!(l.wp(c(1.0, 1.0)), Err(Error::PoleAt(_))));
        assert!(matches!(Lattice::new(c(1.0, -0.5)), Err(Error::InvalidLattice(_))));
    }

    proptest! {
        #[test]
        fn differential_equation_holds(
            tr in -0.5f64..0.5, ti in 0.6f64..2.0, x in -3.0f64..3.0, y in -3.0f64..3.0
        ) {
            let tau = c(tr, ti);
            let l = Lattice::new(tau).unwrap();
            let z = c(x, y);
            prop_assume!(l.distance_to_lattice(z) > 0.05);
            let (p, dp) = l.wp_pair(z).unwrap();
            let rhs = 4.0 * p.powi(3) - l.g2() * p - l.g3();
            let scale = dp.norm_sqr() + 4.0 * p.norm().powi(3) + (l.g2() * p).norm() + l.g3().norm();
            prop_assert!((dp * dp - rhs).norm() < 1e-10 * scale);
        }

        #[test]
        fn wp_is_doubly_periodic(
            x in -1.0f64..1.0, y in -1.0f64..1.0, m in -3i64..3, n in -3i64..3
        ) {
            let tau = c(0.25, 1.05);
            let l = Lattice::new(tau).unwrap();
            let z = c(x, y);
            prop_assume!(l.distance_to_lattice(z) > 0.05);
            let w = z + m as f64 + tau * n as f64;
            let (a, b) = (l.wp(z).unwrap(), l.wp(w).unwrap());
            prop_assert!((a - b).norm() < 1e-9 * a.norm().max(1.0));
        }
    }
}
