//! Genus-one fronts of total curvature `-8 pi` on `C/[1, tau] \ {0}`.
//!
//! For `F = a wp' + b wp`, `G = c wp` the periods along the two generators
//! are `(a c / 5) p2` and `(a c / 5) p1` with `p1 = 2 g2 eta1 - 3 g3` and
//! `p2 = 2 g2 eta2 - 3 g3 tau`. Both are imaginary for some `c != 0` exactly
//! when `P = Im(conj(p1) p2)` vanishes.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::elliptic::Lattice;
use crate::error::{Error, Result};
use crate::meromorphic::EllipticCombination;
use crate::surface::{Domain, WeierstrassData};

/// Bracket of the modulus argument on the unit circle.
pub const BRACKET: (f64, f64) = (PI / 3.0, PI / 2.0);

/// Step for central differences in the modulus.
const FD_STEP: f64 = 1e-6;

pub fn period_pair_tau(tau: Complex64) -> Result<(Complex64, Complex64)> {
    let lat = Lattice::new(tau)?;
    let (eta1, eta2) = lat.quasi_periods();
    let (g2, g3) = (lat.g2(), lat.g3());
    Ok((2.0 * g2 * eta1 - 3.0 * g3, 2.0 * g2 * eta2 - 3.0 * g3 * tau))
}

/// `(p1, p2)` at `tau = e^{i alpha}`.
pub fn period_pair(alpha: f64) -> Result<(Complex64, Complex64)> {
    period_pair_tau(Complex64::from_polar(1.0, alpha))
}

pub fn period_function_tau(tau: Complex64) -> Result<f64> {
    let (p1, p2) = period_pair_tau(tau)?;
    Ok((p1.conj() * p2).im)
}

/// `P(alpha) = Im(conj(p1) p2)` at `tau = e^{i alpha}`.
pub fn period_function(alpha: f64) -> Result<f64> {
    period_function_tau(Complex64::from_polar(1.0, alpha))
}

/// Central difference of `P` in `alpha`.
pub fn period_function_derivative(alpha: f64) -> Result<f64> {
    Ok((period_function(alpha + FD_STEP)? - period_function(alpha - FD_STEP)?) / (2.0 * FD_STEP))
}

/// `i conj(p1)`, or `i conj(p2)` when `p1` vanishes. Either makes both
/// periods imaginary once `P = 0`. Since `a` is real it does not enter.
pub fn choose_c(p1: Complex64, p2: Complex64) -> Result<Complex64> {
    let i = Complex64::i();
    let scale = p1.norm().max(p2.norm());
    if scale == 0.0 {
        return Err(Error::InvalidInput("p1 and p2 both vanish".into()));
    }
    if p1.norm() > 1e-12 * scale {
        Ok(i * p1.conj())
    } else {
        Ok(i * p2.conj())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Genus1Solution {
    pub alpha0: f64,
    pub tau: Complex64,
    pub c: Complex64,
    pub p1: Complex64,
    pub p2: Complex64,
    /// `P` at the ends of the initial bracket.
    pub bracket_values: (f64, f64),
    pub residual: f64,
    pub derivative: f64,
    pub iterations: usize,
}

/// Root of `P` in `(pi/3, pi/2)` by bisection down to width `tol`.
pub fn solve_alpha0(tol: f64) -> Result<Genus1Solution> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let (mut lo, mut hi) = BRACKET;
    let p_lo0 = period_function(lo)?;
    let p_hi0 = period_function(hi)?;
    if p_lo0.signum() == p_hi0.signum() {
        return Err(Error::BracketLost(format!(
            "P({lo}) = {p_lo0:e} and P({hi}) = {p_hi0:e} have the same sign"
        )));
    }
    let mut p_lo = p_lo0;
    let mut iterations = 0;
    while hi - lo > tol && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        let p_mid = period_function(mid)?;
        if p_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if p_mid.signum() == p_lo.signum() {
            lo = mid;
            p_lo = p_mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let alpha0 = 0.5 * (lo + hi);
    let (p1, p2) = period_pair(alpha0)?;
    Ok(Genus1Solution {
        alpha0,
        tau: Complex64::from_polar(1.0, alpha0),
        c: choose_c(p1, p2)?,
        p1,
        p2,
        bracket_values: (p_lo0, p_hi0),
        residual: (p1.conj() * p2).im,
        derivative: period_function_derivative(alpha0)?,
        iterations,
    })
}

/// Generic base point inside the period parallelogram.
pub fn torus_base_point(tau: Complex64) -> Complex64 {
    0.37 + 0.41 * tau
}

/// `F = a wp' + b wp`, `G = c wp` on `C/[1, tau] \ {0}`.
pub fn torus_8pi_data(tau: Complex64, a: f64, b: Complex64, c: Complex64) -> Result<WeierstrassData> {
    let lat = Lattice::new(tau)?;
    let zero = Complex64::new(0.0, 0.0);
    let f = EllipticCombination::new(lat, &[(1, a.into()), (0, b)], zero)?;
    let g = EllipticCombination::new(lat, &[(0, c)], zero)?;
    Ok(WeierstrassData::elliptic(Domain::torus(tau)?, f, g, torus_base_point(tau)))
}

pub fn build_genus1_8pi(solution: &Genus1Solution, a: f64, b: Complex64) -> Result<WeierstrassData> {
    if !(a > 0.0) {
        return Err(Error::ConstraintViolated("a > 0".into()));
    }
    torus_8pi_data(solution.tau, a, b, solution.c)
}

/// The square-torus example `F = wp'' + (5 g2 / (7 pi)) wp`, `G = wp'`.
pub fn build_genus1_10pi() -> Result<WeierstrassData> {
    let tau = Complex64::i();
    let lat = Lattice::new(tau)?;
    let k = 5.0 * lat.g2() / (7.0 * PI);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let f = EllipticCombination::new(lat, &[(2, one), (0, k)], zero)?;
    let g = EllipticCombination::new(lat, &[(1, one)], zero)?;
    Ok(WeierstrassData::elliptic(Domain::torus(tau)?, f, g, torus_base_point(tau)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuationPoint {
    pub tau: Complex64,
    pub c: Complex64,
    pub residual: f64,
}

fn gradient(tau: Complex64) -> Result<(f64, f64)> {
    let h = FD_STEP;
    let dx = (period_function_tau(tau + h)? - period_function_tau(tau - h)?) / (2.0 * h);
    let i = Complex64::i();
    let dy = (period_function_tau(tau + i * h)? - period_function_tau(tau - i * h)?) / (2.0 * h);
    Ok((dx, dy))
}

/// Follows the zero set of `P` in the upper half plane from `tau0` by
/// pseudo-arclength steps of length `step`.
pub fn continue_genus1(tau0: Complex64, steps: usize, step: f64) -> Result<Vec<ContinuationPoint>> {
    let mut tau = tau0;
    let point = |tau: Complex64| -> Result<ContinuationPoint> {
        let (p1, p2) = period_pair_tau(tau)?;
        Ok(ContinuationPoint {
            tau,
            c: choose_c(p1, p2)?,
            residual: (p1.conj() * p2).im,
        })
    };
    let mut out = vec![point(tau)?];
    // orient the tangent towards decreasing argument of tau
    let (gx, gy) = gradient(tau)?;
    let mut t = Complex64::new(-gy, gx).unscale(gx.hypot(gy));
    if (t * tau.conj()).im > 0.0 {
        t = -t;
    }
    for _ in 0..steps {
        let pred = tau + t * step;
        let mut z = pred;
        let mut converged = false;
        for _ in 0..50 {
            let val = period_function_tau(z)?;
            let (gx, gy) = gradient(z)?;
            // rows: P = 0 and (z - pred) . t = 0
            let (a11, a12, b1) = (gx, gy, -val);
            let (a21, a22, b2) = (t.re, t.im, -((z - pred).re * t.re + (z - pred).im * t.im));
            let det = a11 * a22 - a12 * a21;
            if det == 0.0 {
                break;
            }
            let dx = (b1 * a22 - a12 * b2) / det;
            let dy = (a11 * b2 - a21 * b1) / det;
            z += Complex64::new(dx, dy);
            if dx.hypot(dy) < 1e-13 {
                converged = true;
                break;
            }
        }
        if !converged || z.im <= 0.0 {
            return Err(Error::NonConvergence(format!("continuation corrector near tau = {pred}")));
        }
        let (gx, gy) = gradient(z)?;
        let mut next = Complex64::new(-gy, gx).unscale(gx.hypot(gy));
        if (next * t.conj()).re < 0.0 {
            next = -next;
        }
        t = next;
        tau = z;
        out.push(point(tau)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_values_have_closed_forms() {
        let hex = Lattice::new(Complex64::from_polar(1.0, PI / 3.0)).unwrap();
        let sq = Lattice::new(Complex64::i()).unwrap();
        let expect_lo = (9.0 * 3f64.sqrt() / 2.0 * hex.g3() * hex.g3()).re;
        let expect_hi = (-4.0 * sq.g2() * sq.g2() * PI * PI).re;
        let lo = period_function(PI / 3.0).unwrap();
        let hi = period_function(PI / 2.0).unwrap();
        assert!((lo - expect_lo).abs() < 1e-6 * expect_lo.abs(), "{lo} vs {expect_lo}");
        assert!((hi - expect_hi).abs() < 1e-6 * expect_hi.abs(), "{hi} vs {expect_hi}");
    }

    #[test]
    fn chosen_c_makes_both_periods_imaginary() {
        let s = solve_alpha0(1e-12).unwrap();
        let c = s.c;
        assert!((c * s.p1).re.abs() < 1e-9 * (c * s.p1).norm());
        assert!((c * s.p2).re.abs() < 1e-6 * (c * s.p2).norm());
    }

    #[test]
    fn c_falls_back_to_p2() {
        let c = choose_c(Complex64::new(0.0, 0.0), Complex64::new(1.0, 2.0)).unwrap();
        assert_eq!(c, Complex64::new(2.0, 1.0));
        assert!(choose_c(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn rhombic_lattices_pair_the_periods() {
        // tau = e^{i alpha} is fixed by z -> conj(z)/tau up to the lattice, so
        // p2 = tau^-5 conj(p1) and P = -|p1|^2 sin(5 alpha + 2 arg p1)
        for alpha in [1.1, 1.2, 1.3704785, 1.45] {
            let (p1, p2) = period_pair(alpha).unwrap();
            let tau = Complex64::from_polar(1.0, alpha);
            let expect = tau.powi(-5) * p1.conj();
            assert!((p2 - expect).norm() < 1e-10 * p1.norm(), "alpha {alpha}");
            let p = period_function(alpha).unwrap();
            let closed = -p1.norm_sqr() * (5.0 * alpha + 2.0 * p1.arg()).sin();
            assert!((p - closed).abs() < 1e-9 * p1.norm_sqr());
        }
    }

    #[test]
    fn slope_agrees_with_the_closed_form() {
        let s = solve_alpha0(1e-13).unwrap();
        let h = 1e-5;
        let arg = |a: f64| period_pair(a).unwrap().0.arg();
        let darg = (arg(s.alpha0 + h) - arg(s.alpha0 - h)) / (2.0 * h);
        let closed = -s.p1.norm_sqr() * (5.0 * s.alpha0 + 2.0 * s.p1.arg()).cos() * (5.0 + 2.0 * darg);
        assert!((s.derivative - closed).abs() < 1e-6 * closed.abs(), "{} vs {closed}", s.derivative);
    }

    #[test]
    fn solution_closes_the_periods() {
        let s = solve_alpha0(1e-12).unwrap();
        let data = build_genus1_8pi(&s, 1.0, Complex64::new(0.5, 0.0)).unwrap();
        let report = crate::period::check_period_condition(&data, 1e-6);
        assert!(report.passed, "{:?}", report.errors);
        assert!(matches!(build_genus1_8pi(&s, -1.0, Complex64::new(0.0, 0.0)), Err(Error::ConstraintViolated(_))));
    }

    #[test]
    fn continuation_stays_on_the_zero_set() {
        let s = solve_alpha0(1e-13).unwrap();
        let path = continue_genus1(s.tau, 3, 0.02).unwrap();
        assert_eq!(path.len(), 4);
        for p in &path {
            let (p1, p2) = period_pair_tau(p.tau).unwrap();
            assert!(p.residual.abs() < 1e-9 * p1.norm() * p2.norm());
        }
        for w in path.windows(2) {
            assert!(((w[1].tau - w[0].tau).norm() - 0.02).abs() < 1e-3);
        }
    }
}
