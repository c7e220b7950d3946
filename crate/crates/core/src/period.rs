//! The period condition `Re of the integral of F dG = 0` on every closed loop.
//!
//! Each cycle gets a closed-form value (residues on the sphere, Laurent data
//! and quasi-periods on the torus) and an independent quadrature value.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::elliptic::Lattice;
use crate::error::{Error, Result};
use crate::meromorphic::{EllipticCombination, MeromorphicFunction};
use crate::quadrature::integrate;
use crate::rational::Point;
use crate::surface::WeierstrassData;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub const DEFAULT_PERIOD_TOL: f64 = 1e-8;

/// Tolerance between successive quadrature refinements.
pub const QUADRATURE_TOL: f64 = 1e-10;

/// Minimum distance a cycle keeps from every pole.
pub const POLE_CLEARANCE: f64 = 1e-3;

/// A closed loop on the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cycle {
    /// Counter-clockwise circle around the puncture with the given index.
    Puncture {
        index: usize,
        center: Complex64,
        radius: f64,
    },
    /// `t -> 1/4 + tau t`.
    Gamma1 { tau: Complex64 },
    /// `t -> t + tau/4`.
    Gamma2 { tau: Complex64 },
}

impl Cycle {
    pub fn circle(index: usize, center: Complex64, radius: f64) -> Self {
        Cycle::Puncture {
            index,
            center,
            radius,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Cycle::Puncture { index, .. } => format!("puncture:{index}"),
            Cycle::Gamma1 { .. } => "gamma1".into(),
            Cycle::Gamma2 { .. } => "gamma2".into(),
        }
    }

    /// Position and velocity at parameter `t` in `[0, 1]`.
    pub fn at(&self, t: f64) -> (Complex64, Complex64) {
        match *self {
            Cycle::Puncture { center, radius, .. } => {
                let e = Complex64::from_polar(radius, 2.0 * PI * t);
                (center + e, 2.0 * PI * I * e)
            }
            Cycle::Gamma1 { tau } => (0.25 + tau * t, tau),
            Cycle::Gamma2 { tau } => (t + tau * 0.25, Complex64::new(1.0, 0.0)),
        }
    }
}

/// One row of a period report.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodEntry {
    pub cycle: String,
    pub closed_form: Option<Complex64>,
    pub numeric: Complex64,
    /// `|Re(numeric)|`.
    pub re_abs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodReport {
    pub entries: Vec<PeriodEntry>,
    pub passed: bool,
    pub tolerance: f64,
    /// Problems met while integrating, such as a cycle too close to a pole.
    pub errors: Vec<String>,
}

impl PeriodReport {
    /// The entry with the largest real part.
    pub fn worst_entry(&self) -> Option<&PeriodEntry> {
        self.entries
            .iter()
            .max_by(|a, b| a.re_abs.total_cmp(&b.re_abs))
    }

    /// Largest `|closed form - numeric|` over entries that have a closed form.
    pub fn max_oracle_gap(&self) -> f64 {
        self.entries
            .iter()
            .filter_map(|e| e.closed_form.map(|c| (c - e.numeric).norm()))
            .fold(0.0, f64::max)
    }
}

/// The cycles checked for the given data: puncture loops on the sphere,
/// the two generators and one puncture loop on the torus.
pub fn cycles(data: &WeierstrassData) -> Vec<Cycle> {
    if let Some(lat) = data.domain.lattice() {
        let tau = lat.tau();
        let r = 0.25 * tau.im.min(1.0);
        return vec![
            Cycle::Gamma1 { tau },
            Cycle::Gamma2 { tau },
            Cycle::circle(0, ZERO, r),
        ];
    }
    let finite: Vec<(usize, Complex64)> = data
        .domain
        .punctures()
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.as_finite().map(|z| (i, z)))
        .collect();
    finite
        .iter()
        .map(|&(i, p)| {
            let nearest = finite
                .iter()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| (p - q).norm())
                .fold(f64::INFINITY, f64::min);
            let r = if nearest.is_finite() { 0.5 * nearest } else { 1.0 };
            Cycle::circle(i, p, r)
        })
        .collect()
}

/// Integrand `F G'` evaluated through a single lattice sum on the torus.
fn integrand(data: &WeierstrassData) -> Result<Box<dyn Fn(Complex64) -> Result<Complex64> + Sync + '_>> {
    let dg = data.g.derivative()?;
    Ok(match (&data.f, dg) {
        (MeromorphicFunction::Rational(f), MeromorphicFunction::Rational(dg)) => {
            let h = f.mul(&dg);
            Box::new(move |z| h.eval(z))
        }
        (MeromorphicFunction::Elliptic(f), MeromorphicFunction::Elliptic(dg)) => {
            let k = f.coeffs().len().max(dg.coeffs().len()).saturating_sub(1);
            Box::new(move |z| {
                let d = f.lattice().wp_derivatives(k, z)?;
                Ok(f.eval_with(&d) * dg.eval_with(&d))
            })
        }
        _ => return Err(Error::InvalidInput("F and G are of different kinds".into())),
    })
}

/// `int F dG` around a cycle by composite Gauss-Legendre quadrature,
/// starting from `panels` panels and refining until successive results
/// agree to `QUADRATURE_TOL`.
pub fn contour_integral(data: &WeierstrassData, cycle: &Cycle, panels: usize) -> Result<Complex64> {
    for k in 0..2048 {
        let (z, _) = cycle.at(k as f64 / 2048.0);
        let d = data.domain.distance_to_punctures(z);
        if d < POLE_CLEARANCE {
            return Err(Error::PoleOnCycle { pole: z, distance: d });
        }
    }
    let h = integrand(data)?;
    let failed = std::sync::Mutex::new(None);
    let v = integrate(
        |t| {
            let (z, dz) = cycle.at(t);
            match h(z) {
                Ok(v) => v * dz,
                Err(e) => {
                    *failed.lock().unwrap() = Some(e);
                    ZERO
                }
            }
        },
        0.0,
        1.0,
        panels,
        QUADRATURE_TOL,
    )?;
    match failed.into_inner().unwrap() {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// Closed forms of `int F dG` over `gamma1` and `gamma2` for the family
/// `F = a wp' + b wp`, `G = c wp`. The `b` term integrates to `bc wp^2/2`,
/// which has no periods.
pub fn torus_closed_form_periods(
    a: Complex64,
    _b: Complex64,
    c: Complex64,
    lattice: &Lattice,
) -> (Complex64, Complex64) {
    let (g2, g3) = (lattice.g2(), lattice.g3());
    let (eta1, eta2) = lattice.quasi_periods();
    let tau = lattice.tau();
    let a1 = a * c * (2.0 * g2 * eta2 - 3.0 * g3 * tau) / 5.0;
    let a2 = a * c * (2.0 * g2 * eta1 - 3.0 * g3) / 5.0;
    (a1, a2)
}

/// Closed-form periods of `h = F G'` on the torus: `(gamma1, gamma2, puncture)`.
///
/// With the Laurent expansion `h = sum_k h_k z^k` at the origin, `h` equals
/// `C + sum_{k >= 2} h_{-k} wp^(k-2) / ((-1)^k (k-1)!)` when the residue
/// `h_{-1}` vanishes. Derivatives of `wp` have no periods and `wp` integrates
/// to `-zeta`, so the period over a shift `omega` is `C omega - h_{-2} eta`.
pub fn elliptic_closed_form_periods(
    f: &EllipticCombination,
    dg: &EllipticCombination,
) -> (Complex64, Complex64, Complex64) {
    let lat = f.lattice();
    // each factor must be known far enough that the product reaches z^0
    let (vf, vg) = (f.order_at_origin(), dg.order_at_origin());
    let h = f.laurent_at_origin(1 - vg).mul(&dg.laurent_at_origin(1 - vf));
    let mut constant = h.coeff(0);
    let mut k = 2;
    while k as i32 <= -h.valuation {
        let hk = h.coeff(-(k as i32));
        if hk != ZERO {
            let m = k - 2;
            // constant term of wp^(m) is m! times the z^m coefficient of wp
            let wp_const = lat.wp_laurent(m, 0).coeff(0);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let fact: f64 = (1..k).map(|j| j as f64).product();
            constant -= hk * wp_const / (sign * fact);
        }
        k += 1;
    }
    let (eta1, eta2) = lat.quasi_periods();
    let h2 = h.coeff(-2);
    let residue = h.coeff(-1);
    (
        constant * lat.tau() - h2 * eta2,
        constant - h2 * eta1,
        2.0 * PI * I * residue,
    )
}

fn closed_forms(data: &WeierstrassData, cycles: &[Cycle]) -> Result<Vec<Complex64>> {
    match (&data.f, data.g.derivative()?) {
        (MeromorphicFunction::Rational(f), MeromorphicFunction::Rational(dg)) => {
            let h = f.mul(&dg);
            Ok(cycles
                .iter()
                .map(|c| match c {
                    Cycle::Puncture { center, .. } => 2.0 * PI * I * h.residue(Point::Finite(*center)),
                    _ => ZERO,
                })
                .collect())
        }
        (MeromorphicFunction::Elliptic(f), MeromorphicFunction::Elliptic(dg)) => {
            let (p1, p2, p0) = elliptic_closed_form_periods(f, &dg);
            Ok(cycles
                .iter()
                .map(|c| match c {
                    Cycle::Gamma1 { .. } => p1,
                    Cycle::Gamma2 { .. } => p2,
                    Cycle::Puncture { .. } => p0,
                })
                .collect())
        }
        _ => Err(Error::InvalidInput("F and G are of different kinds".into())),
    }
}

/// Check the period condition on every cycle of [`cycles`].
///
/// Passes when both the numeric and the closed-form real parts are below
/// `tol * max(1, |integral|)` on every cycle.
pub fn check_period_condition(data: &WeierstrassData, tol: f64) -> PeriodReport {
    let cyc = cycles(data);
    let mut errors = Vec::new();
    let closed = match closed_forms(data, &cyc) {
        Ok(v) => v.into_iter().map(Some).collect(),
        Err(e) => {
            errors.push(e.to_string());
            vec![None; cyc.len()]
        }
    };
    let mut entries = Vec::new();
    let mut passed = true;
    for (c, cf) in cyc.iter().zip(closed) {
        match contour_integral(data, c, 8) {
            Ok(v) => {
                let scale = v.norm().max(1.0);
                let ok = v.re.abs() < tol * scale && cf.is_none_or(|x| x.re.abs() < tol * scale);
                passed &= ok;
                entries.push(PeriodEntry {
                    cycle: c.name(),
                    closed_form: cf,
                    numeric: v,
                    re_abs: v.re.abs(),
                });
            }
            Err(e) => {
                passed = false;
                errors.push(format!("{}: {e}", c.name()));
            }
        }
    }
    PeriodReport {
        entries,
        passed,
        tolerance: tol,
        errors,
    }
}
