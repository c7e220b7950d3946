//! Ends of a complete front: pole orders, embeddedness, asymptotic type and
//! the Osserman-type inequality.
//!
//! An embedded end is normalized by choosing the function with a simple pole
//! as `A` (the other is `B`), taking `w = 1/(A - a0)` as local coordinate and
//! reading off `B = b_{-1}/w + b0 + b1 w + O(w^2)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::meromorphic::MeromorphicFunction;
use crate::rational::{Point, RationalFunction};
use crate::series::Laurent;
use crate::surface::{rho_degree, Domain, Surface, SurfaceOptions, WeierstrassData};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Number of Laurent coefficients used for the normalization.
const SERIES_TERMS: usize = 12;

/// Coefficients below this (relative to the largest one nearby) count as zero.
pub const COEFF_ZERO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndType {
    TypeP,
    TypeR,
    TypeNR,
    NotEmbedded,
}

impl EndType {
    pub fn name(&self) -> &'static str {
        match self {
            EndType::TypeP => "TypeP",
            EndType::TypeR => "TypeR",
            EndType::TypeNR => "TypeNR",
            EndType::NotEmbedded => "NotEmbedded",
        }
    }
}

/// How an embedded end was brought to normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct EndChart {
    /// `A = G` and `B = F` instead of the other way round.
    pub swapped: bool,
    /// Constant term of `A` at the end.
    pub a0: Complex64,
    /// Constant term of `B` in the coordinate `w`.
    pub b0: Complex64,
    /// The local coordinate `t` of the puncture as a series in `w`.
    pub t_of_w: Laurent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EndReport {
    pub puncture: Point,
    /// Order of `F` at the end; `None` when `F` vanishes identically.
    pub ord_f: Option<i32>,
    pub ord_g: Option<i32>,
    pub embedded: bool,
    pub end_type: EndType,
    pub b_minus1: Option<Complex64>,
    pub b_1: Option<Complex64>,
    pub chart: Option<EndChart>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OssermanLedger {
    pub genus: usize,
    pub n_ends: usize,
    pub deg_rho: i64,
    pub rhs: i64,
    pub equality: bool,
}

fn check_puncture(data: &WeierstrassData, p: Point) -> Result<()> {
    let known = data
        .domain
        .punctures()
        .iter()
        .any(|q| q.close_to(&p, 1e-9));
    if known {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not a puncture of the domain")))
    }
}

fn series(h: &MeromorphicFunction, p: Point, n: usize) -> Result<Laurent> {
    // enough terms past the pole to reach t^1
    let ord = h.order_at(p)?;
    let extra = if ord == i32::MAX || ord >= 0 { 0 } else { (-ord) as usize };
    h.laurent_at(p, n + extra)
}

fn order_of(h: &MeromorphicFunction, p: Point) -> Result<Option<i32>> {
    if h.is_constant() && h.eval(Complex64::new(0.5, 0.25))? == ZERO {
        return Ok(None);
    }
    let ord = h.order_at(p)?;
    Ok(if ord == i32::MAX { None } else { Some(ord) })
}

/// Laurent orders of `F` and `G` at a puncture.
pub fn end_orders(data: &WeierstrassData, p: Point) -> Result<(Option<i32>, Option<i32>)> {
    check_puncture(data, p)?;
    Ok((order_of(&data.f, p)?, order_of(&data.g, p)?))
}

fn is_embedded(ord_f: Option<i32>, ord_g: Option<i32>) -> bool {
    let f = ord_f.unwrap_or(i32::MAX);
    let g = ord_g.unwrap_or(i32::MAX);
    f >= -1 && g >= -1 && f.min(g) == -1
}

pub fn classify_end(data: &WeierstrassData, p: Point) -> Result<EndReport> {
    let (ord_f, ord_g) = end_orders(data, p)?;
    let embedded = is_embedded(ord_f, ord_g);
    let mut report = EndReport {
        puncture: p,
        ord_f,
        ord_g,
        embedded,
        end_type: EndType::NotEmbedded,
        b_minus1: None,
        b_1: None,
        chart: None,
    };
    if !embedded {
        return Ok(report);
    }
    let swapped = ord_f != Some(-1);
    let (a, b) = if swapped { (&data.g, &data.f) } else { (&data.f, &data.g) };
    let a_series = series(a, p, SERIES_TERMS)?;
    let b_series = series(b, p, SERIES_TERMS)?;
    let a0 = a_series.coeff(0);
    let mut hat = a_series.clone();
    hat.coeffs[(0 - hat.valuation) as usize] = ZERO;
    let hat = hat.normalized(1e-14);
    let w_of_t = hat.recip();
    let t_of_w = w_of_t.reversion();
    let b_w = b_series.compose(&t_of_w);
    let (bm1, b0, b1) = (b_w.coeff(-1), b_w.coeff(0), b_w.coeff(1));
    let scale = b_w
        .coeffs
        .iter()
        .take(4)
        .map(|c| c.norm())
        .fold(1.0, f64::max);
    let zero = |c: Complex64| c.norm() <= COEFF_ZERO_TOL * scale;
    report.end_type = if zero(b1) {
        EndType::TypeP
    } else if zero(bm1) {
        EndType::TypeR
    } else {
        EndType::TypeNR
    };
    report.b_minus1 = Some(if zero(bm1) { ZERO } else { bm1 });
    report.b_1 = Some(if zero(b1) { ZERO } else { b1 });
    report.chart = Some(EndChart {
        swapped,
        a0,
        b0,
        t_of_w,
    });
    Ok(report)
}

pub fn classify_all(data: &WeierstrassData) -> Result<Vec<EndReport>> {
    data.domain
        .punctures()
        .iter()
        .map(|p| classify_end(data, *p))
        .collect()
}

/// Data of the model end in the coordinate `w`: `A = 1/w + a0` and
/// `B = b_{-1}/w + b0 + b1 w`, with the roles of `F` and `G` as in the
/// original data. For `a0 = b0 = 0` and no swap this is the normal form
/// `F = 1/w`, `G = b_{-1}/w + b1 w`.
pub fn asymptotic_model(report: &EndReport) -> Result<WeierstrassData> {
    let (Some(chart), Some(bm1), Some(b1)) = (&report.chart, report.b_minus1, report.b_1) else {
        return Err(Error::NotEmbeddedEnd(report.puncture.to_string()));
    };
    let a = RationalFunction::from_coeffs(vec![Complex64::new(1.0, 0.0), chart.a0], vec![ZERO, Complex64::new(1.0, 0.0)])?;
    let b = RationalFunction::from_coeffs(vec![bm1, chart.b0, b1], vec![ZERO, Complex64::new(1.0, 0.0)])?;
    let (f, g) = if chart.swapped { (b, a) } else { (a, b) };
    let domain = Domain::plane(vec![Point::finite(0.0, 0.0)])?;
    Ok(WeierstrassData::rational(domain, f, g, Complex64::new(1.0, 0.0)))
}

/// Osserman ledger; fails with `InequalityViolated` when `deg rho < rhs`,
/// which only happens for data that is not a complete front.
pub fn osserman_report(data: &WeierstrassData) -> Result<OssermanLedger> {
    let deg = rho_degree(data)?;
    let genus = data.genus();
    let n_ends = data.domain.n_ends();
    let deg_rho = deg as i64;
    let rhs = 2 * (genus as i64 - 1 + n_ends as i64);
    if deg_rho < rhs {
        return Err(Error::InequalityViolated { deg: deg_rho, rhs });
    }
    Ok(OssermanLedger {
        genus,
        n_ends,
        deg_rho,
        rhs,
        equality: deg_rho == rhs,
    })
}

/// The point `z` of the parameter domain with `w(z) = w` near the end.
pub fn chart_point(data: &WeierstrassData, report: &EndReport, w: Complex64) -> Result<Complex64> {
    let chart = report
        .chart
        .as_ref()
        .ok_or_else(|| Error::NotEmbeddedEnd(report.puncture.to_string()))?;
    let a = if chart.swapped { &data.g } else { &data.f };
    let da = a.derivative()?;
    let from_t = |t: Complex64| match report.puncture {
        Point::Infinity => t.inv(),
        Point::Finite(p) => p + t,
    };
    let mut z = from_t(chart.t_of_w.eval(w));
    // Newton on 1/(A(z) - a0) = w, which stays tame next to the pole
    for _ in 0..60 {
        let v = a.eval(z)? - chart.a0;
        let g = v.inv() - w;
        let dg = -da.eval(z)? / (v * v);
        let step = g / dg;
        z -= step;
        if step.norm() <= 1e-15 * z.norm().max(1e-300) * 4.0 {
            return Ok(z);
        }
    }
    let v = a.eval(z)? - chart.a0;
    if (v.inv() - w).norm() <= 1e-10 * w.norm() {
        Ok(z)
    } else {
        Err(Error::NonConvergence(format!("chart inversion at w = {w}")))
    }
}

/// Radius of the circle whose mean fixes the additive constant between a
/// front and its model.
pub const CONSTANT_RADIUS: f64 = 1e-4;

/// Measures `max |psi(z(w)) - model(w) - C|` over `n_args` equally spaced
/// arguments on each circle `|w| = r`. `C` is the mean of the difference on
/// `|w| = CONSTANT_RADIUS`.
pub fn end_deviation(surface: &Surface, report: &EndReport, radii: &[f64], n_args: usize) -> Result<Vec<f64>> {
    let model_data = asymptotic_model(report)?;
    let model = Surface::with_options(
        model_data,
        SurfaceOptions {
            strict: false,
            ..SurfaceOptions::default()
        },
    )?;
    let diff = |w: Complex64| -> Result<[f64; 3]> {
        let z = chart_point(surface.data(), report, w)?;
        let a = surface.psi(z)?.to_array();
        let b = model.psi_unchecked(w)?.to_array();
        Ok([a[0] - b[0], a[1] - b[1], a[2] - b[2]])
    };
    let circle = |r: f64, n: usize| (0..n).map(move |k| Complex64::from_polar(r, 2.0 * PI * (k as f64 + 0.5) / n as f64));
    let mut c = [0.0; 3];
    let n_mean = 64;
    for w in circle(CONSTANT_RADIUS, n_mean) {
        let d = diff(w)?;
        for i in 0..3 {
            c[i] += d[i] / n_mean as f64;
        }
    }
    radii
        .iter()
        .map(|&r| {
            let mut worst: f64 = 0.0;
            for w in circle(r, n_args) {
                let d = diff(w)?;
                let e = ((d[0] - c[0]).powi(2) + (d[1] - c[1]).powi(2) + (d[2] - c[2]).powi(2)).sqrt();
                worst = worst.max(e);
            }
            Ok(worst)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rat(num: &[f64], den: &[f64]) -> RationalFunction {
        RationalFunction::from_coeffs(
            num.iter().map(|&x| c(x, 0.0)).collect(),
            den.iter().map(|&x| c(x, 0.0)).collect(),
        )
        .unwrap()
    }

    fn rotational(a: f64) -> WeierstrassData {
        let domain = Domain::plane(vec![Point::finite(0.0, 0.0)]).unwrap();
        WeierstrassData::rational(domain, rat(&[1.0], &[0.0, 1.0]), rat(&[0.0, a], &[1.0]), c(1.0, 0.0))
    }

    #[test]
    fn orders_at_both_ends_of_the_rotational_front() {
        let d = rotational(2.0);
        assert_eq!(end_orders(&d, Point::finite(0.0, 0.0)).unwrap(), (Some(-1), Some(1)));
        assert_eq!(end_orders(&d, Point::Infinity).unwrap(), (Some(1), Some(-1)));
    }

    #[test]
    fn rotational_end_is_type_r() {
        let r = classify_end(&rotational(2.0), Point::finite(0.0, 0.0)).unwrap();
        assert_eq!(r.end_type, EndType::TypeR);
        assert!((r.b_1.unwrap() - c(2.0, 0.0)).norm() < 1e-12);
        assert_eq!(r.b_minus1.unwrap(), ZERO);
    }

    #[test]
    fn the_end_at_infinity_is_normalized_by_swapping() {
        let r = classify_end(&rotational(2.0), Point::Infinity).unwrap();
        assert!(r.chart.as_ref().unwrap().swapped);
        // A = 2z, w = 1/(2z), B = 1/z = 2w
        assert_eq!(r.end_type, EndType::TypeR);
        assert!((r.b_1.unwrap() - c(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn translation_and_reparametrization_are_undone() {
        // F = 1/(z + z^2) + 3, G = z has a simple pole of F at 0
        let domain = Domain::plane(vec![Point::finite(0.0, 0.0), Point::finite(-1.0, 0.0)]).unwrap();
        let f = rat(&[1.0], &[0.0, 1.0, 1.0]).add(&RationalFunction::constant(c(3.0, 0.0)));
        let d = WeierstrassData::rational(domain, f, rat(&[0.0, 1.0], &[1.0]), c(1.0, 0.0));
        let r = classify_end(&d, Point::finite(0.0, 0.0)).unwrap();
        let chart = r.chart.as_ref().unwrap();
        // 1/(z+z^2) = 1/z - 1 + z - ..., so a0 = 3 - 1
        assert!((chart.a0 - c(2.0, 0.0)).norm() < 1e-12);
        // w = z/(1 - z + z^2 ...)^{-1}: z = w - w^2 + ..., so G = w - ...
        assert!((r.b_1.unwrap() - c(1.0, 0.0)).norm() < 1e-10);
        let w = c(0.01, 0.02);
        let z = chart_point(&d, &r, w).unwrap();
        assert!(((d.f.eval(z).unwrap() - chart.a0).inv() - w).norm() < 1e-14);
    }

    #[test]
    fn the_model_of_a_non_embedded_end_is_refused() {
        let domain = Domain::plane(vec![]).unwrap();
        let d = WeierstrassData::rational(domain, rat(&[0.0, 0.0, 1.0], &[1.0]), rat(&[0.0, 1.0], &[1.0]), ZERO);
        let r = classify_end(&d, Point::Infinity).unwrap();
        assert_eq!(r.end_type, EndType::NotEmbedded);
        assert!(matches!(asymptotic_model(&r), Err(Error::NotEmbeddedEnd(_))));
    }

    #[test]
    fn osserman_for_the_rotational_front() {
        let l = osserman_report(&rotational(2.0)).unwrap();
        assert_eq!((l.genus, l.n_ends, l.deg_rho, l.rhs, l.equality), (0, 2, 2, 2, true));
    }

    #[test]
    fn non_punctures_are_rejected() {
        assert!(end_orders(&rotational(2.0), Point::finite(1.0, 0.0)).is_err());
    }
}
