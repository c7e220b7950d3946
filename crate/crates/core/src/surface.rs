//! The front itself: a punctured domain with Weierstrass data `(F, G)`.
//!
//! The immersion is
//! `psi = (G + conj(F), (|G|^2 - |F|^2)/2 + Re(G F - 2 int F dG))`,
//! with the integral taken from a fixed base point.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::elliptic::Lattice;
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::meromorphic::{EllipticCombination, MeromorphicFunction};
use crate::period::{check_period_condition, PeriodReport, DEFAULT_PERIOD_TOL};
use crate::quadrature::integrate_adaptive;
use crate::rational::{Antiderivative, Point, RationalFunction, VANISH_TOL};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative tolerance for matching a pole to a declared puncture.
const PUNCTURE_MATCH_TOL: f64 = 1e-7;

/// Paths on the torus keep at least this distance from lattice points.
pub const DETOUR_RADIUS: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    Sphere,
    Plane,
    Torus,
}

/// A compact Riemann surface with finitely many punctures.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    kind: DomainKind,
    lattice: Option<Lattice>,
    punctures: Vec<Point>,
}

impl Domain {
    /// For the plane kind the point at infinity is always a puncture and is
    /// added if missing. The torus kind is punctured at the lattice points.
    pub fn new(kind: DomainKind, tau: Option<Complex64>, mut punctures: Vec<Point>) -> Result<Self> {
        let lattice = match kind {
            DomainKind::Torus => {
                let tau = tau.ok_or_else(|| Error::InvalidInput("torus domain needs tau".into()))?;
                let lat = Lattice::new(tau)?;
                if punctures.is_empty() {
                    punctures.push(Point::Finite(ZERO));
                }
                if punctures.len() != 1
                    || !punctures[0].as_finite().is_some_and(|z| lat.is_lattice_point(z))
                {
                    return Err(Error::Unsupported(
                        "tori are punctured exactly once, at the lattice points".into(),
                    ));
                }
                punctures[0] = Point::Finite(ZERO);
                Some(lat)
            }
            DomainKind::Plane => {
                if !punctures.iter().any(Point::is_infinite) {
                    punctures.push(Point::Infinity);
                }
                None
            }
            DomainKind::Sphere => None,
        };
        if punctures.is_empty() {
            return Err(Error::InvalidInput("a domain needs at least one puncture".into()));
        }
        for (i, p) in punctures.iter().enumerate() {
            if punctures[..i].iter().any(|q| q.close_to(p, 1e-12)) {
                return Err(Error::InvalidInput(format!("puncture {p} is listed twice")));
            }
        }
        Ok(Self {
            kind,
            lattice,
            punctures,
        })
    }

    pub fn sphere(punctures: Vec<Point>) -> Result<Self> {
        Self::new(DomainKind::Sphere, None, punctures)
    }

    pub fn plane(punctures: Vec<Point>) -> Result<Self> {
        Self::new(DomainKind::Plane, None, punctures)
    }

    pub fn torus(tau: Complex64) -> Result<Self> {
        Self::new(DomainKind::Torus, Some(tau), Vec::new())
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        self.lattice.as_ref()
    }

    pub fn punctures(&self) -> &[Point] {
        &self.punctures
    }

    pub fn finite_punctures(&self) -> Vec<Complex64> {
        self.punctures.iter().filter_map(Point::as_finite).collect()
    }

    pub fn has_infinity(&self) -> bool {
        self.punctures.iter().any(Point::is_infinite)
    }

    pub fn genus(&self) -> usize {
        match self.kind {
            DomainKind::Torus => 1,
            _ => 0,
        }
    }

    pub fn n_ends(&self) -> usize {
        self.punctures.len()
    }

    /// Distance from `z` to the nearest finite puncture (lattice point on a torus).
    pub fn distance_to_punctures(&self, z: Complex64) -> f64 {
        match &self.lattice {
            Some(lat) => lat.distance_to_lattice(z),
            None => self
                .finite_punctures()
                .iter()
                .map(|p| (z - p).norm())
                .fold(f64::INFINITY, f64::min),
        }
    }
}

/// Domain, the pair `(F, G)` and the base point of the integral.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassData {
    pub domain: Domain,
    pub f: MeromorphicFunction,
    pub g: MeromorphicFunction,
    pub base_point: Complex64,
}

impl WeierstrassData {
    pub fn new(domain: Domain, f: MeromorphicFunction, g: MeromorphicFunction, base_point: Complex64) -> Self {
        Self {
            domain,
            f,
            g,
            base_point,
        }
    }

    pub fn rational(domain: Domain, f: RationalFunction, g: RationalFunction, base_point: Complex64) -> Self {
        Self::new(
            domain,
            MeromorphicFunction::Rational(f),
            MeromorphicFunction::Rational(g),
            base_point,
        )
    }

    pub fn elliptic(domain: Domain, f: EllipticCombination, g: EllipticCombination, base_point: Complex64) -> Self {
        Self::new(
            domain,
            MeromorphicFunction::Elliptic(f),
            MeromorphicFunction::Elliptic(g),
            base_point,
        )
    }

    pub fn genus(&self) -> usize {
        self.domain.genus()
    }
}

/// Check regularity, pole placement and the base point.
pub fn validate(data: &WeierstrassData) -> Result<()> {
    match (&data.f, &data.g, data.domain.kind) {
        (MeromorphicFunction::Rational(f), MeromorphicFunction::Rational(g), DomainKind::Sphere | DomainKind::Plane) => {
            validate_rational(&data.domain, f, g)?
        }
        (MeromorphicFunction::Elliptic(f), MeromorphicFunction::Elliptic(g), DomainKind::Torus) => {
            let tau = data.domain.lattice().map(Lattice::tau);
            if Some(f.lattice().tau()) != tau || Some(g.lattice().tau()) != tau {
                return Err(Error::InvalidInput(
                    "F and G must live on the lattice of the domain".into(),
                ));
            }
            validate_elliptic(f, g)?
        }
        _ => {
            return Err(Error::InvalidInput(
                "sphere and plane domains take rational data; tori take elliptic data".into(),
            ))
        }
    }
    let b = data.base_point;
    if data.domain.distance_to_punctures(b) < 1e-9 {
        return Err(Error::InvalidBasePoint(b));
    }
    if data.f.eval(b).is_err() || data.g.eval(b).is_err() {
        return Err(Error::InvalidBasePoint(b));
    }
    Ok(())
}

fn validate_rational(domain: &Domain, f: &RationalFunction, g: &RationalFunction) -> Result<()> {
    let finite = domain.finite_punctures();
    let at_puncture = |z: Complex64| {
        finite
            .iter()
            .any(|p| Point::Finite(*p).close_to(&Point::Finite(z), PUNCTURE_MATCH_TOL))
    };
    for (name, h) in [("F", f), ("G", g)] {
        for pole in h.poles() {
            if !at_puncture(pole.value) {
                return Err(Error::PoleOffPuncture {
                    function: name,
                    point: Point::Finite(pole.value).to_string(),
                });
            }
        }
        if !domain.has_infinity() && h.order_at_infinity() < 0 {
            return Err(Error::PoleOffPuncture {
                function: name,
                point: "inf".into(),
            });
        }
    }
    let (df, dg) = (f.derivative(), g.derivative());
    // common zeros of dF and dG at finite points of the domain
    let mut candidates: Vec<Complex64> = df.zeros().iter().map(|r| r.value).collect();
    if df.is_zero() {
        candidates.extend(dg.zeros().iter().map(|r| r.value));
    }
    for z in candidates {
        if at_puncture(z) {
            continue;
        }
        let dg_vanishes = dg.is_zero() || dg.num().root_order_at(z, VANISH_TOL) > 0;
        let df_vanishes = df.is_zero() || df.num().root_order_at(z, VANISH_TOL) > 0;
        if dg_vanishes && df_vanishes {
            return Err(Error::NotRegularCurve(z));
        }
    }
    if df.is_zero() && dg.is_zero() {
        return Err(Error::NotRegularCurve(ZERO));
    }
    // at infinity dF/dt = -F'(1/t)/t^2 in the coordinate t = 1/z
    if !domain.has_infinity() {
        let vanishes = |h: &RationalFunction| h.is_zero() || h.order_at_infinity() >= 3;
        if vanishes(&df) && vanishes(&dg) {
            return Err(Error::NotRegularCurve(Complex64::new(f64::INFINITY, 0.0)));
        }
    }
    Ok(())
}

fn validate_elliptic(f: &EllipticCombination, g: &EllipticCombination) -> Result<()> {
    let (df, dg) = (f.derivative()?, g.derivative()?);
    if df.is_constant() && dg.is_constant() {
        return Err(Error::NotRegularCurve(ZERO));
    }
    let zeros = if dg.is_constant() {
        df.zeros_in_fpp()?
    } else {
        dg.zeros_in_fpp()?
    };
    let other = if dg.is_constant() { &dg } else { &df };
    for (z, _) in zeros {
        let d = other.lattice().wp_derivatives(other.coeffs().len().saturating_sub(1), z)?;
        if other.eval_with(&d).norm() <= 1e-9 * other.eval_scale(&d).max(1e-300) {
            return Err(Error::NotRegularCurve(z));
        }
    }
    Ok(())
}

/// A point of the front.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiValue {
    /// First two coordinates as one complex number, `G + conj(F)`.
    pub x: Complex64,
    pub x3: f64,
    /// Conormal part `conj(F) - G`.
    pub n: Complex64,
}

impl PsiValue {
    pub fn to_array(&self) -> [f64; 3] {
        [self.x.re, self.x.im, self.x3]
    }
}

/// Metric quantities at a point, all per `|dz|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSample {
    /// Flat fundamental form `|F'|^2 + |G'|^2 + 2 Re(F'G')`.
    pub ds2: f64,
    /// Affine metric `|G'|^2 - |F'|^2`.
    pub h: f64,
    /// Complete metric `2(|F'|^2 + |G'|^2)`.
    pub dtau2: f64,
    /// Gaussian curvature of `dtau2`.
    pub k_tau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceOptions {
    /// Refuse to evaluate `psi` when the period check fails.
    pub strict: bool,
    pub period_tol: f64,
}

impl Default for SurfaceOptions {
    fn default() -> Self {
        Self {
            strict: true,
            period_tol: DEFAULT_PERIOD_TOL,
        }
    }
}

#[derive(Debug, Clone)]
enum Integral {
    Rational(Antiderivative),
    Elliptic,
}

/// Validated data with everything needed for repeated evaluation.
#[derive(Debug, Clone)]
pub struct Surface {
    data: WeierstrassData,
    options: SurfaceOptions,
    df: MeromorphicFunction,
    dg: MeromorphicFunction,
    d2f: MeromorphicFunction,
    d2g: MeromorphicFunction,
    integral: Integral,
    base_re_integral: f64,
    period: PeriodReport,
}

impl Surface {
    pub fn new(data: WeierstrassData) -> Result<Self> {
        Self::with_options(data, SurfaceOptions::default())
    }

    pub fn with_options(data: WeierstrassData, options: SurfaceOptions) -> Result<Self> {
        validate(&data)?;
        let df = data.f.derivative()?;
        let dg = data.g.derivative()?;
        let d2f = df.derivative()?;
        let d2g = dg.derivative()?;
        let integral = match (&data.f, &dg) {
            (MeromorphicFunction::Rational(f), MeromorphicFunction::Rational(dg)) => {
                Integral::Rational(f.mul(dg).antiderivative())
            }
            _ => Integral::Elliptic,
        };
        let period = check_period_condition(&data, options.period_tol);
        let mut s = Self {
            data,
            options,
            df,
            dg,
            d2f,
            d2g,
            integral,
            base_re_integral: 0.0,
            period,
        };
        if let Integral::Rational(anti) = &s.integral {
            s.base_re_integral = anti.real_part(s.data.base_point);
        }
        Ok(s)
    }

    pub fn data(&self) -> &WeierstrassData {
        &self.data
    }

    pub fn options(&self) -> SurfaceOptions {
        self.options
    }

    pub fn period_report(&self) -> &PeriodReport {
        &self.period
    }

    pub fn df(&self) -> &MeromorphicFunction {
        &self.df
    }

    pub fn dg(&self) -> &MeromorphicFunction {
        &self.dg
    }

    /// `psi(z)`; refused in strict mode when the period condition fails.
    pub fn psi(&self, z: Complex64) -> Result<PsiValue> {
        if self.options.strict && !self.period.passed {
            let worst = self.period.worst_entry();
            return Err(Error::PeriodConditionViolated {
                cycle: worst.map(|e| e.cycle.clone()).unwrap_or_default(),
                value: worst.map(|e| e.re_abs).unwrap_or(f64::NAN),
            });
        }
        self.psi_unchecked(z)
    }

    /// `psi(z)` without the period gate. On data that violates the period
    /// condition the result depends on the path of integration.
    pub fn psi_unchecked(&self, z: Complex64) -> Result<PsiValue> {
        let f = self.data.f.eval(z)?;
        let g = self.data.g.eval(z)?;
        let re_int = self.re_integral(z)?;
        Ok(PsiValue {
            x: g + f.conj(),
            x3: 0.5 * (g.norm_sqr() - f.norm_sqr()) + (g * f).re - 2.0 * re_int,
            n: f.conj() - g,
        })
    }

    /// `Re int_{base}^{z} F dG`.
    pub fn re_integral(&self, z: Complex64) -> Result<f64> {
        match &self.integral {
            Integral::Rational(anti) => {
                if self.data.domain.distance_to_punctures(z) == 0.0 {
                    return Err(Error::PoleAt(z));
                }
                Ok(anti.real_part(z) - self.base_re_integral)
            }
            Integral::Elliptic => Ok(self.torus_integral(z)?.re),
        }
    }

    /// `int F dG` on the torus along a path inside one period parallelogram.
    fn torus_integral(&self, z: Complex64) -> Result<Complex64> {
        let (f, dg) = match (&self.data.f, &self.dg) {
            (MeromorphicFunction::Elliptic(f), MeromorphicFunction::Elliptic(dg)) => (f, dg),
            _ => unreachable!("torus data is elliptic"),
        };
        let lat = f.lattice();
        if lat.is_lattice_point(z) {
            return Err(Error::PoleAt(z));
        }
        let reduce = |w: Complex64| {
            let (s, t) = lat.coordinates(w);
            w - s.floor() - lat.tau() * t.floor()
        };
        let (a, b) = (reduce(self.data.base_point), reduce(z));
        let center = (1.0 + lat.tau()) / 2.0;
        let corners = [ZERO, Complex64::new(1.0, 0.0), lat.tau(), 1.0 + lat.tau()];
        let near_corner = |p: Complex64, q: Complex64| {
            corners.iter().any(|c| {
                segment_distance(*c, p, q) < DETOUR_RADIUS
                    && (p - c).norm() >= DETOUR_RADIUS
                    && (q - c).norm() >= DETOUR_RADIUS
            })
        };
        let k = f.coeffs().len().max(dg.coeffs().len()).saturating_sub(1);
        let segment = |p: Complex64, q: Complex64| -> Result<Complex64> {
            let dz = q - p;
            let failed = std::cell::Cell::new(false);
            let v = integrate_adaptive(
                |t| match lat.wp_derivatives(k, p + dz * t) {
                    Ok(d) => f.eval_with(&d) * dg.eval_with(&d) * dz,
                    Err(_) => {
                        failed.set(true);
                        ZERO
                    }
                },
                0.0,
                1.0,
                1e-13,
            )?;
            if failed.get() {
                return Err(Error::PoleAt(z));
            }
            Ok(v)
        };
        if near_corner(a, b) {
            Ok(segment(a, center)? + segment(center, b)?)
        } else {
            segment(a, b)
        }
    }

    pub fn metrics_at(&self, z: Complex64) -> Result<MetricSample> {
        let f1 = self.df.eval(z)?;
        let g1 = self.dg.eval(z)?;
        let f2 = self.d2f.eval(z)?;
        let g2 = self.d2g.eval(z)?;
        let s = f1.norm_sqr() + g1.norm_sqr();
        // -|rho'/G'|^2 / (1 + |rho|^2)^3 with rho = F'/G', cleared of G'
        let w = f2 * g1 - f1 * g2;
        Ok(MetricSample {
            ds2: s + 2.0 * (f1 * g1).re,
            h: g1.norm_sqr() - f1.norm_sqr(),
            dtau2: 2.0 * s,
            k_tau: if s > 0.0 { -w.norm_sqr() / s.powi(3) } else { f64::NAN },
        })
    }

    /// `|rho(z)| - 1`, or `None` where `G'` vanishes (`rho` has a pole).
    pub fn rho_gap(&self, z: Complex64) -> Result<Option<f64>> {
        let f1 = self.df.eval(z)?.norm();
        let g1 = self.dg.eval(z)?.norm();
        if g1 == 0.0 {
            return Ok(None);
        }
        Ok(Some(f1 / g1 - 1.0))
    }
}

fn segment_distance(c: Complex64, p: Complex64, q: Complex64) -> f64 {
    let d = q - p;
    if d.norm_sqr() == 0.0 {
        return (c - p).norm();
    }
    let t = (((c - p) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    (c - (p + d * t)).norm()
}

/// `psi(z)` for one-off evaluation; builds a [`Surface`] each call.
pub fn evaluate_psi(data: &WeierstrassData, z: Complex64) -> Result<PsiValue> {
    Surface::new(data.clone())?.psi(z)
}

pub fn metrics_at(data: &WeierstrassData, z: Complex64) -> Result<MetricSample> {
    Surface::new(data.clone())?.metrics_at(z)
}

/// The Lagrangian Gauss map `rho = F'/G'`.
#[derive(Debug, Clone, PartialEq)]
pub enum GaussMap {
    Rational(RationalFunction),
    EllipticQuotient {
        num: EllipticCombination,
        den: EllipticCombination,
    },
}

impl GaussMap {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self {
            GaussMap::Rational(r) => r.eval(z),
            GaussMap::EllipticQuotient { num, den } => {
                let d = den.eval(z)?;
                if d == ZERO {
                    return Err(Error::PoleAt(z));
                }
                Ok(num.eval(z)? / d)
            }
        }
    }

    /// Mapping degree. On the torus this is the number of poles of `rho` in
    /// a period parallelogram; regularity rules out common zeros of `F'` and
    /// `G'`, so it equals the larger pole order at the lattice points.
    pub fn degree(&self) -> usize {
        match self {
            GaussMap::Rational(r) => r.degree(),
            GaussMap::EllipticQuotient { num, den } => {
                if num.is_constant() && num.constant() == ZERO {
                    return 0;
                }
                (-num.order_at_origin()).max(-den.order_at_origin()) as usize
            }
        }
    }
}

pub fn gauss_map(data: &WeierstrassData) -> Result<GaussMap> {
    if data.g.is_constant() {
        return Err(Error::ConstantG);
    }
    match (data.f.derivative()?, data.g.derivative()?) {
        (MeromorphicFunction::Rational(df), MeromorphicFunction::Rational(dg)) => {
            Ok(GaussMap::Rational(df.div(&dg)?))
        }
        (MeromorphicFunction::Elliptic(num), MeromorphicFunction::Elliptic(den)) => {
            Ok(GaussMap::EllipticQuotient { num, den })
        }
        _ => Err(Error::InvalidInput("F and G are of different kinds".into())),
    }
}

/// Degree of the Gauss map, also when `G` is constant: then `rho` is the
/// constant `infinity` and has degree 0.
pub fn rho_degree(data: &WeierstrassData) -> Result<usize> {
    if data.g.is_constant() && !data.f.is_constant() {
        return Ok(0);
    }
    Ok(gauss_map(data)?.degree())
}

/// `(deg rho, -2 pi deg rho)`.
pub fn total_curvature(data: &WeierstrassData) -> Result<(usize, f64)> {
    let deg = gauss_map(data)?.degree();
    Ok((deg, -2.0 * PI * deg as f64))
}

/// Points where `|rho| = 1`, found on grid edges where `|rho| - 1` changes
/// sign and refined by bisection.
pub fn singular_locus(surface: &Surface, grid: &GridSpec, tol: f64) -> Result<Vec<Complex64>> {
    let g = grid.build(surface.data.domain.lattice())?;
    let gaps: Vec<Option<f64>> = g
        .points
        .iter()
        .map(|&z| surface.rho_gap(z).ok().flatten())
        .collect();
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        let (Some(ga), Some(gb)) = (gaps[a], gaps[b]) else {
            continue;
        };
        if ga.abs() < tol {
            out.push(g.points[a]);
            continue;
        }
        if ga.signum() == gb.signum() || gb.abs() < tol {
            continue;
        }
        let (mut lo, mut hi) = (g.points[a], g.points[b]);
        let mut glo = ga;
        for _ in 0..200 {
            let mid = (lo + hi) / 2.0;
            let Some(gm) = surface.rho_gap(mid)? else { break };
            if gm.abs() < tol {
                lo = mid;
                break;
            }
            if gm.signum() == glo.signum() {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
        }
        out.push(lo);
    }
    Ok(out)
}

/// `(F, G) -> (alpha F + beta G + mu, conj(beta) F + conj(alpha) G + lambda)`.
pub fn equiaffine_transform(
    data: &WeierstrassData,
    alpha: Complex64,
    beta: Complex64,
    mu: Complex64,
    lambda: Complex64,
) -> Result<WeierstrassData> {
    let det = alpha.norm_sqr() - beta.norm_sqr();
    if (det - 1.0).abs() >= 1e-12 {
        return Err(Error::NotUnimodular(det));
    }
    let f = data.f.scale(alpha).add(&data.g.scale(beta))?.add_constant(mu);
    let g = data
        .f
        .scale(beta.conj())
        .add(&data.g.scale(alpha.conj()))?
        .add_constant(lambda);
    Ok(WeierstrassData::new(data.domain.clone(), f, g, data.base_point))
}
