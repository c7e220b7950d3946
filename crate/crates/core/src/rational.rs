//! Rational functions on the Riemann sphere.
//!
//! A [`RationalFunction`] is kept in lowest terms with a monic denominator.
//! Common factors are found numerically: every root of the denominator at
//! which the numerator also vanishes is divided out of both.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Root, CHOP_TOL};
use crate::series::Laurent;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative tolerance for deciding that a Taylor coefficient vanishes.
pub const VANISH_TOL: f64 = 1e-9;

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Finite(Complex64),
    Infinity,
}

impl Point {
    pub fn finite(re: f64, im: f64) -> Self {
        Point::Finite(Complex64::new(re, im))
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match self {
            Point::Finite(z) => Some(*z),
            Point::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    /// Whether two points agree up to a relative tolerance.
    pub fn close_to(&self, other: &Point, tol: f64) -> bool {
        match (self, other) {
            (Point::Infinity, Point::Infinity) => true,
            (Point::Finite(a), Point::Finite(b)) => {
                (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
            }
            _ => false,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "inf"),
            Point::Finite(z) => write!(f, "{}", format_complex(*z)),
        }
    }
}

pub(crate) fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Zeros and poles with multiplicities, plus the order at infinity
/// (positive for a zero there, negative for a pole).
#[derive(Debug, Clone, PartialEq)]
pub struct PoleZeroProfile {
    pub zeros: Vec<Root>,
    pub poles: Vec<Root>,
    pub order_at_infinity: i32,
}

impl PoleZeroProfile {
    /// Zeros minus poles over the whole sphere; zero for any nonzero rational function.
    pub fn total_order(&self) -> i64 {
        let z: usize = self.zeros.iter().map(|r| r.multiplicity).sum();
        let p: usize = self.poles.iter().map(|r| r.multiplicity).sum();
        z as i64 - p as i64 + self.order_at_infinity as i64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Build `num / den` in lowest terms.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num.chop(CHOP_TOL), den.chop(CHOP_TOL)))
    }

    pub fn from_coeffs(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<Self> {
        Self::new(Polynomial::new(num), Polynomial::new(den))
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::constant(ONE),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::polynomial(Polynomial::constant(c))
    }

    /// The identity function `z`.
    pub fn identity() -> Self {
        Self::polynomial(Polynomial::monomial(ONE, 1))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Degree as a map of the sphere to itself.
    pub fn degree(&self) -> usize {
        if self.num.is_zero() {
            return 0;
        }
        self.num.degree().max(self.den.degree())
    }

    fn reduce(mut num: Polynomial, mut den: Polynomial) -> Self {
        if num.is_zero() {
            return Self {
                num,
                den: Polynomial::constant(ONE),
            };
        }
        for root in den.roots() {
            let k = num.root_order_at(root.value, VANISH_TOL).min(root.multiplicity);
            for _ in 0..k {
                num = num.deflate(root.value);
                den = den.deflate(root.value);
            }
        }
        let lead = den.leading();
        Self {
            num: num.scale(lead.inv()),
            den: den.scale(lead.inv()),
        }
    }

    /// Value at a finite point; `PoleAt` at a pole.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let d = self.den.eval(z);
        if d.norm() <= 1e-14 * self.den.eval_scale(z) {
            return Err(Error::PoleAt(z));
        }
        Ok(self.num.eval(z) / d)
    }

    /// Value at a point of the sphere; `None` stands for infinity.
    pub fn eval_point(&self, p: Point) -> Option<Complex64> {
        match p {
            Point::Finite(z) => self.eval(z).ok(),
            Point::Infinity => {
                let (dn, dd) = (self.num.degree(), self.den.degree());
                if self.num.is_zero() || dn < dd {
                    Some(ZERO)
                } else if dn == dd {
                    Some(self.num.leading() / self.den.leading())
                } else {
                    None
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::reduce(num.chop(CHOP_TOL), self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduce(
            self.num.mul(&other.num).chop(CHOP_TOL),
            self.den.mul(&other.den),
        )
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(
            self.num.mul(&other.den).chop(CHOP_TOL),
            self.den.mul(&other.num).chop(CHOP_TOL),
        ))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::reduce(num.chop(CHOP_TOL), self.den.mul(&self.den))
    }

    pub fn zeros(&self) -> Vec<Root> {
        self.num.roots()
    }

    pub fn poles(&self) -> Vec<Root> {
        self.den.roots()
    }

    /// Order at infinity: positive for a zero, negative for a pole.
    pub fn order_at_infinity(&self) -> i32 {
        if self.num.is_zero() {
            return i32::MAX;
        }
        self.den.degree() as i32 - self.num.degree() as i32
    }

    pub fn pole_zero_profile(&self) -> PoleZeroProfile {
        PoleZeroProfile {
            zeros: self.zeros(),
            poles: self.poles(),
            order_at_infinity: self.order_at_infinity(),
        }
    }

    /// Order at a point of the sphere (negative for a pole).
    pub fn order_at(&self, p: Point) -> i32 {
        match p {
            Point::Infinity => self.order_at_infinity(),
            Point::Finite(z) => {
                if self.num.is_zero() {
                    return i32::MAX;
                }
                self.num.root_order_at(z, VANISH_TOL) as i32
                    - self.den.root_order_at(z, VANISH_TOL) as i32
            }
        }
    }

    /// Laurent expansion with `n_terms` coefficients in the local coordinate:
    /// `t = z - p` at a finite point, `t = 1/z` at infinity.
    pub fn laurent_at(&self, p: Point, n_terms: usize) -> Laurent {
        match p {
            Point::Infinity => {
                let val = self.den.degree() as i32 - self.num.degree() as i32;
                let num = Laurent::new(0, pad(self.num.reversed(), n_terms));
                let den = Laurent::new(0, pad(self.den.reversed(), n_terms));
                let s = num.div(&den);
                Laurent::new(val, s.coeffs)
            }
            Point::Finite(z) => {
                let n_ord = self.num.root_order_at(z, VANISH_TOL);
                let d_ord = self.den.root_order_at(z, VANISH_TOL);
                self.laurent_finite(z, n_ord, d_ord, n_terms)
            }
        }
    }

    fn laurent_finite(&self, z: Complex64, n_ord: usize, d_ord: usize, n_terms: usize) -> Laurent {
        let shifted = |p: &Polynomial, ord: usize| {
            let t = p.taylor_at(z);
            Laurent::new(0, pad(t.into_iter().skip(ord).collect(), n_terms))
        };
        if self.num.is_zero() {
            return Laurent::new(0, vec![ZERO; n_terms]);
        }
        let s = shifted(&self.num, n_ord).div(&shifted(&self.den, d_ord));
        Laurent::new(n_ord as i32 - d_ord as i32, s.coeffs)
    }

    /// Residue of `f dz` at a point of the sphere.
    pub fn residue(&self, p: Point) -> Complex64 {
        match p {
            Point::Finite(_) => {
                let ord = self.order_at(p);
                if ord >= 0 {
                    return ZERO;
                }
                let n = (-ord) as usize + 1;
                self.laurent_at(p, n).coeff(-1)
            }
            Point::Infinity => {
                // in t = 1/z the form is -f(1/t) dt / t^2
                let ord = self.order_at_infinity();
                if ord >= 2 {
                    return ZERO;
                }
                let n = (2 - ord).max(1) as usize + 1;
                -self.laurent_at(p, n).coeff(1)
            }
        }
    }

    /// Exact antiderivative by partial fractions.
    pub fn antiderivative(&self) -> Antiderivative {
        let (quot, rem) = self.num.div_rem(&self.den);
        let proper = Self {
            num: rem,
            den: self.den.clone(),
        };
        let mut principal = Vec::new();
        let mut logs = Vec::new();
        for pole in self.den.roots() {
            let m = pole.multiplicity;
            let n_ord = proper.num.root_order_at(pole.value, VANISH_TOL).min(m);
            let series = proper.laurent_finite(pole.value, n_ord, m, m + 1);
            // coefficients of (z-p)^(-j) in the antiderivative, j >= 1
            let mut terms = Vec::new();
            for j in 2..=m {
                let c = series.coeff(-(j as i32));
                terms.push(c / (1.0 - j as f64));
            }
            principal.push((pole.value, terms));
            let res = series.coeff(-1);
            if res != ZERO {
                logs.push((pole.value, res));
            }
        }
        Antiderivative {
            polynomial: quot.integral(),
            principal,
            logs,
        }
    }
}

fn pad(mut v: Vec<Complex64>, n: usize) -> Vec<Complex64> {
    v.resize(n.max(1), ZERO);
    v
}

/// Antiderivative of a rational function:
/// a polynomial, a rational part written as principal parts, and logarithms.
#[derive(Debug, Clone)]
pub struct Antiderivative {
    pub polynomial: Polynomial,
    /// `(pole, [c_1, c_2, ...])` meaning `sum_j c_j (z - pole)^(-j)`.
    pub principal: Vec<(Complex64, Vec<Complex64>)>,
    /// `(pole, residue)` meaning `residue * log(z - pole)`.
    pub logs: Vec<(Complex64, Complex64)>,
}

impl Antiderivative {
    /// Single-valued part: polynomial plus principal parts.
    pub fn single_valued(&self, z: Complex64) -> Complex64 {
        let mut v = self.polynomial.eval(z);
        for (p, terms) in &self.principal {
            let inv = (z - p).inv();
            let mut pw = inv;
            for c in terms {
                v += c * pw;
                pw *= inv;
            }
        }
        v
    }

    /// Value on the principal branch of every logarithm.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut v = self.single_valued(z);
        for (p, r) in &self.logs {
            v += r * (z - p).ln();
        }
        v
    }

    /// Real part on the principal branch: each logarithm contributes
    /// `Re(r) log|z-p| - Im(r) arg(z-p)`.
    pub fn real_part(&self, z: Complex64) -> f64 {
        let mut v = self.single_valued(z).re;
        for (p, r) in &self.logs {
            let w = z - p;
            v += r.re * w.norm().ln() - r.im * w.arg();
        }
        v
    }

    /// The rational part (polynomial plus principal parts) as one function.
    pub fn rational_part(&self) -> RationalFunction {
        let mut acc = RationalFunction::polynomial(self.polynomial.clone());
        for (p, terms) in &self.principal {
            for (j, c) in terms.iter().enumerate() {
                let den = Polynomial::from_roots(&vec![*p; j + 1]);
                acc = acc.add(&RationalFunction {
                    num: Polynomial::constant(*c),
                    den,
                });
            }
        }
        acc
    }

    pub fn log_terms(&self) -> &[(Complex64, Complex64)] {
        &self.logs
    }
}
