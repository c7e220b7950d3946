//! Meromorphic functions on the two kinds of compact surface in scope:
//! rational functions on the sphere and elliptic functions built from `wp`
//! and its derivatives on a torus.

use num_complex::Complex64;

use crate::elliptic::{Lattice, MAX_DERIVATIVE};
use crate::error::{Error, Result};
use crate::rational::{Point, RationalFunction};
use crate::series::Laurent;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `constant + sum_k coeffs[k] * wp^(k)(z)` on a fixed lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticCombination {
    lattice: Lattice,
    coeffs: Vec<Complex64>,
    constant: Complex64,
}

impl EllipticCombination {
    /// Terms are `(derivative order, coefficient)`; repeated orders add up.
    pub fn new(lattice: Lattice, terms: &[(usize, Complex64)], constant: Complex64) -> Result<Self> {
        let mut coeffs = Vec::new();
        for &(k, c) in terms {
            if k > MAX_DERIVATIVE {
                return Err(Error::Unsupported(format!("wp derivative of order {k}")));
            }
            if coeffs.len() <= k {
                coeffs.resize(k + 1, ZERO);
            }
            coeffs[k] += c;
        }
        Ok(Self::from_parts(lattice, coeffs, constant))
    }

    fn from_parts(lattice: Lattice, mut coeffs: Vec<Complex64>, constant: Complex64) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Self {
            lattice,
            coeffs,
            constant,
        }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn constant(&self) -> Complex64 {
        self.constant
    }

    /// Coefficient of `wp^(k)`.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest derivative order present.
    pub fn max_order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Evaluate from precomputed values `wp^(0..)(z)`.
    pub fn eval_with(&self, derivs: &[Complex64]) -> Complex64 {
        self.coeffs
            .iter()
            .zip(derivs)
            .fold(self.constant, |acc, (c, d)| acc + c * d)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self.max_order() {
            None => Ok(self.constant),
            Some(k) => Ok(self.eval_with(&self.lattice.wp_derivatives(k, z)?)),
        }
    }

    pub fn derivative(&self) -> Result<Self> {
        if self.coeffs.len() > MAX_DERIVATIVE {
            return Err(Error::Unsupported(format!(
                "wp derivative of order {}",
                self.coeffs.len()
            )));
        }
        let mut coeffs = vec![ZERO];
        coeffs.extend_from_slice(&self.coeffs);
        Ok(Self::from_parts(self.lattice, coeffs, ZERO))
    }

    /// Order at the lattice points (negative: pole order). Zero for constants.
    pub fn order_at_origin(&self) -> i32 {
        match self.max_order() {
            None => 0,
            Some(k) => -(k as i32 + 2),
        }
    }

    /// Laurent series at the origin, known through `z^max_power`.
    pub fn laurent_at_origin(&self, max_power: i32) -> Laurent {
        let len = (max_power + MAX_DERIVATIVE as i32 + 3) as usize;
        let mut acc = Laurent::new(-(MAX_DERIVATIVE as i32) - 2, vec![ZERO; len]);
        let mut cst = vec![ZERO; (max_power + 1).max(1) as usize];
        cst[0] = self.constant;
        acc = acc.add(&Laurent::new(0, cst));
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c != ZERO {
                acc = acc.add(&self.lattice.wp_laurent(k, max_power).scale(*c));
            }
        }
        let prec = max_power + 1;
        let coeffs = (acc.valuation..prec).map(|j| acc.coeff(j)).collect();
        Laurent::new(acc.valuation, coeffs).normalized(0.0)
    }

    /// Zeros in the period parallelogram `s + t tau`, `s, t` in `[0, 1)`,
    /// with multiplicities. Newton's method is started from a grid and runs
    /// until the count matches the pole order at the origin.
    pub fn zeros_in_fpp(&self) -> Result<Vec<(Complex64, usize)>> {
        let expected = (-self.order_at_origin()) as usize;
        if self.is_constant() {
            return Ok(Vec::new());
        }
        let lat = self.lattice;
        let df = self.derivative()?;
        let mut found: Vec<(Complex64, usize)> = Vec::new();
        let total = |f: &[(Complex64, usize)]| f.iter().map(|r| r.1).sum::<usize>();
        'starts: for res in [6usize, 13, 29] {
            for i in 0..res {
                for j in 0..res {
                    if total(&found) >= expected {
                        break 'starts;
                    }
                    let s = (i as f64 + 0.5) / res as f64;
                    let t = (j as f64 + 0.5) / res as f64;
                    let Some(z) = self.newton(&df, s + lat.tau() * t) else {
                        continue;
                    };
                    let (sz, tz) = lat.coordinates(z);
                    let z = z - sz.floor() - lat.tau() * tz.floor();
                    if found.iter().any(|(w, _)| lat.distance_to_lattice(z - w) < 1e-7) {
                        continue;
                    }
                    found.push((z, self.multiplicity_at(z)?));
                }
            }
        }
        if total(&found) != expected {
            return Err(Error::NonConvergence(format!(
                "found {} of {} zeros of an elliptic function",
                total(&found),
                expected
            )));
        }
        Ok(found)
    }

    fn newton(&self, df: &Self, mut z: Complex64) -> Option<Complex64> {
        // multiple zeros converge linearly and stall near sqrt(eps)
        let mut min_step = f64::INFINITY;
        for _ in 0..100 {
            if self.lattice.distance_to_lattice(z) < 1e-6 {
                return None;
            }
            let k = self.coeffs.len() + 1;
            let d = self.lattice.wp_derivatives(k.min(MAX_DERIVATIVE), z).ok()?;
            let (v, dv) = (self.eval_with(&d), df.eval_with(&d));
            if v == ZERO {
                return Some(z);
            }
            if dv == ZERO {
                return None;
            }
            let step = v / dv;
            z -= step;
            min_step = min_step.min(step.norm());
            if step.norm() < 1e-14 * (1.0 + z.norm()) {
                break;
            }
        }
        (min_step < 1e-7 * (1.0 + z.norm())).then_some(z)
    }

    /// Number of leading derivatives vanishing at `z`, each judged against
    /// the size of the next two derivatives (lattices have unit scale).
    fn multiplicity_at(&self, z: Complex64) -> Result<usize> {
        let top = self.coeffs.len() + MAX_DERIVATIVE;
        let d = self.lattice.wp_derivatives(top.min(MAX_DERIVATIVE), z)?;
        let mut ders = vec![self.clone()];
        for _ in 0..3 {
            match ders.last().unwrap().derivative() {
                Ok(next) if next.coeffs.len() <= d.len() => ders.push(next),
                _ => break,
            }
        }
        let vals: Vec<f64> = ders.iter().map(|f| f.eval_with(&d).norm()).collect();
        let mut m = 1;
        while m + 1 < vals.len() {
            let next = vals[m + 1..].iter().copied().fold(0.0, f64::max);
            if vals[m] > 1e-6 * next {
                break;
            }
            m += 1;
        }
        Ok(m)
    }

    /// Sum of the absolute values of the terms: the rounding scale of a value.
    pub fn eval_scale(&self, derivs: &[Complex64]) -> f64 {
        self.coeffs
            .iter()
            .zip(derivs)
            .fold(self.constant.norm(), |acc, (c, d)| acc + (c * d).norm())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_parts(
            self.lattice,
            self.coeffs.iter().map(|c| c * s).collect(),
            self.constant * s,
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.lattice.tau() != other.lattice.tau() {
            return Err(Error::InvalidInput("elliptic functions on different lattices".into()));
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Ok(Self::from_parts(self.lattice, coeffs, self.constant + other.constant))
    }

    pub fn add_constant(&self, c: Complex64) -> Self {
        Self::from_parts(self.lattice, self.coeffs.clone(), self.constant + c)
    }
}

/// Either kind of meromorphic function.
#[derive(Debug, Clone, PartialEq)]
pub enum MeromorphicFunction {
    Rational(RationalFunction),
    Elliptic(EllipticCombination),
}

impl MeromorphicFunction {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self {
            Self::Rational(f) => f.eval(z),
            Self::Elliptic(f) => f.eval(z),
        }
    }

    pub fn derivative(&self) -> Result<Self> {
        Ok(match self {
            Self::Rational(f) => Self::Rational(f.derivative()),
            Self::Elliptic(f) => Self::Elliptic(f.derivative()?),
        })
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Self::Rational(f) => f.is_constant(),
            Self::Elliptic(f) => f.is_constant(),
        }
    }

    pub fn as_rational(&self) -> Option<&RationalFunction> {
        match self {
            Self::Rational(f) => Some(f),
            Self::Elliptic(_) => None,
        }
    }

    pub fn as_elliptic(&self) -> Option<&EllipticCombination> {
        match self {
            Self::Elliptic(f) => Some(f),
            Self::Rational(_) => None,
        }
    }

    /// Laurent series with `n_terms` coefficients at a point. Elliptic
    /// functions are expanded at lattice points only.
    pub fn laurent_at(&self, p: Point, n_terms: usize) -> Result<Laurent> {
        match self {
            Self::Rational(f) => Ok(f.laurent_at(p, n_terms)),
            Self::Elliptic(f) => match p {
                Point::Finite(z) if f.lattice().is_lattice_point(z) => {
                    let ord = f.order_at_origin();
                    Ok(f.laurent_at_origin(ord + n_terms as i32 - 1))
                }
                _ => Err(Error::Unsupported(format!(
                    "Laurent expansion of an elliptic function at {p}"
                ))),
            },
        }
    }

    /// Order at a point (negative: pole order).
    pub fn order_at(&self, p: Point) -> Result<i32> {
        match self {
            Self::Rational(f) => Ok(f.order_at(p)),
            Self::Elliptic(f) => match p {
                Point::Finite(z) if f.lattice().is_lattice_point(z) => Ok(f.order_at_origin()),
                _ => Err(Error::Unsupported(format!("order of an elliptic function at {p}"))),
            },
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        match self {
            Self::Rational(f) => Self::Rational(f.scale(s)),
            Self::Elliptic(f) => Self::Elliptic(f.scale(s)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Self::Rational(a), Self::Rational(b)) => Ok(Self::Rational(a.add(b))),
            (Self::Elliptic(a), Self::Elliptic(b)) => Ok(Self::Elliptic(a.add(b)?)),
            _ => Err(Error::InvalidInput(
                "cannot combine a rational and an elliptic function".into(),
            )),
        }
    }

    pub fn add_constant(&self, c: Complex64) -> Self {
        match self {
            Self::Rational(f) => Self::Rational(f.add(&RationalFunction::constant(c))),
            Self::Elliptic(f) => Self::Elliptic(f.add_constant(c)),
        }
    }
}
