//! Truncated Laurent series in a local coordinate.
//!
//! A series stores `coeffs[k]` as the coefficient of `t^(valuation + k)` and is
//! known exactly up to (but excluding) `t^(valuation + coeffs.len())`.

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Laurent {
    pub valuation: i32,
    pub coeffs: Vec<Complex64>,
}

impl Laurent {
    pub fn new(valuation: i32, coeffs: Vec<Complex64>) -> Self {
        Self { valuation, coeffs }
    }

    /// Series of a constant, known to `precision` terms.
    pub fn constant(c: Complex64, precision: usize) -> Self {
        let mut coeffs = vec![ZERO; precision.max(1)];
        coeffs[0] = c;
        Self::new(0, coeffs)
    }

    /// The coordinate `t` itself.
    pub fn variable(precision: usize) -> Self {
        let mut coeffs = vec![ZERO; precision.max(1)];
        coeffs[0] = ONE;
        Self::new(1, coeffs)
    }

    /// First exponent that is no longer known.
    pub fn precision(&self) -> i32 {
        self.valuation + self.coeffs.len() as i32
    }

    /// Coefficient of `t^k`. Exponents past the precision read as zero.
    pub fn coeff(&self, k: i32) -> Complex64 {
        if k < self.valuation {
            return ZERO;
        }
        self.coeffs
            .get((k - self.valuation) as usize)
            .copied()
            .unwrap_or(ZERO)
    }

    /// Drop leading coefficients that are negligible relative to the largest
    /// one, so that `coeffs[0]` is the true leading term.
    pub fn normalized(mut self, rel_tol: f64) -> Self {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let lead = self
            .coeffs
            .iter()
            .position(|c| c.norm() > rel_tol * scale)
            .unwrap_or(self.coeffs.len());
        if lead == self.coeffs.len() {
            // the zero series: keep the precision, report it as high order
            let prec = self.precision();
            return Self::new(prec, Vec::new());
        }
        self.coeffs.drain(..lead);
        self.valuation += lead as i32;
        self
    }

    /// Order of vanishing (negative for a pole). `None` for the zero series.
    pub fn order(&self) -> Option<i32> {
        self.coeffs
            .iter()
            .position(|c| *c != ZERO)
            .map(|k| self.valuation + k as i32)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.first().copied().unwrap_or(ZERO)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.valuation, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let val = self.valuation.min(other.valuation);
        let prec = self.precision().min(other.precision());
        let coeffs = (val..prec)
            .map(|k| self.coeff(k) + other.coeff(k))
            .collect();
        Self::new(val, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![ZERO; n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(self.valuation + other.valuation, coeffs)
    }

    /// Multiplicative inverse. The leading coefficient must be nonzero.
    pub fn recip(&self) -> Self {
        let n = self.coeffs.len();
        let a0 = self.coeffs[0];
        assert!(a0 != ZERO, "reciprocal of a series with zero leading term");
        let mut out = vec![ZERO; n];
        out[0] = a0.inv();
        for k in 1..n {
            let mut s = ZERO;
            for j in 1..=k {
                s += self.coeffs[j] * out[k - j];
            }
            out[k] = -s / a0;
        }
        Self::new(-self.valuation, out)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    pub fn powi(&self, e: i32) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut out = Self::constant(ONE, self.coeffs.len());
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn derivative(&self) -> Self {
        let mut coeffs: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * (self.valuation + k as i32) as f64)
            .collect();
        let mut val = self.valuation - 1;
        if self.valuation == 0 && !coeffs.is_empty() {
            // the constant term disappears; keep the series starting at t^0
            coeffs.remove(0);
            val = 0;
        }
        Self::new(val, coeffs)
    }

    /// Composition `self(inner(w))` where `inner` has valuation exactly 1.
    pub fn compose(&self, inner: &Self) -> Self {
        assert_eq!(inner.valuation, 1, "inner series must vanish to first order");
        let n = self.coeffs.len().min(inner.coeffs.len());
        let inner = Self::new(1, inner.coeffs[..n].to_vec());
        // Horner on the regular part, then multiply by inner^valuation
        let mut acc = Self::constant(ZERO, n);
        for c in self.coeffs.iter().take(n).rev() {
            acc = acc.mul(&inner);
            acc = acc.add(&Self::constant(*c, n));
            acc.coeffs.truncate(n);
        }
        let acc = Self::new(acc.valuation, acc.coeffs);
        acc.mul(&inner.powi(self.valuation))
    }

    /// Compositional inverse of a series `w = t u(t)` with `u(0) != 0`.
    pub fn reversion(&self) -> Self {
        assert_eq!(self.valuation, 1, "reversion needs a series of valuation 1");
        let n = self.coeffs.len();
        let u = Self::new(0, self.coeffs.clone());
        // t = w / u(t), iterated; each pass fixes one more coefficient
        let mut t = Self::new(1, {
            let mut c = vec![ZERO; n];
            c[0] = u.coeffs[0].inv();
            c
        });
        for _ in 0..n {
            let ut = u.compose(&t);
            t = Self::variable(n).div(&ut);
        }
        t
    }

    /// Evaluate the truncated series at `t`.
    pub fn eval(&self, t: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc * t.powi(self.valuation)
    }
}
