//! Gauss-Legendre quadrature for complex-valued integrands on an interval.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default order of the rule used on each panel.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Rule with `n` nodes on `[-1, 1]`; nodes are found by Newton's method on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// The shared rule of order [`DEFAULT_ORDER`].
    pub fn default_rule() -> &'static Self {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(DEFAULT_ORDER))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Apply the rule on `[a, b]`.
    pub fn apply<F: FnMut(f64) -> Complex64>(&self, mut f: F, a: f64, b: f64) -> Complex64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += f(mid + half * x) * *w;
        }
        s * half
    }

    /// Composite rule with `panels` equal panels.
    pub fn composite<F: FnMut(f64) -> Complex64>(&self, mut f: F, a: f64, b: f64, panels: usize) -> Complex64 {
        let h = (b - a) / panels as f64;
        (0..panels)
            .map(|k| self.apply(&mut f, a + h * k as f64, a + h * (k + 1) as f64))
            .sum()
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite quadrature, doubling the panel count until two successive
/// results differ by less than `tol * max(1, |I|, int |f|)`. Measuring
/// against `int |f|` keeps the test meaningful for integrals that cancel to
/// (nearly) zero.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    initial_panels: usize,
    tol: f64,
) -> Result<Complex64> {
    let rule = GaussLegendre::default_rule();
    let mut panels = initial_panels.max(1);
    let mut prev = rule.composite(&f, a, b, panels);
    while panels < 1 << 16 {
        panels *= 2;
        let mut mass = 0.0;
        let next = rule.composite(
            |t| {
                let v = f(t);
                mass += v.norm();
                v
            },
            a,
            b,
            panels,
        );
        // mean of |f| over the nodes times the length
        let mass = mass * (b - a).abs() / (panels * rule.weights().len()) as f64;
        if (next - prev).norm() <= tol * next.norm().max(1.0).max(mass) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergence(format!(
        "quadrature on [{a}, {b}] did not reach tolerance {tol:e}"
    )))
}

/// Locally adaptive quadrature: a panel is bisected until the rule on the
/// panel agrees with the rule on its two halves.
pub fn integrate_adaptive<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    let rule = GaussLegendre::default_rule();
    let whole = rule.apply(&f, a, b);
    let scale = whole.norm().max(1.0);
    adapt(&f, rule, a, b, whole, tol * scale, 0)
}

fn adapt<F: Fn(f64) -> Complex64>(
    f: &F,
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    whole: Complex64,
    abs_tol: f64,
    depth: usize,
) -> Result<Complex64> {
    let m = 0.5 * (a + b);
    let left = rule.apply(f, a, m);
    let right = rule.apply(f, m, b);
    let both = left + right;
    let roundoff = 64.0 * f64::EPSILON * (left.norm() + right.norm());
    if (both - whole).norm() <= abs_tol.max(roundoff) {
        return Ok(both);
    }
    if depth >= 40 {
        return Err(Error::NonConvergence(format!(
            "adaptive quadrature stalled near [{a}, {b}]"
        )));
    }
    Ok(adapt(f, rule, a, m, left, abs_tol * FRAC_1_SQRT_2, depth + 1)?
        + adapt(f, rule, m, b, right, abs_tol * FRAC_1_SQRT_2, depth + 1)?)
}
