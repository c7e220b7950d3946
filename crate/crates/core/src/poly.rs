//! Dense complex polynomials and their roots.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative distance below which numerically computed roots are candidates
/// for one multiple root. A root of multiplicity m is only resolved to about
/// `eps^(1/m)`, so this has to be much looser than the final accuracy.
/// Candidates are confirmed by checking the low Taylor coefficients.
pub const ROOT_CLUSTER_TOL: f64 = 1e-3;

/// Relative size of the low Taylor coefficients accepted at a merged root.
pub const MULTIPLE_ROOT_TOL: f64 = 1e-7;

/// Relative size below which a coefficient produced by arithmetic is treated
/// as an exact zero.
pub const CHOP_TOL: f64 = 1e-13;

/// Polynomial with ascending coefficients. The zero polynomial has no
/// coefficients; otherwise the last coefficient is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

/// A root together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c z^k`.
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        roots.iter().fold(Self::constant(ONE), |p, r| {
            p.mul(&Self::new(vec![-r, ONE]))
        })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Zero out coefficients that are tiny relative to the largest one.
    pub fn chop(&self, rel_tol: f64) -> Self {
        let scale = self.max_abs_coeff();
        Self::new(
            self.coeffs
                .iter()
                .map(|&c| if c.norm() <= rel_tol * scale { ZERO } else { c })
                .collect(),
        )
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    /// Natural error scale of evaluating at `z`: the sum of `|c_k| |z|^k`.
    pub fn eval_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![ZERO];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / (k as f64 + 1.0)),
        );
        Self::new(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division. Panics on division by the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dl = divisor.leading();
        let dn = divisor.coeffs.len();
        let mut quot = vec![ZERO; rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dn - 1] / dl;
            quot[k] = q;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * d;
            }
            rem[k + dn - 1] = ZERO;
        }
        rem.truncate(dn - 1);
        (Self::new(quot), Self::new(rem))
    }

    /// Divide by `(z - r)` and discard the remainder.
    pub fn deflate(&self, r: Complex64) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![ZERO; n - 1];
        let mut acc = self.coeffs[n - 1];
        out[n - 2] = acc;
        for k in (1..n - 1).rev() {
            acc = self.coeffs[k] + acc * r;
            out[k - 1] = acc;
        }
        Self::new(out)
    }

    /// Taylor coefficients about `p`, i.e. the coefficients of `q(t) = self(p + t)`.
    pub fn taylor_at(&self, p: Complex64) -> Vec<Complex64> {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = c[j + 1];
                c[j] += p * next;
            }
        }
        c
    }

    /// Error scale for each Taylor coefficient about `p`.
    pub fn taylor_scales(&self, p: Complex64) -> Vec<f64> {
        let abs = Polynomial::new(self.coeffs.iter().map(|c| Complex64::new(c.norm(), 0.0)).collect());
        abs.taylor_at(Complex64::new(p.norm(), 0.0))
            .into_iter()
            .map(|c| c.re)
            .collect()
    }

    /// Coefficients in reverse order: `z^deg * self(1/z)`.
    pub fn reversed(&self) -> Vec<Complex64> {
        self.coeffs.iter().rev().copied().collect()
    }

    /// Multiplicity of `p` as a root, decided against the evaluation scale.
    pub fn root_order_at(&self, p: Complex64, rel_tol: f64) -> usize {
        if self.is_zero() {
            return 0;
        }
        let t = self.taylor_at(p);
        let s = self.taylor_scales(p);
        t.iter()
            .zip(&s)
            .position(|(c, sc)| c.norm() > rel_tol * sc)
            .unwrap_or(t.len())
    }

    /// Roots with multiplicity. The constant polynomial has none.
    ///
    /// Eigenvalues of the companion matrix are polished with Newton steps,
    /// merged into clusters, and every cluster is refined as a simple root
    /// of the appropriate derivative.
    pub fn roots(&self) -> Vec<Root> {
        if self.coeffs.len() <= 1 {
            return Vec::new();
        }
        let zeros_at_origin = self.coeffs.iter().position(|c| *c != ZERO).unwrap_or(0);
        let q = Self::new(self.coeffs[zeros_at_origin..].to_vec());
        let mut out = Vec::new();
        if zeros_at_origin > 0 {
            out.push(Root {
                value: ZERO,
                multiplicity: zeros_at_origin,
            });
        }
        let d = q.degree();
        if d == 0 {
            return out;
        }
        let raw: Vec<Complex64> = if d == 1 {
            vec![-q.coeffs[0] / q.coeffs[1]]
        } else {
            let lead = q.leading();
            let mut m = DMatrix::<Complex64>::zeros(d, d);
            for i in 1..d {
                m[(i, i - 1)] = ONE;
            }
            for i in 0..d {
                m[(i, d - 1)] = -q.coeffs[i] / lead;
            }
            companion_eigenvalues(&q, m)
                .into_iter()
                .map(|z| newton_polish(&q, z))
                .collect()
        };
        out.extend(cluster_roots(&q, raw));
        out
    }

    /// Distinct root values, ignoring multiplicity.
    pub fn root_values(&self) -> Vec<Complex64> {
        self.roots().into_iter().map(|r| r.value).collect()
    }
}

fn newton_polish(p: &Polynomial, mut z: Complex64) -> Complex64 {
    let mut best = p.eval(z).norm();
    for _ in 0..20 {
        let (v, dv) = p.eval_with_derivative(z);
        if dv == ZERO {
            break;
        }
        let cand = z - v / dv;
        let r = p.eval(cand).norm();
        if !(r < best) {
            break;
        }
        best = r;
        z = cand;
        if r == 0.0 {
            break;
        }
    }
    z
}

fn cluster_roots(p: &Polynomial, raw: Vec<Complex64>) -> Vec<Root> {
    cluster_with_tol(p, raw, ROOT_CLUSTER_TOL)
}

/// Eigenvalues of the companion matrix. The unshifted QR iteration can
/// stall on symmetric spectra such as that of `z^2 + 1`, so a stalled run is
/// retried on a matrix shifted by a generic complex constant, and failing
/// that the roots come from Durand-Kerner iteration.
fn companion_eigenvalues(q: &Polynomial, m: DMatrix<Complex64>) -> Vec<Complex64> {
    const MAX_QR_ITER: usize = 2_000;
    if let Some(schur) = Schur::try_new(m.clone(), f64::EPSILON, MAX_QR_ITER) {
        if let Some(eig) = schur.eigenvalues() {
            return eig.iter().copied().collect();
        }
    }
    let d = m.nrows();
    let scale = m.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let shift = Complex64::new(0.2113, 0.1379) * scale;
    let shifted = &m + DMatrix::<Complex64>::identity(d, d) * shift;
    if let Some(schur) = Schur::try_new(shifted, f64::EPSILON, MAX_QR_ITER) {
        if let Some(eig) = schur.eigenvalues() {
            return eig.iter().map(|&z| z - shift).collect();
        }
    }
    durand_kerner(q)
}

fn durand_kerner(q: &Polynomial) -> Vec<Complex64> {
    let d = q.degree();
    let lead = q.leading();
    let radius = 1.0 + q.coeffs.iter().map(|c| (c / lead).norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..5000 {
        let mut moved: f64 = 0.0;
        for i in 0..d {
            let mut den = lead;
            for j in 0..d {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            let step = q.eval(z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn cluster_with_tol(p: &Polynomial, raw: Vec<Complex64>, tol: f64) -> Vec<Root> {
    let n = raw.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn find(g: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while g[i] != i {
            g[i] = g[g[i]];
            i = g[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = 1f64.max(raw[i].norm()).max(raw[j].norm());
            if (raw[i] - raw[j]).norm() <= tol * scale {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                group[a] = b;
            }
        }
    }
    let mut clusters: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for i in 0..n {
        let g = find(&mut group, i);
        match clusters.iter_mut().find(|(k, _)| *k == g) {
            Some((_, members)) => members.push(raw[i]),
            None => clusters.push((g, vec![raw[i]])),
        }
    }
    let mut out = Vec::new();
    for (_, members) in clusters {
        let m = members.len();
        let mean = members.iter().sum::<Complex64>() / m as f64;
        if m == 1 {
            out.push(Root {
                value: mean,
                multiplicity: 1,
            });
            continue;
        }
        let mut dp = p.clone();
        for _ in 0..m - 1 {
            dp = dp.derivative();
        }
        let value = newton_polish(&dp, mean);
        if p.root_order_at(value, MULTIPLE_ROOT_TOL) >= m || tol <= 1e-8 {
            out.push(Root {
                value,
                multiplicity: m,
            });
        } else {
            // not a genuine multiple root: split with a tighter tolerance
            out.extend(cluster_with_tol(p, members, tol * 0.1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn symmetric_spectra_do_not_stall() {
        // z^2 + 1 and (z^2 + 1)^2 give rotation-like companion matrices
        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        let mut r = p.root_values();
        r.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((r[0] + Complex64::i()).norm() < 1e-14 && (r[1] - Complex64::i()).norm() < 1e-14);
        let sq = p.mul(&p).roots();
        assert_eq!(sq.len(), 2);
        assert!(sq.iter().all(|r| r.multiplicity == 2));
    }

    #[test]
    fn durand_kerner_fallback_finds_all_roots() {
        let p = Polynomial::from_roots(&[ONE, -ONE, Complex64::new(0.0, 2.0)]);
        let z = durand_kerner(&p);
        assert_eq!(z.len(), 3);
        assert!(z.iter().all(|&w| p.eval(w).norm() < 1e-12));
    }

    #[test]
    fn cube_roots_of_unity() {
        let p = Polynomial::from_real(&[-1.0, 0.0, 0.0, 1.0]);
        let roots = p.roots();
        assert_eq!(roots.len(), 3);
        for r in roots {
            assert_eq!(r.multiplicity, 1);
            assert!((r.value.powi(3) - ONE).norm() < 1e-14);
        }
    }

    #[test]
    fn triple_root_is_merged() {
        // (z - 1)^3 (z + 2i)
        let p = Polynomial::from_roots(&[ONE, ONE, ONE, c(0.0, -2.0)]);
        let mut roots = p.roots();
        roots.sort_by(|a, b| b.multiplicity.cmp(&a.multiplicity));
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].multiplicity, 3);
        assert!((roots[0].value - ONE).norm() < 1e-10);
        assert!((roots[1].value - c(0.0, -2.0)).norm() < 1e-12);
    }

    #[test]
    fn roots_at_origin_are_exact() {
        let p = Polynomial::new(vec![ZERO, ZERO, c(3.0, 0.0), ONE]);
        let roots = p.roots();
        assert_eq!(roots[0].value, ZERO);
        assert_eq!(roots[0].multiplicity, 2);
        assert!((roots[1].value + c(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn division_identity() {
        let a = Polynomial::new(vec![c(1.0, 2.0), c(-3.0, 0.5), ONE, c(0.0, 4.0)]);
        let b = Polynomial::new(vec![c(2.0, 0.0), c(0.0, 1.0)]);
        let (q, r) = a.div_rem(&b);
        let back = q.mul(&b).add(&r);
        for k in 0..4 {
            assert!((back.coeff(k) - a.coeff(k)).norm() < 1e-13);
        }
        assert!(r.degree() < b.degree() || r.is_zero());
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = Polynomial::new(vec![c(1.0, 0.0), c(2.0, -1.0), c(0.5, 0.5), c(-1.0, 0.0)]);
        let at = c(0.3, -0.7);
        let t = p.taylor_at(at);
        let h = c(0.01, 0.02);
        let via: Complex64 = t.iter().rev().fold(ZERO, |acc, c| acc * h + c);
        assert!((via - p.eval(at + h)).norm() < 1e-14);
    }

    proptest! {
        #[test]
        fn roots_reconstruct_the_polynomial(
            parts in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..7)
        ) {
            let roots: Vec<Complex64> = parts.iter().map(|&(a, b)| c(a, b)).collect();
            let p = Polynomial::from_roots(&roots);
            let found = p.roots();
            let total: usize = found.iter().map(|r| r.multiplicity).sum();
            prop_assert_eq!(total, roots.len());
            for r in &found {
                prop_assert!(p.eval(r.value).norm() <= 1e-8 * p.eval_scale(r.value).max(1.0));
            }
        }

        #[test]
        fn deflation_by_a_root_is_exact_division(
            parts in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 2..6)
        ) {
            let roots: Vec<Complex64> = parts.iter().map(|&(a, b)| c(a, b)).collect();
            let p = Polynomial::from_roots(&roots);
            let q = p.deflate(roots[0]);
            let expect = Polynomial::from_roots(&roots[1..]);
            for k in 0..roots.len() {
                prop_assert!((q.coeff(k) - expect.coeff(k)).norm() < 1e-10);
            }
        }
    }
}
