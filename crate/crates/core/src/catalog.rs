//! Named Weierstrass data from the classification of complete fronts with
//! small total curvature, with parameter defaults and the constraints under
//! which each family is stated.
//!
//! Building an entry checks the stated constraints, regularity, the period
//! condition and the expected `(genus, ends, deg rho, embeddedness)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::ends::{classify_all, osserman_report, EndReport, OssermanLedger};
use crate::error::{Error, Result};
use crate::genus1;
use crate::period::{check_period_condition, PeriodReport, DEFAULT_PERIOD_TOL};
use crate::rational::{Point, RationalFunction};
use crate::surface::{rho_degree, validate, Domain, WeierstrassData};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Tolerance for the equalities and reality conditions in the constraints.
const EPS: f64 = 1e-12;

/// Base point used for every rational entry.
pub const RATIONAL_BASE_POINT: Complex64 = Complex64::new(0.3, 0.7);

pub type Params = BTreeMap<String, Vec<Complex64>>;

/// Parameter values with lookup by name.
#[derive(Debug, Clone)]
pub struct Args(Params);

impl Args {
    pub fn get(&self, name: &str) -> Complex64 {
        self.0.get(name).and_then(|v| v.first()).copied().unwrap_or(ZERO)
    }

    pub fn list(&self, name: &str) -> &[Complex64] {
        self.0.get(name).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn params(&self) -> &Params {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expected {
    pub genus: usize,
    pub n_ends: usize,
    pub deg_rho: usize,
    pub all_embedded: bool,
}

impl std::fmt::Display for Expected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "genus {}, {} ends, deg rho {}, {}",
            self.genus,
            self.n_ends,
            self.deg_rho,
            if self.all_embedded { "all embedded" } else { "not all embedded" }
        )
    }
}

pub struct Constraint {
    pub text: &'static str,
    check: fn(&Args) -> bool,
}

type RationalBuild = fn(&Args) -> Result<(Domain, RationalFunction, RationalFunction)>;

enum Builder {
    Rational(RationalBuild),
    Torus8pi,
    Torus10pi,
}

pub struct CatalogEntry {
    pub id: &'static str,
    pub family: &'static str,
    pub domain: &'static str,
    pub data: &'static str,
    pub defaults: Vec<(&'static str, Vec<Complex64>)>,
    pub constraints: Vec<Constraint>,
    builder: Builder,
    expected: fn(&Args) -> Expected,
}

impl CatalogEntry {
    /// The constraints joined as they are displayed with the family.
    pub fn constraint_text(&self) -> String {
        self.constraints
            .iter()
            .map(|c| c.text)
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn expected(&self, args: &Args) -> Expected {
        (self.expected)(args)
    }

    pub fn default_args(&self) -> Args {
        Args(
            self.defaults
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        )
    }
}

/// Result of a successful build.
#[derive(Debug, Clone)]
pub struct CatalogBuild {
    pub id: String,
    pub data: WeierstrassData,
    pub args: Params,
    pub expected: Expected,
    pub period: PeriodReport,
    pub ledger: OssermanLedger,
    pub ends: Vec<EndReport>,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn is_real(x: Complex64) -> bool {
    x.im.abs() <= EPS * x.norm().max(1.0)
}

fn nonzero(x: Complex64) -> bool {
    x.norm() > EPS
}

fn positive(x: Complex64) -> bool {
    is_real(x) && x.re > 0.0
}

fn differ(x: f64, y: f64) -> bool {
    (x - y).abs() > EPS * x.abs().max(y.abs()).max(1.0)
}

fn equal(x: Complex64, y: Complex64) -> bool {
    (x - y).norm() <= EPS * x.norm().max(y.norm()).max(1.0)
}

/// `sum coeff * z^k` over `(k, coeff)`, negative `k` allowed.
fn laurent_poly(terms: &[(i32, Complex64)]) -> RationalFunction {
    let shift = terms.iter().map(|t| -t.0).max().unwrap_or(0).max(0);
    let top = terms.iter().map(|t| t.0 + shift).max().unwrap_or(0).max(0) as usize;
    let mut num = vec![ZERO; top + 1];
    for &(k, a) in terms {
        num[(k + shift) as usize] += a;
    }
    let mut den = vec![ZERO; shift as usize + 1];
    den[shift as usize] = ONE;
    RationalFunction::from_coeffs(num, den).expect("monomial denominator")
}

/// `a / (z - p)`.
fn simple_pole(a: Complex64, p: Complex64) -> RationalFunction {
    RationalFunction::from_coeffs(vec![a], vec![-p, ONE]).expect("linear denominator")
}

/// Derivative of `sum coeff * z^k` at `z`.
fn dpoly(terms: &[(i32, Complex64)], z: Complex64) -> Complex64 {
    terms
        .iter()
        .map(|&(k, a)| a * k as f64 * z.powi(k - 1))
        .sum()
}

fn plane(points: &[f64]) -> Result<Domain> {
    Domain::plane(points.iter().map(|&x| Point::finite(x, 0.0)).collect())
}

fn fixed(genus: usize, n_ends: usize, deg_rho: usize, all_embedded: bool) -> Expected {
    Expected {
        genus,
        n_ends,
        deg_rho,
        all_embedded,
    }
}

fn k(text: &'static str, check: fn(&Args) -> bool) -> Constraint {
    Constraint { text, check }
}

fn defaults(list: &[(&'static str, f64)]) -> Vec<(&'static str, Vec<Complex64>)> {
    list.iter().map(|&(n, v)| (n, vec![c(v)])).collect()
}

// Coefficient lists of the families. Names follow the displayed data.

fn f_601_1(a: &Args) -> Vec<(i32, Complex64)> {
    vec![(4, a.get("a")), (2, a.get("b")), (1, a.get("c"))]
}

fn f_quartic(a: &Args) -> Vec<(i32, Complex64)> {
    vec![(4, a.get("a")), (3, a.get("b")), (2, a.get("c")), (1, a.get("d"))]
}

fn f_801_1(a: &Args) -> Vec<(i32, Complex64)> {
    vec![(5, a.get("a")), (3, a.get("b")), (2, a.get("c")), (1, a.get("d"))]
}

fn f_quintic(a: &Args) -> Vec<(i32, Complex64)> {
    vec![
        (5, a.get("a")),
        (4, a.get("b")),
        (3, a.get("c")),
        (2, a.get("d")),
        (1, a.get("e")),
    ]
}

/// `a z^3 + b z^2 + c z + d/z`.
fn f_cubic_1(a: &Args) -> Vec<(i32, Complex64)> {
    vec![(3, a.get("a")), (2, a.get("b")), (1, a.get("c")), (-1, a.get("d"))]
}

/// `a z^2 + b z + c/z + d/z^2`.
fn f_quad_2(a: &Args) -> Vec<(i32, Complex64)> {
    vec![(2, a.get("a")), (1, a.get("b")), (-1, a.get("c")), (-2, a.get("d"))]
}

/// `a z + b/z + c/z^2 + d/z^3`.
fn f_lin_3(a: &Args) -> Vec<(i32, Complex64)> {
    vec![(1, a.get("a")), (-1, a.get("b")), (-2, a.get("c")), (-3, a.get("d"))]
}

fn alpha_g(a: &Args, terms: &[(i32, f64)]) -> RationalFunction {
    let al = a.get("alpha");
    laurent_poly(&terms.iter().map(|&(k, x)| (k, al * x)).collect::<Vec<_>>())
}

fn poly_pair(
    domain: Result<Domain>,
    f: Vec<(i32, Complex64)>,
    g: RationalFunction,
) -> Result<(Domain, RationalFunction, RationalFunction)> {
    Ok((domain?, laurent_poly(&f), g))
}

fn g_power(k: i32) -> RationalFunction {
    laurent_poly(&[(k, ONE)])
}

fn f_803(a: &Args) -> RationalFunction {
    laurent_poly(&[(1, a.get("a"))])
        .add(&simple_pole(a.get("b"), ONE))
        .add(&simple_pole(a.get("c"), ZERO))
}

fn rational_entries() -> Vec<CatalogEntry> {
    let mut v = Vec::new();
    let tc0 = "total curvature 0 (elliptic paraboloid)";
    v.push(CatalogEntry {
        id: "paraboloid",
        family: tc0,
        domain: "Ĉ\\{0}",
        data: "F = 1/z, G = b/z",
        defaults: defaults(&[("b", 2.0)]),
        constraints: vec![k("b∈C", |_| true), k("|b|≠1", |a| differ(a.get("b").norm(), 1.0))],
        builder: Builder::Rational(|a| {
            Ok((
                Domain::sphere(vec![Point::finite(0.0, 0.0)])?,
                laurent_poly(&[(-1, ONE)]),
                laurent_poly(&[(-1, a.get("b"))]),
            ))
        }),
        expected: |_| fixed(0, 1, 0, true),
    });
    let tc4 = "total curvature -4 pi";
    v.push(CatalogEntry {
        id: "rotational",
        family: tc4,
        domain: "C\\{0}",
        data: "F = 1/z, G = a z",
        defaults: defaults(&[("a", 2.0)]),
        constraints: vec![k("a∈R\\{0}", |a| is_real(a.get("a")) && nonzero(a.get("a")))],
        builder: Builder::Rational(|a| poly_pair(plane(&[0.0]), vec![(-1, ONE)], laurent_poly(&[(1, a.get("a"))]))),
        expected: |_| fixed(0, 2, 2, true),
    });
    v.push(CatalogEntry {
        id: "nonrotational",
        family: tc4,
        domain: "C\\{0}",
        data: "F = 1/z, G = a z + b/z",
        defaults: defaults(&[("a", 1.0), ("b", 2.0)]),
        constraints: vec![
            k("a∈R\\{0}", |a| is_real(a.get("a")) && nonzero(a.get("a"))),
            k("b∈C\\{0}", |a| nonzero(a.get("b"))),
            k("|b|≠1", |a| differ(a.get("b").norm(), 1.0)),
        ],
        builder: Builder::Rational(|a| {
            poly_pair(
                plane(&[0.0]),
                vec![(-1, ONE)],
                laurent_poly(&[(1, a.get("a")), (-1, a.get("b"))]),
            )
        }),
        expected: |_| fixed(0, 2, 2, true),
    });
    let a_pos = || k("a>0", |a| positive(a.get("a")));
    v.push(CatalogEntry {
        id: "tc2",
        family: "total curvature -2 pi",
        domain: "C",
        data: "F = a z^2, G = z",
        defaults: defaults(&[("a", 1.0)]),
        constraints: vec![a_pos()],
        builder: Builder::Rational(|a| poly_pair(plane(&[]), vec![(2, a.get("a"))], g_power(1))),
        expected: |_| fixed(0, 1, 1, false),
    });
    v.push(CatalogEntry {
        id: "tc4_1",
        family: tc4,
        domain: "C",
        data: "F = a z^3 + b z, G = z",
        defaults: defaults(&[("a", 1.0), ("b", 0.5)]),
        constraints: vec![a_pos(), k("b∈C", |_| true)],
        builder: Builder::Rational(|a| poly_pair(plane(&[]), vec![(3, a.get("a")), (1, a.get("b"))], g_power(1))),
        expected: |_| fixed(0, 1, 2, false),
    });
    v.push(CatalogEntry {
        id: "tc4_2",
        family: tc4,
        domain: "C",
        data: "F = a z^3 + b z^2 + c z, G = z^2",
        defaults: defaults(&[("a", 1.0), ("b", 0.5), ("c", 1.0)]),
        constraints: vec![a_pos(), k("c∈C\\{0}", |a| nonzero(a.get("c")))],
        builder: Builder::Rational(|a| {
            poly_pair(
                plane(&[]),
                vec![(3, a.get("a")), (2, a.get("b")), (1, a.get("c"))],
                g_power(2),
            )
        }),
        expected: |_| fixed(0, 1, 2, false),
    });

    let tc6 = "total curvature -6 pi";
    let d601 = || defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3), ("d", 1.0)]);
    v.push(CatalogEntry {
        id: "tc6_601_1",
        family: tc6,
        domain: "C",
        data: "F = a z^4 + b z^2 + c z, G = z",
        defaults: defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3)]),
        constraints: vec![a_pos()],
        builder: Builder::Rational(|a| poly_pair(plane(&[]), f_601_1(a), g_power(1))),
        expected: |_| fixed(0, 1, 3, false),
    });
    v.push(CatalogEntry {
        id: "tc6_601_2",
        family: tc6,
        domain: "C",
        data: "F = a z^4 + b z^3 + c z^2 + d z, G = z^2",
        defaults: d601(),
        constraints: vec![a_pos(), k("c≠0", |a| nonzero(a.get("c")))],
        builder: Builder::Rational(|a| poly_pair(plane(&[]), f_quartic(a), g_power(2))),
        expected: |_| fixed(0, 1, 3, false),
    });
    v.push(CatalogEntry {
        id: "tc6_601_3",
        family: tc6,
        domain: "C",
        data: "F = a z^4 + b z^3 + c z^2 + d z, G = z^3",
        defaults: d601(),
        constraints: vec![a_pos(), k("d≠0", |a| nonzero(a.get("d")))],
        builder: Builder::Rational(|a| poly_pair(plane(&[]), f_quartic(a), g_power(3))),
        expected: |_| fixed(0, 1, 3, false),
    });
    v.push(CatalogEntry {
        id: "tc6_601_4",
        family: tc6,
        domain: "C",
        data: "F = a z^4 + b z^3 + c z^2 + d z, G = alpha (2 z^3 - 3 z^2)",
        defaults: defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3), ("d", 1.0), ("alpha", 1.0)]),
        constraints: vec![
            a_pos(),
            k("d,α≠0", |a| nonzero(a.get("d")) && nonzero(a.get("alpha"))),
        ],
        builder: Builder::Rational(|a| poly_pair(plane(&[]), f_quartic(a), alpha_g(a, &[(3, 2.0), (2, -3.0)]))),
        expected: |_| fixed(0, 1, 3, false),
    });
    let d602 = || defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3)]);
    let d602a = || defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3), ("alpha", 1.0)]);
    v.push(CatalogEntry {
        id: "tc6_602_1",
        family: tc6,
        domain: "C\\{0}",
        data: "F = a z^2 + b z + c/z, G = 1/z",
        defaults: d602(),
        constraints: vec![
            a_pos(),
            k("b∈R", |a| is_real(a.get("b"))),
            k("|c|≠1", |a| differ(a.get("c").norm(), 1.0)),
        ],
        builder: Builder::Rational(|a| {
            poly_pair(
                plane(&[0.0]),
                vec![(2, a.get("a")), (1, a.get("b")), (-1, a.get("c"))],
                g_power(-1),
            )
        }),
        expected: |_| fixed(0, 2, 3, false),
    });
    v.push(CatalogEntry {
        id: "tc6_602_2",
        family: tc6,
        domain: "C\\{0}",
        data: "F = a z + b/z + c/z^2, G = 1/z^2",
        defaults: d602(),
        constraints: vec![a_pos(), k("|c|≠1", |a| differ(a.get("c").norm(), 1.0))],
        builder: Builder::Rational(|a| {
            poly_pair(
                plane(&[0.0]),
                vec![(1, a.get("a")), (-1, a.get("b")), (-2, a.get("c"))],
                g_power(-2),
            )
        }),
        expected: |_| fixed(0, 2, 3, false),
    });
    v.push(CatalogEntry {
        id: "tc6_602_3",
        family: tc6,
        domain: "C\\{0}",
        data: "F = a/z^2 + b/z + c z, G = 1/z",
        defaults: d602(),
        constraints: vec![a_pos(), k("c∈R\\{0}", |a| is_real(a.get("c")) && nonzero(a.get("c")))],
        builder: Builder::Rational(|a| {
            poly_pair(
                plane(&[0.0]),
                vec![(-2, a.get("a")), (-1, a.get("b")), (1, a.get("c"))],
                g_power(-1),
            )
        }),
        expected: |_| fixed(0, 2, 3, false),
    });
    v.push(CatalogEntry {
        id: "tc6_602_4",
        family: tc6,
        domain: "C\\{0}",
        data: "F = a z + b/z + c/z^2, G = alpha (1/(2 z^2) - 1/z)",
        defaults: d602a(),
        constraints: vec![
            a_pos(),
            k("α∈C\\{0}", |a| nonzero(a.get("alpha"))),
            k("2|c|≠|α|", |a| differ(2.0 * a.get("c").norm(), a.get("alpha").norm())),
        ],
        builder: Builder::Rational(|a| {
            poly_pair(
                plane(&[0.0]),
                vec![(1, a.get("a")), (-1, a.get("b")), (-2, a.get("c"))],
                alpha_g(a, &[(-2, 0.5), (-1, -1.0)]),
            )
        }),
        expected: |_| fixed(0, 2, 3, false),
    });
    v.push(CatalogEntry {
        id: "tc6_602_6",
        family: tc6,
        domain: "C\\{0}",
        data: "F = a z^2 + b z + c/z, G = alpha (z + 1/z)",
        defaults: d602a(),
        constraints: vec![
            a_pos(),
            k("b,α≠0", |a| nonzero(a.get("b")) && nonzero(a.get("alpha"))),
            k("c−a∈R", |a| is_real(a.get("c") - a.get("a"))),
            k("|c|≠|α|", |a| differ(a.get("c").norm(), a.get("alpha").norm())),
        ],
        builder: Builder::Rational(|a| {
            poly_pair(
                plane(&[0.0]),
                vec![(2, a.get("a")), (1, a.get("b")), (-1, a.get("c"))],
                alpha_g(a, &[(1, 1.0), (-1, 1.0)]),
            )
        }),
        expected: |_| fixed(0, 2, 3, false),
    });

    let tc8 = "total curvature -8 pi";
    let d801 = || defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3), ("d", 0.2), ("e", 1.0)]);
    let d801a = || defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3), ("d", 0.2), ("e", 1.0), ("alpha", 1.0)]);
    let e_nonzero = || k("e∈C\\{0}", |a| nonzero(a.get("e")));
    v.push(CatalogEntry {
        id: "tc8_801_1",
        family: tc8,
        domain: "C",
        data: "F = a z^5 + b z^3 + c z^2 + d z, G = z",
        defaults: defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3), ("d", 0.2)]),
        constraints: vec![a_pos()],
        builder: Builder::Rational(|a| poly_pair(plane(&[]), f_801_1(a), g_power(1))),
        expected: |_| fixed(0, 1, 4, false),
    });
    v.push(CatalogEntry {
        id: "tc8_801_2",
        family: tc8,
        domain: "C",
        data: "F = a z^5 + b z^4 + c z^3 + d z^2 + e z, G = z^2",
        defaults: d801(),
        constraints: vec![a_pos(), e_nonzero()],
        builder: Builder::Rational(|a| poly_pair(plane(&[]), f_quintic(a), g_power(2))),
        expected: |_| fixed(0, 1, 4, false),
    });
    v.push(CatalogEntry {
        id: "tc8_801_3",
        family: tc8,
        domain: "C",
        data: "F = a z^5 + b z^4 + c z^3 + d z^2 + e z, G = z^3",
        defaults: d801(),
        constraints: vec![a_pos(), e_nonzero()],
        builder: Builder::Rational(|a| poly_pair(plane(&[]), f_quintic(a), g_power(3))),
        expected: |_| fixed(0, 1, 4, false),
    });
    v.push(CatalogEntry {
        id: "tc8_801_4",
        family: tc8,
        domain: "C",
        data: "F = a z^5 + b z^4 + c z^3 + d z^2 + e z, G = z^4",
        defaults: d801(),
        constraints: vec![a_pos(), e_nonzero()],
        builder: Builder::Rational(|a| poly_pair(plane(&[]), f_quintic(a), g_power(4))),
        expected: |_| fixed(0, 1, 4, false),
    });
    v.push(CatalogEntry {
        id: "tc8_801_5",
        family: tc8,
        domain: "C",
        data: "F = a z^5 + b z^4 + c z^3 + d z^2 + e z, G = alpha (2 z^3 - 3 z^2)",
        defaults: d801a(),
        constraints: vec![
            a_pos(),
            k("α,e,F′(1)≠0", |a| {
                nonzero(a.get("alpha")) && nonzero(a.get("e")) && nonzero(dpoly(&f_quintic(a), ONE))
            }),
        ],
        builder: Builder::Rational(|a| poly_pair(plane(&[]), f_quintic(a), alpha_g(a, &[(3, 2.0), (2, -3.0)]))),
        expected: |_| fixed(0, 1, 4, false),
    });
    v.push(CatalogEntry {
        id: "tc8_801_6",
        family: tc8,
        domain: "C",
        data: "F = a z^5 + b z^4 + c z^3 + d z^2 + e z, G = alpha (3 z^4 - 4 z^3)",
        defaults: d801a(),
        constraints: vec![
            a_pos(),
            k("α,e,F′(1)≠0", |a| {
                nonzero(a.get("alpha")) && nonzero(a.get("e")) && nonzero(dpoly(&f_quintic(a), ONE))
            }),
        ],
        builder: Builder::Rational(|a| poly_pair(plane(&[]), f_quintic(a), alpha_g(a, &[(4, 3.0), (3, -4.0)]))),
        expected: |_| fixed(0, 1, 4, false),
    });
    v.push(CatalogEntry {
        id: "tc8_801_7",
        family: tc8,
        domain: "C",
        data: "F = a z^5 + b z^4 + c z^3 + d z^2 + e z, G = alpha (3 z^4 - 4 (1 + r) z^3 + 6 r z^2)",
        defaults: defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3), ("d", 0.2), ("e", 1.0), ("alpha", 1.0), ("r", 2.0)]),
        constraints: vec![
            a_pos(),
            k("r∉{0,1}", |a| nonzero(a.get("r")) && nonzero(a.get("r") - ONE)),
            k("α,e,F′(1),F′(r)≠0", |a| {
                let f = f_quintic(a);
                nonzero(a.get("alpha"))
                    && nonzero(a.get("e"))
                    && nonzero(dpoly(&f, ONE))
                    && nonzero(dpoly(&f, a.get("r")))
            }),
        ],
        builder: Builder::Rational(|a| {
            let (al, r) = (a.get("alpha"), a.get("r"));
            let g = laurent_poly(&[(4, 3.0 * al), (3, -4.0 * (ONE + r) * al), (2, 6.0 * r * al)]);
            poly_pair(plane(&[]), f_quintic(a), g)
        }),
        expected: |_| fixed(0, 1, 4, false),
    });

    let d802 = || defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3), ("d", 0.2)]);
    let d802a = || defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3), ("d", 0.2), ("alpha", 1.0)]);
    let d_nonzero = || k("d≠0", |a| nonzero(a.get("d")));
    let two_ends = |_: &Args| fixed(0, 2, 4, false);
    v.push(CatalogEntry {
        id: "tc8_802_1",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z^3 + b z^2 + c z + d/z, G = 1/z",
        defaults: d802(),
        constraints: vec![
            a_pos(),
            k("c∈R", |a| is_real(a.get("c"))),
            k("|d|≠1", |a| differ(a.get("d").norm(), 1.0)),
        ],
        builder: Builder::Rational(|a| poly_pair(plane(&[0.0]), f_cubic_1(a), g_power(-1))),
        expected: two_ends,
    });
    v.push(CatalogEntry {
        id: "tc8_802_2",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z^2 + b z + c/z + d/z^2, G = 1/z^2",
        defaults: d802(),
        constraints: vec![a_pos(), k("|d|≠1", |a| differ(a.get("d").norm(), 1.0))],
        builder: Builder::Rational(|a| poly_pair(plane(&[0.0]), f_quad_2(a), g_power(-2))),
        expected: two_ends,
    });
    v.push(CatalogEntry {
        id: "tc8_802_3",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z^2 + b z + c/z + d/z^2, G = 1/z",
        defaults: d802(),
        constraints: vec![a_pos(), d_nonzero()],
        builder: Builder::Rational(|a| poly_pair(plane(&[0.0]), f_quad_2(a), g_power(-1))),
        expected: two_ends,
    });
    v.push(CatalogEntry {
        id: "tc8_802_4",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z + b/z + c/z^2 + d/z^3, G = 1/z^2",
        defaults: d802(),
        constraints: vec![a_pos(), d_nonzero()],
        builder: Builder::Rational(|a| poly_pair(plane(&[0.0]), f_lin_3(a), g_power(-2))),
        expected: two_ends,
    });
    v.push(CatalogEntry {
        id: "tc8_802_5",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z^2 + b z + c/z + d/z^2, G = alpha (-1/z + 1/(2 z^2))",
        defaults: d802a(),
        constraints: vec![
            a_pos(),
            k("b∈R", |a| is_real(a.get("b"))),
            k("α,F′(1)≠0", |a| nonzero(a.get("alpha")) && nonzero(dpoly(&f_quad_2(a), ONE))),
            k("2|d|≠|α|", |a| differ(2.0 * a.get("d").norm(), a.get("alpha").norm())),
        ],
        builder: Builder::Rational(|a| poly_pair(plane(&[0.0]), f_quad_2(a), alpha_g(a, &[(-1, -1.0), (-2, 0.5)]))),
        expected: two_ends,
    });
    v.push(CatalogEntry {
        id: "tc8_802_6",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z + b/z + c/z^2 + d/z^3, G = alpha (-1/(2 z^2) + 1/(3 z^3))",
        defaults: d802a(),
        constraints: vec![
            a_pos(),
            k("F′(1)≠0", |a| nonzero(dpoly(&f_lin_3(a), ONE))),
            k("3|d|≠|α|", |a| differ(3.0 * a.get("d").norm(), a.get("alpha").norm())),
        ],
        builder: Builder::Rational(|a| {
            poly_pair(plane(&[0.0]), f_lin_3(a), alpha_g(a, &[(-2, -0.5), (-3, 1.0 / 3.0)]))
        }),
        expected: two_ends,
    });
    v.push(CatalogEntry {
        id: "tc8_802_7",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z + b/z + c/z^2 + d/z^3, G = 1/z",
        defaults: d802(),
        constraints: vec![a_pos(), d_nonzero()],
        builder: Builder::Rational(|a| poly_pair(plane(&[0.0]), f_lin_3(a), g_power(-1))),
        expected: two_ends,
    });
    v.push(CatalogEntry {
        id: "tc8_802_8",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z + b/z + c/z^2 + d/z^3, G = alpha (-1/z + 1/z^2 - 1/(3 z^3))",
        defaults: d802a(),
        constraints: vec![
            a_pos(),
            k("F′(1)≠0", |a| nonzero(dpoly(&f_lin_3(a), ONE))),
            k("3|d|≠|α|", |a| differ(3.0 * a.get("d").norm(), a.get("alpha").norm())),
        ],
        builder: Builder::Rational(|a| {
            poly_pair(
                plane(&[0.0]),
                f_lin_3(a),
                alpha_g(a, &[(-1, -1.0), (-2, 1.0), (-3, -1.0 / 3.0)]),
            )
        }),
        expected: two_ends,
    });
    v.push(CatalogEntry {
        id: "tc8_802_11",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z + b/z + c/z^2 + d/z^3, G = alpha (1/(2 z^2) - 1/z)",
        defaults: d802a(),
        constraints: vec![
            a_pos(),
            k("α,d≠0", |a| nonzero(a.get("alpha")) && nonzero(a.get("d"))),
        ],
        builder: Builder::Rational(|a| poly_pair(plane(&[0.0]), f_lin_3(a), alpha_g(a, &[(-2, 0.5), (-1, -1.0)]))),
        expected: two_ends,
    });
    v.push(CatalogEntry {
        id: "tc8_802_12",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z^3 + b z^2 + c z + d/z, G = alpha (z + 1/z)",
        defaults: d802a(),
        constraints: vec![
            a_pos(),
            k("α,F′(±1)≠0", |a| {
                let f = f_cubic_1(a);
                nonzero(a.get("alpha")) && nonzero(dpoly(&f, ONE)) && nonzero(dpoly(&f, -ONE))
            }),
            k("−c+d∈R", |a| is_real(a.get("d") - a.get("c"))),
            k("|d|≠|α|", |a| differ(a.get("d").norm(), a.get("alpha").norm())),
        ],
        builder: Builder::Rational(|a| poly_pair(plane(&[0.0]), f_cubic_1(a), alpha_g(a, &[(1, 1.0), (-1, 1.0)]))),
        expected: two_ends,
    });
    v.push(CatalogEntry {
        id: "tc8_802_13",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z + b/z + c/z^2 + d/z^3, G = alpha (-1/z + (p + 1)/(2 z^2) - p/(3 z^3))",
        defaults: defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3), ("d", 0.2), ("alpha", 1.0), ("p", 2.0)]),
        constraints: vec![
            a_pos(),
            k("α∈R", |a| is_real(a.get("alpha"))),
            k("p∈C\\{0,1}", |a| nonzero(a.get("p")) && nonzero(a.get("p") - ONE)),
            k("α,F′(1),F′(p)≠0", |a| {
                let f = f_lin_3(a);
                nonzero(a.get("alpha")) && nonzero(dpoly(&f, ONE)) && nonzero(dpoly(&f, a.get("p")))
            }),
            k("3|d|≠|α||p|", |a| {
                differ(3.0 * a.get("d").norm(), a.get("alpha").norm() * a.get("p").norm())
            }),
        ],
        builder: Builder::Rational(|a| {
            let (al, p) = (a.get("alpha"), a.get("p"));
            let g = laurent_poly(&[(-1, -al), (-2, al * (p + ONE) / 2.0), (-3, -al * p / 3.0)]);
            poly_pair(plane(&[0.0]), f_lin_3(a), g)
        }),
        expected: two_ends,
    });
    v.push(CatalogEntry {
        id: "tc8_802_15",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z^3 + b z^2 + c z + d/z, G = alpha (z^2 - 6 z + 8/z)",
        defaults: d802a(),
        constraints: vec![
            a_pos(),
            k("α(3d+4c)∈R", |a| is_real(a.get("alpha") * (3.0 * a.get("d") + 4.0 * a.get("c")))),
            k("α,F′(1),F′(−2)≠0", |a| {
                let f = f_cubic_1(a);
                nonzero(a.get("alpha")) && nonzero(dpoly(&f, ONE)) && nonzero(dpoly(&f, c(-2.0)))
            }),
            k("|d|≠8|α|", |a| differ(a.get("d").norm(), 8.0 * a.get("alpha").norm())),
        ],
        builder: Builder::Rational(|a| {
            poly_pair(plane(&[0.0]), f_cubic_1(a), alpha_g(a, &[(2, 1.0), (1, -6.0), (-1, 8.0)]))
        }),
        expected: two_ends,
    });
    // The displayed "∉ C\{0}" in the next three families reads as "nonzero".
    v.push(CatalogEntry {
        id: "tc8_802_16",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z^2 + b z + c/z + d/z^2, G = alpha (z + 3/(4 z) + 1/(8 z^2))",
        defaults: d802a(),
        constraints: vec![
            a_pos(),
            k("α(a+3b−4c)∈R", |a| {
                is_real(a.get("alpha") * (a.get("a") + 3.0 * a.get("b") - 4.0 * a.get("c")))
            }),
            k("F′(1),F′(−1/2),α∉C\\{0}", |a| {
                let f = f_quad_2(a);
                nonzero(dpoly(&f, ONE)) && nonzero(dpoly(&f, c(-0.5))) && nonzero(a.get("alpha"))
            }),
            k("2|d|≠|α|", |a| differ(2.0 * a.get("d").norm(), a.get("alpha").norm())),
        ],
        builder: Builder::Rational(|a| {
            poly_pair(plane(&[0.0]), f_quad_2(a), alpha_g(a, &[(1, 1.0), (-1, 0.75), (-2, 0.125)]))
        }),
        expected: two_ends,
    });
    v.push(CatalogEntry {
        id: "tc8_802_17",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z^2 + b z + c/z + d/z^2, G = alpha (z + 1/z)",
        defaults: d802a(),
        constraints: vec![
            a_pos(),
            k("α,d,F′(±1)∉C\\{0}", |a| {
                let f = f_quad_2(a);
                nonzero(a.get("alpha"))
                    && nonzero(a.get("d"))
                    && nonzero(dpoly(&f, ONE))
                    && nonzero(dpoly(&f, -ONE))
            }),
            k("α(b−c)∈R", |a| is_real(a.get("alpha") * (a.get("b") - a.get("c")))),
        ],
        builder: Builder::Rational(|a| poly_pair(plane(&[0.0]), f_quad_2(a), alpha_g(a, &[(1, 1.0), (-1, 1.0)]))),
        expected: two_ends,
    });
    // p, q are the roots of z^2 + 5 z + 5, so p + q = -pq
    let s5 = 5f64.sqrt();
    let mut d18 = d802a();
    d18.push(("p", vec![c((-5.0 + s5) / 2.0)]));
    d18.push(("q", vec![c((-5.0 - s5) / 2.0)]));
    d18.push(("r", vec![c((-5.0 + s5) / 2.0)]));
    v.push(CatalogEntry {
        id: "tc8_802_18",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z^3 + b z^2 + c z + d/z, G = alpha (z^2 + 2 (pq - 1) z + 2 pq/z)",
        defaults: d18,
        constraints: vec![
            a_pos(),
            k("p≠q", |a| !equal(a.get("p"), a.get("q"))),
            k("p,q≠0,1", |a| {
                [a.get("p"), a.get("q")]
                    .iter()
                    .all(|&x| nonzero(x) && nonzero(x - ONE))
            }),
            k("p+q=−qr", |a| equal(a.get("p") + a.get("q"), -a.get("q") * a.get("r"))),
            k("(d−c)pq−d∈R", |a| {
                let pq = a.get("p") * a.get("q");
                is_real((a.get("d") - a.get("c")) * pq - a.get("d"))
            }),
            k("|d|≠2|pq|", |a| differ(a.get("d").norm(), 2.0 * (a.get("p") * a.get("q")).norm())),
            k("F′(p),F′(q),F′(1)∉C\\{0}", |a| {
                let f = f_cubic_1(a);
                nonzero(dpoly(&f, a.get("p"))) && nonzero(dpoly(&f, a.get("q"))) && nonzero(dpoly(&f, ONE))
            }),
        ],
        builder: Builder::Rational(|a| {
            let (al, pq) = (a.get("alpha"), a.get("p") * a.get("q"));
            let g = laurent_poly(&[(2, al), (1, 2.0 * (pq - ONE) * al), (-1, 2.0 * pq * al)]);
            poly_pair(plane(&[0.0]), f_cubic_1(a), g)
        }),
        expected: two_ends,
    });
    let mut d19 = d802a();
    d19.push(("q", vec![c(2.0)]));
    v.push(CatalogEntry {
        id: "tc8_802_19",
        family: tc8,
        domain: "C\\{0}",
        data: "F = a z^2 + b z + c/z + d/z^2, G = alpha (z + (q^2 + q + 1)/z - q (q + 1)/(2 z^2))",
        defaults: d19,
        constraints: vec![
            a_pos(),
            k("α≠0", |a| nonzero(a.get("alpha"))),
            k("q≠0,±1", |a| {
                let q = a.get("q");
                nonzero(q) && nonzero(q - ONE) && nonzero(q + ONE)
            }),
            k("α(4c−4b(q²+q+1)+aq(q+1))∈R", |a| {
                let q = a.get("q");
                let s = 4.0 * a.get("c") - 4.0 * a.get("b") * (q * q + q + ONE) + a.get("a") * q * (q + ONE);
                is_real(a.get("alpha") * s)
            }),
            k("4|d|≠|αq(q+1)|", |a| {
                let q = a.get("q");
                differ(4.0 * a.get("d").norm(), (a.get("alpha") * q * (q + ONE)).norm())
            }),
            k("F′(1),F′(q),F′(−1−q)∉C\\{0}", |a| {
                let (f, q) = (f_quad_2(a), a.get("q"));
                nonzero(dpoly(&f, ONE)) && nonzero(dpoly(&f, q)) && nonzero(dpoly(&f, -ONE - q))
            }),
        ],
        builder: Builder::Rational(|a| {
            let (al, q) = (a.get("alpha"), a.get("q"));
            let g = laurent_poly(&[(1, al), (-1, al * (q * q + q + ONE)), (-2, -al * q * (q + ONE) / 2.0)]);
            poly_pair(plane(&[0.0]), f_quad_2(a), g)
        }),
        expected: two_ends,
    });

    let three_ends = |_: &Args| fixed(0, 3, 4, true);
    v.push(CatalogEntry {
        id: "tc8_803_1",
        family: tc8,
        domain: "C\\{0,1}",
        data: "F = a z + b/(z - 1) + c/z, G = alpha/(z - 1)",
        defaults: defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3), ("alpha", 1.0)]),
        constraints: vec![
            a_pos(),
            k("c,α∈R\\{0}", |a| {
                [a.get("c"), a.get("alpha")]
                    .iter()
                    .all(|&x| is_real(x) && nonzero(x))
            }),
            k("|b|≠α", |a| !equal(c(a.get("b").norm()), a.get("alpha"))),
        ],
        builder: Builder::Rational(|a| Ok((plane(&[0.0, 1.0])?, f_803(a), simple_pole(a.get("alpha"), ONE)))),
        expected: three_ends,
    });
    v.push(CatalogEntry {
        id: "tc8_803_2",
        family: tc8,
        domain: "C\\{0,1}",
        data: "F = a z + b/(z - 1) + c/z, G = alpha (1/z - 1/(z - 1))",
        defaults: defaults(&[("a", 1.0), ("b", 0.5), ("c", 0.3), ("alpha", 1.0)]),
        constraints: vec![
            a_pos(),
            k("Im(b+c)=0", |a| is_real(a.get("b") + a.get("c"))),
            k("α∈C\\{0}", |a| nonzero(a.get("alpha"))),
            k("|b|,|c|≠|α|", |a| {
                let al = a.get("alpha").norm();
                differ(a.get("b").norm(), al) && differ(a.get("c").norm(), al)
            }),
        ],
        builder: Builder::Rational(|a| {
            let al = a.get("alpha");
            let g = simple_pole(al, ZERO).add(&simple_pole(-al, ONE));
            Ok((plane(&[0.0, 1.0])?, f_803(a), g))
        }),
        expected: three_ends,
    });
    // pq = 2 and p + q = 4
    let s2 = 2f64.sqrt();
    v.push(CatalogEntry {
        id: "tc8_803_3",
        family: tc8,
        domain: "C\\{0,1}",
        data: "F = a z + b/(z - 1) + c/z, G = alpha ((pq - 1)/(z - 1) - pq/z)",
        defaults: defaults(&[
            ("a", 1.0),
            ("b", 0.5),
            ("c", 0.3),
            ("alpha", 1.0),
            ("p", 2.0 + s2),
            ("q", 2.0 - s2),
        ]),
        constraints: vec![
            a_pos(),
            k("α∈Ĉ\\{0}", |a| nonzero(a.get("alpha"))),
            k("p,q∉{0,1}", |a| {
                [a.get("p"), a.get("q")]
                    .iter()
                    .all(|&x| nonzero(x) && nonzero(x - ONE))
            }),
            k("pq≠1", |a| !equal(a.get("p") * a.get("q"), ONE)),
            k("p+q=2pq", |a| equal(a.get("p") + a.get("q"), 2.0 * a.get("p") * a.get("q"))),
            k("Im(1−2pq)=0", |a| is_real(ONE - 2.0 * a.get("p") * a.get("q"))),
            k("Im(2(b−c)pq+2c−a)=0", |a| {
                let pq = a.get("p") * a.get("q");
                is_real(2.0 * (a.get("b") - a.get("c")) * pq + 2.0 * a.get("c") - a.get("a"))
            }),
            k("|c|≠|α||pq|", |a| {
                differ(a.get("c").norm(), (a.get("alpha") * a.get("p") * a.get("q")).norm())
            }),
            k("|b|≠|α||pq−1|", |a| {
                differ(a.get("b").norm(), (a.get("alpha") * (a.get("p") * a.get("q") - ONE)).norm())
            }),
        ],
        builder: Builder::Rational(|a| {
            let (al, pq) = (a.get("alpha"), a.get("p") * a.get("q"));
            let g = simple_pole(al * (pq - ONE), ONE).add(&simple_pole(-al * pq, ZERO));
            Ok((plane(&[0.0, 1.0])?, f_803(a), g))
        }),
        expected: three_ends,
    });

    v.push(CatalogEntry {
        id: "jorge_meeks_2n",
        family: "2n embedded ends",
        domain: "Ĉ\\{ζ^j, ηζ^j}",
        data: "F = sum alpha_j/(z - zeta^j), G = sum beta_k/(z - eta zeta^k), alpha_j = lambda_j eta zeta^j, beta_k = mu_k zeta^k",
        defaults: vec![
            ("n", vec![c(3.0)]),
            ("lambda", vec![c(0.2), c(0.2), c(-1.0)]),
            ("mu", vec![c(-1.0), c(0.2), c(0.2)]),
        ],
        constraints: vec![
            k("n≥2", |a| {
                let n = a.get("n");
                is_real(n) && n.re >= 2.0 && (n.re - n.re.round()).abs() < EPS
            }),
            k("λ_j,μ_k∈R\\{0}", |a| {
                let n = a.get("n").re.round() as usize;
                a.list("lambda").len() == n
                    && a.list("mu").len() == n
                    && a.list("lambda")
                        .iter()
                        .chain(a.list("mu"))
                        .all(|&x| is_real(x) && nonzero(x))
            }),
        ],
        builder: Builder::Rational(|a| {
            let n = a.get("n").re.round() as usize;
            let zeta = Complex64::from_polar(1.0, 2.0 * PI / n as f64);
            let eta = Complex64::from_polar(1.0, PI / n as f64);
            let mut f = RationalFunction::constant(ZERO);
            let mut g = RationalFunction::constant(ZERO);
            let mut punctures = Vec::new();
            for j in 0..n {
                let zj = zeta.powu(j as u32);
                f = f.add(&simple_pole(a.list("lambda")[j] * eta * zj, zj));
                g = g.add(&simple_pole(a.list("mu")[j] * zj, eta * zj));
                punctures.push(Point::Finite(zj));
                punctures.push(Point::Finite(eta * zj));
            }
            Ok((Domain::sphere(punctures)?, f, g))
        }),
        expected: |a| {
            let n = a.get("n").re.round() as usize;
            fixed(0, 2 * n, 4 * n - 2, true)
        },
    });
    v.push(CatalogEntry {
        id: "fournoid",
        family: "four embedded ends",
        domain: "Ĉ\\{±1,±i}",
        data: "F = 1/(z - 1) + 1/(z + 1), G = 1/(z - i) + 1/(z + i)",
        defaults: vec![],
        constraints: vec![],
        builder: Builder::Rational(|_| {
            let i = Complex64::i();
            let f = simple_pole(ONE, ONE).add(&simple_pole(ONE, -ONE));
            let g = simple_pole(ONE, i).add(&simple_pole(ONE, -i));
            let punctures = [ONE, -ONE, i, -i].into_iter().map(Point::Finite).collect();
            Ok((Domain::sphere(punctures)?, f, g))
        }),
        expected: |_| fixed(0, 4, 6, true),
    });
    v
}

fn entries() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        let mut v = rational_entries();
        v.push(CatalogEntry {
            id: "torus_8pi",
            family: "genus 1, total curvature -8 pi",
            domain: "C/[1,τ]\\{[0]}",
            data: "F = a wp' + b wp, G = c wp, tau = e^{i alpha0}, c = i conj(p1)",
            defaults: defaults(&[("a", 1.0), ("b", 0.5)]),
            constraints: vec![k("a>0", |a| positive(a.get("a")))],
            builder: Builder::Torus8pi,
            expected: |_| fixed(1, 1, 4, false),
        });
        v.push(CatalogEntry {
            id: "torus_10pi",
            family: "genus 1, total curvature -10 pi",
            domain: "C/[1,i]\\{[0]}",
            data: "F = wp'' + (5 g2/(7 pi)) wp, G = wp'",
            defaults: vec![],
            constraints: vec![],
            builder: Builder::Torus10pi,
            expected: |_| fixed(1, 1, 5, false),
        });
        v
    })
}

pub fn catalog_list() -> &'static [CatalogEntry] {
    entries()
}

pub fn catalog_entry(id: &str) -> Result<&'static CatalogEntry> {
    entries()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownCatalogId(id.to_string()))
}

/// Default parameters merged with `overrides`. Unknown names are refused.
pub fn resolve_args(entry: &CatalogEntry, overrides: &Params) -> Result<Args> {
    let mut args = entry.default_args();
    for (name, value) in overrides {
        if !entry.defaults.iter().any(|(n, _)| n == name) {
            return Err(Error::InvalidInput(format!(
                "{} has no parameter {name:?}",
                entry.id
            )));
        }
        args.0.insert(name.clone(), value.clone());
    }
    Ok(args)
}

fn genus1_solution() -> Result<genus1::Genus1Solution> {
    static SOLUTION: OnceLock<std::result::Result<genus1::Genus1Solution, String>> = OnceLock::new();
    SOLUTION
        .get_or_init(|| genus1::solve_alpha0(1e-12).map_err(|e| e.to_string()))
        .clone()
        .map_err(Error::NonConvergence)
}

/// Data of an entry after the stated constraints have been checked, but
/// before regularity, periods and the expected invariants are verified.
pub fn catalog_data(id: &str, overrides: &Params) -> Result<(WeierstrassData, Args)> {
    let entry = catalog_entry(id)?;
    let args = resolve_args(entry, overrides)?;
    for con in &entry.constraints {
        if !(con.check)(&args) {
            return Err(Error::ConstraintViolated(con.text.to_string()));
        }
    }
    let data = match entry.builder {
        Builder::Rational(build) => {
            let (domain, f, g) = build(&args)?;
            WeierstrassData::rational(domain, f, g, RATIONAL_BASE_POINT)
        }
        Builder::Torus8pi => {
            let s = genus1_solution()?;
            genus1::build_genus1_8pi(&s, args.get("a").re, args.get("b"))?
        }
        Builder::Torus10pi => genus1::build_genus1_10pi()?,
    };
    Ok((data, args))
}

pub fn catalog_build(id: &str, overrides: &Params) -> Result<CatalogBuild> {
    let entry = catalog_entry(id)?;
    let (data, args) = catalog_data(id, overrides)?;
    validate(&data).map_err(|e| match e {
        Error::NotRegularCurve(_) | Error::PoleOffPuncture { .. } | Error::InvalidBasePoint(_) => {
            Error::ConstraintViolated(format!("regularity ({e})"))
        }
        other => other,
    })?;
    let period = check_period_condition(&data, DEFAULT_PERIOD_TOL);
    if !period.passed {
        let detail = match period.worst_entry() {
            Some(w) if period.errors.is_empty() => format!("Re on {} is {:e}", w.cycle, w.numeric.re),
            _ => period.errors.join("; "),
        };
        return Err(Error::ConstraintViolated(format!("period condition ({detail})")));
    }
    let expected = entry.expected(&args);
    let deg = rho_degree(&data)?;
    let ends = classify_all(&data)?;
    let all_embedded = ends.iter().all(|e| e.embedded);
    let computed = fixed(data.genus(), data.domain.n_ends(), deg, all_embedded);
    if computed != expected {
        return Err(Error::CatalogMismatch {
            id: id.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
        });
    }
    let ledger = osserman_report(&data)?;
    Ok(CatalogBuild {
        id: id.to_string(),
        data,
        args: args.0,
        expected,
        period,
        ledger,
        ends,
    })
}

/// Parses `1`, `-2.5`, `1/5`, `2i`, `-i`, `1+2i`, `0.5-1/3i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidInput(format!("cannot parse {s:?} as a complex number"));
    if t.is_empty() {
        return Err(bad());
    }
    // split at the last sign that is not leading and not part of an exponent
    let bytes = t.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let term = |p: &str| -> Result<Complex64> {
        if let Some(body) = p.strip_suffix(['i', 'j']) {
            let v = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                b => parse_real(b.strip_suffix('*').unwrap_or(b)).ok_or_else(bad)?,
            };
            Ok(Complex64::new(0.0, v))
        } else {
            Ok(Complex64::new(parse_real(p).ok_or_else(bad)?, 0.0))
        }
    };
    match split {
        Some(i) => Ok(term(&t[..i])? + term(&t[i..])?),
        None => term(&t),
    }
}

fn parse_real(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((n, d)) => Some(n.parse::<f64>().ok()? / d.parse::<f64>().ok()?),
        None => s.parse().ok(),
    }
}

/// Parses a comma-separated list of complex numbers.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    s.trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
        .split(',')
        .map(parse_complex)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(name: &str, v: Complex64) -> Params {
        [(name.to_string(), vec![v])].into_iter().collect()
    }

    #[test]
    fn parses_complex_literals() {
        let cases = [
            ("1", c(1.0)),
            ("-2.5", c(-2.5)),
            ("1/5", c(0.2)),
            ("2i", Complex64::new(0.0, 2.0)),
            ("-i", Complex64::new(0.0, -1.0)),
            ("1+2i", Complex64::new(1.0, 2.0)),
            ("1e-3-1e+2i", Complex64::new(1e-3, -100.0)),
        ];
        for (s, v) in cases {
            assert_eq!(parse_complex(s).unwrap(), v, "{s}");
        }
        assert!(parse_complex("x").is_err());
        assert_eq!(parse_complex_list("1/5,1/5,-1").unwrap().len(), 3);
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = catalog_list().iter().map(|e| e.id).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
        assert!(n >= 35);
    }

    #[test]
    fn rotational_with_complex_a_is_refused() {
        let e = catalog_build("rotational", &one("a", Complex64::new(0.0, 2.0))).unwrap_err();
        assert!(matches!(e, Error::ConstraintViolated(ref s) if s == "a∈R\\{0}"), "{e}");
    }

    #[test]
    fn unknown_ids_and_parameters() {
        assert!(matches!(catalog_build("nope", &Params::new()), Err(Error::UnknownCatalogId(_))));
        assert!(matches!(
            catalog_build("rotational", &one("z", ONE)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn laurent_poly_places_negative_powers() {
        let f = laurent_poly(&[(1, c(2.0)), (-2, c(3.0))]);
        let z = Complex64::new(0.7, -0.4);
        assert!((f.eval(z).unwrap() - (2.0 * z + 3.0 / (z * z))).norm() < 1e-14);
        assert!((dpoly(&[(1, c(2.0)), (-2, c(3.0))], z) - (2.0 - 6.0 / (z * z * z))).norm() < 1e-13);
    }
}
