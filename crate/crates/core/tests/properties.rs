use std::f64::consts::PI;

use afront::catalog::{catalog_data, Params};
use afront::grid::GridSpec;
use afront::surface::singular_locus;
use afront::{Complex64, Point, Polynomial, RationalFunction, Surface, WeierstrassData};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn catalog(id: &str, items: &[(&str, Complex64)]) -> WeierstrassData {
    let p: Params = items.iter().map(|&(k, v)| (k.to_string(), vec![v])).collect();
    catalog_data(id, &p).unwrap().0
}

/// Rational function with simple poles at well separated points.
fn arb_simple_poles() -> impl Strategy<Value = (RationalFunction, Vec<Complex64>)> {
    (
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 3),
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..4),
    )
        .prop_map(|(num, poles)| {
            let poles: Vec<Complex64> = poles
                .iter()
                .enumerate()
                .map(|(k, &(x, y))| c(3.0 * k as f64 + x * 0.5, y * 0.5))
                .collect();
            let num = Polynomial::new(num.iter().map(|&(x, y)| c(x, y)).collect());
            let f = RationalFunction::new(num.add(&Polynomial::constant(c(1.5, 0.0))), Polynomial::from_roots(&poles))
                .unwrap();
            (f, poles)
        })
}

/// Trapezoid rule on a circle; spectrally accurate for analytic periodic integrands.
fn circle_integral(f: &RationalFunction, center: Complex64, r: f64) -> Complex64 {
    let n = 256;
    (0..n)
        .map(|k| {
            let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
            f.eval(center + r * e).unwrap() * Complex64::i() * r * e
        })
        .sum::<Complex64>()
        * (2.0 * PI / n as f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn residue_matches_contour((f, poles) in arb_simple_poles()) {
        for p in f.poles() {
            let others = poles.iter().map(|q| (q - p.value).norm()).filter(|&d| d > 1e-9).fold(f64::INFINITY, f64::min);
            let r = (0.4 * others).min(0.5);
            let contour = circle_integral(&f, p.value, r) / (2.0 * PI * Complex64::i());
            let res = f.residue(Point::Finite(p.value));
            prop_assert!((contour - res).norm() < 1e-8 * res.norm().max(1.0), "{} vs {}", contour, res);
        }
    }

    #[test]
    fn degree_counts_preimages((f, _) in arb_simple_poles(), wx in 0.3f64..0.9, wy in -0.9f64..-0.3) {
        let w = c(wx, wy);
        let eq = f.num().sub(&f.den().scale(w));
        let count: usize = eq.roots().iter().map(|r| r.multiplicity).sum();
        prop_assert_eq!(count, f.degree());
    }

    #[test]
    fn base_point_only_shifts_the_height(bx in -2.0f64..2.0, by in 0.3f64..2.0) {
        let data = catalog("nonrotational", &[("b", c(0.4, 0.3))]);
        let mut moved = data.clone();
        moved.base_point = c(bx, by);
        let (s, t) = (Surface::new(data).unwrap(), Surface::new(moved).unwrap());
        let zs = [c(0.6, 0.1), c(-1.2, 0.7), c(0.2, -1.9)];
        let d0 = s.psi(zs[0]).unwrap().x3 - t.psi(zs[0]).unwrap().x3;
        for z in zs {
            let (p, q) = (s.psi(z).unwrap(), t.psi(z).unwrap());
            prop_assert!((p.x - q.x).norm() < 1e-13);
            prop_assert!((p.x3 - q.x3 - d0).abs() < 1e-10 * p.x3.abs().max(1.0));
        }
    }

    #[test]
    fn height_derivative_matches_finite_differences(r in 0.4f64..2.0, t in 0.0f64..2.0 * PI) {
        let s = Surface::new(catalog("tc8_803_1", &[])).unwrap();
        let z = Complex64::from_polar(r, t);
        prop_assume!((z - 1.0).norm() > 0.2);
        let h = 1e-6;
        let i = Complex64::i();
        let x3 = |u: Complex64| s.psi(z + u).unwrap().x3;
        let dz = c(x3(c(h, 0.0)) - x3(c(-h, 0.0)), 0.0) - i * (x3(i * h) - x3(-i * h));
        let dz = dz / (4.0 * h);
        let (f, g) = (s.data().f.eval(z).unwrap(), s.data().g.eval(z).unwrap());
        let (f1, g1) = (s.df().eval(z).unwrap(), s.dg().eval(z).unwrap());
        let expect = 0.5 * (g1 * (g.conj() - f) + f1 * (g - f.conj()));
        prop_assert!((dz - expect).norm() < 1e-5 * expect.norm().max(1.0), "{} vs {}", dz, expect);
    }

    #[test]
    fn singular_locus_has_vanishing_affine_metric(a in 0.5f64..3.0, bx in -0.6f64..0.6, by in -0.6f64..0.6) {
        prop_assume!((c(bx, by).norm() - 1.0).abs() > 0.05 && c(bx, by).norm() > 0.05);
        let s = Surface::new(catalog("nonrotational", &[("a", c(a, 0.0)), ("b", c(bx, by))])).unwrap();
        for z in singular_locus(&s, &GridSpec::annulus(0.1, 3.0, 30, 30), 1e-12).unwrap() {
            let m = s.metrics_at(z).unwrap();
            prop_assert!(m.h.abs() / m.dtau2 < 1e-6);
        }
    }
}
