use afront::catalog::{catalog_build, catalog_list, Params};
use afront::{Complex64, Error};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn params(items: &[(&str, Vec<Complex64>)]) -> Params {
    items.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// `deg rho` read off the family name: total curvature is `-2 pi deg rho`.
fn degree_from_family(family: &str) -> Option<usize> {
    let rest = family.split("total curvature ").nth(1)?;
    let value = rest.split_whitespace().next()?;
    if value == "0" {
        return Some(0);
    }
    let k: usize = value.strip_prefix('-')?.parse().ok()?;
    Some(k / 2)
}

#[test]
fn every_entry_builds_with_its_defaults() {
    let list = catalog_list();
    assert!(list.len() >= 35);
    for e in list {
        let b = catalog_build(e.id, &Params::new()).unwrap_or_else(|err| panic!("{}: {err}", e.id));
        assert!(b.period.passed, "{}", e.id);
        assert!(b.period.max_oracle_gap() < 1e-7, "{}: {:e}", e.id, b.period.max_oracle_gap());
        assert_eq!(b.ledger.genus, b.expected.genus, "{}", e.id);
        assert_eq!(b.ledger.n_ends, b.expected.n_ends, "{}", e.id);
        assert_eq!(b.ledger.deg_rho as usize, b.expected.deg_rho, "{}", e.id);
        assert!(b.ledger.deg_rho >= b.ledger.rhs, "{}", e.id);
        let embedded = b.ends.iter().all(|r| r.embedded);
        assert_eq!(embedded, b.expected.all_embedded, "{}", e.id);
        assert_eq!(b.ledger.equality, embedded, "{}", e.id);
        if let Some(deg) = degree_from_family(e.family) {
            assert_eq!(b.ledger.deg_rho as usize, deg, "{}", e.id);
        }
    }
}

#[test]
fn family_degrees_cover_every_total_curvature() {
    let mut degrees: Vec<usize> = catalog_list().iter().filter_map(|e| degree_from_family(e.family)).collect();
    degrees.sort();
    degrees.dedup();
    assert_eq!(degrees, vec![0, 1, 2, 3, 4, 5]);
}

#[test]
fn constraints_are_enforced() {
    let cases = [
        ("tc2", params(&[("a", vec![c(-1.0)])]), "a>0"),
        ("paraboloid", params(&[("b", vec![Complex64::new(0.6, 0.8)])]), "|b|≠1"),
        ("nonrotational", params(&[("b", vec![c(0.0)])]), "b∈C\\{0}"),
        ("torus_8pi", params(&[("a", vec![c(-2.0)])]), "a>0"),
    ];
    for (id, p, text) in cases {
        match catalog_build(id, &p) {
            Err(Error::ConstraintViolated(s)) => assert_eq!(s, text, "{id}"),
            other => panic!("{id}: expected a constraint violation, got {:?}", other.map(|b| b.id)),
        }
    }
}

#[test]
fn jorge_meeks_with_four_ends() {
    let p = params(&[
        ("n", vec![c(2.0)]),
        ("lambda", vec![c(1.0), c(-1.0)]),
        ("mu", vec![c(1.0), c(-1.0)]),
    ]);
    let b = catalog_build("jorge_meeks_2n", &p).unwrap();
    assert_eq!((b.ledger.n_ends, b.ledger.deg_rho), (4, 6));
    assert!(b.ledger.equality);
}

#[test]
fn paraboloid_with_constant_g() {
    let b = catalog_build("paraboloid", &params(&[("b", vec![c(0.0)])])).unwrap();
    assert_eq!(b.ledger.deg_rho, 0);
    assert!(b.ends.iter().all(|r| r.embedded));
}
