//! JSON form of surface specs and of the reports produced by the checks.
//!
//! A spec names the domain, `F`, `G` and the base point:
//!
//! ```json
//! {"domain": {"kind": "plane", "punctures": [[0, 0]]},
//!  "F": {"type": "rational", "num": [[1, 0]], "den": [[0, 0], [1, 0]]},
//!  "G": {"type": "rational", "num": [[0, 0], [2, 0]], "den": [[1, 0]]},
//!  "base_point": [1, 0]}
//! ```
//!
//! Torus data use `{"kind": "torus", "tau": [re, im]}` and functions of the
//! form `{"type": "elliptic", "terms": [{"basis": "wp1", "coeff": [1, 0]}],
//! "const": [0, 0]}`, where `wp`, `wp1`, `wp2`, ... name the Weierstrass
//! function and its derivatives. A spec may instead point into the catalog
//! with `{"catalog": "rotational", "params": {"a": 2}}`. A parameter
//! given as two numbers is one complex value; write a list of two reals as
//! `[[1, 0], [-1, 0]]`.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::catalog::{catalog_data, parse_complex, Params};
use crate::ends::{EndReport, OssermanLedger};
use crate::error::{Error, Result};
use crate::genus1::{ContinuationPoint, Genus1Solution};
use crate::meromorphic::{EllipticCombination, MeromorphicFunction};
use crate::period::PeriodReport;
use crate::rational::{Point, RationalFunction};
use crate::surface::{Domain, DomainKind, WeierstrassData};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn complex_to_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Accepts `[re, im]`, a bare number, or a string such as `"1-2i"`.
pub fn complex_from_json(v: &Value) -> Result<Complex64> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .map(|x| Complex64::new(x, 0.0))
            .ok_or_else(|| invalid(format!("not a number: {n}"))),
        Value::String(s) => parse_complex(s),
        Value::Array(a) if a.len() == 2 => {
            let part = |x: &Value| x.as_f64().ok_or_else(|| invalid(format!("not a number: {x}")));
            Ok(Complex64::new(part(&a[0])?, part(&a[1])?))
        }
        other => Err(invalid(format!("expected a complex number, got {other}"))),
    }
}

fn complex_list(v: &Value) -> Result<Vec<Complex64>> {
    match v {
        Value::Array(a) => a.iter().map(complex_from_json).collect(),
        other => Err(invalid(format!("expected a list of complex numbers, got {other}"))),
    }
}

pub fn point_to_json(p: Point) -> Value {
    match p.as_finite() {
        Some(z) => complex_to_json(z),
        None => json!("inf"),
    }
}

pub fn point_from_json(v: &Value) -> Result<Point> {
    match v {
        Value::String(s) if matches!(s.as_str(), "inf" | "infinity" | "∞") => Ok(Point::Infinity),
        other => Ok(Point::Finite(complex_from_json(other)?)),
    }
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| invalid(format!("missing field '{key}'")))
}

fn domain_to_json(d: &Domain) -> Value {
    let mut m = Map::new();
    let kind = match d.kind() {
        DomainKind::Sphere => "sphere",
        DomainKind::Plane => "plane",
        DomainKind::Torus => "torus",
    };
    m.insert("kind".into(), json!(kind));
    if let Some(lat) = d.lattice() {
        m.insert("tau".into(), complex_to_json(lat.tau()));
    }
    let punctures: Vec<Value> = d.punctures().iter().map(|&p| point_to_json(p)).collect();
    m.insert("punctures".into(), Value::Array(punctures));
    Value::Object(m)
}

fn domain_from_json(v: &Value) -> Result<Domain> {
    let kind = match field(v, "kind")?.as_str() {
        Some("sphere") => DomainKind::Sphere,
        Some("plane") => DomainKind::Plane,
        Some("torus") => DomainKind::Torus,
        other => return Err(invalid(format!("unknown domain kind {other:?}"))),
    };
    let tau = v.get("tau").map(complex_from_json).transpose()?;
    let punctures = match v.get("punctures") {
        Some(Value::Array(a)) => a.iter().map(point_from_json).collect::<Result<_>>()?,
        Some(other) => return Err(invalid(format!("punctures must be a list, got {other}"))),
        None => Vec::new(),
    };
    Domain::new(kind, tau, punctures)
}

fn basis_name(k: usize) -> String {
    if k == 0 {
        "wp".into()
    } else {
        format!("wp{k}")
    }
}

fn basis_order(name: &str) -> Result<usize> {
    match name {
        "wp" => Ok(0),
        _ => name
            .strip_prefix("wp")
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| invalid(format!("unknown basis '{name}'"))),
    }
}

pub fn function_to_json(f: &MeromorphicFunction) -> Value {
    match f {
        MeromorphicFunction::Rational(r) => json!({
            "type": "rational",
            "num": r.num().coeffs().iter().map(|&c| complex_to_json(c)).collect::<Vec<_>>(),
            "den": r.den().coeffs().iter().map(|&c| complex_to_json(c)).collect::<Vec<_>>(),
        }),
        MeromorphicFunction::Elliptic(e) => {
            let terms: Vec<Value> = e
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.norm() != 0.0)
                .map(|(k, &c)| json!({"basis": basis_name(k), "coeff": complex_to_json(c)}))
                .collect();
            json!({"type": "elliptic", "terms": terms, "const": complex_to_json(e.constant())})
        }
    }
}

fn function_from_json(v: &Value, domain: &Domain) -> Result<MeromorphicFunction> {
    match field(v, "type")?.as_str() {
        Some("rational") => {
            let num = complex_list(field(v, "num")?)?;
            let den = complex_list(field(v, "den")?)?;
            Ok(MeromorphicFunction::Rational(RationalFunction::from_coeffs(num, den)?))
        }
        Some("elliptic") => {
            let lattice = *domain
                .lattice()
                .ok_or_else(|| invalid("elliptic functions need a torus domain"))?;
            let terms = match field(v, "terms")? {
                Value::Array(a) => a
                    .iter()
                    .map(|t| {
                        let k = field(t, "basis")?
                            .as_str()
                            .ok_or_else(|| invalid("basis must be a string"))
                            .and_then(basis_order)?;
                        Ok((k, complex_from_json(field(t, "coeff")?)?))
                    })
                    .collect::<Result<Vec<_>>>()?,
                other => return Err(invalid(format!("terms must be a list, got {other}"))),
            };
            let constant = v
                .get("const")
                .map(complex_from_json)
                .transpose()?
                .unwrap_or_default();
            Ok(MeromorphicFunction::Elliptic(EllipticCombination::new(
                lattice, &terms, constant,
            )?))
        }
        other => Err(invalid(format!("unknown function type {other:?}"))),
    }
}

pub fn data_to_json(data: &WeierstrassData) -> Value {
    json!({
        "domain": domain_to_json(&data.domain),
        "F": function_to_json(&data.f),
        "G": function_to_json(&data.g),
        "base_point": complex_to_json(data.base_point),
    })
}

pub fn data_from_json(v: &Value) -> Result<WeierstrassData> {
    if let Some(id) = v.get("catalog") {
        let id = id.as_str().ok_or_else(|| invalid("catalog id must be a string"))?;
        let mut params = Params::new();
        if let Some(Value::Object(m)) = v.get("params") {
            for (k, val) in m {
                let list = match val {
                    Value::Array(a) if a.iter().all(|x| !x.is_number()) => complex_list(val)?,
                    Value::Array(a) if a.len() != 2 => complex_list(val)?,
                    _ => vec![complex_from_json(val)?],
                };
                params.insert(k.clone(), list);
            }
        }
        return Ok(catalog_data(id, &params)?.0);
    }
    let domain = domain_from_json(field(v, "domain")?)?;
    let f = function_from_json(field(v, "F")?, &domain)?;
    let g = function_from_json(field(v, "G")?, &domain)?;
    let base_point = complex_from_json(field(v, "base_point")?)?;
    Ok(WeierstrassData::new(domain, f, g, base_point))
}

pub fn parse_spec(text: &str) -> Result<WeierstrassData> {
    data_from_json(&serde_json::from_str(text)?)
}

pub fn period_report_to_json(r: &PeriodReport) -> Value {
    let cycles: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            json!({
                "cycle": e.cycle,
                "numeric": complex_to_json(e.numeric),
                "closed_form": e.closed_form.map(complex_to_json),
                "re_abs": e.re_abs,
            })
        })
        .collect();
    json!({
        "passed": r.passed,
        "tolerance": r.tolerance,
        "cycles": cycles,
        "errors": r.errors,
    })
}

pub fn end_to_json(e: &EndReport) -> Value {
    json!({
        "p": point_to_json(e.puncture),
        "ordF": e.ord_f,
        "ordG": e.ord_g,
        "embedded": e.embedded,
        "type": e.end_type.name(),
        "b_minus1": e.b_minus1.map(complex_to_json),
        "b_1": e.b_1.map(complex_to_json),
    })
}

pub fn osserman_to_json(l: &OssermanLedger) -> Value {
    json!({
        "genus": l.genus,
        "n_ends": l.n_ends,
        "deg": l.deg_rho,
        "rhs": l.rhs,
        "equality": l.equality,
    })
}

pub fn classification_to_json(ends: &[EndReport], ledger: &OssermanLedger) -> Value {
    json!({
        "ends": ends.iter().map(end_to_json).collect::<Vec<_>>(),
        "osserman": osserman_to_json(ledger),
    })
}

pub fn genus1_to_json(s: &Genus1Solution) -> Value {
    json!({
        "alpha0": s.alpha0,
        "tau": complex_to_json(s.tau),
        "c": complex_to_json(s.c),
        "p1": complex_to_json(s.p1),
        "p2": complex_to_json(s.p2),
        "P_lo": s.bracket_values.0,
        "P_hi": s.bracket_values.1,
        "residual": s.residual,
        "dP_dalpha": s.derivative,
        "iterations": s.iterations,
    })
}

pub fn continuation_to_json(points: &[ContinuationPoint]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|p| {
                json!({
                    "tau": complex_to_json(p.tau),
                    "c": complex_to_json(p.c),
                    "residual": p.residual,
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_list;
    use crate::surface::evaluate_psi;

    #[test]
    fn complex_forms() {
        assert_eq!(complex_from_json(&json!([1.5, -2])).unwrap(), Complex64::new(1.5, -2.0));
        assert_eq!(complex_from_json(&json!(3)).unwrap(), Complex64::new(3.0, 0.0));
        assert_eq!(complex_from_json(&json!("2i")).unwrap(), Complex64::new(0.0, 2.0));
        assert!(complex_from_json(&json!([1, 2, 3])).is_err());
        assert_eq!(point_from_json(&json!("inf")).unwrap(), Point::Infinity);
    }

    #[test]
    fn every_catalog_entry_round_trips() {
        for e in catalog_list() {
            let (data, _) = catalog_data(e.id, &Params::new()).unwrap();
            let text = serde_json::to_string(&data_to_json(&data)).unwrap();
            let back = parse_spec(&text).unwrap();
            assert_eq!(back.domain.kind(), data.domain.kind(), "{}", e.id);
            assert_eq!(back.domain.punctures().len(), data.domain.punctures().len());
            let z = data.base_point + Complex64::new(0.013, 0.021);
            assert!((back.f.eval(z).unwrap() - data.f.eval(z).unwrap()).norm() < 1e-12, "{}", e.id);
            assert!((back.g.eval(z).unwrap() - data.g.eval(z).unwrap()).norm() < 1e-12, "{}", e.id);
        }
    }

    #[test]
    fn catalog_reference_in_spec() {
        let data = parse_spec(r#"{"catalog": "rotational", "params": {"a": 3}}"#).unwrap();
        let psi = evaluate_psi(&data, Complex64::new(1.0, 0.0)).unwrap();
        assert!(psi.x3.is_finite());
        assert!(parse_spec(r#"{"catalog": "nope"}"#).is_err());
    }

    #[test]
    fn elliptic_spec_uses_the_domain_lattice() {
        let text = r#"{"domain": {"kind": "torus", "tau": [0, 1], "punctures": [[0, 0]]},
            "F": {"type": "elliptic", "terms": [{"basis": "wp2", "coeff": 1}], "const": 0},
            "G": {"type": "elliptic", "terms": [{"basis": "wp1", "coeff": [1, 0]}]},
            "base_point": [0.37, 0.41]}"#;
        let data = parse_spec(text).unwrap();
        assert_eq!(data.genus(), 1);
        assert!(parse_spec(&text.replace("wp2", "zeta")).is_err());
    }

    #[test]
    fn missing_fields_are_reported() {
        let e = parse_spec(r#"{"domain": {"kind": "plane"}}"#).unwrap_err();
        assert!(e.to_string().contains("'F'"), "{e}");
    }
}
