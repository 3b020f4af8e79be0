//! Canonical JSON encoding of results.
//!
//! Rationals are strings in lowest terms (`"-10/9"`, `"3"`), series are
//! coefficient arrays starting at `q^0`, and object keys are sorted so that
//! re-serializing a parsed document reproduces it byte for byte.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ifunction::GeometrySpec;
use crate::invariants::{DiagnosticSeries, InitialConstants};
use crate::series::{PowerSeries, Rational};
use crate::wallcross::PotentialReport;

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.parse::<Rational>()
        .map_err(|e| Error::InvalidSpec(format!("bad rational {s:?}: {e}")))
}

pub fn series(s: &PowerSeries) -> Value {
    Value::Array(s.coeffs().iter().map(rational).collect())
}

pub fn rationals(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(rational).collect())
}

pub fn parse_series(value: &Value) -> Result<PowerSeries> {
    let items = value
        .as_array()
        .filter(|a| !a.is_empty())
        .ok_or_else(|| Error::InvalidSpec("expected a non-empty coefficient array".into()))?;
    let coeffs = items
        .iter()
        .map(|v| {
            v.as_str()
                .ok_or_else(|| Error::InvalidSpec(format!("expected a rational string, got {v}")))
                .and_then(parse_rational)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PowerSeries::new(coeffs))
}

pub fn spec(spec: &GeometrySpec) -> Value {
    json!({ "n": spec.n, "l": spec.l, "lp": spec.lp })
}

pub fn initial_constants(c: &InitialConstants) -> Value {
    Value::Array(c.c.iter().map(series).collect())
}

pub fn diagnostics(d: &DiagnosticSeries) -> Value {
    json!({
        "L": series(&d.l),
        "mu": series(&d.mu),
        "R0": series(&d.r0),
        "loop": series(&d.loop_series),
    })
}

/// The full report document.
pub fn report(r: &PotentialReport) -> Value {
    let mut m = Map::new();
    m.insert("spec".into(), spec(&r.spec));
    m.insert("order".into(), json!(r.order));
    m.insert("I0".into(), series(&r.i0));
    m.insert("I1".into(), series(&r.i1));
    m.insert("C".into(), initial_constants(&r.c));
    m.insert("F_qm".into(), series(&r.f_qm));
    m.insert("F_gw_q".into(), series(&r.f_gw_q));
    m.insert("Q_of_q".into(), series(&r.q_of_q));
    m.insert("N".into(), rationals(&r.n_d));
    m.insert(
        "chi_top".into(),
        r.chi_top.as_ref().map_or(Value::Null, rational),
    );
    m.insert("chern_coeff".into(), rational(&r.chern_coeff));
    m.insert("diagnostics".into(), diagnostics(&r.diagnostics));
    Value::Object(m)
}

/// Pretty-printed, newline-terminated canonical text.
pub fn to_canonical_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};
    use crate::wallcross::compute_report;

    #[test]
    fn rational_strings() {
        assert_eq!(rational(&rat(-10, 9)), json!("-10/9"));
        assert_eq!(rational(&rat(6, 2)), json!("3"));
        assert_eq!(rational(&rat(2, -4)), json!("-1/2"));
        assert_eq!(parse_rational("-124/9").unwrap(), rat(-124, 9));
        assert_eq!(parse_rational("4/2").unwrap(), int(2));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn report_round_trips_byte_identical() {
        let spec = GeometrySpec::new(4, vec![2], vec![2]).unwrap();
        let text = to_canonical_string(&report(&compute_report(&spec, 4).unwrap()));
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(to_canonical_string(&parsed), text);
        assert_eq!(parsed["N"], json!(["-1/3", "-1/2", "-10/9", "19/4"]));
        assert_eq!(parsed["chi_top"], Value::Null);
        assert_eq!(
            parse_series(&parsed["F_gw_q"]).unwrap().coeff(3),
            rat(-124, 9)
        );
    }
}
