use serde_json::{Map, Value};

use crate::error::CurveError;
use crate::profiles::{slant_torsion_from_curvature, Interval, IntrinsicProfile, ScalarField, Sign};

use super::IoError;

type Result<T> = std::result::Result<T, IoError>;

fn schema(path: &str, message: impl Into<String>) -> IoError {
    IoError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn invariant(path: &str, source: CurveError) -> IoError {
    IoError::ProfileInvariantViolation {
        path: path.to_string(),
        source,
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(path, "expected an object"))
}

fn number(obj: &Map<String, Value>, key: &str, path: &str) -> Result<f64> {
    let p = format!("{path}.{key}");
    match obj.get(key) {
        None => Err(schema(&p, "missing number")),
        Some(v) => v
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| schema(&p, "expected a finite number")),
    }
}

fn number_or(obj: &Map<String, Value>, key: &str, path: &str, default: f64) -> Result<f64> {
    if obj.contains_key(key) {
        number(obj, key, path)
    } else {
        Ok(default)
    }
}

fn numbers(obj: &Map<String, Value>, key: &str, path: &str) -> Result<Vec<f64>> {
    let p = format!("{path}.{key}");
    let arr = obj
        .get(key)
        .ok_or_else(|| schema(&p, "missing array"))?
        .as_array()
        .ok_or_else(|| schema(&p, "expected an array of numbers"))?;
    arr.iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_f64()
                .filter(|x| x.is_finite())
                .ok_or_else(|| schema(&format!("{p}[{i}]"), "expected a finite number"))
        })
        .collect()
}

/// Parses one field object. `slant-torsion` is only meaningful for torsion and is rejected here.
pub fn parse_field(v: &Value, path: &str) -> Result<ScalarField> {
    let obj = object(v, path)?;
    let kind = obj
        .get("kind")
        .ok_or_else(|| schema(&format!("{path}.kind"), "missing field kind"))?
        .as_str()
        .ok_or_else(|| schema(&format!("{path}.kind"), "expected a string"))?;
    match kind {
        "constant" => Ok(ScalarField::constant(number(obj, "value", path)?)),
        "polynomial" => {
            let c = numbers(obj, "coefficients", path)?;
            if c.is_empty() {
                return Err(schema(&format!("{path}.coefficients"), "needs at least one coefficient"));
            }
            Ok(ScalarField::polynomial(c))
        }
        "sinusoid" => ScalarField::sinusoid(
            number_or(obj, "offset", path, 0.0)?,
            number(obj, "amplitude", path)?,
            number(obj, "frequency", path)?,
            number_or(obj, "phase", path, 0.0)?,
        )
        .map_err(|e| invariant(path, e)),
        "table" => ScalarField::table(numbers(obj, "knots", path)?, numbers(obj, "values", path)?)
            .map_err(|e| invariant(path, e)),
        "quotient" => {
            let num = obj.get("numerator").ok_or_else(|| schema(&format!("{path}.numerator"), "missing field"))?;
            let den = obj
                .get("denominator")
                .ok_or_else(|| schema(&format!("{path}.denominator"), "missing field"))?;
            Ok(ScalarField::quotient(
                parse_field(num, &format!("{path}.numerator"))?,
                parse_field(den, &format!("{path}.denominator"))?,
            ))
        }
        "expression" => {
            let p = format!("{path}.expr");
            let text = obj
                .get("expr")
                .and_then(Value::as_str)
                .ok_or_else(|| schema(&p, "expected an expression string"))?;
            ScalarField::parse_expression(text).map_err(|e| schema(&p, e.to_string()))
        }
        "slant-torsion" => Err(schema(
            &format!("{path}.kind"),
            "slant-torsion is only allowed for tau at the top level",
        )),
        other => Err(schema(&format!("{path}.kind"), format!("unknown field kind `{other}`"))),
    }
}

fn parse_domain(root: &Map<String, Value>) -> Result<Interval> {
    let arr = root
        .get("domain")
        .ok_or_else(|| schema("domain", "missing domain"))?
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| schema("domain", "expected [s_min, s_max]"))?;
    let get = |i: usize| {
        arr[i]
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| schema(&format!("domain[{i}]"), "expected a finite number"))
    };
    Interval::new(get(0)?, get(1)?).map_err(|e| invariant("domain", e))
}

/// Parses and validates a profile document
/// `{"kappa": field, "tau": field, "domain": [s_min, s_max]}`.
///
/// `tau` may also be `{"kind": "slant-torsion", "m": m, "sign": 1 | -1}`, which
/// builds the slant-helix torsion from `kappa` anchored at `s_min`.
pub fn parse_profile_file(text: &str) -> Result<IntrinsicProfile> {
    let root: Value = serde_json::from_str(text).map_err(|e| IoError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let root = object(&root, "$")?;
    let domain = parse_domain(root)?;
    let kappa = parse_field(root.get("kappa").ok_or_else(|| schema("kappa", "missing field"))?, "kappa")?;
    let tau_value = root.get("tau").ok_or_else(|| schema("tau", "missing field"))?;
    let tau_obj = object(tau_value, "tau")?;
    let tau = if tau_obj.get("kind").and_then(Value::as_str) == Some("slant-torsion") {
        let m = number(tau_obj, "m", "tau")?;
        let sign = number_or(tau_obj, "sign", "tau", 1.0)?;
        let sign = Sign::from_f64(sign).ok_or_else(|| schema("tau.sign", "expected 1 or -1"))?;
        slant_torsion_from_curvature(&kappa, m, sign, domain).map_err(|e| invariant("tau", e))?
    } else {
        parse_field(tau_value, "tau")?
    };
    IntrinsicProfile::new(kappa, tau, domain).map_err(|e| invariant("$", e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::approx_constant)]
    fn circle_profile() {
        let p = parse_profile_file(
            r#"{"kappa":{"kind":"constant","value":1},"tau":{"kind":"constant","value":0},"domain":[0,6.2832]}"#,
        )
        .unwrap();
        assert_eq!(p.eval(3.0).unwrap(), (1.0, 0.0));
        assert_eq!(p.domain().end, 6.2832);
    }

    #[test]
    fn slant_torsion_profile() {
        let p = parse_profile_file(
            r#"{"kappa":{"kind":"constant","value":1},"tau":{"kind":"slant-torsion","m":1.3333,"sign":1},"domain":[0,0.7]}"#,
        )
        .unwrap();
        let (k, t) = p.eval(0.5).unwrap();
        let x: f64 = 1.3333 * 0.5;
        assert_eq!(k, 1.0);
        assert!((t - x / (1.0 - x * x).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn every_field_kind_parses() {
        let text = r#"{
            "kappa": {"kind":"quotient",
                      "numerator":{"kind":"sinusoid","offset":2,"amplitude":0.5,"frequency":3},
                      "denominator":{"kind":"polynomial","coefficients":[1,0,1]}},
            "tau": {"kind":"table","knots":[0,0.5,1],"values":[0,1,0.5]},
            "domain": [0, 1]
        }"#;
        let p = parse_profile_file(text).unwrap();
        let (k, t) = p.eval(0.5).unwrap();
        assert!((k - (2.0 + 0.5 * 1.5f64.sin()) / 1.25).abs() < 1e-15);
        assert_eq!(t, 1.0);
        let e = parse_profile_file(
            r#"{"kappa":{"kind":"expression","expr":"1+s^2"},"tau":{"kind":"constant","value":0},"domain":[0,1]}"#,
        )
        .unwrap();
        assert_eq!(e.eval(1.0).unwrap().0, 2.0);
    }

    #[test]
    fn errors_are_classified() {
        let missing = parse_profile_file(r#"{"kappa":{"kind":"constant","value":1},"tau":{"kind":"constant","value":0}}"#);
        assert_eq!(missing.unwrap_err().kind(), "SchemaError");

        let bad = parse_profile_file("{\n  \"kappa\": ,\n}").unwrap_err();
        match bad {
            IoError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }

        let neg = parse_profile_file(
            r#"{"kappa":{"kind":"constant","value":-1},"tau":{"kind":"constant","value":0},"domain":[0,1]}"#,
        )
        .unwrap_err();
        assert_eq!(neg.kind(), "ProfileInvariantViolation");

        let nested = parse_profile_file(
            r#"{"kappa":{"kind":"quotient","numerator":{"kind":"constant"},"denominator":{"kind":"constant","value":1}},"tau":{"kind":"constant","value":0},"domain":[0,1]}"#,
        )
        .unwrap_err();
        match nested {
            IoError::Schema { path, .. } => assert_eq!(path, "kappa.numerator.value"),
            other => panic!("{other:?}"),
        }

        let expr = parse_profile_file(
            r#"{"kappa":{"kind":"expression","expr":"1+foo"},"tau":{"kind":"constant","value":0},"domain":[0,1]}"#,
        )
        .unwrap_err();
        assert_eq!(expr.kind(), "SchemaError");

        let slant = parse_profile_file(
            r#"{"kappa":{"kind":"constant","value":1},"tau":{"kind":"slant-torsion","m":2,"sign":1},"domain":[0,1]}"#,
        )
        .unwrap_err();
        assert_eq!(slant.kind(), "ProfileInvariantViolation");
    }
}
