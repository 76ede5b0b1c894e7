//! Browser bindings for the static page in `www/`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use logsine::bell::bell_standard;
use logsine::binomderiv::{binom_deriv, DerivSpec};
use logsine::logsine::{closed_form, ls_general_z, Angle, IntegralForm, IntegralSpec, ZPoint};
use logsine::numerics::NumericConfig;
use logsine::{Error, Rational};

fn cfg() -> NumericConfig {
    NumericConfig::default().with_tol(1e-9)
}

/// Ls_{p+1}(z) = −∫₀ᶻ logᵖ(2 sin(x/2)) dx at `samples` evenly spaced points
/// of (0, 2π], flattened as [z₀, v₀, z₁, v₁, …].
pub fn ls_curve_points(p: u32, samples: u32) -> Result<Vec<f64>, Error> {
    if samples == 0 || samples > 2000 {
        return Err(Error::Domain(format!(
            "samples must lie in 1..=2000, got {samples}"
        )));
    }
    let c = cfg();
    let mut out = Vec::with_capacity(2 * samples as usize);
    for i in 1..=samples {
        let z = Angle::rational_pi(2 * i as i64, samples as i64)?;
        out.push(z.radians());
        out.push(ls_general_z(p, z, &c)?.value);
    }
    Ok(out)
}

pub fn closed_form_json(n: u32, p: u32, z: &str, ls_form: bool) -> Result<String, Error> {
    let angle: Angle = z.parse()?;
    let form = if ls_form {
        IntegralForm::LsNormalized
    } else {
        IntegralForm::PlainLogSin
    };
    let spec = IntegralSpec::new(n, p, ZPoint::from(angle), form)?;
    let c = cfg();
    let r = closed_form(&spec, &c)?;
    let (q, qe) = spec.quadrature(&c)?;
    let v = r.numeric(&c)?;
    let mut out = json!({
        "exact": r.value.to_string(),
        "complete": r.exact,
        "numeric": v,
        "quadrature": q,
        "quadrature_err": qe,
        "abs_err": (v - q).abs(),
    });
    if let Some(res) = &r.residual {
        out["residual"] = json!(res.value);
    }
    Ok(out.to_string())
}

/// `"1,1/2,-3"` → B₃(1, 1/2, −3) as an exact rational.
pub fn bell_json(seq: &str) -> Result<String, Error> {
    let s: Vec<Rational> = seq
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("not a rational: `{t}`")))
        })
        .collect::<Result<_, _>>()?;
    let b = bell_standard(&s);
    Ok(json!({ "n": s.len(), "value": b.to_string() }).to_string())
}

pub fn binom_deriv_json(p: u32, k: u32, scaled: bool) -> Result<String, Error> {
    let v = binom_deriv(DerivSpec::new(p, k as u64, scaled))?;
    let numeric: Value = json!(v.eval_numeric(&cfg())?);
    Ok(json!({ "exact": v.to_string(), "numeric": numeric }).to_string())
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn ls_curve(p: u32, samples: u32) -> Result<Vec<f64>, JsError> {
    ls_curve_points(p, samples).map_err(js)
}

#[wasm_bindgen]
pub fn evaluate_closed_form(n: u32, p: u32, z: &str, ls_form: bool) -> Result<String, JsError> {
    closed_form_json(n, p, z, ls_form).map_err(js)
}

#[wasm_bindgen]
pub fn bell(seq: &str) -> Result<String, JsError> {
    bell_json(seq).map_err(js)
}

#[wasm_bindgen]
pub fn binomial_derivative(p: u32, k: u32, scaled: bool) -> Result<String, JsError> {
    binom_deriv_json(p, k, scaled).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn curve_ends_at_zero() {
        // Ls₂(2π) = 0 and Ls₂(π/2) is Catalan's constant
        let pts = ls_curve_points(1, 8).unwrap();
        assert_eq!(pts.len(), 16);
        assert!((pts[14] - 2.0 * PI).abs() < 1e-15);
        assert!(pts[15].abs() < 1e-9);
        assert!((pts[3] - 0.915965594177219).abs() < 1e-9);
        assert!(ls_curve_points(1, 0).is_err());
    }

    #[test]
    fn closed_form_payload() {
        let v: Value = serde_json::from_str(&closed_form_json(1, 2, "pi", false).unwrap()).unwrap();
        assert_eq!(v["exact"], "1/24*pi^4 + 1/2*pi^2*log2^2");
        assert!(v["abs_err"].as_f64().unwrap() < 1e-9);
        let v: Value = serde_json::from_str(&closed_form_json(1, 2, "2pi", true).unwrap()).unwrap();
        assert_eq!(v["exact"], "-1/6*pi^4");
        assert!(closed_form_json(1, 2, "1.2", false).is_err());
    }

    #[test]
    fn bell_and_derivatives() {
        let v: Value = serde_json::from_str(&bell_json("1,1,1,1,1").unwrap()).unwrap();
        assert_eq!(v["value"], "52");
        assert!(bell_json("1,x").is_err());
        let v: Value = serde_json::from_str(&binom_deriv_json(2, 0, false).unwrap()).unwrap();
        assert_eq!(v["exact"], "1/3*pi^2");
    }
}
