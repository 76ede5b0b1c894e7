use num_bigint::BigInt;
use num_traits::One;

use super::kernel::Kernel;
use super::{IntegralForm, IntegralSpec, ZPoint};
use crate::binomderiv::{central_binom_deriv, shifted_deriv_poly, DerivSpec, KSeries};
use crate::error::{Error, Result};
use crate::numerics::NumericConfig;
use crate::symbolic::{Rational, SymbolicValue};

/// Numeric remainder of a result whose k-sums fall outside the catalog.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub value: f64,
    pub error: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormResult {
    /// The exact value, or the exactly resolvable part when `exact` is false.
    pub value: SymbolicValue,
    pub exact: bool,
    pub residual: Option<Residual>,
}

impl ClosedFormResult {
    fn exact(value: SymbolicValue) -> Self {
        Self {
            value,
            exact: true,
            residual: None,
        }
    }

    pub fn numeric(&self, cfg: &NumericConfig) -> Result<f64> {
        let v = self.value.eval_numeric(cfg)?;
        Ok(v + self.residual.as_ref().map_or(0.0, |r| r.value))
    }

    pub fn error_estimate(&self) -> f64 {
        self.residual.as_ref().map_or(0.0, |r| r.error)
    }

    fn scale(mut self, c: &Rational) -> Self {
        self.value = self.value.scale(c);
        let cf = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN);
        if let Some(r) = self.residual.as_mut() {
            r.value *= cf;
            r.error *= cf.abs();
        }
        self
    }
}

/// Whether the closed form at (n, p, z) is exact: either no k-series
/// appears, or p ≤ 2 so every k-sum is a catalogued Euler sum.
pub fn is_exact_domain(n: u32, p: u32, z: ZPoint) -> Result<bool> {
    Ok(p <= 2 || !Kernel::new(n, z)?.has_k_series())
}

/// `A·D(p) + Σ_k C^{(p)}(0) W(k)` for the kernel at `z`.
fn assemble(
    n: u32,
    p: u32,
    z: ZPoint,
    scaled: bool,
    cfg: &NumericConfig,
) -> Result<ClosedFormResult> {
    let kernel = Kernel::new(n, z)?;
    let central = central_binom_deriv(DerivSpec::new(p, 0, scaled))?;
    let mut value = &kernel.a * &central;
    if !kernel.has_k_series() || p == 0 {
        return Ok(ClosedFormResult::exact(value));
    }
    // C^{(p)}(0) = (−1)^k P(k), so the sign pattern of each kernel term flips.
    let poly = shifted_deriv_poly(p, scaled)?;
    let mut series = KSeries::default();
    for t in &kernel.w {
        series.add_poly(!t.alternating, &poly.shift_inv(t.kpow).scale(&t.coef));
    }
    let (resolved, missing) = series.resolve_exact();
    value = value + resolved;
    if missing.is_empty() {
        return Ok(ClosedFormResult::exact(value));
    }
    if is_exact_domain(n, p, z)? {
        return Err(Error::Contract(format!(
            "catalog miss inside the declared exact domain: {}",
            missing[0].reason
        )));
    }
    let (rv, re) = KSeries::numeric_unresolved(&missing, cfg)?;
    let reason = missing
        .iter()
        .map(|u| u.reason.to_string())
        .collect::<Vec<_>>()
        .join("; ");
    Ok(ClosedFormResult {
        value,
        exact: false,
        residual: Some(Residual {
            value: rv,
            error: re,
            reason,
        }),
    })
}

fn pow2(e: i64) -> Rational {
    let b = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(b)
    } else {
        Rational::new(BigInt::one(), b)
    }
}

/// ∫₀ᶻ xⁿ logᵖ(sin x) dx for z ∈ {π/2, π}.
pub fn xlogsin_closed_form(n: u32, p: u32, z: ZPoint) -> Result<ClosedFormResult> {
    xlogsin_closed_form_with(n, p, z, &NumericConfig::default())
}

pub fn xlogsin_closed_form_with(
    n: u32,
    p: u32,
    z: ZPoint,
    cfg: &NumericConfig,
) -> Result<ClosedFormResult> {
    match z {
        ZPoint::HalfPi | ZPoint::Pi => Ok(assemble(n, p, z, true, cfg)?.scale(&pow2(-(p as i64)))),
        other => Err(Error::Unsupported(format!(
            "no log-sine closed form at z = {other}"
        ))),
    }
}

/// Ls_{p+n+1}^{(n)}(θ) for θ ∈ {π, 2π}.
pub fn ls_value(p: u32, n: u32, theta: ZPoint) -> Result<ClosedFormResult> {
    ls_value_with(p, n, theta, &NumericConfig::default())
}

pub fn ls_value_with(
    p: u32,
    n: u32,
    theta: ZPoint,
    cfg: &NumericConfig,
) -> Result<ClosedFormResult> {
    let half = theta.half()?;
    let r = assemble(n, p, half, false, cfg)?;
    Ok(r.scale(&-pow2(n as i64 + 1 - p as i64)))
}

/// Ls_{p+n+1}^{(n)}(z) = (−1)^{p+1} z^{n+1}/(2^p (n+1)) · B_p(0, η̄₂, …, η̄_p),
/// valid for z = 2π with n ∈ {0, 1} and for z = π with n = 0.
pub fn ls_simple_closed(p: u32, z: ZPoint, n: u32) -> Result<SymbolicValue> {
    let valid = matches!((z, n), (ZPoint::TwoPi, 0 | 1) | (ZPoint::Pi, 0));
    if !valid {
        return Err(Error::Contract(format!(
            "the central-term formula does not hold at z = {z}, n = {n}; use ls_value"
        )));
    }
    let zs = z.symbolic().expect("rational multiple of pi");
    // (−1)^p D(p) = B_p(0, η̄₂, …)
    let d = central_binom_deriv(DerivSpec::new(p, 0, false))?;
    let bell = if p.is_multiple_of(2) { d } else { -d };
    let sign = if p % 2 == 1 { 1 } else { -1 };
    let c = pow2(-(p as i64)) * Rational::new(sign.into(), (n + 1).into());
    Ok((zs.pow(n + 1) * bell).scale(&c))
}

/// Dispatches an [`IntegralSpec`] to the matching closed form.
pub fn closed_form(spec: &IntegralSpec, cfg: &NumericConfig) -> Result<ClosedFormResult> {
    match spec.form {
        IntegralForm::PlainLogSin => xlogsin_closed_form_with(spec.n, spec.p, spec.z, cfg),
        IntegralForm::LsNormalized => ls_value_with(spec.p, spec.n, spec.z, cfg),
    }
}
