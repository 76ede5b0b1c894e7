//! m-derivatives at m = 0 of binom(2m, m+k) and 4^{−m}·binom(2m, m+k).

mod kseries;

pub use kseries::{
    monomial_sum, shifted_deriv_poly, xi_bar_poly, KMonomial, KPoly, KSeries, NumericKPoly,
    Unresolved,
};

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::bell::{bell_x, binomial, x_sequence};
use crate::error::{domain, Error, Result};
use crate::numerics::{
    ln_gamma, polygamma_real, zeta_real, NumericConfig, PowerSeries, EULER_GAMMA,
};
use crate::specialfn::{factorial, polygamma_int};
use crate::symbolic::{Generator, Rational, SymbolicValue};

/// Request for d^p/dm^p at m = 0 of binom(2m, m+k), optionally times 4^{−m}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DerivSpec {
    pub p: u32,
    pub k: u64,
    pub scaled: bool,
}

impl DerivSpec {
    pub fn new(p: u32, k: u64, scaled: bool) -> Self {
        Self { p, k, scaled }
    }
}

/// Δ_j(m) = (−1)^j [2^j ψ^{(j−1)}(2m+1) − ψ^{(j−1)}(m+1+k) − ψ^{(j−1)}(m+1−k)].
pub fn delta_numeric(j: u32, m: f64, k: u64) -> Result<f64> {
    if j == 0 {
        return domain("delta index starts at 1");
    }
    let kf = k as f64;
    let args = [2.0 * m + 1.0, m + 1.0 + kf, m + 1.0 - kf];
    if args.iter().any(|&a| !(a > 0.0)) {
        return domain(format!(
            "delta_numeric({j}, {m}, {k}) needs positive polygamma arguments; use the symbolic path at m = 0"
        ));
    }
    let o = j - 1;
    let v = 2f64.powi(j as i32) * polygamma_real(o, args[0])?
        - polygamma_real(o, args[1])?
        - polygamma_real(o, args[2])?;
    Ok(if j.is_multiple_of(2) { v } else { -v })
}

/// η̄_j = (−1)^j (2^j − 2) ψ^{(j−1)}(1); η̄₁ = 0.
pub fn eta_bar(j: u32) -> Result<SymbolicValue> {
    if j == 0 {
        return domain("eta_bar index starts at 1");
    }
    if j == 1 {
        return Ok(SymbolicValue::zero());
    }
    let psi = polygamma_int(j - 1, 1)?.value().clone();
    let c = Rational::from_integer((num_bigint::BigInt::from(1) << j) - 2);
    let c = if j.is_multiple_of(2) { c } else { -c };
    Ok(psi.scale(&c))
}

fn xi_cache() -> &'static Mutex<HashMap<(u32, u64), SymbolicValue>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u64), SymbolicValue>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// ξ̄_j = (−2)^j ψ^{(j−1)}(1) + 2[j odd] ψ^{(j−1)}(k) − 2[j even] ψ^{(j−1)}(1) + (j−1)!/k^j.
///
/// For j = 1 the γ-carrying pieces combine into 2(ψ(k) − ψ(1)) = 2H_{k−1}.
pub fn xi_bar(j: u32, k: u64) -> Result<SymbolicValue> {
    if j == 0 {
        return domain("xi_bar index starts at 1");
    }
    if k == 0 {
        return Err(Error::Contract(
            "xi_bar needs k >= 1; use eta_bar for k = 0".into(),
        ));
    }
    if let Some(v) = xi_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&(j, k))
    {
        return Ok(v.clone());
    }
    let ki = k as i64;
    let psi1 = |o: u32| polygamma_int(o, 1).map(|v| v.value().clone());
    let tail = SymbolicValue::from_rational(
        Rational::from_integer(factorial(j - 1))
            / Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(k), j as usize)),
    );
    let v = if j == 1 {
        polygamma_int(0, ki)?.value().scale_int(2) + tail
    } else {
        let sign_pow = if j.is_multiple_of(2) { 1 } else { -1 };
        let lead = psi1(j - 1)?.scale(&Rational::from_integer(
            num_bigint::BigInt::from(sign_pow) << j,
        ));
        if j % 2 == 1 {
            lead + polygamma_int(j - 1, ki)?.value().scale_int(2) + tail
        } else {
            lead - psi1(j - 1)?.scale_int(2) + tail
        }
    };
    xi_cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert((j, k), v.clone());
    Ok(v)
}

/// ρ_n from the recursion
/// ρ_n = (−1)^{n+1}(π^{2n}/(2n+1) + Σ_{i<n} C(2n−1, 2i−1)(−1)^i π^{2n−2i}/(2n−2i+1) ρ_i).
pub fn rho(n: u32) -> Result<SymbolicValue> {
    if n == 0 {
        return domain("rho index starts at 1");
    }
    let mut rhos: Vec<SymbolicValue> = Vec::with_capacity(n as usize);
    for m in 1..=n {
        let mut acc =
            SymbolicValue::pi_pow(2 * m).scale(&Rational::new(1.into(), (2 * m + 1).into()));
        for i in 1..m {
            let c = binomial(2 * m as u64 - 1, 2 * i as u64 - 1) as i64;
            let c = if i % 2 == 0 { c } else { -c };
            let w = SymbolicValue::pi_pow(2 * m - 2 * i)
                .scale(&Rational::new(c.into(), (2 * m - 2 * i + 1).into()));
            acc = acc + w * &rhos[i as usize - 1];
        }
        rhos.push(if m % 2 == 1 { acc } else { -acc });
    }
    Ok(rhos.pop().expect("n >= 1"))
}

/// The α-sequence of the Thm-4 rearrangement: α_{2i} = −ρ_i, α_odd = 0.
pub fn alpha_sequence(n: u32) -> Result<Vec<SymbolicValue>> {
    (1..=n)
        .map(|i| {
            if i % 2 == 1 {
                Ok(SymbolicValue::zero())
            } else {
                rho(i / 2).map(|r| -r)
            }
        })
        .collect()
}

/// x_i over the α-sequence, i = 0..=n.
pub fn alpha_x_sequence(n: u32) -> Result<Vec<SymbolicValue>> {
    Ok(x_sequence(&alpha_sequence(n)?))
}

/// C^{(p)}(0) = ((−1)^{p+k}/k) · p · B_{p−1}(ξ̄₁ [+ log 4], ξ̄₂, …, ξ̄_{p−1}) for k ≥ 1.
pub fn shifted_binom_deriv(spec: DerivSpec) -> Result<SymbolicValue> {
    if spec.k == 0 {
        return Err(Error::Contract(
            "shifted_binom_deriv needs k >= 1; use central_binom_deriv".into(),
        ));
    }
    if spec.p == 0 {
        return Ok(SymbolicValue::zero());
    }
    let mut xi = Vec::with_capacity(spec.p as usize - 1);
    for j in 1..spec.p {
        let mut v = xi_bar(j, spec.k)?;
        if j == 1 && spec.scaled {
            v = v + SymbolicValue::generator(Generator::Log2).scale_int(2);
        }
        xi.push(v);
    }
    let b = bell_x(&xi);
    let sign = if (spec.p as u64 + spec.k).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Ok(b.scale(&Rational::new(
        (sign * spec.p as i64).into(),
        (spec.k as i64).into(),
    )))
}

/// d^p/dm^p binom(2m, m)|₀ = (−1)^p B_p(0, η̄₂, …, η̄_p); the scaled form
/// replaces the leading 0 by log 4.
pub fn central_binom_deriv(spec: DerivSpec) -> Result<SymbolicValue> {
    if spec.k != 0 {
        return Err(Error::Contract("central_binom_deriv needs k = 0".into()));
    }
    let mut s = Vec::with_capacity(spec.p as usize);
    for j in 1..=spec.p {
        s.push(if j == 1 {
            if spec.scaled {
                SymbolicValue::generator(Generator::Log2).scale_int(2)
            } else {
                SymbolicValue::zero()
            }
        } else {
            eta_bar(j)?
        });
    }
    let b = bell_x(&s);
    Ok(if spec.p.is_multiple_of(2) { b } else { -b })
}

/// Dispatches on k.
pub fn binom_deriv(spec: DerivSpec) -> Result<SymbolicValue> {
    if spec.k == 0 {
        central_binom_deriv(spec)
    } else {
        shifted_binom_deriv(spec)
    }
}

/// logΓ(1+x) − its value at 0, as a series in x.
fn ln_gamma_one_plus(order: usize, cfg: &NumericConfig) -> Result<PowerSeries> {
    let mut c = vec![0.0, -EULER_GAMMA];
    for j in 2..=order {
        let z = zeta_real(j as f64, cfg)?;
        c.push(if j % 2 == 0 { z } else { -z } / j as f64);
    }
    Ok(PowerSeries::new(c, order))
}

/// `p!·[m^p]` of the power series of C(m) (or 4^{−m}C(m)) at m = 0, built
/// from logΓ expansions; for k ≥ 1 the reflection form
/// C(m) = (−1)^{k+1} (sin πm/π) Γ(2m+1) Γ(k−m)/Γ(m+1+k) isolates the zero.
pub fn taylor_oracle(spec: DerivSpec, order: u32, cfg: &NumericConfig) -> Result<f64> {
    if order < spec.p {
        return Err(Error::Contract(format!(
            "taylor_oracle order {order} < p = {}",
            spec.p
        )));
    }
    let n = order as usize;
    let lg = ln_gamma_one_plus(n, cfg)?;
    let mut log_series = lg.compose_scalar(2.0);
    let mut prefactor = PowerSeries::constant(1.0, n);
    if spec.k == 0 {
        log_series = log_series.sub(&lg.scale(2.0))?;
    } else {
        let k = spec.k as f64;
        // logΓ(k−m) − logΓ(k+1+m) + log k
        let mut c = vec![0.0];
        let mut fact = 1.0;
        for j in 1..=n {
            fact *= j as f64;
            let a = polygamma_real(j as u32 - 1, k)?;
            let b = polygamma_real(j as u32 - 1, k + 1.0)?;
            let a = if j % 2 == 0 { a } else { -a };
            c.push((a - b) / fact);
        }
        log_series = log_series.add(&PowerSeries::new(c, n))?;
        // (−1)^{k+1} (1/k) sin(πm)/π
        let sign = if spec.k % 2 == 1 { 1.0 } else { -1.0 };
        let pi = std::f64::consts::PI;
        let mut s = vec![0.0; n + 1];
        let mut term = 1.0;
        for i in 0.. {
            let e = 2 * i + 1;
            if e > n {
                break;
            }
            s[e] = sign * term / k;
            term *= -pi * pi / ((e + 1) * (e + 2)) as f64;
        }
        prefactor = PowerSeries::new(s, n);
    }
    if spec.scaled {
        log_series = log_series.add(&PowerSeries::new(
            vec![0.0, -2.0 * std::f64::consts::LN_2],
            n,
        ))?;
    }
    let series = prefactor.mul(&log_series.exp())?;
    Ok(series.derivative_at_zero(spec.p as usize))
}

/// binom(2m, m+k) for real m with all Γ arguments positive.
pub fn binom_real(m: f64, k: u64) -> Result<f64> {
    let kf = k as f64;
    if !(m + 1.0 - kf > 0.0) || !(2.0 * m + 1.0 > 0.0) {
        return domain(format!(
            "binom_real({m}, {k}) outside the positive-argument domain"
        ));
    }
    Ok((ln_gamma(2.0 * m + 1.0)? - ln_gamma(m + 1.0 + kf)? - ln_gamma(m + 1.0 - kf)?).exp())
}

/// C^{(p)}(m₀) = (−1)^p C(m₀) B_p(Δ₁(m₀), …, Δ_p(m₀)), valid where every
/// polygamma argument is positive (m₀ > k − 1).
pub fn general_m_deriv_numeric(p: u32, m0: f64, k: u64) -> Result<f64> {
    let c = binom_real(m0, k)?;
    let deltas: Vec<f64> = (1..=p)
        .map(|j| delta_numeric(j, m0, k))
        .collect::<Result<_>>()?;
    let b = bell_x(&deltas);
    Ok(if p.is_multiple_of(2) { c * b } else { -c * b })
}

/// `2·ψ^{(2n−1)}(1)`, the closed form of ρ_n.
pub fn rho_closed_form(n: u32) -> Result<SymbolicValue> {
    if n == 0 {
        return domain("rho index starts at 1");
    }
    Ok(polygamma_int(2 * n - 1, 1)?.value().scale_int(2))
}

/// `(−1)^i π^{2i}/(2i+1)` for even index 2i, zero for odd.
pub fn parity_claim_value(index: u32) -> SymbolicValue {
    if index % 2 == 1 {
        return SymbolicValue::zero();
    }
    let i = index / 2;
    let c = if i.is_multiple_of(2) { 1 } else { -1 };
    SymbolicValue::pi_pow(index).scale(&Rational::new(c.into(), (index + 1).into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{richardson_derivative, richardson_derivative_step};
    use crate::symbolic::{int, rat};

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    fn sym(s: &str) -> SymbolicValue {
        s.parse().unwrap()
    }

    #[test]
    fn delta_examples() {
        assert!(delta_numeric(1, 0.0, 0).unwrap().abs() < 1e-14);
        let pi2 = std::f64::consts::PI.powi(2);
        assert!((delta_numeric(2, 0.0, 0).unwrap() - pi2 / 3.0).abs() < 1e-12);
        assert!((delta_numeric(1, 1.0, 1).unwrap() + 1.5).abs() < 1e-12);
        assert!(delta_numeric(1, 0.0, 1).is_err());
    }

    #[test]
    fn lemma1_derivative_shift() {
        for (m0, k) in [(0.25, 0u64), (1.5, 1)] {
            for j in 1..=3 {
                let d = richardson_derivative_step(
                    |m| delta_numeric(j, m, k).unwrap(),
                    m0,
                    1,
                    0.05,
                    &cfg(),
                )
                .unwrap();
                let next = delta_numeric(j + 1, m0, k).unwrap();
                assert!(
                    (d.value + next).abs() <= 1e-6,
                    "j={j} m0={m0}: {} vs {}",
                    d.value,
                    -next
                );
            }
        }
    }

    #[test]
    fn xi_bar_examples() {
        assert_eq!(
            xi_bar(1, 2).unwrap(),
            SymbolicValue::from_rational(rat(5, 2))
        );
        for k in 1..=5u64 {
            let expected = sym("1/3*pi^2") + SymbolicValue::from_rational(rat(1, (k * k) as i64));
            assert_eq!(xi_bar(2, k).unwrap(), expected);
            for j in 1..=6 {
                assert_eq!(
                    xi_bar(j, k).unwrap(),
                    xi_bar_poly(j, false).unwrap().at(k).unwrap(),
                    "j={j} k={k}"
                );
            }
        }
        assert!(xi_bar(1, 0).is_err());
    }

    #[test]
    fn eta_bar_examples() {
        assert!(eta_bar(1).unwrap().is_zero());
        assert_eq!(eta_bar(2).unwrap(), sym("1/3*pi^2"));
        assert_eq!(eta_bar(3).unwrap(), sym("12*zeta3"));
    }

    #[test]
    fn lemma3_recursion_matches_closed_form() {
        assert_eq!(rho(1).unwrap(), sym("1/3*pi^2"));
        assert_eq!(rho(2).unwrap(), sym("2/15*pi^4"));
        assert_eq!(rho(3).unwrap(), sym("240/945*pi^6"));
        for n in 1..=6 {
            assert_eq!(rho(n).unwrap(), rho_closed_form(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn parity_claim() {
        let x = alpha_x_sequence(9).unwrap();
        for (i, xi) in x.iter().enumerate() {
            assert_eq!(xi, &parity_claim_value(i as u32), "i={i}");
        }
    }

    #[test]
    fn displayed_low_derivatives() {
        for k in 1..=6u64 {
            let ki = k as i64;
            let sk = if k % 2 == 0 { 1 } else { -1 };
            let h = crate::specialfn::harmonic(k, 1);
            let xi1 = SymbolicValue::from_rational(&h * int(2) - rat(1, ki));
            let inv2 = SymbolicValue::from_rational(rat(1, ki * ki));
            let d1 = shifted_binom_deriv(DerivSpec::new(1, k, false)).unwrap();
            assert_eq!(d1, SymbolicValue::from_rational(rat(-sk, ki)));
            let d2 = shifted_binom_deriv(DerivSpec::new(2, k, false)).unwrap();
            assert_eq!(d2, xi1.scale(&rat(2 * sk, ki)));
            let psi1 = sym("1/6*pi^2");
            let d3 = shifted_binom_deriv(DerivSpec::new(3, k, false)).unwrap();
            let inner = xi1.pow(2) + inv2.clone() + psi1.scale_int(2);
            assert_eq!(d3, inner.scale(&rat(-3 * sk, ki)));
            let d4 = shifted_binom_deriv(DerivSpec::new(4, k, false)).unwrap();
            let psi2k = polygamma_int(2, ki).unwrap().value().clone();
            let psi21 = polygamma_int(2, 1).unwrap().value().clone();
            let inner = xi1.pow(3)
                + (&xi1 * &(psi1.scale_int(2) + inv2)).scale_int(3)
                + psi2k.scale_int(2)
                + SymbolicValue::from_rational(rat(2, ki * ki * ki))
                - psi21.scale_int(8);
            assert_eq!(d4, inner.scale(&rat(4 * sk, ki)), "k={k}");
        }
        assert!(shifted_binom_deriv(DerivSpec::new(0, 3, false))
            .unwrap()
            .is_zero());
        assert!(shifted_binom_deriv(DerivSpec::new(2, 0, false)).is_err());
    }

    #[test]
    fn central_examples() {
        let d = |p, scaled| central_binom_deriv(DerivSpec::new(p, 0, scaled)).unwrap();
        assert_eq!(d(0, false), SymbolicValue::one());
        assert!(d(1, false).is_zero());
        assert_eq!(d(1, true), sym("-2*log2"));
        assert_eq!(d(2, false), sym("1/3*pi^2"));
        assert_eq!(d(2, true), sym("4*log2^2 + 1/3*pi^2"));
        assert_eq!(d(3, false), sym("-12*zeta3"));
        assert!(central_binom_deriv(DerivSpec::new(2, 1, false)).is_err());
    }

    #[test]
    fn poly_path_agrees_with_direct_path() {
        for p in 0..=6 {
            for k in 1..=5u64 {
                for scaled in [false, true] {
                    let direct = shifted_binom_deriv(DerivSpec::new(p, k, scaled)).unwrap();
                    let poly = shifted_deriv_poly(p, scaled).unwrap().at(k).unwrap();
                    let poly = if k % 2 == 0 { poly } else { -poly };
                    assert_eq!(direct, poly, "p={p} k={k} scaled={scaled}");
                }
            }
        }
    }

    #[test]
    fn shifted_matches_taylor_oracle() {
        let c = cfg();
        for p in 1..=5 {
            for k in 1..=4u64 {
                for scaled in [false, true] {
                    let spec = DerivSpec::new(p, k, scaled);
                    let exact = shifted_binom_deriv(spec).unwrap().eval_numeric(&c).unwrap();
                    let oracle = taylor_oracle(spec, 6, &c).unwrap();
                    assert!(
                        (exact - oracle).abs() < 1e-8 * (1.0 + exact.abs()),
                        "{spec:?}: {exact} vs {oracle}"
                    );
                }
            }
        }
        let one_third = taylor_oracle(DerivSpec::new(1, 3, false), 3, &c).unwrap();
        assert!((one_third - 1.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn central_matches_taylor_oracle() {
        let c = cfg();
        for p in 0..=6 {
            for scaled in [false, true] {
                let spec = DerivSpec::new(p, 0, scaled);
                let exact = central_binom_deriv(spec).unwrap().eval_numeric(&c).unwrap();
                let oracle = taylor_oracle(spec, 6, &c).unwrap();
                assert!(
                    (exact - oracle).abs() < 1e-8 * (1.0 + exact.abs()),
                    "{spec:?}: {exact} vs {oracle}"
                );
            }
        }
        assert!(taylor_oracle(DerivSpec::new(4, 0, false), 3, &c).is_err());
    }

    #[test]
    fn general_m_examples() {
        assert!((general_m_deriv_numeric(0, 3.0, 1).unwrap() - 15.0).abs() < 1e-10);
        let central = |m: f64| binom_real(m, 0).unwrap();
        let fd = richardson_derivative(central, 2.0, 1, &cfg()).unwrap();
        assert!((general_m_deriv_numeric(1, 2.0, 0).unwrap() - fd.value).abs() < 1e-7);
        let shifted = |m: f64| binom_real(m, 1).unwrap();
        let fd = richardson_derivative(shifted, 1.5, 2, &cfg()).unwrap();
        assert!((general_m_deriv_numeric(2, 1.5, 1).unwrap() - fd.value).abs() < 1e-6);
        assert!(general_m_deriv_numeric(1, 0.0, 1).is_err());
    }
}
