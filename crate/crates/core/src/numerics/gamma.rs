use std::sync::OnceLock;

use num_traits::ToPrimitive;

use super::{accelerate_alternating_with_error, NumericConfig};
use crate::error::{domain, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const ASYMPTOTIC_TERMS: usize = 12;
const SHIFT_TO: f64 = 20.0;

/// B_2, B_4, … as floats.
fn bernoulli_even() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (1..=ASYMPTOTIC_TERMS)
            .map(|k| crate::specialfn::bernoulli(2 * k as u32).to_f64().unwrap())
            .collect()
    })
}

/// ψ^(order)(x) for real x > 0: upward recurrence to x ≥ 20, then the
/// Bernoulli asymptotic series.
pub fn polygamma_real(order: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("polygamma argument must be positive, got {x}"));
    }
    let n = order as i32;
    let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
    let nfact: f64 = (1..=order).map(f64::from).product();

    // ψ^(n)(x) = ψ^(n)(x+1) − (−1)^n n!/x^{n+1}
    let mut x = x;
    let mut shift = 0.0;
    while x < SHIFT_TO {
        shift += sign * nfact / x.powi(n + 1);
        x += 1.0;
    }

    let tail: f64 = if order == 0 {
        let x2 = x * x;
        let mut acc = x.ln() - 0.5 / x;
        let mut xp = x2;
        for (k, b) in bernoulli_even().iter().enumerate() {
            acc -= b / (2.0 * (k + 1) as f64 * xp);
            xp *= x2;
        }
        acc
    } else {
        let nm1_fact = nfact / order as f64;
        let mut acc = nm1_fact / x.powi(n) + nfact / (2.0 * x.powi(n + 1));
        for (k, b) in bernoulli_even().iter().enumerate() {
            let twok = 2 * (k + 1) as u32;
            // (2k+n−1)!/(2k)!
            let ratio: f64 = (twok + 1..twok + order).map(f64::from).product();
            acc += b * ratio / x.powi(twok as i32 + n);
        }
        -sign * acc
    };
    Ok(tail - shift)
}

/// log Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("ln_gamma argument must be positive, got {x}"));
    }
    Ok(libm::lgamma(x))
}

/// ζ(s) for real s > 0, s ≠ 1, through the accelerated alternating η-series.
pub fn zeta_real(s: f64, cfg: &NumericConfig) -> Result<f64> {
    if !(s > 0.0) || s == 1.0 {
        return domain(format!("zeta_real needs s > 0, s != 1, got {s}"));
    }
    let fine = cfg.with_tol(1e-16);
    let (eta, _) = accelerate_alternating_with_error(|k| (k as f64).powf(-s), &fine)?;
    Ok(eta / (1.0 - 2f64.powf(1.0 - s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polygamma_at_one_and_two() {
        assert!((polygamma_real(1, 1.0).unwrap() - PI * PI / 6.0).abs() < 1e-12);
        assert!((polygamma_real(0, 2.0).unwrap() - (1.0 - EULER_GAMMA)).abs() < 1e-12);
        assert!((polygamma_real(0, 1.0).unwrap() + EULER_GAMMA).abs() < 1e-14);
    }

    #[test]
    fn polygamma_brute_force_series() {
        // ψ''(x) = −2 Σ 1/(k+x)^3
        let mut s = 0.0;
        let n = 200_000u64;
        for k in (0..n).rev() {
            s += 1.0 / (k as f64 + 0.5).powi(3);
        }
        // tail ∫_{n}^{∞} dt/(t+0.5)^3 with midpoint correction
        let tail = 0.5 / (n as f64).powi(2);
        let direct = -2.0 * (s + tail);
        assert!((polygamma_real(2, 0.5).unwrap() - direct).abs() < 1e-10);
    }

    #[test]
    fn polygamma_recurrence() {
        for order in 0..=5u32 {
            let fact: f64 = (1..=order).map(f64::from).product();
            for &x in &[0.5, 1.0, 2.5] {
                let lhs =
                    polygamma_real(order, x + 1.0).unwrap() - polygamma_real(order, x).unwrap();
                let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
                let rhs = sign * fact / x.powi(order as i32 + 1);
                assert!((lhs - rhs).abs() < 1e-9, "order {order} x {x}");
            }
        }
    }

    #[test]
    fn polygamma_domain() {
        assert!(polygamma_real(0, 0.0).is_err());
        assert!(polygamma_real(3, -1.5).is_err());
    }

    #[test]
    fn ln_gamma_values() {
        assert!(ln_gamma(1.0).unwrap().abs() < 1e-14);
        assert!((ln_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-13);
        assert!((ln_gamma(0.5).unwrap() - PI.sqrt().ln()).abs() < 1e-13);
    }

    #[test]
    fn zeta_values() {
        let cfg = NumericConfig::default();
        assert!((zeta_real(2.0, &cfg).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta_real(3.0, &cfg).unwrap() - 1.2020569031595942).abs() < 1e-14);
        assert!(zeta_real(1.0, &cfg).is_err());
    }
}
