use std::f64::consts::PI;

use crate::error::{Error, Result};

/// d^order/dk^order of π·cot(πk).
///
/// With u = cot(πk), the derivatives are π^{order+1}·P(u) where
/// P₀ = u and P_{n+1} = −(1+u²)·P_n′.
pub fn cot_derivative(order: u32, k: f64) -> Result<f64> {
    if k.fract() == 0.0 || !k.is_finite() {
        return Err(Error::Pole(k));
    }
    let r = k - k.round();
    let u = (PI * r).cos() / (PI * r).sin();

    let mut poly = vec![0.0, 1.0];
    for _ in 0..order {
        // derivative
        let d: Vec<f64> = poly
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * i as f64)
            .collect();
        // −(1+u²)·d
        let mut next = vec![0.0; d.len() + 2];
        for (i, c) in d.iter().enumerate() {
            next[i] -= c;
            next[i + 2] -= c;
        }
        poly = next;
    }
    let p = poly.iter().rev().fold(0.0, |acc, c| acc * u + c);
    Ok(PI.powi(order as i32 + 1) * p)
}

/// sin(π·num/den) with exact zeros at multiples of π.
pub fn sin_rational_pi(num: i64, den: i64) -> f64 {
    assert!(den > 0);
    let period = 2 * den;
    let mut r = num.rem_euclid(period);
    if r % den == 0 {
        return 0.0;
    }
    let mut sign = 1.0;
    if r > den {
        r -= den;
        sign = -1.0;
    }
    // sin(πr/den) = sin(π(den−r)/den)
    let r = r.min(den - r);
    sign * (PI * r as f64 / den as f64).sin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{richardson_derivative, NumericConfig};

    #[test]
    fn low_orders() {
        assert!((cot_derivative(0, 0.25).unwrap() - PI).abs() < 1e-14);
        assert!((cot_derivative(1, 0.5).unwrap() + PI * PI).abs() < 1e-13);
    }

    #[test]
    fn third_order_matches_finite_differences() {
        let cfg = NumericConfig::default();
        let fd = richardson_derivative(|k| PI / (PI * k).tan(), 0.3, 3, &cfg).unwrap();
        let exact = cot_derivative(3, 0.3).unwrap();
        assert!(
            (fd.value - exact).abs() < 1e-9 * exact.abs(),
            "{} vs {}",
            fd.value,
            exact
        );
    }

    #[test]
    fn integer_pole() {
        assert_eq!(cot_derivative(2, 3.0), Err(Error::Pole(3.0)));
    }

    #[test]
    fn rational_sine() {
        assert_eq!(sin_rational_pi(1, 1), 0.0);
        assert_eq!(sin_rational_pi(4, 2), 0.0);
        assert!((sin_rational_pi(1, 2) - 1.0).abs() < 1e-16);
        assert!((sin_rational_pi(3, 2) + 1.0).abs() < 1e-16);
        assert!((sin_rational_pi(5, 6) - 0.5).abs() < 1e-15);
        assert!((sin_rational_pi(-1, 4) + 0.5f64.sqrt()).abs() < 1e-15);
    }
}
