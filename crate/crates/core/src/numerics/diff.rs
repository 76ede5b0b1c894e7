use super::NumericConfig;
use crate::error::{Error, Result};

const BASE_STEP: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub error: f64,
}

fn central_difference(f: &impl Fn(f64) -> f64, x: f64, order: u32, h: f64) -> f64 {
    match order {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        2 => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
        3 => {
            (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h)
        }
        4 => {
            (f(x + 2.0 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h))
                / (h * h * h * h)
        }
        _ => unreachable!(),
    }
}

/// Central-difference derivative of order ≤ 4 with Richardson extrapolation
/// over halved steps from h₀ = 0.1. The entry of the extrapolation table with
/// the smallest error estimate is returned.
pub fn richardson_derivative(
    f: impl Fn(f64) -> f64,
    x0: f64,
    order: u32,
    cfg: &NumericConfig,
) -> Result<Derivative> {
    richardson_derivative_step(f, x0, order, BASE_STEP, cfg)
}

/// As [`richardson_derivative`] with an explicit initial step; the stencil
/// reaches `x0 ± 2·h0`, which must stay inside the region of analyticity.
pub fn richardson_derivative_step(
    f: impl Fn(f64) -> f64,
    x0: f64,
    order: u32,
    h0: f64,
    cfg: &NumericConfig,
) -> Result<Derivative> {
    if !(h0 > 0.0) {
        return Err(Error::Contract("initial step must be positive".into()));
    }
    if order == 0 {
        return Ok(Derivative {
            value: f(x0),
            error: 0.0,
        });
    }
    if order > 4 {
        return Err(Error::Unsupported(format!(
            "finite-difference order {order} > 4; use the power-series oracle"
        )));
    }
    let levels = (cfg.richardson_levels.max(2) + 3) as usize;
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(levels);
    let mut best = Derivative {
        value: f64::NAN,
        error: f64::INFINITY,
    };
    let mut h = h0;
    for i in 0..levels {
        let mut row = vec![central_difference(&f, x0, order, h)];
        let mut fac = 1.0;
        for j in 1..=i {
            fac *= 4.0;
            let v = (fac * row[j - 1] - table[i - 1][j - 1]) / (fac - 1.0);
            let err = (v - row[j - 1]).abs().max((v - table[i - 1][j - 1]).abs());
            if err < best.error {
                best = Derivative {
                    value: v,
                    error: err,
                };
            }
            row.push(v);
        }
        if i > 0 && (row[i] - table[i - 1][i - 1]).abs() >= 2.0 * best.error {
            break;
        }
        table.push(row);
        h /= 2.0;
    }
    if !best.value.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_exp() {
        let cfg = NumericConfig::default();
        let d = richardson_derivative(f64::exp, 0.0, 3, &cfg).unwrap();
        assert!((d.value - 1.0).abs() < 1e-8, "{d:?}");
        let d = richardson_derivative(|x| x * x, 1.0, 2, &cfg).unwrap();
        assert!((d.value - 2.0).abs() < 1e-10);
        let d = richardson_derivative(f64::sin, 0.7, 4, &cfg).unwrap();
        assert!((d.value - 0.7f64.sin()).abs() < 1e-6, "{d:?}");
        let d = richardson_derivative(f64::sin, 0.7, 1, &cfg).unwrap();
        assert!((d.value - 0.7f64.cos()).abs() < 1e-12);
    }

    #[test]
    fn high_order_is_unsupported() {
        let cfg = NumericConfig::default();
        assert!(matches!(
            richardson_derivative(f64::exp, 0.0, 5, &cfg),
            Err(Error::Unsupported(_))
        ));
    }
}
