use std::f64::consts::FRAC_PI_2;

use super::{NeumaierSum, NumericConfig};
use crate::error::{Error, Result};

const T_MAX: f64 = 4.5;

/// A quadrature node with its distances to both interval ends, computed
/// without cancellation so integrands can resolve endpoint singularities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_a: f64,
    pub from_b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub levels: u32,
}

/// Tanh-sinh quadrature of `f` over `(a, b)`.
pub fn tanh_sinh_quadrature(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    cfg: &NumericConfig,
) -> Result<f64> {
    tanh_sinh_offsets(|p| f(p.x), a, b, cfg).map(|q| q.value)
}

/// Tanh-sinh quadrature where the integrand receives endpoint offsets.
///
/// The interval is split at its midpoint and each half is mapped separately,
/// so both original endpoints sit at transform infinity. Levels halve the
/// step; the error estimate is the change between consecutive levels,
/// floored at the rounding noise of the weighted sum.
pub fn tanh_sinh_offsets(
    f: impl Fn(Abscissa) -> f64,
    a: f64,
    b: f64,
    cfg: &NumericConfig,
) -> Result<Quadrature> {
    if !(b > a) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("invalid interval ({a}, {b})")));
    }
    let mid = 0.5 * (a + b);
    let halves = [(a, mid), (mid, b)];

    // Contribution of the node pair ±t on each half, plus its absolute size.
    let eval_t = |t: f64| -> (f64, f64) {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u).exp();
        let dw = FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        let near = 2.0 * e / (1.0 + e);
        let mut s = 0.0;
        let mut s_abs = 0.0;
        for &(c, d) in &halves {
            let hw = 0.5 * (d - c);
            let delta = hw * near;
            let w = hw * dw;
            let nodes: &[(f64, f64)] = if t == 0.0 {
                &[(hw, hw)]
            } else {
                &[(delta, 2.0 * hw - delta), (2.0 * hw - delta, delta)]
            };
            for &(dist_c, dist_d) in nodes {
                let x = if dist_c <= dist_d {
                    c + dist_c
                } else {
                    d - dist_d
                };
                let p = Abscissa {
                    x,
                    from_a: (c - a) + dist_c,
                    from_b: (b - d) + dist_d,
                };
                let v = w * f(p);
                s += v;
                s_abs += v.abs();
            }
        }
        (s, s_abs)
    };

    let mut total = NeumaierSum::new();
    let mut total_abs = 0.0;
    // level 0: integer t
    let steps0 = T_MAX as i64;
    for i in 0..=steps0 {
        let (s, sa) = eval_t(i as f64);
        total.add(s);
        total_abs += sa;
    }
    let mut h = 1.0;
    let mut prev = h * total.value();
    let mut error = f64::INFINITY;
    let mut value = prev;
    for level in 1..=cfg.quadrature_levels {
        h *= 0.5;
        let nsteps = (T_MAX / h) as i64;
        let mut i = 1;
        while i <= nsteps {
            let (s, sa) = eval_t(i as f64 * h);
            total.add(s);
            total_abs += sa;
            i += 2;
        }
        value = h * total.value();
        if !value.is_finite() {
            return Err(Error::NonFinite);
        }
        let noise = 64.0 * f64::EPSILON * h * total_abs;
        error = (value - prev).abs().max(noise);
        if level >= 3 && error <= cfg.target_abs_tol.max(noise) {
            return Ok(Quadrature {
                value,
                error,
                levels: level,
            });
        }
        prev = value;
    }
    Err(Error::NotConverged {
        estimate: value,
        error,
    })
}
