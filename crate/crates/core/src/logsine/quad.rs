//! Quadrature oracles with endpoint-aware integrands.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::numerics::{tanh_sinh_offsets, Abscissa, NumericConfig};

const PI_EPS: f64 = 1e-12;

/// sin(x) on [0, b] keeping full relative precision at x → 0 and, when b = π,
/// at x → π.
fn sin_at(p: Abscissa, b: f64) -> f64 {
    if p.x <= 0.5 * b {
        p.from_a.sin()
    } else if (b - PI).abs() < PI_EPS {
        p.from_b.sin()
    } else {
        p.x.sin()
    }
}

/// 2 sin(x/2) on [0, b] with the same care at x → 0 and, when b = 2π, x → 2π.
fn two_sin_half_at(p: Abscissa, b: f64) -> f64 {
    if p.x <= 0.5 * b {
        2.0 * (0.5 * p.from_a).sin()
    } else if (b - 2.0 * PI).abs() < PI_EPS {
        2.0 * (0.5 * p.from_b).sin()
    } else {
        2.0 * (0.5 * p.x).sin()
    }
}

fn run(f: impl Fn(Abscissa) -> f64, b: f64, cfg: &NumericConfig) -> Result<(f64, f64)> {
    let q = tanh_sinh_offsets(f, 0.0, b, cfg)?;
    Ok((q.value, q.error))
}

/// ∫₀ᶻ xⁿ log^p(sin x) dx for 0 < z ≤ π.
pub fn xlogsin_quadrature(n: u32, p: u32, z: f64, cfg: &NumericConfig) -> Result<(f64, f64)> {
    if !(z > 0.0 && z <= PI + PI_EPS) {
        return domain(format!("xlogsin quadrature needs 0 < z <= pi, got {z}"));
    }
    run(
        |a| a.x.powi(n as i32) * sin_at(a, z).ln().powi(p as i32),
        z,
        cfg,
    )
}

/// Ls_{p+n+1}^{(n)}(θ) = −∫₀^θ xⁿ log^p|2 sin(x/2)| dx for 0 < θ ≤ 2π.
pub fn ls_quadrature(p: u32, n: u32, theta: f64, cfg: &NumericConfig) -> Result<(f64, f64)> {
    if !(theta > 0.0 && theta <= 2.0 * PI + PI_EPS) {
        return domain(format!("Ls quadrature needs 0 < theta <= 2pi, got {theta}"));
    }
    let (v, e) = run(
        |a| a.x.powi(n as i32) * two_sin_half_at(a, theta).ln().powi(p as i32),
        theta,
        cfg,
    )?;
    Ok((-v, e))
}

/// `∫₀ᶻ xⁿ (c·s(x))^{2m} dx` with `s = sin` (c = 1) or `s = sin(x/2)`
/// (c = 2), for real m > −1/2.
pub(crate) fn integrate_sin_power(
    n: u32,
    m: f64,
    z: f64,
    c: f64,
    cfg: &NumericConfig,
) -> Result<f64> {
    if !(m > -0.5) {
        return domain(format!("sin power integral needs m > -1/2, got {m}"));
    }
    if !(z > 0.0) {
        return Err(Error::Domain(format!(
            "upper limit must be positive, got {z}"
        )));
    }
    let q = if c == 1.0 {
        run(|a| a.x.powi(n as i32) * sin_at(a, z).powf(2.0 * m), z, cfg)?
    } else {
        run(
            |a| a.x.powi(n as i32) * two_sin_half_at(a, z).powf(2.0 * m),
            z,
            cfg,
        )?
    };
    Ok(q.0)
}

/// G(n, m, z) = ∫₀ᶻ xⁿ (2 sin(x/2))^{2m} dx at real m.
pub fn g_real_m(n: u32, m: f64, z: f64, cfg: &NumericConfig) -> Result<f64> {
    integrate_sin_power(n, m, z, 2.0, cfg)
}
