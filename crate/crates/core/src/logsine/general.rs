use std::collections::BTreeMap;

use super::Angle;
use crate::bell::bell_x;
use crate::binomderiv::{central_binom_deriv, xi_bar_poly, DerivSpec, NumericKPoly};
use crate::error::{domain, Error, Result};
use crate::numerics::{
    accelerate_alternating_with_error, sin_rational_pi, NeumaierSum, NumericConfig,
};
use crate::symbolic::{Rational, SymbolicValue};

/// Ls_{p+1}(z) split into its exact Bell part and the numeric k-series.
#[derive(Debug, Clone, PartialEq)]
pub struct LsGeneral {
    pub value: f64,
    pub error: f64,
    /// `(−1)^{p+1}/2^p · B_p(0, η̄₂, …, η̄_p)`, the coefficient of z.
    pub bell_coefficient: SymbolicValue,
    /// `bell_coefficient · z` when z is a rational multiple of π.
    pub bell_term: Option<SymbolicValue>,
    /// The k-series Σ sin(kz)/k² B_{p−1}(ξ̄₁, …, ξ̄_{p−1}).
    pub series: f64,
}

/// Ls_{p+1}(z) = ((−1)^{p+1}/2^p)(z B_p(0, η̄₂, …, η̄_p)
///   + 2p Σ_k sin(kz)/k² B_{p−1}(ξ̄₁, …, ξ̄_{p−1})) for 0 < z ≤ 2π.
pub fn ls_general_z(p: u32, z: Angle, cfg: &NumericConfig) -> Result<LsGeneral> {
    if p == 0 {
        return domain("ls_general_z needs p >= 1");
    }
    let zr = z.radians();
    if !(zr > 0.0 && zr <= 2.0 * std::f64::consts::PI * (1.0 + 1e-15)) {
        return domain(format!("z must lie in (0, 2pi], got {z}"));
    }
    let d = central_binom_deriv(DerivSpec::new(p, 0, false))?;
    let bell = if p.is_multiple_of(2) { d } else { -d };
    let sign = if p % 2 == 1 { 1 } else { -1 };
    let c = Rational::new(sign.into(), num_bigint::BigInt::from(1) << p);
    let bell_coefficient = bell.scale(&c);
    let bell_term = match z {
        Angle::RationalPi { num, den } => Some(
            (SymbolicValue::pi_pow(1) * &bell_coefficient)
                .scale(&Rational::new(num.into(), den.into())),
        ),
        Angle::Radians(_) => None,
    };

    let xi: Vec<_> = (1..p)
        .map(|j| xi_bar_poly(j, false))
        .collect::<Result<_>>()?;
    let poly = bell_x(&xi).numeric(cfg)?;
    let (series, series_err) = match z {
        // sin(kz) vanishes identically at z = 2π
        Angle::RationalPi { den: 1, num } if num % 2 == 0 => (0.0, 0.0),
        Angle::RationalPi { num, den } if num % 2 != 0 && den <= 24 => {
            series_rational(&poly, num, den, cfg)?
        }
        // one alternating sum per residue class gets costly for large b
        Angle::RationalPi { num, den } if num % 2 != 0 => {
            series_direct(&poly, zr, cfg).or_else(|_| series_rational(&poly, num, den, cfg))?
        }
        Angle::RationalPi { .. } | Angle::Radians(_) => series_direct(&poly, zr, cfg)?,
    };

    let cf = num_traits::ToPrimitive::to_f64(&c).expect("finite");
    let bell_value = bell_coefficient.eval_numeric(cfg)? * zr;
    let value = bell_value + cf * 2.0 * p as f64 * series;
    Ok(LsGeneral {
        value,
        error: (cf * 2.0 * p as f64 * series_err).abs(),
        bell_coefficient,
        bell_term,
        series,
    })
}

/// z = aπ/b with a odd: sin((r + b·i)z) = (−1)^i sin(rz), so each residue
/// class r mod b is an alternating series with monotone terms.
fn series_rational(poly: &NumericKPoly, a: i64, b: i64, cfg: &NumericConfig) -> Result<(f64, f64)> {
    let g = |k: u64| poly.at(k) / (k as f64 * k as f64);
    let inner_cfg = cfg.with_tol((cfg.target_abs_tol / b as f64).max(1e-15));
    let mut total = NeumaierSum::new();
    let mut err = 0.0;
    let bu = b as u64;
    for r in 1..=bu {
        let s = sin_rational_pi((r as i64 * a).rem_euclid(2 * b), b);
        if s == 0.0 {
            continue;
        }
        let term = |i: u64| g(r + bu * (i - 1));
        let (v, e) = accelerate_alternating_with_error(term, &inner_cfg)?;
        total.add(s * v);
        err += (s * e).abs();
    }
    Ok((total.value(), err))
}

/// Generic z: a direct head plus the Euler-transformed tail
/// `Σ_{k≥M} x^k g_k = x^M/(1−x) Σ_j (x/(1−x))^j Δ^j g_M`, x = e^{iz}.
fn series_direct(poly: &NumericKPoly, z: f64, cfg: &NumericConfig) -> Result<(f64, f64)> {
    let one_minus = ((1.0 - z.cos()).powi(2) + z.sin().powi(2)).sqrt();
    if one_minus < 1e-6 {
        return Err(Error::Unsupported(
            "z too close to a multiple of 2pi for the direct series".into(),
        ));
    }
    let g = |k: u64| poly.at(k) / (k as f64 * k as f64);
    // Δ^j g_M shrinks like (j/M)^j while |x/(1−x)|^j grows, so M scales
    // with 1/|1−x| to keep the tail to a few differences.
    let m = (2048.0 / one_minus).ceil() as u64;
    if m > cfg.max_series_terms {
        return Err(Error::NotConverged {
            estimate: f64::NAN,
            error: f64::INFINITY,
        });
    }
    let mut head = NeumaierSum::new();
    let mut h: BTreeMap<u32, f64> = poly.orders().map(|r| (r, 0.0)).collect();
    for k in 1..m {
        let kf = k as f64;
        for (r, v) in h.iter_mut() {
            *v += kf.powi(-(*r as i32));
        }
        head.add((kf * z).sin() * poly.at_harmonics(k, &h) / (kf * kf));
    }
    const J: usize = 24;
    let mut diffs: Vec<f64> = (0..=J as u64).map(|i| g(m + i)).collect();
    // c = x^M/(1−x), q = x/(1−x), as (re, im)
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let inv_1mx = {
        let (re, im) = (1.0 - z.cos(), -z.sin());
        let d = re * re + im * im;
        (re / d, -im / d)
    };
    let xm = ((m as f64 * z).cos(), (m as f64 * z).sin());
    let mut c = cmul(xm, inv_1mx);
    let q = cmul((z.cos(), z.sin()), inv_1mx);
    let mut tail = NeumaierSum::new();
    let mut last = f64::INFINITY;
    for j in 0..=J {
        let size = (c.0.hypot(c.1) * diffs[0]).abs();
        if size > last {
            // roundoff in the differences has taken over
            break;
        }
        tail.add(c.1 * diffs[0]);
        last = size;
        if last < 1e-3 * cfg.target_abs_tol {
            break;
        }
        for i in 0..J - j {
            diffs[i] = diffs[i + 1] - diffs[i];
        }
        c = cmul(c, q);
    }
    let error = last + 1e-16 * head.value().abs().max(1.0) * (m as f64).sqrt();
    if error <= cfg.target_abs_tol {
        return Ok((head.value() + tail.value(), error));
    }
    Err(Error::NotConverged {
        estimate: head.value() + tail.value(),
        error: last,
    })
}

#[cfg(test)]
mod tests {
    use super::super::quad::ls_quadrature;
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn vanishing_and_bell_only_cases() {
        let cfg = NumericConfig::default();
        let pi = Angle::rational_pi(1, 1).unwrap();
        let r = ls_general_z(1, pi, &cfg).unwrap();
        assert!(r.value.abs() < 1e-12);
        assert!(r.bell_term.unwrap().is_zero());
        let r = ls_general_z(2, pi, &cfg).unwrap();
        assert!((r.value + PI.powi(3) / 12.0).abs() < 1e-12);
        assert_eq!(r.bell_term.unwrap(), "-1/12*pi^3".parse().unwrap());
        let (q, _) = ls_quadrature(2, 0, PI, &cfg).unwrap();
        assert!((r.value - q).abs() < 1e-10);
        let two_pi = Angle::rational_pi(2, 1).unwrap();
        for p in 1..=4 {
            let r = ls_general_z(p, two_pi, &cfg).unwrap();
            let (q, _) = ls_quadrature(p, 0, 2.0 * PI, &cfg).unwrap();
            assert!((r.value - q).abs() < 1e-9, "p={p}: {} vs {q}", r.value);
            assert_eq!(r.series, 0.0);
        }
    }

    #[test]
    fn rational_angles_against_quadrature() {
        let cfg = NumericConfig::default();
        for (a, b) in [(1, 2), (1, 3), (2, 3), (3, 4), (1, 6), (5, 3)] {
            let z = Angle::rational_pi(a, b).unwrap();
            for p in 1..=4 {
                let r = ls_general_z(p, z, &cfg).unwrap();
                let (q, _) = ls_quadrature(p, 0, z.radians(), &cfg).unwrap();
                assert!(
                    (r.value - q).abs() < 1e-8,
                    "z={z} p={p}: {} vs {q}",
                    r.value
                );
            }
        }
    }

    #[test]
    fn generic_angle_against_quadrature() {
        let cfg = NumericConfig::default().with_tol(1e-9);
        for z in [0.7, 2.0, 4.1] {
            for p in 1..=3 {
                let r = ls_general_z(p, Angle::Radians(z), &cfg).unwrap();
                let (q, _) = ls_quadrature(p, 0, z, &cfg).unwrap();
                assert!(
                    (r.value - q).abs() < 1e-7,
                    "z={z} p={p}: {} vs {q}",
                    r.value
                );
                assert!(r.bell_term.is_none());
            }
        }
    }

    #[test]
    fn domain_checks() {
        let cfg = NumericConfig::default();
        assert!(ls_general_z(0, Angle::Radians(1.0), &cfg).is_err());
        assert!(ls_general_z(1, Angle::Radians(7.0), &cfg).is_err());
        assert!(ls_general_z(1, Angle::Radians(-1.0), &cfg).is_err());
    }
}
