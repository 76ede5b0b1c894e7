use super::NumericConfig;
use crate::error::{Error, Result};

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl Extend<f64> for NeumaierSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Compensated sum; the error stays at a few ulps of `Σ|terms|` regardless
/// of the number of terms.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> Result<f64> {
    let mut acc = NeumaierSum::new();
    acc.extend(terms);
    let v = acc.value();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite)
    }
}

// Cohen–Rodriguez Villegas–Zagier, algorithm 1: weights from the shifted
// Chebyshev polynomial of degree n.
fn cvz(term_fn: &impl Fn(u64) -> f64, n: u64) -> f64 {
    let nf = n as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(nf);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0;
    let mut c = -d;
    let mut s = NeumaierSum::new();
    for k in 0..n {
        let kf = k as f64;
        c = b - c;
        s.add(c * term_fn(k + 1));
        b = (kf + nf) * (kf - nf) * b / ((kf + 0.5) * (kf + 1.0));
    }
    s.value() / d
}

fn cvz_terms(tol: f64) -> (u64, u64) {
    let digits = (-tol.log10()).ceil().clamp(1.0, 17.0);
    let lo = (1.31 * digits).ceil() as u64;
    let hi = (1.31 * (digits + 4.0)).ceil() as u64;
    (lo, hi)
}

/// Accelerated value of `Σ_{k≥1} (−1)^{k−1} a_k` with an error estimate.
///
/// Returns `(value, error_estimate)` without judging the estimate.
pub fn accelerate_alternating_with_error(
    term_fn: impl Fn(u64) -> f64,
    cfg: &NumericConfig,
) -> Result<(f64, f64)> {
    let (lo, hi) = cvz_terms(cfg.target_abs_tol);
    if hi > cfg.max_series_terms {
        return Err(Error::NotConverged {
            estimate: f64::NAN,
            error: f64::INFINITY,
        });
    }
    let coarse = cvz(&term_fn, lo);
    let fine = cvz(&term_fn, hi);
    if !fine.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok((fine, (fine - coarse).abs()))
}

/// Accelerated value of `Σ_{k≥1} (−1)^{k−1} a_k` where `term_fn(k) = a_k`.
pub fn accelerate_alternating(term_fn: impl Fn(u64) -> f64, cfg: &NumericConfig) -> Result<f64> {
    let (value, error) = accelerate_alternating_with_error(term_fn, cfg)?;
    if error > cfg.target_abs_tol {
        return Err(Error::NotConverged {
            estimate: value,
            error,
        });
    }
    Ok(value)
}

/// `Σ_{k≥1} f(k)` for a smooth, eventually monotone `f` decaying at least
/// like `k^{-2}`.
///
/// Uses `Σ f(k) = Σ_{j≥0} 2^j Σ_{k≥1} (−1)^{k−1} f(2^j k)`, each inner
/// alternating sum accelerated; the outer sum converges geometrically.
/// Returns `(value, error_estimate)`.
pub fn sum_monotone(f: impl Fn(u64) -> f64, cfg: &NumericConfig) -> Result<(f64, f64)> {
    let inner_cfg = cfg.with_tol((cfg.target_abs_tol * 1e-3).max(1e-17));
    let mut total = NeumaierSum::new();
    let mut err = 0.0;
    let mut prev_abs = f64::INFINITY;
    for j in 0..60u32 {
        let scale = 1u64 << j;
        let (a, e) = accelerate_alternating_with_error(|k| f(k * scale), &inner_cfg)?;
        let t = scale as f64 * a;
        total.add(t);
        err += scale as f64 * e;
        let ratio = t.abs() / prev_abs;
        prev_abs = t.abs();
        if t == 0.0 {
            return Ok((total.value(), err));
        }
        if j >= 3 && ratio < 0.75 {
            // the outer terms decay at least geometrically from here on
            let tail = t.abs() * ratio / (1.0 - ratio);
            if tail < 1e-2 * cfg.target_abs_tol {
                return Ok((total.value(), err + tail));
            }
        }
    }
    Err(Error::NotConverged {
        estimate: total.value(),
        error: prev_abs,
    })
}
