//! Exact special-function values and the Euler-sum catalog.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::numerics::{
    accelerate_alternating, polygamma_real, sum_monotone, zeta_real, NeumaierSum, NumericConfig,
};
use crate::symbolic::{int, rat, zeta_even, zeta_value, Generator, Rational, SymbolicValue};

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// Bernoulli number B_n with B₁ = −1/2.
pub fn bernoulli(n: u32) -> Rational {
    let mut cache = bernoulli_cache().lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= n as usize {
        let m = cache.len();
        if m > 1 && m % 2 == 1 {
            cache.push(Rational::zero());
            continue;
        }
        // Σ_{i=0}^{m} C(m+1, i) B_i = 0
        let mut acc = Rational::zero();
        let mut c = BigInt::one();
        for (i, b) in cache.iter().enumerate() {
            acc += Rational::from_integer(c.clone()) * b;
            c = c * BigInt::from(m + 1 - i) / BigInt::from(i + 1);
        }
        cache.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    cache[n as usize].clone()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// H_m^{(r)} = Σ_{i=1}^m 1/i^r.
pub fn harmonic(m: u64, r: u32) -> Rational {
    let mut acc = Rational::zero();
    for i in 1..=m {
        acc += Rational::new(BigInt::one(), num_traits::pow(BigInt::from(i), r as usize));
    }
    acc
}

/// Prefix table of H_m^{(r)} for one order r, extended on demand.
#[derive(Debug, Clone)]
pub struct HarmonicTable {
    order: u32,
    h: Vec<Rational>,
}

impl HarmonicTable {
    pub fn new(order: u32) -> Result<Self> {
        if order == 0 {
            return domain("harmonic order must be >= 1");
        }
        Ok(Self {
            order,
            h: vec![Rational::zero()],
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&mut self, m: usize) -> &Rational {
        while self.h.len() <= m {
            let i = self.h.len();
            let next = self.h[i - 1].clone()
                + Rational::new(
                    BigInt::one(),
                    num_traits::pow(BigInt::from(i), self.order as usize),
                );
            self.h.push(next);
        }
        &self.h[m]
    }
}

/// H_n^{(r)} in floating point; direct for small n, via polygamma otherwise.
pub fn harmonic_f64(r: u32, n: u64) -> f64 {
    if n <= 256 {
        let mut s = NeumaierSum::new();
        for i in (1..=n).rev() {
            s.add((i as f64).powi(-(r as i32)));
        }
        return s.value();
    }
    let x = n as f64 + 1.0;
    if r == 1 {
        return polygamma_real(0, x).expect("positive argument") + crate::numerics::EULER_GAMMA;
    }
    // Σ_{i>n} i^{-r} = (−1)^r ψ^{(r−1)}(n+1)/(r−1)!
    let fact: f64 = (1..r).map(|i| i as f64).product();
    let tail = polygamma_real(r - 1, x).expect("positive argument") / fact;
    let tail = if r.is_multiple_of(2) { tail } else { -tail };
    let zeta = zeta_real(r as f64, &NumericConfig::default()).expect("r >= 2");
    zeta - tail
}

/// Polygamma at a positive integer.
#[derive(Debug, Clone, PartialEq)]
pub enum PolygammaInt {
    /// ψ^{(n)}(z) for n ≥ 1.
    Value(SymbolicValue),
    /// Order 0: only ψ(z) − ψ(1) = H_{z−1} is representable without γ.
    DifferenceFromOne(SymbolicValue),
}

impl PolygammaInt {
    pub fn value(&self) -> &SymbolicValue {
        match self {
            PolygammaInt::Value(v) | PolygammaInt::DifferenceFromOne(v) => v,
        }
    }

    pub fn is_absolute(&self) -> bool {
        matches!(self, PolygammaInt::Value(_))
    }
}

/// ψ^{(n)}(z) = (−1)^{n+1} n! (ζ(n+1) − H_{z−1}^{(n+1)}).
pub fn polygamma_int(order: u32, z: i64) -> Result<PolygammaInt> {
    if z <= 0 {
        return domain(format!("polygamma_int needs z >= 1, got {z}"));
    }
    let z = z as u64;
    if order == 0 {
        return Ok(PolygammaInt::DifferenceFromOne(
            SymbolicValue::from_rational(harmonic(z - 1, 1)),
        ));
    }
    let inner = zeta_value(order + 1)? - SymbolicValue::from_rational(harmonic(z - 1, order + 1));
    let mut c = Rational::from_integer(factorial(order));
    if order.is_multiple_of(2) {
        c = -c;
    }
    Ok(PolygammaInt::Value(inner.scale(&c)))
}

/// η(b) = Σ (−1)^{k−1}/k^b; η(1) = log 2.
pub fn eta_value(b: u32) -> Result<SymbolicValue> {
    match b {
        0 => domain("eta(0) is not a convergent series"),
        1 => Ok(SymbolicValue::generator(Generator::Log2)),
        b => {
            let factor = Rational::one() - Rational::new(BigInt::one(), BigInt::one() << (b - 1));
            Ok(zeta_value(b)?.scale(&factor))
        }
    }
}

/// Σ_{k≥1} H_k/k^n = ½(n+2)ζ(n+1) − ½ Σ_{k=1}^{n−2} ζ(k+1)ζ(n−k).
#[allow(non_snake_case)]
pub fn euler_sum_H(n: u32) -> Result<SymbolicValue> {
    if n < 2 {
        return domain(format!("euler_sum_H needs n >= 2, got {n}"));
    }
    let mut v = zeta_value(n + 1)?.scale(&rat(n as i64 + 2, 2));
    for k in 1..=n.saturating_sub(2) {
        v = v - (zeta_value(k + 1)? * zeta_value(n - k)?).scale(&rat(1, 2));
    }
    Ok(v)
}

/// Σ_{k≥1} (−1)^k H_k/k^n = ζ(n̄,1) − (1 − 2^{−n}) ζ(n+1) for odd n ≥ 3.
#[allow(non_snake_case)]
pub fn alt_euler_sum_H(n: u32) -> Result<SymbolicValue> {
    if n < 3 {
        return domain(format!("alt_euler_sum_H needs odd n >= 3, got {n}"));
    }
    if n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "alternating Euler sum with even exponent {n} has no closed form in the basis"
        )));
    }
    let factor = Rational::one() - Rational::new(BigInt::one(), BigInt::one() << n);
    Ok(SymbolicValue::generator(Generator::ZetaBar1(n)) - zeta_even(n.div_ceil(2))?.scale(&factor))
}

/// Exact value of `Σ_{k≥1} s_k Π_j (H_k^{(j)})^{e_j} / k^b` where `s_k` is
/// `(−1)^k` when `alternating` and 1 otherwise. Only the catalogued sums
/// are available; anything else is a [`Error::CatalogMiss`].
pub fn harmonic_series(
    alternating: bool,
    harmonic_powers: &[(u32, u32)],
    b: u32,
) -> Result<SymbolicValue> {
    let powers: Vec<(u32, u32)> = harmonic_powers
        .iter()
        .copied()
        .filter(|&(_, e)| e > 0)
        .collect();
    let describe = || {
        let h: Vec<String> = powers.iter().map(|(j, e)| format!("H^({j})^{e}")).collect();
        format!(
            "sum {}{}/k^{b}",
            if alternating { "(-1)^k " } else { "" },
            if h.is_empty() {
                "1".to_string()
            } else {
                h.join("*")
            }
        )
    };
    match (alternating, powers.as_slice()) {
        (true, []) if b >= 1 => Ok(-eta_value(b)?),
        (false, []) if b >= 2 => zeta_value(b),
        (false, [(1, 1)]) if b >= 2 => euler_sum_H(b),
        (true, [(1, 1)]) if b >= 3 && b % 2 == 1 => alt_euler_sum_H(b),
        (_, []) | (false, [(1, 1)]) => domain(format!("{} diverges", describe())),
        _ => Err(Error::CatalogMiss(describe())),
    }
}

/// ζ(n̄,1) = Σ_{k≥1} (−1)^k H_{k−1}/k^n, accelerated.
pub fn zeta_bar1_numeric(n: u32, cfg: &NumericConfig) -> Result<f64> {
    if n < 3 || n.is_multiple_of(2) {
        return domain(format!("zeta_bar1_numeric needs odd n >= 3, got {n}"));
    }
    let fine = cfg.with_tol(cfg.target_abs_tol.min(1e-15));
    let s = accelerate_alternating(
        |k| harmonic_f64(1, k - 1) / (k as f64).powi(n as i32),
        &fine,
    )?;
    Ok(-s)
}

/// Rising factorial (a)_k.
pub fn pochhammer(a: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * (a + int(i as i64)))
}

/// `Σ_{k≥0} z^k/(k+1)^q`, which equals `Li_q(z)/z`.
pub fn hypergeom_1s2s(q: u32, z: f64, cfg: &NumericConfig) -> Result<f64> {
    if q == 0 {
        return domain("hypergeom_1s2s needs q >= 1");
    }
    if z == 0.0 || !(z.abs() <= 1.0) {
        return domain(format!("hypergeom_1s2s needs 0 < |z| <= 1, got {z}"));
    }
    let qi = q as i32;
    if z == 1.0 {
        if q == 1 {
            return domain("series diverges at z = 1 for q = 1");
        }
        let (v, err) = sum_monotone(|k| (k as f64).powi(-qi), cfg)?;
        if err > cfg.target_abs_tol {
            return Err(Error::NotConverged {
                estimate: v,
                error: err,
            });
        }
        return Ok(v);
    }
    if z < 0.0 {
        let r = -z;
        return accelerate_alternating(|k| r.powi(k as i32 - 1) / (k as f64).powi(qi), cfg);
    }
    let mut s = NeumaierSum::new();
    let mut zk = 1.0;
    for k in 0..cfg.max_series_terms {
        let t = zk / ((k + 1) as f64).powi(qi);
        s.add(t);
        zk *= z;
        if zk / (1.0 - z) < cfg.target_abs_tol * 1e-2 {
            return Ok(s.value());
        }
    }
    Err(Error::NotConverged {
        estimate: s.value(),
        error: zk / (1.0 - z),
    })
}

/// `Σ_{k=1}^{m} z^{k−1} binom(2m, m+k) / k^s` in exact arithmetic.
pub fn shifted_binom_series_exact(m: u32, s: u32, z: &Rational) -> Result<Rational> {
    if m == 0 {
        return domain("shifted_binom_series needs m >= 1");
    }
    let mut acc = Rational::zero();
    let mut zk = Rational::one();
    for k in 1..=m as u64 {
        let b = binomial_big(2 * m as u64, m as u64 + k);
        acc += &zk * Rational::new(b, num_traits::pow(BigInt::from(k), s as usize));
        zk *= z;
    }
    Ok(acc)
}

pub fn shifted_binom_series(m: u32, s: u32, z: f64) -> Result<f64> {
    if !(z.abs() <= 1.0) {
        return domain(format!("shifted_binom_series needs z in [-1, 1], got {z}"));
    }
    let zr = Rational::from_float(z).ok_or(Error::NonFinite)?;
    shifted_binom_series_exact(m, s, &zr)?
        .to_f64()
        .ok_or(Error::NonFinite)
}

/// Generalized hypergeometric pFq at `z` when one upper parameter is a
/// nonpositive integer, so the series terminates.
pub fn terminating_hypergeom(
    upper: &[Rational],
    lower: &[Rational],
    z: &Rational,
) -> Result<Rational> {
    let stop = upper
        .iter()
        .filter(|a| a.is_integer() && !a.is_positive())
        .map(|a| (-a).to_integer().to_u64().unwrap_or(u64::MAX))
        .min()
        .ok_or_else(|| Error::Domain("no nonpositive integer upper parameter".into()))?;
    let mut term = Rational::one();
    let mut acc = Rational::one();
    for k in 0..stop {
        let kr = int(k as i64);
        let mut num = z.clone() / (&kr + int(1));
        for a in upper {
            num *= a + &kr;
        }
        for b in lower {
            let d = b + &kr;
            if d.is_zero() {
                return domain("lower parameter hits a nonpositive integer");
            }
            num /= d;
        }
        term *= num;
        acc += &term;
    }
    Ok(acc)
}
