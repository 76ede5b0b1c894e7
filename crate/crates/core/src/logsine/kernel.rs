//! F(n, m, z) = ∫₀ᶻ xⁿ sin^{2m}x dx written as
//! `4^{−m} [A·binom(2m, m) + Σ_{k≥1} binom(2m, m+k) W(k)]` at z ∈ {π/2, π}.

use num_traits::{One, ToPrimitive};

use super::ZPoint;
use crate::error::{Error, Result};
use crate::numerics::{NeumaierSum, NumericConfig};
use crate::specialfn::{binomial_big, factorial};
use crate::symbolic::{Rational, SymbolicValue};

/// `coef · s_k / k^{kpow}` with `s_k = (−1)^k` when alternating.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelTerm {
    pub coef: SymbolicValue,
    pub alternating: bool,
    pub kpow: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    pub n: u32,
    pub z: ZPoint,
    pub a: SymbolicValue,
    pub w: Vec<KernelTerm>,
}

fn frac(num: num_bigint::BigInt, den: num_bigint::BigInt) -> Rational {
    Rational::new(num, den)
}

impl Kernel {
    pub fn new(n: u32, z: ZPoint) -> Result<Self> {
        let nf = factorial(n);
        let mut w = Vec::new();
        let a;
        match z {
            ZPoint::Pi => {
                a = SymbolicValue::pi_pow(n + 1).scale(&frac(1.into(), (n + 1).into()));
                for j in 1..=n / 2 {
                    // −n!(−1)^j π^{n−2j+1} / (2^{2j−1} (n+1−2j)!)
                    let mut c = frac(nf.clone(), factorial(n + 1 - 2 * j) << (2 * j - 1));
                    if j % 2 == 0 {
                        c = -c;
                    }
                    w.push(KernelTerm {
                        coef: SymbolicValue::pi_pow(n - 2 * j + 1).scale(&c),
                        alternating: true,
                        kpow: 2 * j,
                    });
                }
            }
            ZPoint::HalfPi => {
                a = SymbolicValue::pi_pow(n + 1)
                    .scale(&frac(1.into(), num_bigint::BigInt::from(n + 1) << (n + 1)));
                for j in 1..=n.div_ceil(2) {
                    // −n! (π/2)^n (−1)^j / (π^{2j−1} (n+1−2j)!)
                    let mut c = frac(nf.clone(), factorial(n + 1 - 2 * j) << n);
                    if j % 2 == 0 {
                        c = -c;
                    }
                    w.push(KernelTerm {
                        coef: SymbolicValue::pi_pow(n + 1 - 2 * j).scale(&c),
                        alternating: false,
                        kpow: 2 * j,
                    });
                }
                if n % 2 == 1 {
                    // n! (−1)^{(n+1)/2} / 2^n
                    let mut c = frac(nf.clone(), num_bigint::BigInt::one() << n);
                    if n.div_ceil(2) % 2 == 1 {
                        c = -c;
                    }
                    w.push(KernelTerm {
                        coef: SymbolicValue::from_rational(c),
                        alternating: true,
                        kpow: n + 1,
                    });
                }
            }
            other => {
                return Err(Error::Unsupported(format!(
                    "no closed-form kernel at z = {other}"
                )));
            }
        }
        Ok(Self { n, z, a, w })
    }

    /// W(k) exactly.
    pub fn w_at(&self, k: u64) -> SymbolicValue {
        let mut out = SymbolicValue::zero();
        for t in &self.w {
            let sign = if t.alternating && k % 2 == 1 { -1 } else { 1 };
            let d = num_traits::pow(num_bigint::BigInt::from(k), t.kpow as usize);
            out = out + t.coef.scale(&Rational::new(sign.into(), d));
        }
        out
    }

    pub fn has_k_series(&self) -> bool {
        !self.w.is_empty()
    }
}

/// F(n, m, z) for integer m; the k-sum stops at k = m.
pub fn f_exact(n: u32, m: u32, z: ZPoint) -> Result<SymbolicValue> {
    let kernel = Kernel::new(n, z)?;
    let mm = m as u64;
    let mut acc = kernel
        .a
        .scale(&Rational::from_integer(binomial_big(2 * mm, mm)));
    for k in 1..=mm {
        let b = Rational::from_integer(binomial_big(2 * mm, mm + k));
        acc = acc + kernel.w_at(k).scale(&b);
    }
    Ok(acc.scale(&frac(1.into(), num_bigint::BigInt::one() << (2 * m))))
}

/// F(n, m, z) for real z through the finite trigonometric expansion
/// `z^{n+1} binom(2m,m)/(4^m (n+1)) + n! Σ_k (−1)^k binom(2m,m+k)/2^{2m−1}
///  · (Σ_j z^{n−j} sin(2kz + πj/2)/((2k)^{j+1}(n−j)!) − sin(πn/2)/(2k)^{n+1})`.
pub fn f_numeric(n: u32, m: u32, z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::NonFinite);
    }
    let to_f = |r: Rational| r.to_f64().ok_or(Error::NonFinite);
    let mm = m as u64;
    let four_m = 4f64.powi(m as i32);
    let nf = to_f(Rational::from_integer(factorial(n)))?;
    let mut total = NeumaierSum::new();
    total.add(
        z.powi(n as i32 + 1) * to_f(Rational::from_integer(binomial_big(2 * mm, mm)))?
            / (four_m * (n + 1) as f64),
    );
    let half_pi = std::f64::consts::FRAC_PI_2;
    let sin_quarter = |j: u32| [0.0, 1.0, 0.0, -1.0][(j % 4) as usize];
    for k in 1..=mm {
        let b = to_f(Rational::from_integer(binomial_big(2 * mm, mm + k)))?;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let pref = sign * nf * b * 2.0 / four_m;
        let two_k = 2.0 * k as f64;
        let mut inner = NeumaierSum::new();
        for j in 0..=n {
            let fact_nj = to_f(Rational::from_integer(factorial(n - j)))?;
            let angle = two_k * z + half_pi * j as f64;
            inner.add(z.powi((n - j) as i32) * angle.sin() / (two_k.powi(j as i32 + 1) * fact_nj));
        }
        inner.add(-sin_quarter(n) / two_k.powi(n as i32 + 1));
        total.add(pref * inner.value());
    }
    Ok(total.value())
}

/// G(n, m, 2z) = 4^m 2^{n+1} F(n, m, z).
pub fn g_from_f(n: u32, m: u32, f: &SymbolicValue) -> SymbolicValue {
    f.scale(&Rational::from_integer(
        num_bigint::BigInt::one() << (2 * m + n + 1),
    ))
}

pub fn g_from_f_numeric(n: u32, m: u32, f: f64) -> f64 {
    f * 2f64.powi((2 * m + n + 1) as i32)
}

/// F with a real exponent, ∫₀ᶻ xⁿ sin^{2m}x dx, by quadrature.
pub fn f_real_m(n: u32, m: f64, z: f64, cfg: &NumericConfig) -> Result<f64> {
    super::quad::integrate_sin_power(n, m, z, 1.0, cfg)
}
