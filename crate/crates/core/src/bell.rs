//! Complete Bell polynomials over any commutative ring with integer scaling.

use crate::error::{Error, Result};
use crate::numerics::cot_derivative;
use crate::symbolic::{Rational, SymbolicValue};

use num_traits::{One, Zero};

/// The minimal ring interface the Bell recursions need. Binomial
/// coefficients enter only through [`BellRing::mul_int`].
pub trait BellRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn mul_int(&self, n: u64) -> Self;
}

impl BellRing for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_int(&self, n: u64) -> Self {
        self * n as f64
    }
}

impl BellRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_int(&self, n: u64) -> Self {
        self * Rational::from_integer(n.into())
    }
}

impl BellRing for SymbolicValue {
    fn zero() -> Self {
        SymbolicValue::zero()
    }
    fn one() -> Self {
        SymbolicValue::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_int(&self, n: u64) -> Self {
        self.scale(&Rational::from_integer(n.into()))
    }
}

/// C(n, k) for the small arguments used here.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (n as u128 - i) / (i + 1);
    }
    u64::try_from(c).expect("binomial coefficient overflows u64")
}

/// x₀ = 1, x₁ = 0, x_j = Σ_{l=0}^{j−2} C(j−1, l) s_{j−l} x_l. Only s₂.. enter.
pub fn x_sequence<R: BellRing>(s: &[R]) -> Vec<R> {
    let n = s.len();
    let mut x = Vec::with_capacity(n + 1);
    x.push(R::one());
    if n >= 1 {
        x.push(R::zero());
    }
    for j in 2..=n {
        let mut acc = R::zero();
        for l in 0..=j - 2 {
            let t = s[j - l - 1]
                .mul(&x[l])
                .mul_int(binomial(j as u64 - 1, l as u64));
            acc = acc.add(&t);
        }
        x.push(acc);
    }
    x
}

/// X[s_n] = Σ_j C(n, j) s₁^{n−j} x_j, which is the complete Bell polynomial
/// B_n(s₁, …, s_n).
pub fn bell_x<R: BellRing>(s: &[R]) -> R {
    let n = s.len();
    if n == 0 {
        return R::one();
    }
    let x = x_sequence(s);
    let mut s1_pow = R::one();
    let mut acc = R::zero();
    for j in (0..=n).rev() {
        acc = acc.add(&s1_pow.mul(&x[j]).mul_int(binomial(n as u64, j as u64)));
        s1_pow = s1_pow.mul(&s[0]);
    }
    acc
}

/// B₀..B_n through B_{i+1} = Σ_{j=0}^{i} C(i, j) B_{i−j} s_{j+1}.
pub fn bell_standard_all<R: BellRing>(s: &[R]) -> Vec<R> {
    let mut b = vec![R::one()];
    for i in 0..s.len() {
        let mut acc = R::zero();
        for j in 0..=i {
            acc = acc.add(&b[i - j].mul(&s[j]).mul_int(binomial(i as u64, j as u64)));
        }
        b.push(acc);
    }
    b
}

pub fn bell_standard<R: BellRing>(s: &[R]) -> R {
    bell_standard_all(s).pop().expect("nonempty")
}

/// Σ_i C(n, i) B_{n−i}(a) B_i(b), equal to B_n(a + b).
pub fn bell_binomial_convolution<R: BellRing>(a: &[R], b: &[R]) -> Result<R> {
    if a.len() != b.len() {
        return Err(Error::Contract(format!(
            "sequence lengths differ: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    let ba = bell_standard_all(a);
    let bb = bell_standard_all(b);
    let mut acc = R::zero();
    for i in 0..=n {
        acc = acc.add(&ba[n - i].mul(&bb[i]).mul_int(binomial(n as u64, i as u64)));
    }
    Ok(acc)
}

/// ν_j = d^{j−1}/dk^{j−1} [π cot(kπ)], j = 1..n.
pub fn nu_sequence(n: usize, k: f64) -> Result<Vec<f64>> {
    (1..=n).map(|j| cot_derivative(j as u32 - 1, k)).collect()
}

/// B_n(ν₁, …, ν_n) = (−1)^j π^{2j} for n = 2j and (−1)^j π^{2j+1} cot(kπ)
/// for n = 2j+1.
pub fn bell_nu_closed_form(n: u32, k: f64) -> Result<f64> {
    let pi = std::f64::consts::PI;
    let j = n / 2;
    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let cot = cot_derivative(0, k)? / pi;
    if n.is_multiple_of(2) {
        Ok(sign * pi.powi(2 * j as i32))
    } else {
        Ok(sign * pi.powi(n as i32) * cot)
    }
}
