//! Polynomials in 1/k and the generalized harmonic numbers H_k^{(r)}, with
//! exact coefficients, and infinite k-sums over them.

use std::collections::BTreeMap;

use num_traits::One;

use crate::bell::{bell_x, BellRing};
use crate::error::{Error, Result};
use crate::numerics::{
    accelerate_alternating_with_error, sum_monotone, NeumaierSum, NumericConfig,
};
use crate::specialfn::{harmonic, harmonic_f64, harmonic_series};
use crate::symbolic::{int, Generator, Rational, SymbolicValue};

/// `k^{−inv_k} · Π_r (H_k^{(r)})^{e_r}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KMonomial {
    pub inv_k: u32,
    pub harmonic: BTreeMap<u32, u32>,
}

impl KMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn inv(a: u32) -> Self {
        Self {
            inv_k: a,
            harmonic: BTreeMap::new(),
        }
    }

    pub fn h(order: u32) -> Self {
        Self {
            inv_k: 0,
            harmonic: BTreeMap::from([(order, 1)]),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut harmonic = self.harmonic.clone();
        for (r, e) in &other.harmonic {
            *harmonic.entry(*r).or_insert(0) += e;
        }
        Self {
            inv_k: self.inv_k + other.inv_k,
            harmonic,
        }
    }

    pub fn harmonic_powers(&self) -> Vec<(u32, u32)> {
        self.harmonic.iter().map(|(r, e)| (*r, *e)).collect()
    }

    pub fn at(&self, k: u64) -> Result<Rational> {
        if k == 0 {
            return Err(Error::Domain(
                "k-polynomials are evaluated at k >= 1".into(),
            ));
        }
        let mut v = Rational::new(
            1.into(),
            num_traits::pow(num_bigint::BigInt::from(k), self.inv_k as usize),
        );
        for (r, e) in &self.harmonic {
            v *= num_traits::pow(harmonic(k, *r), *e as usize);
        }
        Ok(v)
    }

    fn at_f64(&self, k: u64, h: &BTreeMap<u32, f64>) -> f64 {
        let mut v = (k as f64).powi(-(self.inv_k as i32));
        for (r, e) in &self.harmonic {
            v *= h[r].powi(*e as i32);
        }
        v
    }
}

/// `Σ coef · KMonomial` with coefficients in the symbolic ring.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KPoly {
    terms: BTreeMap<KMonomial, SymbolicValue>,
}

impl KPoly {
    pub fn constant(c: SymbolicValue) -> Self {
        Self::term(c, KMonomial::one())
    }

    pub fn term(c: SymbolicValue, m: KMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn monomial(m: KMonomial) -> Self {
        Self::term(SymbolicValue::one(), m)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KMonomial, &SymbolicValue)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &SymbolicValue) -> Self {
        let mut out = Self::default();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.scale(&SymbolicValue::from_rational(c.clone()))
    }

    /// Multiplies every monomial by `k^{−a}`.
    pub fn shift_inv(&self, a: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(&KMonomial::inv(a)), v.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, m: KMonomial, c: SymbolicValue) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Exact value at a concrete k ≥ 1.
    pub fn at(&self, k: u64) -> Result<SymbolicValue> {
        let mut out = SymbolicValue::zero();
        for (m, c) in &self.terms {
            out = out + c.scale(&m.at(k)?);
        }
        Ok(out)
    }

    /// Largest harmonic order present.
    pub fn max_harmonic_order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.harmonic.keys().copied())
            .max()
            .unwrap_or(0)
    }

    /// A numeric view with the symbolic coefficients evaluated once.
    pub fn numeric(&self, cfg: &NumericConfig) -> Result<NumericKPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), c.eval_numeric(cfg)?));
        }
        let orders = self
            .terms
            .keys()
            .flat_map(|m| m.harmonic.keys().copied())
            .collect();
        Ok(NumericKPoly { terms, orders })
    }
}

impl BellRing for KPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(SymbolicValue::one())
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
    fn mul_int(&self, n: u64) -> Self {
        self.scale_rational(&Rational::from_integer(n.into()))
    }
}

#[derive(Debug, Clone)]
pub struct NumericKPoly {
    terms: Vec<(KMonomial, f64)>,
    orders: std::collections::BTreeSet<u32>,
}

impl NumericKPoly {
    pub fn at(&self, k: u64) -> f64 {
        let h: BTreeMap<u32, f64> = self
            .orders
            .iter()
            .map(|&r| (r, harmonic_f64(r, k)))
            .collect();
        self.at_harmonics(k, &h)
    }

    /// Value at k given precomputed H_k^{(r)} for every order in [`Self::orders`].
    pub fn at_harmonics(&self, k: u64, h: &BTreeMap<u32, f64>) -> f64 {
        let mut s = NeumaierSum::new();
        for (m, c) in &self.terms {
            s.add(c * m.at_f64(k, h));
        }
        s.value()
    }

    pub fn orders(&self) -> impl Iterator<Item = u32> + '_ {
        self.orders.iter().copied()
    }
}

/// ξ̄_j as a polynomial in 1/k and H_k^{(j)}; the scaled variant adds
/// log 4 to ξ̄₁.
pub fn xi_bar_poly(j: u32, scaled: bool) -> Result<KPoly> {
    if j == 0 {
        return Err(Error::Domain("xi_bar index starts at 1".into()));
    }
    let fact = Rational::from_integer(crate::specialfn::factorial(j - 1));
    let poly = if j == 1 {
        let mut p = KPoly::monomial(KMonomial::h(1))
            .mul_int(2)
            .add(&KPoly::monomial(KMonomial::inv(1)).scale_rational(&int(-1)));
        if scaled {
            p = p.add(&KPoly::constant(
                SymbolicValue::generator(Generator::Log2).scale_int(2),
            ));
        }
        p
    } else {
        let two_j = Rational::from_integer(num_bigint::BigInt::one() << j) - int(2);
        let zeta = crate::symbolic::zeta_value(j)?.scale(&(two_j * &fact));
        let tail = KPoly::monomial(KMonomial::inv(j)).scale_rational(&fact);
        if j.is_multiple_of(2) {
            KPoly::constant(zeta).add(&tail)
        } else {
            KPoly::constant(zeta)
                .add(&KPoly::monomial(KMonomial::h(j)).scale_rational(&(&fact * int(2))))
                .add(&tail.scale_rational(&int(-1)))
        }
    };
    Ok(poly)
}

/// P_p(k) with C^{(p)}(0) = (−1)^k P_p(k) for k ≥ 1:
/// `P_p = (−1)^p · p · k^{−1} · B_{p−1}(ξ̄₁, …, ξ̄_{p−1})`.
pub fn shifted_deriv_poly(p: u32, scaled: bool) -> Result<KPoly> {
    if p == 0 {
        return Ok(KPoly::default());
    }
    let xi: Vec<KPoly> = (1..p)
        .map(|j| xi_bar_poly(j, scaled))
        .collect::<Result<_>>()?;
    let b = bell_x(&xi);
    let sign = if p.is_multiple_of(2) { p as i64 } else { -(p as i64) };
    Ok(b.shift_inv(1).scale_rational(&int(sign)))
}

/// `Σ_{k≥1} [(−1)^k]·f(k)` over a finite set of k-monomials: the
/// `alternating` part carries the sign `(−1)^k`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KSeries {
    pub alternating: KPoly,
    pub plain: KPoly,
}

/// One summand that could not be resolved exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Unresolved {
    pub alternating: bool,
    pub monomial: KMonomial,
    pub coefficient: SymbolicValue,
    pub reason: Error,
}

impl KSeries {
    pub fn add_poly(&mut self, alternating: bool, p: &KPoly) {
        let slot = if alternating {
            &mut self.alternating
        } else {
            &mut self.plain
        };
        *slot = slot.add(p);
    }

    pub fn is_zero(&self) -> bool {
        self.alternating.is_zero() && self.plain.is_zero()
    }

    fn parts(&self) -> impl Iterator<Item = (bool, &KMonomial, &SymbolicValue)> {
        self.alternating
            .terms()
            .map(|(m, c)| (true, m, c))
            .chain(self.plain.terms().map(|(m, c)| (false, m, c)))
    }

    /// Sums every monomial through the Euler-sum catalog. Returns the exact
    /// part and the list of catalog misses.
    pub fn resolve_exact(&self) -> (SymbolicValue, Vec<Unresolved>) {
        let mut exact = SymbolicValue::zero();
        let mut missing = Vec::new();
        for (alt, m, c) in self.parts() {
            match harmonic_series(alt, &m.harmonic_powers(), m.inv_k) {
                Ok(v) => exact = exact + &v * c,
                Err(reason) => missing.push(Unresolved {
                    alternating: alt,
                    monomial: m.clone(),
                    coefficient: c.clone(),
                    reason,
                }),
            }
        }
        (exact, missing)
    }

    /// Numeric value with an error estimate.
    pub fn numeric(&self, cfg: &NumericConfig) -> Result<(f64, f64)> {
        let mut total = NeumaierSum::new();
        let mut err = 0.0;
        for (alt, m, c) in self.parts() {
            let (v, e) = monomial_sum(alt, m, cfg)?;
            let cf = c.eval_numeric(cfg)?;
            total.add(cf * v);
            err += (cf * e).abs();
        }
        Ok((total.value(), err))
    }

    /// Numeric value of the summands the catalog cannot resolve.
    pub fn numeric_unresolved(missing: &[Unresolved], cfg: &NumericConfig) -> Result<(f64, f64)> {
        let mut total = NeumaierSum::new();
        let mut err = 0.0;
        for u in missing {
            let (v, e) = monomial_sum(u.alternating, &u.monomial, cfg)?;
            let cf = u.coefficient.eval_numeric(cfg)?;
            total.add(cf * v);
            err += (cf * e).abs();
        }
        Ok((total.value(), err))
    }
}

/// `Σ_{k≥1} [(−1)^k] k^{−a} Π (H_k^{(r)})^e` numerically.
pub fn monomial_sum(alternating: bool, m: &KMonomial, cfg: &NumericConfig) -> Result<(f64, f64)> {
    let f = |k: u64| {
        let h: BTreeMap<u32, f64> = m
            .harmonic
            .keys()
            .map(|&r| (r, harmonic_f64(r, k)))
            .collect();
        m.at_f64(k, &h)
    };
    if alternating {
        if m.inv_k == 0 {
            return Err(Error::Domain("alternating k-sum without decay".into()));
        }
        let (v, e) =
            accelerate_alternating_with_error(f, &cfg.with_tol(cfg.target_abs_tol.min(1e-14)))?;
        Ok((-v, e))
    } else {
        if m.inv_k < 2 {
            return Err(Error::Domain("k-sum diverges".into()));
        }
        sum_monotone(f, &cfg.with_tol(cfg.target_abs_tol.min(1e-12)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rat;

    #[test]
    fn xi_bar_polys_small() {
        let x1 = xi_bar_poly(1, false).unwrap();
        assert_eq!(x1.at(2).unwrap().as_rational().unwrap(), rat(5, 2));
        let x2 = xi_bar_poly(2, false).unwrap();
        let expected: SymbolicValue = "1/3*pi^2 + 1/4".parse().unwrap();
        assert_eq!(x2.at(2).unwrap(), expected);
        let x1l = xi_bar_poly(1, true).unwrap();
        let expected: SymbolicValue = "5/2 + 2*log2".parse().unwrap();
        assert_eq!(x1l.at(2).unwrap(), expected);
    }

    #[test]
    fn poly_numeric_matches_exact() {
        let cfg = NumericConfig::default();
        let p = shifted_deriv_poly(4, true).unwrap();
        let num = p.numeric(&cfg).unwrap();
        for k in [1u64, 2, 7, 30] {
            let exact = p.at(k).unwrap().eval_numeric(&cfg).unwrap();
            assert!(
                (num.at(k) - exact).abs() < 1e-12 * (1.0 + exact.abs()),
                "k={k}"
            );
        }
    }

    #[test]
    fn series_resolution() {
        let cfg = NumericConfig::default();
        // Σ H_k/k^3 − Σ (−1)^k/k^2
        let mut s = KSeries::default();
        s.add_poly(
            false,
            &KPoly::monomial(KMonomial::h(1).mul(&KMonomial::inv(3))),
        );
        s.add_poly(
            true,
            &KPoly::monomial(KMonomial::inv(2)).scale_rational(&int(-1)),
        );
        let (exact, missing) = s.resolve_exact();
        assert!(missing.is_empty());
        assert_eq!(exact, "1/72*pi^4 + 1/12*pi^2".parse().unwrap());
        let (v, e) = s.numeric(&cfg).unwrap();
        assert!(
            (v - exact.eval_numeric(&cfg).unwrap()).abs() < 1e-10,
            "{v} {e}"
        );
        let mut t = KSeries::default();
        t.add_poly(
            false,
            &KPoly::monomial(
                KMonomial::h(1)
                    .mul(&KMonomial::h(1))
                    .mul(&KMonomial::inv(3)),
            ),
        );
        let (_, missing) = t.resolve_exact();
        assert_eq!(missing.len(), 1);
        assert!(matches!(missing[0].reason, Error::CatalogMiss(_)));
        // Σ H_k²/k³ = (7/2)ζ(5) − ζ(2)ζ(3)
        let (v, _) = KSeries::numeric_unresolved(&missing, &cfg).unwrap();
        let z3 = 1.2020569031595942;
        let z5 = 1.036_927_755_143_37;
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((v - (3.5 * z5 - z2 * z3)).abs() < 1e-9, "{v}");
    }
}
