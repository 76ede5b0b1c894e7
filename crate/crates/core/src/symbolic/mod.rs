//! Exact values: rational linear combinations of monomials in the fixed
//! generator set {π, log 2, ζ(3), ζ(5), …, ζ(3̄,1), ζ(5̄,1), …}.
//!
//! Even zeta values never appear as generators; they are rewritten to
//! rational multiples of π^{2k} on construction.

mod eval;
mod json;
mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use eval::generator_numeric;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A basis constant. The derived order is the canonical one:
/// `Pi < Log2 < ZetaOdd(3) < ZetaOdd(5) < … < ZetaBar1(3) < …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Pi,
    Log2,
    /// ζ(j), j odd ≥ 3.
    ZetaOdd(u32),
    /// ζ(j̄,1) = Σ_{n₁>n₂>0} (−1)^{n₁}/(n₁^j n₂), j odd ≥ 3.
    ZetaBar1(u32),
}

impl Generator {
    pub fn zeta_odd(j: u32) -> Result<Self> {
        Self::check_index(j)?;
        Ok(Generator::ZetaOdd(j))
    }

    pub fn zeta_bar1(j: u32) -> Result<Self> {
        Self::check_index(j)?;
        Ok(Generator::ZetaBar1(j))
    }

    fn check_index(j: u32) -> Result<()> {
        if j < 3 || j.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "generator index must be odd and >= 3, got {j}"
            )));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        match *self {
            Generator::Pi | Generator::Log2 => true,
            Generator::ZetaOdd(j) | Generator::ZetaBar1(j) => j >= 3 && j % 2 == 1,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Generator::Pi => "pi".into(),
            Generator::Log2 => "log2".into(),
            Generator::ZetaOdd(j) => format!("zeta{j}"),
            Generator::ZetaBar1(j) => format!("zb1_{j}"),
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "pi" => Ok(Generator::Pi),
            "log2" => Ok(Generator::Log2),
            _ => {
                let parse = |digits: &str| {
                    digits
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("unknown generator `{s}`")))
                };
                if let Some(d) = s.strip_prefix("zb1_") {
                    Generator::zeta_bar1(parse(d)?)
                } else if let Some(d) = s.strip_prefix("zeta") {
                    Generator::zeta_odd(parse(d)?)
                } else {
                    Err(Error::Parse(format!("unknown generator `{s}`")))
                }
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Product of generator powers; the empty product is the unit monomial.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Generator, u32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn power(g: Generator, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(g, e);
        }
        Monomial(m)
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Generator, u32)>) -> Self {
        let mut m = Self::one();
        for (g, e) in factors {
            m = m.mul(&Self::power(g, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        self.0.get(&g).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Generator, u32)> + '_ {
        self.0.iter().map(|(g, e)| (*g, *e))
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (g, e) in &other.0 {
            *m.entry(*g).or_insert(0) += e;
        }
        Monomial(m)
    }

    /// Display order: lexicographic in exponents over the canonical generator
    /// order, highest first, so `pi^4` precedes `pi^2*log2^2`.
    pub(crate) fn display_cmp(&self, other: &Self) -> std::cmp::Ordering {
        let keys: BTreeSet<Generator> = self.0.keys().chain(other.0.keys()).copied().collect();
        for g in keys {
            let c = other.exponent(g).cmp(&self.exponent(g));
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    }
}

/// Exact value: map from monomial to nonzero rational coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SymbolicValue {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymbolicValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::term(r, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn term(coef: Rational, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(mono, coef);
        }
        Self { terms }
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(Rational::one(), Monomial::power(g, 1))
    }

    pub fn pi_pow(e: u32) -> Self {
        Self::term(Rational::one(), Monomial::power(Generator::Pi, e))
    }

    /// Builds a value from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut v = Self::zero();
        for (m, c) in terms {
            v.add_term(m, c);
        }
        v
    }

    fn add_term(&mut self, mono: Monomial, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Re-establishes the invariants; a no-op on values built through this API.
    pub fn normalize(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in display order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// The rational value, if this is a pure number.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms
            .keys()
            .flat_map(|m| m.0.keys().copied())
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&int(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Largest absolute coefficient denominator, useful for sanity checks.
    pub fn max_denominator(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.denom().abs())
            .max()
            .unwrap_or_else(BigInt::one)
    }
}

impl From<Rational> for SymbolicValue {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<Generator> for SymbolicValue {
    fn from(g: Generator) -> Self {
        Self::generator(g)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a SymbolicValue> for &'a SymbolicValue {
            type Output = SymbolicValue;
            fn $method(self, rhs: &'a SymbolicValue) -> SymbolicValue {
                let f: fn(&SymbolicValue, &SymbolicValue) -> SymbolicValue = $body;
                f(self, rhs)
            }
        }
        impl $tr<SymbolicValue> for SymbolicValue {
            type Output = SymbolicValue;
            fn $method(self, rhs: SymbolicValue) -> SymbolicValue {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a SymbolicValue> for SymbolicValue {
            type Output = SymbolicValue;
            fn $method(self, rhs: &'a SymbolicValue) -> SymbolicValue {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b));
binop!(Sub, sub, |a, b| a.add_ref(&-b));
binop!(Mul, mul, |a, b| a.mul_ref(b));

impl Neg for &SymbolicValue {
    type Output = SymbolicValue;
    fn neg(self) -> SymbolicValue {
        SymbolicValue {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for SymbolicValue {
    type Output = SymbolicValue;
    fn neg(self) -> SymbolicValue {
        -&self
    }
}

impl std::iter::Sum for SymbolicValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

/// ζ(2k) = (−1)^{k+1} B_{2k} (2π)^{2k} / (2·(2k)!).
pub fn zeta_even(k: u32) -> Result<SymbolicValue> {
    if k == 0 {
        return Err(Error::Domain("zeta_even needs k >= 1".into()));
    }
    let b = crate::specialfn::bernoulli(2 * k);
    let two_pow = Rational::from_integer(BigInt::one() << (2 * k));
    let fact = Rational::from_integer(crate::specialfn::factorial(2 * k));
    let sign = if k % 2 == 1 { int(1) } else { int(-1) };
    let coef = sign * b * two_pow / (int(2) * fact);
    Ok(SymbolicValue::term(
        coef,
        Monomial::power(Generator::Pi, 2 * k),
    ))
}

/// ζ(s) for integer s ≥ 2: even values reduced to π-powers, odd ones as
/// generators.
pub fn zeta_value(s: u32) -> Result<SymbolicValue> {
    match s {
        0 | 1 => Err(Error::Domain(format!(
            "zeta({s}) is not a finite series value"
        ))),
        s if s % 2 == 0 => zeta_even(s / 2),
        s => Ok(SymbolicValue::generator(Generator::ZetaOdd(s))),
    }
}
