use crate::error::{Error, Result};

/// Truncated power series `Σ coeffs[i]·mⁱ`, exact to its order.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<f64>,
}

impl PowerSeries {
    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn new(mut coeffs: Vec<f64>, order: usize) -> Self {
        coeffs.resize(order + 1, 0.0);
        Self { coeffs }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series of `m` itself.
    pub fn variable(order: usize) -> Self {
        Self::new(vec![0.0, 1.0], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    /// `i!·[mⁱ]`, the i-th derivative at 0.
    pub fn derivative_at_zero(&self, i: usize) -> f64 {
        let fact: f64 = (1..=i).map(|v| v as f64).product();
        self.coeff(i) * fact
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Contract(format!(
                "power series order mismatch: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Substitutes `m → c·m`.
    pub fn compose_scalar(&self, c: f64) -> Self {
        let mut p = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a * p;
                p *= c;
                v
            })
            .collect();
        Self { coeffs }
    }

    /// `exp(self)` via `b′ = a′b`.
    pub fn exp(&self) -> Self {
        let n = self.coeffs.len();
        let a = &self.coeffs;
        let mut b = vec![0.0; n];
        b[0] = a[0].exp();
        for i in 1..n {
            let s: f64 = (1..=i).map(|k| k as f64 * a[k] * b[i - k]).sum();
            b[i] = s / i as f64;
        }
        Self { coeffs: b }
    }

    /// `log(self)`; the constant term must be positive.
    pub fn ln(&self) -> Result<Self> {
        let b = &self.coeffs;
        if !(b[0] > 0.0) {
            return Err(Error::Domain(
                "log of a series with non-positive constant term".into(),
            ));
        }
        let n = b.len();
        let mut a = vec![0.0; n];
        a[0] = b[0].ln();
        for i in 1..n {
            let s: f64 = (1..i).map(|k| k as f64 * a[k] * b[i - k]).sum();
            a[i] = (b[i] - s / i as f64) / b[0];
        }
        Ok(Self { coeffs: a })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{richardson_derivative_step, NumericConfig, EULER_GAMMA};
    use proptest::prelude::*;

    #[test]
    fn exp_of_variable() {
        let e = PowerSeries::variable(3).exp();
        let want = [1.0, 1.0, 0.5, 1.0 / 6.0];
        for (a, b) in e.coeffs().iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn product_truncates() {
        let a = PowerSeries::new(vec![1.0, 1.0], 1);
        let b = PowerSeries::new(vec![1.0, -1.0], 1);
        assert_eq!(a.mul(&b).unwrap().coeffs(), &[1.0, 0.0]);
        assert!(a.add(&PowerSeries::variable(2)).is_err());
    }

    #[test]
    fn gamma_series_matches_finite_differences() {
        // logΓ(1+x) = −γx + Σ_{j≥2} (−1)^j ζ(j) x^j / j, at x = 2m
        let cfg = NumericConfig::default();
        let order = 4;
        let mut c = vec![0.0, -EULER_GAMMA];
        for j in 2..=order {
            let z = crate::numerics::zeta_real(j as f64, &cfg).unwrap();
            c.push(if j % 2 == 0 { z } else { -z } / j as f64);
        }
        let series = PowerSeries::new(c, order).compose_scalar(2.0).exp();
        let gamma = |m: f64| crate::numerics::ln_gamma(1.0 + 2.0 * m).unwrap().exp();
        for i in 1..=4 {
            let d = richardson_derivative_step(gamma, 0.0, i as u32, 0.04, &cfg).unwrap();
            assert!(
                (series.derivative_at_zero(i) - d.value).abs() < 1e-8 * (1.0 + d.value.abs()),
                "order {i}: {} vs {}",
                series.derivative_at_zero(i),
                d.value
            );
        }
    }

    proptest! {
        #[test]
        fn exp_log_round_trip(c in proptest::collection::vec(-1.0f64..1.0, 6)) {
            let s = PowerSeries::new(c, 5);
            let back = s.exp().ln().unwrap();
            for (a, b) in s.coeffs().iter().zip(back.coeffs()) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
