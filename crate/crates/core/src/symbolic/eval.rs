use num_traits::ToPrimitive;

use super::{Generator, SymbolicValue};
use crate::error::{Error, Result};
use crate::numerics::{zeta_real, NeumaierSum, NumericConfig};

/// Numeric value of a single generator.
pub fn generator_numeric(g: Generator, cfg: &NumericConfig) -> Result<f64> {
    match g {
        Generator::Pi => Ok(std::f64::consts::PI),
        Generator::Log2 => Ok(std::f64::consts::LN_2),
        Generator::ZetaOdd(j) => zeta_real(j as f64, cfg),
        Generator::ZetaBar1(j) => crate::specialfn::zeta_bar1_numeric(j, cfg),
    }
}

impl SymbolicValue {
    /// Substitutes numeric constants and sums the terms with compensation.
    pub fn eval_numeric(&self, cfg: &NumericConfig) -> Result<f64> {
        let gens = self.generators();
        let mut values = std::collections::BTreeMap::new();
        for g in gens {
            values.insert(g, generator_numeric(g, cfg)?);
        }
        let mut acc = NeumaierSum::new();
        for (mono, coef) in self.terms() {
            let mut t = coef.to_f64().ok_or(Error::NonFinite)?;
            for (g, e) in mono.factors() {
                t *= values[&g].powi(e as i32);
            }
            acc.add(t);
        }
        let v = acc.value();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite)
        }
    }
}
