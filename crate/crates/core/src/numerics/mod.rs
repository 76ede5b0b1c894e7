//! Floating-point kernels shared by the numeric oracles.

mod diff;
mod gamma;
mod quadrature;
mod series;
mod sum;
mod trig;

pub use diff::{richardson_derivative, richardson_derivative_step, Derivative};
pub use gamma::{ln_gamma, polygamma_real, zeta_real, EULER_GAMMA};
pub use quadrature::{tanh_sinh_offsets, tanh_sinh_quadrature, Abscissa, Quadrature};
pub use series::PowerSeries;
pub use sum::{
    accelerate_alternating, accelerate_alternating_with_error, compensated_sum, sum_monotone,
    NeumaierSum,
};
pub use trig::{cot_derivative, sin_rational_pi};

use crate::error::{Error, Result};

/// Tolerances and work limits for the numeric paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericConfig {
    pub target_abs_tol: f64,
    pub max_series_terms: u64,
    pub quadrature_levels: u32,
    pub richardson_levels: u32,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            target_abs_tol: 1e-10,
            max_series_terms: 1_000_000,
            quadrature_levels: 12,
            richardson_levels: 5,
        }
    }
}

impl NumericConfig {
    pub fn new(
        target_abs_tol: f64,
        max_series_terms: u64,
        quadrature_levels: u32,
        richardson_levels: u32,
    ) -> Result<Self> {
        let cfg = Self {
            target_abs_tol,
            max_series_terms,
            quadrature_levels,
            richardson_levels,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.target_abs_tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_tol > 0.0) {
            return Err(Error::Contract("target_abs_tol must be positive".into()));
        }
        if self.max_series_terms < 10 {
            return Err(Error::Contract(
                "max_series_terms must be at least 10".into(),
            ));
        }
        if self.quadrature_levels < 3 {
            return Err(Error::Contract(
                "quadrature_levels must be at least 3".into(),
            ));
        }
        Ok(())
    }
}
