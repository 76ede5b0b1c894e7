//! Generalized log-sine integrals, evaluated two ways.
//!
//! The symbolic pipeline produces exact rational combinations over the
//! constant basis {π, log 2, ζ(odd), ζ(odd̄,1)} from m-derivatives of
//! (shifted) central binomial coefficients, which are written as complete
//! Bell polynomials in polygamma values and harmonic numbers. The numeric
//! pipeline (tanh-sinh quadrature, accelerated series) checks every exact
//! result independently.
//!
//! ```
//! use logsine::logsine::{xlogsin_closed_form, ZPoint};
//! use logsine::numerics::NumericConfig;
//!
//! // ∫₀^π x log²(sin x) dx
//! let r = xlogsin_closed_form(1, 2, ZPoint::Pi).unwrap();
//! assert!(r.exact);
//! assert_eq!(r.value.to_string(), "1/24*pi^4 + 1/2*pi^2*log2^2");
//! let v = r.numeric(&NumericConfig::default()).unwrap();
//! assert!((v - 6.42965271675863).abs() < 1e-12);
//! ```

pub mod bell;
pub mod binomderiv;
mod error;
pub mod logsine;
pub mod numerics;
pub mod specialfn;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use symbolic::{Generator, Monomial, Rational, SymbolicValue};
