//! Log-sine integrals: F(n, m, z), closed forms for ∫₀ᶻ xⁿ logᵖ(sin x) dx and
//! Ls_{p+n+1}^{(n)}, and the general-angle Ls series.
//!
//! `Ls_n^{(m)}(θ) = −∫₀^θ x^m log^{n−m−1}|2 sin(x/2)| dx`.

mod closed;
mod general;
mod kernel;
mod quad;

use std::fmt;
use std::str::FromStr;

pub use closed::{
    closed_form, is_exact_domain, ls_simple_closed, ls_value, ls_value_with, xlogsin_closed_form,
    xlogsin_closed_form_with, ClosedFormResult, Residual,
};
pub use general::{ls_general_z, LsGeneral};
pub use kernel::{f_exact, f_numeric, f_real_m, g_from_f, g_from_f_numeric, Kernel, KernelTerm};
pub use quad::{g_real_m, ls_quadrature, xlogsin_quadrature};

use crate::error::{domain, Error, Result};
use crate::symbolic::{Rational, SymbolicValue};

/// Upper limit of integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZPoint {
    HalfPi,
    Pi,
    TwoPi,
    Real(f64),
}

impl ZPoint {
    pub fn radians(&self) -> Result<f64> {
        use std::f64::consts::PI;
        match *self {
            ZPoint::HalfPi => Ok(PI / 2.0),
            ZPoint::Pi => Ok(PI),
            ZPoint::TwoPi => Ok(2.0 * PI),
            ZPoint::Real(z) if z > 0.0 && z <= 2.0 * PI => Ok(z),
            ZPoint::Real(z) => domain(format!("z must lie in (0, 2pi], got {z}")),
        }
    }

    /// z as an exact multiple of π, when it is one.
    pub fn symbolic(&self) -> Option<SymbolicValue> {
        let half = Rational::new(1.into(), 2.into());
        match self {
            ZPoint::HalfPi => Some(SymbolicValue::pi_pow(1).scale(&half)),
            ZPoint::Pi => Some(SymbolicValue::pi_pow(1)),
            ZPoint::TwoPi => Some(SymbolicValue::pi_pow(1).scale_int(2)),
            ZPoint::Real(_) => None,
        }
    }

    /// Half of the angle, as used by the Ls kernels.
    pub(crate) fn half(&self) -> Result<ZPoint> {
        match self {
            ZPoint::TwoPi => Ok(ZPoint::Pi),
            ZPoint::Pi => Ok(ZPoint::HalfPi),
            other => Err(Error::Unsupported(format!(
                "no closed form for Ls at {other}"
            ))),
        }
    }
}

impl fmt::Display for ZPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZPoint::HalfPi => f.write_str("pi/2"),
            ZPoint::Pi => f.write_str("pi"),
            ZPoint::TwoPi => f.write_str("2pi"),
            ZPoint::Real(z) => write!(f, "{z}"),
        }
    }
}

impl From<Angle> for ZPoint {
    fn from(a: Angle) -> Self {
        match a {
            Angle::RationalPi { num: 1, den: 2 } => ZPoint::HalfPi,
            Angle::RationalPi { num: 1, den: 1 } => ZPoint::Pi,
            Angle::RationalPi { num: 2, den: 1 } => ZPoint::TwoPi,
            other => ZPoint::Real(other.radians()),
        }
    }
}

/// An angle, kept exact when it is a rational multiple of π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    /// `num·π/den`, reduced, `den > 0`.
    RationalPi {
        num: i64,
        den: i64,
    },
    Radians(f64),
}

impl Angle {
    pub fn rational_pi(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return domain("angle denominator is zero");
        }
        let g = num_integer::gcd(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(Angle::RationalPi { num, den })
    }

    pub fn radians(&self) -> f64 {
        match *self {
            Angle::RationalPi { num, den } => std::f64::consts::PI * num as f64 / den as f64,
            Angle::Radians(z) => z,
        }
    }
}

impl From<ZPoint> for Angle {
    fn from(z: ZPoint) -> Self {
        match z {
            ZPoint::HalfPi => Angle::RationalPi { num: 1, den: 2 },
            ZPoint::Pi => Angle::RationalPi { num: 1, den: 1 },
            ZPoint::TwoPi => Angle::RationalPi { num: 2, den: 1 },
            ZPoint::Real(x) => Angle::Radians(x),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::RationalPi { num, den } => {
                match num {
                    1 => f.write_str("pi")?,
                    -1 => f.write_str("-pi")?,
                    n => write!(f, "{n}pi")?,
                }
                if den != 1 {
                    write!(f, "/{den}")?;
                }
                Ok(())
            }
            Angle::Radians(z) => write!(f, "{z}"),
        }
    }
}

/// Accepts `pi`, `pi/2`, `2pi`, `3pi/4`, `3*pi/4` and decimal radians.
impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("cannot read angle `{s}`"));
        if let Some(pos) = t.find("pi") {
            let head = t[..pos].trim_end_matches('*');
            let tail = &t[pos + 2..];
            let num: i64 = match head {
                "" => 1,
                "-" => -1,
                h => h.parse().map_err(|_| bad())?,
            };
            let den: i64 = match tail {
                "" => 1,
                d => d
                    .strip_prefix('/')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?,
            };
            return Angle::rational_pi(num, den);
        }
        let v: f64 = t.parse().map_err(|_| bad())?;
        if !v.is_finite() {
            return Err(bad());
        }
        Ok(Angle::Radians(v))
    }
}

/// Which integral an [`IntegralSpec`] names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralForm {
    /// ∫₀ᶻ xⁿ logᵖ(sin x) dx
    PlainLogSin,
    /// Ls_{p+n+1}^{(n)}(z)
    LsNormalized,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralSpec {
    pub n: u32,
    pub p: u32,
    pub z: ZPoint,
    pub form: IntegralForm,
}

impl IntegralSpec {
    pub fn new(n: u32, p: u32, z: ZPoint, form: IntegralForm) -> Result<Self> {
        z.radians()?;
        if form == IntegralForm::PlainLogSin && z == ZPoint::TwoPi {
            return domain("log(sin x) is undefined past pi; use the Ls form at 2pi");
        }
        Ok(Self { n, p, z, form })
    }

    /// Quadrature value and error estimate.
    pub fn quadrature(&self, cfg: &crate::numerics::NumericConfig) -> Result<(f64, f64)> {
        let z = self.z.radians()?;
        match self.form {
            IntegralForm::PlainLogSin => xlogsin_quadrature(self.n, self.p, z, cfg),
            IntegralForm::LsNormalized => ls_quadrature(self.p, self.n, z, cfg),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_parsing() {
        assert_eq!(
            "pi/2".parse::<Angle>().unwrap(),
            Angle::RationalPi { num: 1, den: 2 }
        );
        assert_eq!(
            "2pi".parse::<Angle>().unwrap(),
            Angle::RationalPi { num: 2, den: 1 }
        );
        assert_eq!(
            "6*pi/8".parse::<Angle>().unwrap(),
            Angle::RationalPi { num: 3, den: 4 }
        );
        assert_eq!("1.25".parse::<Angle>().unwrap(), Angle::Radians(1.25));
        assert!("pi/0".parse::<Angle>().is_err());
        assert!("tau".parse::<Angle>().is_err());
        assert_eq!(ZPoint::from("pi".parse::<Angle>().unwrap()), ZPoint::Pi);
        assert_eq!(Angle::rational_pi(3, 4).unwrap().to_string(), "3pi/4");
        for s in ["pi/2", "pi", "2pi"] {
            assert_eq!(ZPoint::from(s.parse::<Angle>().unwrap()).to_string(), s);
        }
    }

    #[test]
    fn spec_validation() {
        assert!(IntegralSpec::new(1, 1, ZPoint::TwoPi, IntegralForm::PlainLogSin).is_err());
        assert!(IntegralSpec::new(1, 1, ZPoint::Real(7.0), IntegralForm::LsNormalized).is_err());
        assert!(IntegralSpec::new(1, 1, ZPoint::Real(1.0), IntegralForm::PlainLogSin).is_ok());
    }
}
