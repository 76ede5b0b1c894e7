use serde::{Deserialize, Serialize};

use super::{Generator, Monomial, Rational, SymbolicValue};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct TermJson {
    coef: String,
    mono: Vec<(String, u32)>,
}

#[derive(Serialize, Deserialize)]
struct ValueJson {
    terms: Vec<TermJson>,
}

impl SymbolicValue {
    /// `{"terms":[{"coef":"-11/720","mono":[["pi",4]]}, …]}`
    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| TermJson {
                coef: c.to_string(),
                mono: m.factors().map(|(g, e)| (g.name(), e)).collect(),
            })
            .collect();
        serde_json::to_value(ValueJson { terms }).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parsed: ValueJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut terms = Vec::with_capacity(parsed.terms.len());
        for t in parsed.terms {
            let coef: Rational = t
                .coef
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coef)))?;
            let mut factors = Vec::with_capacity(t.mono.len());
            for (name, e) in t.mono {
                if e == 0 {
                    return Err(Error::Parse("zero exponent in monomial".into()));
                }
                factors.push((Generator::from_name(&name)?, e));
            }
            terms.push((Monomial::from_factors(factors), coef));
        }
        Ok(SymbolicValue::from_terms(terms))
    }
}
