//! Text and JSON formats shared by the CLI and the bindings.
//!
//! Spec file (JSON):
//!
//! ```json
//! {"alphas": [{"value": "1/2", "geometric": false}], "betas": [], "gamma": "0", "q": "2"}
//! ```
//!
//! Rationals are strings `"p/q"` (decimals such as `"0.25"` are accepted on
//! input). `gamma` and `q` are optional; `q` is only a default for commands
//! that take `--q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{parse, render, Rational};
use crate::symfun::{ThomaEntry, ThomaSpec};

pub mod rational_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&render(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => parse(&s).map_err(serde::de::Error::custom),
            Raw::I(i) => Ok(Rational::from_integer(i.into())),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecFile {
    #[serde(default)]
    pub alphas: Vec<ThomaEntry>,
    #[serde(default)]
    pub betas: Vec<ThomaEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
}

impl SpecFile {
    /// Validated spec; a missing γ means γ = 0.
    pub fn spec(&self) -> Result<ThomaSpec> {
        let gamma = match &self.gamma {
            Some(g) => parse(g)?,
            None => Rational::from_integer(0.into()),
        };
        ThomaSpec::new(self.alphas.clone(), self.betas.clone(), gamma)
    }

    pub fn q(&self) -> Result<Option<Rational>> {
        self.q.as_deref().map(parse).transpose()
    }

    pub fn from_spec(spec: &ThomaSpec, q: Option<&Rational>) -> Self {
        SpecFile {
            alphas: spec.alphas().to_vec(),
            betas: spec.betas().to_vec(),
            gamma: Some(render(spec.gamma())),
            q: q.map(render),
        }
    }
}

pub fn parse_spec_json(text: &str) -> Result<SpecFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("spec file: {e}")))
}

pub fn read_spec_file(path: &std::path::Path) -> Result<SpecFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_spec_json(&text)
}

/// Exact value plus a decimal annotation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub num: String,
    pub den: String,
    pub decimal: String,
}

impl From<&Rational> for ExactValue {
    fn from(x: &Rational) -> Self {
        ExactValue {
            num: x.numer().to_string(),
            den: x.denom().to_string(),
            decimal: format!("{:.12e}", crate::rational::to_f64(x)),
        }
    }
}
