//! Cited intersection constants, loaded from a TOML data file.

use std::path::Path;

use serde::Deserialize;

use crate::class::{gens, CohClass};
use crate::error::{Error, Result};
use crate::rational::{q, Q};
use crate::space::SpaceSpec;

/// Environment variable naming a replacement constants file.
pub const CONSTANTS_ENV: &str = "SYMCOH_CONSTANTS";

const EMBEDDED: &str = include_str!("../data/constants.toml");

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    pub fn value(&self) -> Result<Q> {
        match self {
            Num::Int(n) => Ok(q(*n)),
            Num::Text(s) => {
                let s = s.trim();
                let (a, b) = s.split_once('/').unwrap_or((s, "1"));
                let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::Data(format!("bad rational `{s}`")));
                let (a, b) = (parse(a)?, parse(b)?);
                if b == 0 {
                    return Err(Error::Data(format!("zero denominator in `{s}`")));
                }
                Ok(crate::rational::qf(a, b))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct WpqData {
    pub theta_dot_xq: Num,
    pub xq_squared: Num,
    pub c1_dot_xq: Num,
}

#[derive(Debug, Clone, Deserialize)]
pub struct W14Data {
    pub genus: i64,
    pub theta_degree: i64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct X2Data {
    pub genus: u32,
    pub g14_degree: i64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CurveData {
    pub ci_ci: Num,
    pub cpi_cpi: Num,
    pub ci_cpi: Num,
    pub ci_cj: Num,
    pub cpi_cpj: Num,
    pub ci_cpj: Num,
}

/// A `theta`/`eta` polynomial: `(coefficient, theta power, eta power)` triples.
pub type ThetaEtaPoly = Vec<(Num, u32, u32)>;

#[derive(Debug, Clone, Deserialize)]
pub struct PushData {
    pub q1_ci: ThetaEtaPoly,
    pub q1_cpi: ThetaEtaPoly,
    pub q1_x1p: ThetaEtaPoly,
    pub q1_x1q: ThetaEtaPoly,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Constants {
    pub w_pq: WpqData,
    pub w14: W14Data,
    pub x2: X2Data,
    pub curves: CurveData,
    pub pushforwards: PushData,
}

impl Constants {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Data(e.to_string()))
    }

    pub fn embedded() -> Self {
        Self::parse(EMBEDDED).expect("embedded constants parse")
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The file named by `SYMCOH_CONSTANTS`, or the built-in copy.
    pub fn load() -> Result<Self> {
        match std::env::var_os(CONSTANTS_ENV) {
            Some(p) => Self::from_path(Path::new(&p)),
            None => Ok(Self::embedded()),
        }
    }
}

/// Builds a `theta`/`eta` polynomial on a single symmetric product.
pub fn theta_eta_class(space: &SpaceSpec, poly: &ThetaEtaPoly) -> Result<CohClass> {
    let terms: Vec<(Q, u32, u32)> =
        poly.iter().map(|(c, a, b)| Ok((c.value()?, *a, *b))).collect::<Result<_>>()?;
    Ok(gens::theta_eta(space, &terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn embedded_file_parses() {
        let c = Constants::embedded();
        assert_eq!(c.w_pq.theta_dot_xq.value().unwrap(), q(10));
        assert_eq!(c.w14.genus, 11);
        assert_eq!(c.pushforwards.q1_ci[0].0.value().unwrap(), qf(1, 2));
        assert_eq!(c.curves.ci_cpj.value().unwrap(), q(2));
    }

    #[test]
    fn bad_rational() {
        assert!(Num::Text("1/0".into()).value().is_err());
        assert!(Num::Text("x".into()).value().is_err());
    }
}
