//! Spaces: ordered products of symmetric products of a curve and abelian
//! varieties (Jacobian-type tori).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported genus; odd generators are stored in a `u64` bitmask.
pub const MAX_GENUS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FactorSpec {
    /// `C^(n)` for a curve of genus `g`.
    SymCurve { genus: u32, n: u32 },
    /// A principally polarized abelian variety of dimension `g` (no `eta`).
    AbelianTorus { genus: u32 },
}

impl FactorSpec {
    pub fn sym(genus: u32, n: u32) -> Self {
        FactorSpec::SymCurve { genus, n }
    }

    pub fn ab(genus: u32) -> Self {
        FactorSpec::AbelianTorus { genus }
    }

    pub fn genus(&self) -> u32 {
        match *self {
            FactorSpec::SymCurve { genus, .. } | FactorSpec::AbelianTorus { genus } => genus,
        }
    }

    /// Complex dimension.
    pub fn dim(&self) -> u32 {
        match *self {
            FactorSpec::SymCurve { n, .. } => n,
            FactorSpec::AbelianTorus { genus } => genus,
        }
    }

    /// Real dimension, i.e. the degree of the fundamental class.
    pub fn top_degree(&self) -> u32 {
        2 * self.dim()
    }

    pub fn has_eta(&self) -> bool {
        matches!(self, FactorSpec::SymCurve { .. })
    }

    fn validate(&self) -> Result<()> {
        let g = self.genus();
        if g == 0 || g > MAX_GENUS {
            return Err(Error::InvalidSpace(format!(
                "genus must be between 1 and {MAX_GENUS}, got {g}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FactorSpec::SymCurve { genus, n } => write!(f, "sym({genus},{n})"),
            FactorSpec::AbelianTorus { genus } => write!(f, "ab({genus})"),
        }
    }
}

/// An ordered, nonempty product of factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceSpec {
    factors: Vec<FactorSpec>,
}

impl SpaceSpec {
    pub fn new(factors: Vec<FactorSpec>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidSpace("a space needs at least one factor".into()));
        }
        for f in &factors {
            f.validate()?;
        }
        Ok(SpaceSpec { factors })
    }

    pub fn single(f: FactorSpec) -> Self {
        SpaceSpec::new(vec![f]).expect("invalid factor")
    }

    pub fn sym(genus: u32, n: u32) -> Self {
        Self::single(FactorSpec::sym(genus, n))
    }

    pub fn ab(genus: u32) -> Self {
        Self::single(FactorSpec::ab(genus))
    }

    /// Shorthand for a product of symmetric products of one curve.
    pub fn syms(genus: u32, exps: &[u32]) -> Self {
        SpaceSpec::new(exps.iter().map(|&n| FactorSpec::sym(genus, n)).collect())
            .expect("invalid factor")
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn factor(&self, k: usize) -> FactorSpec {
        self.factors[k]
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn dim(&self) -> u32 {
        self.factors.iter().map(|f| f.dim()).sum()
    }

    pub fn top_degree(&self) -> u32 {
        2 * self.dim()
    }

    /// Sub-product on the factors `range`.
    pub fn slice(&self, start: usize, len: usize) -> SpaceSpec {
        SpaceSpec { factors: self.factors[start..start + len].to_vec() }
    }

    /// Replaces `len` factors starting at `start` by `with`.
    pub fn splice(&self, start: usize, len: usize, with: &[FactorSpec]) -> SpaceSpec {
        let mut factors = self.factors[..start].to_vec();
        factors.extend_from_slice(with);
        factors.extend_from_slice(&self.factors[start + len..]);
        SpaceSpec { factors }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{fac}")?;
        }
        Ok(())
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    /// Parses `sym(g,n)` and `ab(g)` joined by `x`.
    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        let mut parts = Vec::new();
        let (mut depth, mut start) = (0i32, 0usize);
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                'x' if depth == 0 => {
                    parts.push(&s[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push(&s[start..]);
        for part in parts {
            let part = part.trim();
            let part = part.strip_suffix(')').unwrap_or(part);
            let bad = || Error::InvalidSpace(format!("cannot parse factor `{part}` in `{s}`"));
            let (name, args) = part.split_once('(').ok_or_else(bad)?;
            let args: Vec<u32> = args
                .split(',')
                .map(|a| a.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad())?;
            let f = match (name.trim(), args.as_slice()) {
                ("sym", [g, n]) => FactorSpec::sym(*g, *n),
                ("ab", [g]) => FactorSpec::ab(*g),
                _ => return Err(bad()),
            };
            factors.push(f);
        }
        SpaceSpec::new(factors)
    }
}

/// Per-factor cohomological degrees of a Künneth component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl From<&[u32]> for MultiDegree {
    fn from(v: &[u32]) -> Self {
        MultiDegree(v.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let s: SpaceSpec = "sym(5,3) x sym(5,3) x sym(5,4)".parse().unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_string(), "sym(5,3) x sym(5,3) x sym(5,4)");
        assert_eq!(s.dim(), 10);
        let t: SpaceSpec = "ab(5)".parse().unwrap();
        assert_eq!(t.factor(0), FactorSpec::ab(5));
        let u: SpaceSpec = "sym(5,1)x sym(5,3)".parse().unwrap();
        assert_eq!(u, SpaceSpec::syms(5, &[1, 3]));
    }

    #[test]
    fn parse_errors() {
        assert!("sym(5)".parse::<SpaceSpec>().is_err());
        assert!("foo(1,2)".parse::<SpaceSpec>().is_err());
        assert!("sym(0,2)".parse::<SpaceSpec>().is_err());
        assert!("".parse::<SpaceSpec>().is_err());
    }
}
