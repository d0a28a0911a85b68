//! Dimension bookkeeping for a semistable degeneration: Betti numbers of
//! the strata of the central fiber, the Mayer-Vietoris `E_2` page, and the
//! graded pieces of the limit cohomology.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::class::CohClass;
use crate::data::{theta_eta_class, Num, ThetaEtaPoly};
use crate::error::{Error, Result};
use crate::linalg::{rank, LinearMapQ, Matrix};
use crate::monomial::Monomial;
use crate::rational::{q, Q};
use crate::ring::{basis, betti_sym};
use crate::space::SpaceSpec;

const EMBEDDED_MODEL: &str = include_str!("../data/theta_tilde_0.toml");

/// A fibration over a curve with constant higher direct images plus
/// skyscraper corrections `(q, count)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationSpec {
    pub base_genus: u32,
    pub fiber_betti: Vec<u64>,
    #[serde(default)]
    pub corrections: Vec<(usize, u64)>,
}

/// `h^m = sum_{p+q=m} h^p(base) h^q(fiber)`, plus skyscrapers in `(0, q)`.
pub fn leray_curve_betti(f: &FibrationSpec) -> Vec<u64> {
    let base = [1, 2 * f.base_genus as u64, 1];
    let len = f.fiber_betti.len().max(f.corrections.iter().map(|c| c.0 + 1).max().unwrap_or(0)) + 2;
    let mut out = vec![0u64; len];
    for (p, b) in base.iter().enumerate() {
        for (qd, h) in f.fiber_betti.iter().enumerate() {
            out[p + qd] += b * h;
        }
    }
    for &(qd, n) in &f.corrections {
        out[qd] += n;
    }
    trim(out)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Betti numbers of the blow-up of `ambient` along a smooth center of
/// codimension `codim`.
pub fn blowup_betti(ambient: &[u64], center: &[u64], codim: usize) -> Result<Vec<u64>> {
    if codim < 2 {
        return Err(Error::InvalidArgument(format!("blow-up center needs codimension >= 2, got {codim}")));
    }
    let len = ambient.len().max(center.len() + 2 * (codim - 1));
    let mut out = vec![0u64; len];
    out[..ambient.len()].copy_from_slice(ambient);
    for j in 1..codim {
        for (k, c) in center.iter().enumerate() {
            out[k + 2 * j] += c;
        }
    }
    Ok(trim(out))
}

pub fn euler(b: &[u64]) -> i64 {
    b.iter().enumerate().map(|(k, x)| if k % 2 == 0 { *x as i64 } else { -(*x as i64) }).sum()
}

/// Smooth quadric of dimension `n`.
pub fn quadric_betti(n: usize) -> Vec<u64> {
    let mut v: Vec<u64> = (0..=2 * n).map(|k| u64::from(k % 2 == 0)).collect();
    if n.is_multiple_of(2) {
        v[n] = 2;
    }
    v
}

pub const W14_GENUS: u32 = 11;

/// One row of the strata table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrataRow {
    pub name: String,
    pub betti: Vec<u64>,
}

/// Betti numbers of the strata of the central fiber, padded to `h^0..h^8`.
pub fn strata_table() -> Vec<StrataRow> {
    let pad = |mut v: Vec<u64>| {
        v.resize(9, 0);
        v
    };
    let c14 = leray_curve_betti(&FibrationSpec { base_genus: W14_GENUS, fiber_betti: vec![1, 0, 1], corrections: vec![] });
    let c4 = betti_sym(5, 4);
    let m1 = blowup_betti(&c4, &c14, 2).expect("codim 2");
    let q3 = quadric_betti(3);
    // rank-4 quadric cone: the vertex adds one class in degree 4
    let q3sing = vec![1, 0, 1, 0, 2, 0, 1];
    let m12 = leray_curve_betti(&FibrationSpec { base_genus: W14_GENUS, fiber_betti: vec![1, 0, 2, 0, 1], corrections: vec![] });
    let m2 = leray_curve_betti(&FibrationSpec { base_genus: W14_GENUS, fiber_betti: q3.clone(), corrections: vec![(4, 10)] });
    [("C^1_4", c14), ("C^(4)", c4), ("M_1", m1), ("Q_3", q3), ("Q_3^sing", q3sing), ("M_12", m12), ("M_2", m2)]
        .into_iter()
        .map(|(n, b)| StrataRow { name: n.into(), betti: pad(b) })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summand {
    pub label: String,
    pub degree: u32,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Stratum {
    pub name: String,
    pub level: u32,
    #[serde(default = "one_i64")]
    pub sign: i64,
    #[serde(default)]
    pub betti: Option<Vec<u64>>,
    #[serde(rename = "summand", default)]
    pub summands: Vec<Summand>,
}

fn one_i64() -> i64 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Zero,
    Iso,
    SignIso,
    /// The first `dim(from)` coordinates of the target.
    Injective,
    Matrix,
    /// `omega -> int omega . class` over a symmetric product.
    Integral,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Block {
    pub degree: u32,
    pub from: String,
    pub to: String,
    pub rule: Rule,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Num>>>,
    #[serde(default)]
    pub genus: Option<u32>,
    #[serde(default)]
    pub n: Option<u32>,
    #[serde(default)]
    pub class: Option<ThetaEtaPoly>,
    /// Declared rank, compared with the computed one.
    #[serde(default)]
    pub rank: Option<usize>,
}

/// Labeled-summand description of a simple-normal-crossing central fiber.
#[derive(Debug, Clone, Deserialize)]
pub struct SNCModel {
    pub name: String,
    #[serde(rename = "stratum")]
    pub strata: Vec<Stratum>,
    #[serde(rename = "block", default)]
    pub blocks: Vec<Block>,
}

struct Loc {
    stratum: usize,
    summand: usize,
}

impl SNCModel {
    pub fn parse(text: &str) -> Result<Self> {
        let m: SNCModel = toml::from_str(text).map_err(|e| Error::Data(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The shipped model of the central fiber `M_1 + M_2`.
    pub fn theta_tilde_0() -> Self {
        Self::parse(EMBEDDED_MODEL).expect("embedded model parses")
    }

    pub fn max_level(&self) -> u32 {
        self.strata.iter().map(|s| s.level).max().unwrap_or(0)
    }

    fn locate(&self, key: &str) -> Result<Loc> {
        let (sname, label) = key
            .split_once(':')
            .ok_or_else(|| Error::InconsistentBlocks(format!("block end `{key}` must read STRATUM:LABEL")))?;
        let stratum = self
            .strata
            .iter()
            .position(|s| s.name == sname)
            .ok_or_else(|| Error::InconsistentBlocks(format!("unknown stratum `{sname}`")))?;
        let summand = self.strata[stratum]
            .summands
            .iter()
            .position(|s| s.label == label)
            .ok_or_else(|| Error::InconsistentBlocks(format!("unknown summand `{label}` of {sname}")))?;
        Ok(Loc { stratum, summand })
    }

    fn validate(&self) -> Result<()> {
        for s in &self.strata {
            for (i, a) in s.summands.iter().enumerate() {
                if s.summands[..i].iter().any(|b| b.label == a.label) {
                    return Err(Error::InconsistentBlocks(format!("summand `{}` of {} listed twice", a.label, s.name)));
                }
            }
            if let Some(b) = &s.betti {
                for d in self.degrees_of(s) {
                    let sum: usize = s.summands.iter().filter(|x| x.degree == d).map(|x| x.dim).sum();
                    if b.get(d as usize).copied().unwrap_or(0) != sum as u64 {
                        return Err(Error::InconsistentBlocks(format!(
                            "summands of {} in degree {d} add up to {sum}, Betti number is {}",
                            s.name,
                            b.get(d as usize).copied().unwrap_or(0)
                        )));
                    }
                }
            }
        }
        for b in &self.blocks {
            let (f, t) = (self.locate(&b.from)?, self.locate(&b.to)?);
            let (fs, ts) = (&self.strata[f.stratum], &self.strata[t.stratum]);
            let (fd, td) = (&fs.summands[f.summand], &ts.summands[t.summand]);
            if fd.degree != b.degree || td.degree != b.degree {
                return Err(Error::InconsistentBlocks(format!("block {} -> {} is not in degree {}", b.from, b.to, b.degree)));
            }
            if ts.level != fs.level + 1 {
                return Err(Error::InconsistentBlocks(format!("block {} -> {} does not raise the level by one", b.from, b.to)));
            }
            let m = self.block_matrix(b)?;
            if m.len() != td.dim || m.iter().any(|r| r.len() != fd.dim) {
                return Err(Error::InconsistentBlocks(format!(
                    "block {} -> {} has shape {}x{}, expected {}x{}",
                    b.from,
                    b.to,
                    m.len(),
                    m.first().map_or(0, |r| r.len()),
                    td.dim,
                    fd.dim
                )));
            }
            if let Some(r) = b.rank {
                let got = rank(&m);
                if got != r {
                    return Err(Error::InconsistentBlocks(format!(
                        "block {} -> {} declared rank {r}, computed {got}",
                        b.from, b.to
                    )));
                }
            }
        }
        Ok(())
    }

    fn degrees_of(&self, s: &Stratum) -> Vec<u32> {
        let mut d: Vec<u32> = s.summands.iter().map(|x| x.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn dims(&self, b: &Block) -> Result<(usize, usize)> {
        let (f, t) = (self.locate(&b.from)?, self.locate(&b.to)?);
        Ok((self.strata[t.stratum].summands[t.summand].dim, self.strata[f.stratum].summands[f.summand].dim))
    }

    /// The map of one block, without the stratum sign.
    pub fn block_matrix(&self, b: &Block) -> Result<Matrix> {
        let (rows, cols) = self.dims(b)?;
        let mut m = vec![vec![Q::zero(); cols]; rows];
        let bad = |msg: &str| Error::InconsistentBlocks(format!("block {} -> {}: {msg}", b.from, b.to));
        match b.rule {
            Rule::Zero => {}
            Rule::Iso | Rule::SignIso => {
                if rows != cols {
                    return Err(bad("an isomorphism needs equal dimensions"));
                }
                let v = if b.rule == Rule::Iso { Q::one() } else { -Q::one() };
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = v.clone();
                }
            }
            Rule::Injective => {
                if cols > rows {
                    return Err(bad("an injective map needs dim(from) <= dim(to)"));
                }
                for (i, row) in m.iter_mut().enumerate().take(cols) {
                    row[i] = Q::one();
                }
            }
            Rule::Matrix => {
                let given = b.matrix.as_ref().ok_or_else(|| bad("missing `matrix`"))?;
                m = given.iter().map(|r| r.iter().map(Num::value).collect::<Result<Vec<Q>>>()).collect::<Result<_>>()?;
            }
            Rule::Integral => {
                let (g, n) = (b.genus.ok_or_else(|| bad("missing `genus`"))?, b.n.ok_or_else(|| bad("missing `n`"))?);
                let poly = b.class.as_ref().ok_or_else(|| bad("missing `class`"))?;
                let row = integral_functional(g, n, b.degree, poly)?;
                if rows != 1 || row.len() != cols {
                    return Err(bad(&format!("functional has length {}, block is {rows}x{cols}", row.len())));
                }
                m = vec![row];
            }
        }
        Ok(m)
    }

    fn summands_at(&self, level: u32, degree: u32) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (si, s) in self.strata.iter().enumerate() {
            if s.level != level {
                continue;
            }
            for (j, x) in s.summands.iter().enumerate() {
                if x.degree == degree {
                    out.push((si, j));
                }
            }
        }
        out
    }

    /// `dim E_1^{p,q} = sum of h^q` over strata of level `p`.
    pub fn e1_dim(&self, p: u32, qd: u32) -> Result<usize> {
        let mut total = 0;
        for s in self.strata.iter().filter(|s| s.level == p) {
            let declared = s.summands.iter().any(|x| x.degree == qd);
            if declared {
                total += s.summands.iter().filter(|x| x.degree == qd).map(|x| x.dim).sum::<usize>();
            } else {
                match &s.betti {
                    Some(b) if b.get(qd as usize).copied().unwrap_or(0) == 0 => {}
                    _ => {
                        return Err(Error::InconsistentBlocks(format!(
                            "model does not describe H^{qd} of {}",
                            s.name
                        )))
                    }
                }
            }
        }
        Ok(total)
    }

    /// `d_1: E_1^{p,q} -> E_1^{p+1,q}` with labeled rows and columns.
    pub fn d1(&self, p: u32, qd: u32) -> Result<LinearMapQ> {
        let src = self.summands_at(p, qd);
        let dst = self.summands_at(p + 1, qd);
        let offsets = |list: &[(usize, usize)]| {
            let mut acc = 0;
            let mut v = Vec::new();
            for &(s, j) in list {
                v.push(acc);
                acc += self.strata[s].summands[j].dim;
            }
            (v, acc)
        };
        let (so, ncols) = offsets(&src);
        let (dofs, nrows) = offsets(&dst);
        let labels = |list: &[(usize, usize)]| -> Vec<String> {
            list.iter()
                .flat_map(|&(s, j)| {
                    let x = &self.strata[s].summands[j];
                    let name = &self.strata[s].name;
                    (0..x.dim).map(move |k| format!("{name}:{}[{k}]", x.label))
                })
                .collect()
        };
        let mut map = LinearMapQ::new(labels(&src), labels(&dst));
        debug_assert_eq!(map.matrix.len(), nrows);
        debug_assert!(map.matrix.iter().all(|r| r.len() == ncols));
        for b in self.blocks.iter().filter(|b| b.degree == qd) {
            let (f, t) = (self.locate(&b.from)?, self.locate(&b.to)?);
            if self.strata[f.stratum].level != p {
                continue;
            }
            let ci = src.iter().position(|x| *x == (f.stratum, f.summand)).unwrap();
            let ri = dst.iter().position(|x| *x == (t.stratum, t.summand)).unwrap();
            let sign = q(self.strata[f.stratum].sign);
            for (r, row) in self.block_matrix(b)?.into_iter().enumerate() {
                for (c, v) in row.into_iter().enumerate() {
                    if !v.is_zero() {
                        map.set(dofs[ri] + r, so[ci] + c, &sign * v);
                    }
                }
            }
        }
        Ok(map)
    }
}

/// The row `omega -> int_{C^(n)} omega . class` on the degree-`k` basis.
pub fn integral_functional(g: u32, n: u32, k: u32, poly: &ThetaEtaPoly) -> Result<Vec<Q>> {
    let s = SpaceSpec::sym(g, n);
    let class = theta_eta_class(&s, poly)?;
    Ok(basis(g, n, k)
        .into_iter()
        .map(|m| (&CohClass::from_terms(&s, [(Monomial::single(m), Q::one())]) * &class).integral())
        .collect())
}

/// Dimensions of `Gr_k^W H^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub m: u32,
    pub dims: BTreeMap<u32, u64>,
}

impl GradedDims {
    pub fn get(&self, k: u32) -> u64 {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }
}

/// `Gr_k H^m(Y_0) = E_2^{m-k,k}` from the `d_1` blocks of the model.
pub fn mv_e2(model: &SNCModel, m: u32) -> Result<GradedDims> {
    let top = model.max_level();
    let mut dims = BTreeMap::new();
    for k in 0..=m {
        let p = m - k;
        if p > top {
            dims.insert(k, 0);
            continue;
        }
        let e1 = model.e1_dim(p, k)?;
        let out_rank = if p < top && model.e1_dim(p + 1, k)? > 0 { model.d1(p, k)?.rank() } else { 0 };
        let in_rank = if p > 0 && model.e1_dim(p - 1, k)? > 0 { model.d1(p - 1, k)?.rank() } else { 0 };
        dims.insert(k, (e1 - out_rank - in_rank) as u64);
    }
    Ok(GradedDims { m, dims })
}

/// `d_1 = j_1^* - j_2^*` on `H^4(M_1) + H^4(M_2) -> H^4(M_12)`.
pub fn d1_degree4_blocks() -> Result<LinearMapQ> {
    SNCModel::theta_tilde_0().d1(0, 4)
}

/// Graded pieces of `H^4` of the general fiber from those of the central
/// fiber: `Gr_k` for `k <= 3` is `sum_j Gr_{k-2j}`, `Gr_4` loses the image
/// of `H^2(M_12)`, and `Gr_{8-k} = Gr_k` above the middle.
pub fn clemens_schmid_gr(h4: &GradedDims, h2_m12: u64) -> Result<GradedDims> {
    let mut dims = BTreeMap::new();
    for k in 0..=3u32 {
        let v: u64 = (0..=k / 2).map(|j| h4.get(k - 2 * j)).sum();
        dims.insert(k, v);
    }
    let g4 = h4.get(4) + h4.get(2) + h4.get(0);
    let g4 = g4.checked_sub(h2_m12).ok_or_else(|| {
        Error::InvalidArgument(format!("Gr_4 = {g4} is smaller than h^2(M_12) = {h2_m12}"))
    })?;
    dims.insert(4, g4);
    for k in 5..=8u32 {
        let v = dims[&(8 - k)];
        dims.insert(k, v);
    }
    Ok(GradedDims { m: 4, dims })
}

/// `h^m` of a theta divisor of a `g`-dimensional abelian variety in the
/// range where it agrees with the ambient, `m < g - 1`: `C(2g, m)`.
pub fn low_degree_betti(g: u32, upto: u32) -> Vec<u64> {
    (0..=upto).map(|m| binom_u(2 * g as u64, m as u64)).collect()
}

fn binom_u(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `g! - C(2g, g)/(g+1)`.
pub fn rank_k(g: u32) -> u64 {
    let fact: u64 = (1..=g as u64).product();
    fact - binom_u(2 * g as u64, g as u64) / (g as u64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn leray_rows() {
        let m2 = leray_curve_betti(&FibrationSpec { base_genus: 11, fiber_betti: quadric_betti(3), corrections: vec![(4, 10)] });
        assert_eq!(m2, vec![1, 22, 2, 22, 12, 22, 2, 22, 1]);
        let m12 = leray_curve_betti(&FibrationSpec { base_genus: 11, fiber_betti: vec![1, 0, 2, 0, 1], corrections: vec![] });
        assert_eq!(m12, vec![1, 22, 3, 44, 3, 22, 1]);
        let pt = leray_curve_betti(&FibrationSpec { base_genus: 0, fiber_betti: vec![1], corrections: vec![] });
        assert_eq!(pt, vec![1, 0, 1]);
    }

    #[test]
    fn blowups() {
        let c14 = vec![1, 22, 2, 22, 1];
        let b = blowup_betti(&betti_sym(5, 4), &c14, 2).unwrap();
        assert_eq!(b, vec![1, 10, 47, 152, 258, 152, 47, 10, 1]);
        assert_eq!(euler(&b), euler(&betti_sym(5, 4)) + euler(&c14));
        assert_eq!(blowup_betti(&[1, 0, 1, 0, 1], &[1], 2).unwrap(), vec![1, 0, 2, 0, 1]);
        assert!(blowup_betti(&[1], &[1], 1).is_err());
    }

    #[test]
    fn table() {
        let t = strata_table();
        assert_eq!(t.len(), 7);
        assert_eq!(t[1].betti, vec![1, 10, 46, 130, 256, 130, 46, 10, 1]);
        assert_eq!(t[3].betti, vec![1, 0, 1, 0, 1, 0, 1, 0, 0]);
        assert_eq!(t[6].betti[4], 12);
    }

    #[test]
    fn model_rows_match_table() {
        let m = SNCModel::theta_tilde_0();
        let t = strata_table();
        for s in &m.strata {
            let name = s.name.replace('M', "M_");
            let row = t.iter().find(|r| r.name == name).unwrap();
            let mut b = s.betti.clone().unwrap();
            b.resize(9, 0);
            assert_eq!(b, row.betti, "{}", s.name);
        }
    }

    #[test]
    fn theta_tilde_0_weights() {
        let m = SNCModel::theta_tilde_0();
        let gr = mv_e2(&m, 4).unwrap();
        assert_eq!((gr.get(3), gr.get(4)), (12, 267));
        assert!((0..=2).all(|k| gr.get(k) == 0));
        let d1 = d1_degree4_blocks().unwrap();
        assert_eq!((d1.domain.len(), d1.codomain.len()), (270, 3));
        assert!(d1.is_surjective());
        assert_eq!(d1.kernel_dim(), 267);
        assert_eq!(m.d1(0, 3).unwrap().rank(), 32);
        let cs = clemens_schmid_gr(&gr, 3).unwrap();
        assert_eq!((cs.get(3), cs.get(4), cs.get(5)), (12, 264, 12));
        assert_eq!(cs.total(), 288);
        assert_eq!(cs.get(4) + 2 * cs.get(3), 288);
    }

    #[test]
    fn c14_functional() {
        let poly: ThetaEtaPoly = vec![(Num::Text("1/2".into()), 2, 0), (Num::Int(-1), 1, 1)];
        let row = integral_functional(5, 4, 4, &poly).unwrap();
        // the eta^2 entry and the sigma_i eta entries
        let nonzero: Vec<&Q> = row.iter().filter(|x| !x.is_zero()).collect();
        assert_eq!(nonzero.len(), 6);
        assert!(nonzero.contains(&&q(5)));
        assert_eq!(nonzero.iter().filter(|x| ***x == q(2)).count(), 5);
    }

    #[test]
    fn cs_edge_cases() {
        let zero = GradedDims { m: 4, dims: BTreeMap::from([(4, 5)]) };
        let cs = clemens_schmid_gr(&zero, 0).unwrap();
        assert_eq!((cs.get(3), cs.get(5), cs.get(4)), (0, 0, 5));
        assert!(clemens_schmid_gr(&zero, 6).is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(low_degree_betti(5, 3), vec![1, 10, 45, 120]);
        assert_eq!(rank_k(5), 78);
    }

    #[test]
    fn bad_models() {
        let text = EMBEDDED_MODEL.replace("rule = \"iso\"\n\n# degree 4", "rule = \"injective\"\n\n# degree 4");
        assert!(SNCModel::parse(&text).is_ok());
        let text = EMBEDDED_MODEL.replace("dim = 120", "dim = 121");
        assert!(matches!(SNCModel::parse(&text), Err(Error::InconsistentBlocks(_))));
        let text = EMBEDDED_MODEL.replace("rank = 1", "rank = 2");
        assert!(matches!(SNCModel::parse(&text), Err(Error::InconsistentBlocks(_))));
        let text = EMBEDDED_MODEL.replace("to = \"M12:f tau1\"\nrule = \"matrix\"", "to = \"M12:nothing\"\nrule = \"matrix\"");
        assert!(SNCModel::parse(&text).is_err());
    }

    #[test]
    fn smooth_central_fiber_is_pure() {
        let betti = [1u64, 10, 46, 130, 256];
        let mut text = String::from("name = \"smooth\"\n[[stratum]]\nname = \"X\"\nlevel = 0\n");
        for (d, b) in betti.iter().enumerate() {
            text += &format!("[[stratum.summand]]\nlabel = \"h{d}\"\ndegree = {d}\ndim = {b}\n");
        }
        let model = SNCModel::parse(&text).unwrap();
        for (m, b) in betti.iter().enumerate() {
            let gr = mv_e2(&model, m as u32).unwrap();
            assert_eq!(gr.get(m as u32), *b);
            assert_eq!(gr.total(), *b);
        }
    }

    fn random_model(seed: u64) -> SNCModel {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut text = String::from("name = \"random\"\n");
        let names = [("A", 0), ("B", 0), ("AB", 1)];
        for (name, level) in names {
            text += &format!("[[stratum]]\nname = \"{name}\"\nlevel = {level}\nsign = {}\n", if name == "B" { -1 } else { 1 });
            for d in 0..=5 {
                let dim = if d == 5 { 0 } else { rng.gen_range(0..4) };
                text += &format!("[[stratum.summand]]\nlabel = \"h{d}\"\ndegree = {d}\ndim = {dim}\n");
            }
        }
        let model = SNCModel::parse(&text).unwrap();
        let dim = |s: &str, d: usize| model.strata.iter().find(|x| x.name == s).unwrap().summands[d].dim;
        for src in ["A", "B"] {
            for d in 0..=4usize {
                let (r, c) = (dim("AB", d), dim(src, d));
                let rows: Vec<String> = (0..r)
                    .map(|_| format!("[{}]", (0..c).map(|_| rng.gen_range(-2..3).to_string()).collect::<Vec<_>>().join(",")))
                    .collect();
                text += &format!(
                    "[[block]]\ndegree = {d}\nfrom = \"{src}:h{d}\"\nto = \"AB:h{d}\"\nrule = \"matrix\"\nmatrix = [{}]\n",
                    rows.join(",")
                );
            }
        }
        SNCModel::parse(&text).unwrap()
    }

    #[test]
    fn euler_characteristic_of_e1_is_preserved() {
        for seed in 0..20 {
            let m = random_model(seed);
            let mut e1 = 0i64;
            for p in 0..=1u32 {
                for d in 0..=4u32 {
                    let v = m.e1_dim(p, d).unwrap() as i64;
                    e1 += if (p + d) % 2 == 0 { v } else { -v };
                }
            }
            let mut e2 = 0i64;
            for total in 0..=5u32 {
                let gr = mv_e2(&m, total).unwrap();
                let s: i64 = (0..=total).filter(|k| *k <= 4).map(|k| gr.get(k) as i64).sum();
                e2 += if total % 2 == 0 { s } else { -s };
            }
            assert_eq!(e1, e2, "seed {seed}");
        }
    }
}
