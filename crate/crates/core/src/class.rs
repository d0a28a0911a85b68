//! Cohomology classes: exact linear combinations of normal-form monomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{indices_valid, FactorMono, Monomial};
use crate::rational::{coef_prefix, fmt_q, q, Q};
use crate::ring::{integrate_factor_mono, normalize_mono};
use crate::space::{FactorSpec, SpaceSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohClass {
    space: SpaceSpec,
    terms: BTreeMap<Monomial, Q>,
}

/// Result of integration: the value, and whether any part of the class was
/// not of top degree (that part contributes nothing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Integral {
    pub value: Q,
    pub non_top_degree: bool,
}

/// Normal form of a product-space monomial: the tensor product of the
/// per-factor normal forms. Normal forms preserve degree, so no extra signs.
pub fn normalize_monomial(m: &Monomial, space: &SpaceSpec) -> Vec<(Monomial, Q)> {
    let mut acc: Vec<(Vec<FactorMono>, Q)> = vec![(Vec::with_capacity(m.0.len()), Q::one())];
    for (fm, f) in m.0.iter().zip(space.factors()) {
        let nf = normalize_mono(fm, f);
        if nf.is_empty() {
            return Vec::new();
        }
        if nf.len() == 1 && nf[0].1.is_one() {
            for (v, _) in acc.iter_mut() {
                v.push(nf[0].0);
            }
            continue;
        }
        let mut next = Vec::with_capacity(acc.len() * nf.len());
        for (v, c) in &acc {
            for (t, c2) in nf.iter() {
                let mut w = v.clone();
                w.push(*t);
                next.push((w, c * c2));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(v, c)| (Monomial(v), c)).collect()
}

impl CohClass {
    pub fn zero(space: &SpaceSpec) -> Self {
        CohClass { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn one(space: &SpaceSpec) -> Self {
        Self::scalar(space, Q::one())
    }

    pub fn scalar(space: &SpaceSpec, c: Q) -> Self {
        let mut out = Self::zero(space);
        out.add_term(Monomial::one(space.len()), c);
        out
    }

    /// Builds a class from raw (possibly non-normal) monomials.
    pub fn from_terms(space: &SpaceSpec, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut out = Self::zero(space);
        for (m, c) in terms {
            out.add_raw(&m, c);
        }
        out
    }

    /// Builds a class from a single raw monomial, checking generator indices.
    pub fn monomial(space: &SpaceSpec, m: Monomial, c: Q) -> Result<Self> {
        if m.0.len() != space.len() {
            return Err(Error::FactorMismatch(format!(
                "monomial has {} factors, space {space} has {}",
                m.0.len(),
                space.len()
            )));
        }
        if !indices_valid(&m, space) {
            return Err(Error::InvalidArgument(format!("generator out of range on {space}")));
        }
        Ok(Self::from_terms(space, [(m, c)]))
    }

    fn factor_gen(space: &SpaceSpec, k: usize, fm: FactorMono) -> Result<Self> {
        if k >= space.len() {
            return Err(Error::IndexOutOfRange { index: k as u32 + 1, factor: space.to_string() });
        }
        let mut m = Monomial::one(space.len());
        m.0[k] = fm;
        Self::monomial(space, m, Q::one())
    }

    /// `eta` on factor `k` (0-based).
    pub fn eta(space: &SpaceSpec, k: usize) -> Result<Self> {
        if k < space.len() && !space.factor(k).has_eta() {
            return Err(Error::InvalidArgument(format!(
                "{} carries no eta generator",
                space.factor(k)
            )));
        }
        Self::factor_gen(space, k, FactorMono::eta(1))
    }

    /// `xi_i` on factor `k` (0-based), `1 <= i <= 2g`.
    pub fn xi(space: &SpaceSpec, k: usize, i: u32) -> Result<Self> {
        if k < space.len() && (i == 0 || i > 2 * space.factor(k).genus()) {
            return Err(Error::IndexOutOfRange { index: i, factor: space.factor(k).to_string() });
        }
        Self::factor_gen(space, k, FactorMono::xi(i.max(1)))
    }

    /// `sigma_i = xi_i xi_{i+g}` on factor `k`, `1 <= i <= g`.
    pub fn sigma(space: &SpaceSpec, k: usize, i: u32) -> Result<Self> {
        let g = if k < space.len() { space.factor(k).genus() } else { 0 };
        if k < space.len() && (i == 0 || i > g) {
            return Err(Error::IndexOutOfRange { index: i, factor: space.factor(k).to_string() });
        }
        Self::factor_gen(space, k, FactorMono::from_indices(&[i.max(1), i.max(1) + g], 0))
    }

    /// `theta = sum_i sigma_i` on factor `k`.
    pub fn theta(space: &SpaceSpec, k: usize) -> Result<Self> {
        if k >= space.len() {
            return Err(Error::IndexOutOfRange { index: k as u32 + 1, factor: space.to_string() });
        }
        let mut out = Self::zero(space);
        for i in 1..=space.factor(k).genus() {
            out = &out + &Self::sigma(space, k, i)?;
        }
        Ok(out)
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `c * m` for `m` already in normal form.
    pub(crate) fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `c * m` for an arbitrary monomial, normalizing it first.
    pub(crate) fn add_raw(&mut self, m: &Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        for (n, c2) in normalize_monomial(m, &self.space) {
            self.add_term(n, &c * c2);
        }
    }

    fn check_space(&self, other: &CohClass) -> Result<()> {
        if self.space != other.space {
            return Err(Error::IncompatibleSpaces(self.space.to_string(), other.space.to_string()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CohClass) -> Result<CohClass> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &CohClass) -> Result<CohClass> {
        self.try_add(&-other)
    }

    /// Graded-commutative product, reduced to normal form.
    pub fn try_mul(&self, other: &CohClass) -> Result<CohClass> {
        self.check_space(other)?;
        let mut out = CohClass::zero(&self.space);
        let top = self.space.top_degree();
        for (a, ca) in &self.terms {
            let da = a.degree();
            for (b, cb) in &other.terms {
                if da + b.degree() > top {
                    continue;
                }
                if let Some((neg, m)) = a.mul_raw(b) {
                    let c = ca * cb;
                    out.add_raw(&m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> CohClass {
        if c.is_zero() {
            return CohClass::zero(&self.space);
        }
        CohClass {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> CohClass {
        let mut out = CohClass::one(&self.space);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// The homogeneous part of degree `k`.
    pub fn degree_part(&self, k: u32) -> CohClass {
        self.filter(|m| m.degree() == k)
    }

    /// Keeps the terms satisfying `pred`.
    pub fn filter(&self, pred: impl Fn(&Monomial) -> bool) -> CohClass {
        CohClass {
            space: self.space.clone(),
            terms: self.terms.iter().filter(|(m, _)| pred(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Drops every part of degree above `k`.
    pub fn truncate(&self, k: u32) -> CohClass {
        self.filter(|m| m.degree() <= k)
    }

    /// The degree when the class is nonzero and homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(|m| m.degree()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Integral over the product space, factor by factor.
    pub fn integrate(&self) -> Integral {
        let top = self.space.top_degree();
        let mut value = Q::zero();
        let mut non_top = false;
        for (m, c) in &self.terms {
            if m.degree() != top {
                non_top = true;
                continue;
            }
            let mut v = c.clone();
            for (fm, f) in m.0.iter().zip(self.space.factors()) {
                v *= integrate_factor_mono(fm, f);
                if v.is_zero() {
                    break;
                }
            }
            value += v;
        }
        Integral { value, non_top_degree: non_top }
    }

    /// Shorthand for `integrate().value`.
    pub fn integral(&self) -> Q {
        self.integrate().value
    }

    /// Rebuilds the class on another space with the same factor layout
    /// (used by maps that reinterpret monomials).
    /// Writes the class as a polynomial in `theta` and `eta` when it lies in
    /// `Q[theta, eta]` on a single symmetric-product factor.
    pub fn theta_eta_form(&self) -> Option<Vec<(u32, u32, Q)>> {
        if self.space.len() != 1 || !self.space.factor(0).has_eta() {
            return None;
        }
        let mut out = Vec::new();
        for k in self.degrees() {
            if k % 2 == 1 {
                return None;
            }
            let part = self.degree_part(k);
            let half = k / 2;
            let theta = CohClass::theta(&self.space, 0).ok()?;
            let eta = CohClass::eta(&self.space, 0).ok()?;
            let cands: Vec<(u32, CohClass)> =
                (0..=half).map(|j| (j, &theta.pow(j) * &eta.pow(half - j))).collect();
            let sol = crate::linalg::express_in(&part, &cands.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>())?;
            for ((j, _), c) in cands.iter().zip(sol).rev() {
                if !c.is_zero() {
                    out.push((*j, half - j, c));
                }
            }
        }
        Some(out)
    }

    /// Canonical text of the raw monomial expansion.
    pub fn to_monomial_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut items: Vec<(&Monomial, &Q)> = self.terms.iter().collect();
        items.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        let mut s = String::new();
        for (i, (m, c)) in items.into_iter().enumerate() {
            let body = m.display(&self.space);
            push_term(&mut s, c, &body, i == 0);
        }
        s
    }

    /// Term list for machine-readable output.
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(m, c)| JsonTerm { monomial: m.display(&self.space), coefficient: fmt_q(c) })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JsonTerm {
    pub monomial: String,
    pub coefficient: String,
}

fn push_term(s: &mut String, c: &Q, body: &str, first: bool) {
    let (prefix, unit) = coef_prefix(c, first);
    s.push_str(&prefix);
    if body == "1" {
        if unit {
            s.push('1');
        } else {
            s.pop(); // drop the trailing '*'
        }
    } else {
        s.push_str(body);
    }
}

fn theta_eta_body(j: u32, e: u32) -> String {
    let mut parts = Vec::new();
    match j {
        0 => {}
        1 => parts.push("theta".to_string()),
        _ => parts.push(format!("theta^{j}")),
    }
    match e {
        0 => {}
        1 => parts.push("eta".to_string()),
        _ => parts.push(format!("eta^{e}")),
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if let Some(poly) = self.theta_eta_form() {
            let mut s = String::new();
            for (i, (j, e, c)) in poly.iter().enumerate() {
                push_term(&mut s, c, &theta_eta_body(*j, *e), i == 0);
            }
            return write!(f, "{s}");
        }
        write!(f, "{}", self.to_monomial_string())
    }
}

impl Add for &CohClass {
    type Output = CohClass;
    fn add(self, rhs: &CohClass) -> CohClass {
        self.try_add(rhs).expect("incompatible spaces")
    }
}

impl Sub for &CohClass {
    type Output = CohClass;
    fn sub(self, rhs: &CohClass) -> CohClass {
        self.try_sub(rhs).expect("incompatible spaces")
    }
}

impl Mul for &CohClass {
    type Output = CohClass;
    fn mul(self, rhs: &CohClass) -> CohClass {
        self.try_mul(rhs).expect("incompatible spaces")
    }
}

impl Neg for &CohClass {
    type Output = CohClass;
    fn neg(self) -> CohClass {
        self.scale(&q(-1))
    }
}

impl Add for CohClass {
    type Output = CohClass;
    fn add(self, rhs: CohClass) -> CohClass {
        &self + &rhs
    }
}

impl Sub for CohClass {
    type Output = CohClass;
    fn sub(self, rhs: CohClass) -> CohClass {
        &self - &rhs
    }
}

impl Mul for CohClass {
    type Output = CohClass;
    fn mul(self, rhs: CohClass) -> CohClass {
        &self * &rhs
    }
}

impl Neg for CohClass {
    type Output = CohClass;
    fn neg(self) -> CohClass {
        -&self
    }
}

/// Convenience builders on a single factor space.
pub mod gens {
    use super::*;

    pub fn eta(s: &SpaceSpec) -> CohClass {
        CohClass::eta(s, 0).expect("eta")
    }

    pub fn theta(s: &SpaceSpec) -> CohClass {
        CohClass::theta(s, 0).expect("theta")
    }

    pub fn sigma(s: &SpaceSpec, i: u32) -> CohClass {
        CohClass::sigma(s, 0, i).expect("sigma")
    }

    pub fn xi(s: &SpaceSpec, i: u32) -> CohClass {
        CohClass::xi(s, 0, i).expect("xi")
    }

    pub fn c(s: &SpaceSpec, x: Q) -> CohClass {
        CohClass::scalar(s, x)
    }

    /// `sum_{j} c_j theta^{a_j} eta^{b_j}` on a single factor.
    pub fn theta_eta(s: &SpaceSpec, terms: &[(Q, u32, u32)]) -> CohClass {
        let (t, e) = (theta(s), eta(s));
        let mut out = CohClass::zero(s);
        for (c, a, b) in terms {
            out = &out + &(&t.pow(*a) * &e.pow(*b)).scale(c);
        }
        out
    }

    pub fn factor(s: &SpaceSpec) -> FactorSpec {
        s.factor(0)
    }
}

#[cfg(test)]
mod tests {
    use super::gens::*;
    use super::*;
    use crate::rational::qf;

    #[test]
    fn sigma_products_on_c3() {
        let s = SpaceSpec::sym(5, 3);
        let lhs = &sigma(&s, 1) * &sigma(&s, 2);
        let e = eta(&s);
        let rhs = &(&e * &(&sigma(&s, 1) + &sigma(&s, 2))) - &e.pow(2);
        assert_eq!(lhs, rhs);
        assert_eq!(&e.pow(2) * &sigma(&s, 4), e.pow(3));
    }

    #[test]
    fn theta_squared_relation() {
        let s = SpaceSpec::sym(5, 3);
        let t = theta(&s);
        let lhs = t.pow(2).scale(&qf(1, 2));
        let rhs = theta_eta(&s, &[(q(4), 1, 1), (q(-10), 0, 2)]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn integrals_on_c3() {
        let s = SpaceSpec::sym(5, 3);
        let (t, e) = (theta(&s), eta(&s));
        assert_eq!(t.pow(3).integral(), q(60));
        assert_eq!((&t.pow(2) * &e).integral(), q(20));
        assert_eq!((&t * &e.pow(2)).integral(), q(5));
        assert_eq!((&(&t - &e) * &e.pow(2)).integral(), q(4));
        let i = t.integrate();
        assert!(i.non_top_degree);
        assert_eq!(i.value, q(0));
    }

    #[test]
    fn torus_normalization() {
        let s = SpaceSpec::ab(5);
        let t = theta(&s);
        assert_eq!(t.pow(5).scale(&qf(1, 120)).integral(), q(1));
    }

    #[test]
    fn display_forms() {
        let s = SpaceSpec::sym(5, 3);
        let (t, e) = (theta(&s), eta(&s));
        assert_eq!((&t - &e).to_string(), "theta - eta");
        assert_eq!(t.pow(3).to_string(), "60*eta^3");
        let m = CohClass::monomial(&s, Monomial::single(FactorMono::from_indices(&[1, 6], 1)), q(-1)).unwrap();
        let x = &e.pow(2).scale(&qf(3, 2)) + &m;
        assert_eq!(x.to_monomial_string(), "3/2*eta^2 - xi(1)*xi(6)*eta");
        assert_eq!(CohClass::scalar(&s, q(-2)).to_string(), "-2");
    }

    #[test]
    fn graded_commutativity_of_odd_classes() {
        let s = SpaceSpec::sym(5, 3);
        let a = xi(&s, 1);
        let b = xi(&s, 7);
        assert_eq!(&a * &b, -(&b * &a));
        assert!((&a * &a).is_zero());
    }

    #[test]
    fn mismatched_spaces() {
        let a = CohClass::one(&SpaceSpec::sym(5, 3));
        let b = CohClass::one(&SpaceSpec::sym(5, 4));
        assert!(matches!(a.try_mul(&b), Err(Error::IncompatibleSpaces(..))));
    }
}
