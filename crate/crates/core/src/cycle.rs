//! Cycle classes of the correspondence restricted to `W x C^(4)`, built
//! from secant classes on a genus-5 curve, and the quotient of
//! `H^4(C^(4))`-valued classes by `theta H^2(Pic)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock, Mutex};

use num_traits::{One, Zero};

use crate::chern::secant_class;
use crate::class::CohClass;
use crate::error::{Error, Result};
use crate::linalg::QuotientReducer;
use crate::maps::{gysin_on_factors, involution_on_factor, pull_sum, w_restrict};
use crate::monomial::{FactorMono, Monomial};
use crate::product::{delta, inject_multi, multidegrees};
use crate::rational::{q, qf, Q};
use crate::ring::factor_basis;
use crate::space::{FactorSpec, MultiDegree, SpaceSpec};

pub const GENUS: u32 = 5;

/// `C^(3) x C^(3) x C^(4)`, where all cycle classes end up.
pub fn target_space() -> SpaceSpec {
    SpaceSpec::syms(GENUS, &[3, 3, 4])
}

/// The three bidegrees with a nonzero `H^2 (x) H^4` component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bidegree {
    FourOneTwoThree,
    TwoThreeFourOne,
    TwoThreeTwoThree,
}

impl Bidegree {
    pub const ALL: [Bidegree; 3] = [Bidegree::FourOneTwoThree, Bidegree::TwoThreeFourOne, Bidegree::TwoThreeTwoThree];
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bidegree::FourOneTwoThree => "(4,1)(2,3)",
            Bidegree::TwoThreeFourOne => "(2,3)(4,1)",
            Bidegree::TwoThreeTwoThree => "(2,3)(2,3)",
        })
    }
}

impl FromStr for Bidegree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "(4,1)(2,3)" | "(4,1)+(2,3)" => Ok(Bidegree::FourOneTwoThree),
            "(2,3)(4,1)" | "(2,3)+(4,1)" => Ok(Bidegree::TwoThreeFourOne),
            "(2,3)(2,3)" | "(2,3)+(2,3)" => Ok(Bidegree::TwoThreeTwoThree),
            _ => Err(Error::InvalidArgument(format!(
                "unknown bidegree `{s}`; expected (4,1)(2,3), (2,3)(4,1) or (2,3)(2,3)"
            ))),
        }
    }
}

/// A bidegree class with its Künneth pieces, each already pushed to the
/// target space.
#[derive(Debug, Clone)]
pub struct BidegreeClass {
    pub tag: Bidegree,
    /// The full class on the four-factor source product.
    pub raw: CohClass,
    pub pieces: Vec<(MultiDegree, CohClass)>,
    /// Sum of the pieces, after the involution where it applies.
    pub class: CohClass,
}

/// Pulls a secant class on `C^(a+b)` back to the factors `at` of `space`.
fn pulled_secant(d: u32, r: u32, a: u32, b: u32, space: &SpaceSpec, at: [usize; 2]) -> Result<CohClass> {
    let s = secant_class(d, GENUS, r, a + b)?;
    inject_multi(&pull_sum(&s, a)?, space, &at)
}

fn source_class(tag: Bidegree) -> Result<CohClass> {
    match tag {
        Bidegree::FourOneTwoThree => {
            let s = SpaceSpec::syms(GENUS, &[3, 3, 1, 3]);
            let a = pulled_secant(8, 4, 3, 3, &s, [1, 3])?;
            let b = pulled_secant(7, 3, 3, 1, &s, [0, 2])?;
            Ok(&a * &b)
        }
        Bidegree::TwoThreeFourOne => {
            let s = SpaceSpec::syms(GENUS, &[3, 3, 1, 3]);
            pulled_secant(7, 3, 3, 3, &s, [0, 3])
        }
        Bidegree::TwoThreeTwoThree => {
            let s = SpaceSpec::syms(GENUS, &[3, 3, 2, 2]);
            let a = pulled_secant(8, 4, 3, 2, &s, [0, 2])?;
            let b = pulled_secant(8, 4, 3, 2, &s, [1, 3])?;
            Ok(&(&a * &b) * &CohClass::eta(&s, 2)?)
        }
    }
}

/// Builds the `H^2(C^(3) x C^(3)) (x) H^4(C^(4))` component of the cycle
/// class in one bidegree.
pub fn bidegree_class(tag: Bidegree) -> Result<BidegreeClass> {
    let raw = source_class(tag)?;
    let wanted = raw.filter(|m| {
        let d = m.multidegree();
        d[0] + d[1] == 2 && d[2] + d[3] == 4
    });
    let mut pieces = Vec::new();
    let mut sum = CohClass::zero(&target_space());
    for md in multidegrees(&wanted) {
        let part = crate::product::kunneth_component(&wanted, &md);
        let pushed = gysin_on_factors(&part, 2)?;
        sum = &sum + &pushed;
        pieces.push((md, pushed));
    }
    let class = match tag {
        Bidegree::TwoThreeTwoThree => involution_on_factor(&sum, 2)?,
        _ => sum,
    };
    Ok(BidegreeClass { tag, raw, pieces, class })
}

/// Sum of the three bidegree classes on `C^(3) x C^(3) x C^(4)`.
pub fn total_class() -> Result<CohClass> {
    let mut out = CohClass::zero(&target_space());
    for tag in Bidegree::ALL {
        out = &out + &bidegree_class(tag)?.class;
    }
    Ok(out)
}

/// The total class restricted to `W x C^(4)`.
pub fn restricted_total_class() -> Result<CohClass> {
    w_restrict(&total_class()?)
}

/// Named generators on the target space (factors numbered from 1).
struct Gens {
    s: SpaceSpec,
}

impl Gens {
    fn new() -> Self {
        Gens { s: target_space() }
    }
    fn t(&self, k: usize) -> CohClass {
        CohClass::theta(&self.s, k - 1).unwrap()
    }
    fn e(&self, k: usize) -> CohClass {
        CohClass::eta(&self.s, k - 1).unwrap()
    }
    fn d(&self, k: usize, l: usize) -> CohClass {
        delta(&self.s, k - 1, l - 1).unwrap()
    }
    fn c(&self, x: Q) -> CohClass {
        CohClass::scalar(&self.s, x)
    }
    /// `theta^2/2 - theta eta + eta^2` on factor `k`.
    fn quad(&self, k: usize) -> CohClass {
        &(&self.t(k).pow(2).scale(&qf(1, 2)) - &(&self.t(k) * &self.e(k))) + &self.e(k).pow(2)
    }
}

fn md(v: [u32; 4]) -> MultiDegree {
    MultiDegree(v.to_vec())
}

/// Published pieces of each bidegree class, keyed by Künneth type on the
/// source product and pushed to the target space.
pub fn expected_pieces(tag: Bidegree) -> Vec<(MultiDegree, CohClass)> {
    let g = Gens::new();
    let (t1, e1, t2, e2, t3, e3) = (g.t(1), g.e(1), g.t(2), g.e(2), g.t(3), g.e(3));
    let t1e1 = &t1 - &e1;
    match tag {
        Bidegree::FourOneTwoThree => {
            let a = &(&(&t3 * &e3) - &e3.pow(2)) * &t1e1.scale(&q(3));
            let inner = &(&(&(&t2 * &e3) * &t3) - &(&t2 * &e3.pow(2))) - &(&(&e2 * &e3) * &t3);
            let inner = &inner + &(&e2 * &e3.pow(2)).scale(&q(2));
            let b = &(&e3 * &g.d(2, 3).pow(2)).scale(&q(2)) + &inner.scale(&q(4));
            let c = &(&g.d(1, 2) * &(&(&e3 * &t3) - &e3.pow(2))) + &(&(&g.d(1, 3) * &g.d(2, 3)) * &t3);
            vec![(md([2, 0, 0, 4]), a), (md([0, 2, 2, 2]), b), (md([1, 1, 1, 3]), c)]
        }
        Bidegree::TwoThreeFourOne => {
            let x = &(&e3 * &g.d(1, 3).pow(2)) + &(&(&t1e1 * &e3) * &t3).scale(&q(2));
            let y = &(&(&e1 * &g.c(q(2))) - &t1) * &e3.pow(2);
            vec![(md([2, 0, 0, 4]), &x + &y.scale(&q(2)))]
        }
        Bidegree::TwoThreeTwoThree => {
            let a = &(&(&t1e1 * &e3) * &t3) + &(&t1e1 * &e3.pow(2)).scale(&q(3));
            let b = (&(&t2 - &e2) * &e3.pow(2)).scale(&q(4));
            let c = &(&(&g.d(1, 3) * &g.d(2, 3)) * &e3) + &(&g.d(1, 2) * &e3.pow(2));
            vec![(md([2, 0, 2, 2]), a), (md([0, 2, 4, 0]), b), (md([1, 1, 3, 1]), c)]
        }
    }
}

/// Published bidegree class on the target space.
pub fn expected_bidegree_class(tag: Bidegree) -> CohClass {
    let g = Gens::new();
    match tag {
        Bidegree::TwoThreeTwoThree => {
            let (t1, e1, t2, e2, t3, e3) = (g.t(1), g.e(1), g.t(2), g.e(2), g.t(3), g.e(3));
            let q3 = g.quad(3);
            let mut out = &(&t1 - &e1) * &(&t3 * &(&t3 - &e3));
            out = &out + &(&(&t1 - &e1) * &q3).scale(&q(3));
            out = &out + &(&(&t2 - &e2) * &q3).scale(&q(4));
            out = &out + &(&(&g.d(1, 3) * &g.d(2, 3)) * &(&t3 - &e3));
            &out + &(&g.d(1, 2) * &q3)
        }
        _ => expected_pieces(tag).into_iter().fold(CohClass::zero(&g.s), |acc, (_, c)| &acc + &c),
    }
}

/// Published sum of the bidegree classes, modulo `theta_3 H^2(Pic)`.
pub fn expected_total_class() -> CohClass {
    let g = Gens::new();
    let (t1, e1, e2, t3, e3) = (g.t(1), g.e(1), g.e(2), g.t(3), g.e(3));
    let lin = &(&e1 + &e2).scale(&q(4)) - &t1.scale(&q(2));
    let quad = &(&g.d(2, 3).pow(2).scale(&q(2)) + &g.d(1, 3).pow(2)) - &(&g.d(1, 3) * &g.d(2, 3));
    let quad = &quad + &(&(&t1 - &e1) * &t3);
    &(&lin * &e3.pow(2)) + &(&quad * &e3)
}

/// Published restricted total class, modulo `theta_3 H^2(Pic)`.
pub fn expected_restricted_class() -> CohClass {
    let g = Gens::new();
    let (t1, e1, e2, t3, e3) = (g.t(1), g.e(1), g.e(2), g.t(3), g.e(3));
    let lin = &(&e1 + &e2).scale(&q(4)) - &t1.scale(&q(2));
    let mut out = &lin * &e3.pow(2);
    out = &out + &(&g.d(1, 3).pow(2) * &e3).scale(&q(4));
    &out + &(&(&(&t1 - &e1) * &t3) * &e3)
}

struct ThetaPic {
    basis: Vec<FactorMono>,
    index: HashMap<FactorMono, usize>,
    reducer: QuotientReducer,
}

static THETA_PIC: LazyLock<Mutex<HashMap<(u32, u32), Arc<ThetaPic>>>> = LazyLock::new(Default::default);

fn theta_pic(g: u32, n: u32) -> Arc<ThetaPic> {
    if let Some(r) = THETA_PIC.lock().unwrap().get(&(g, n)) {
        return r.clone();
    }
    let f = FactorSpec::sym(g, n);
    let s = SpaceSpec::single(f);
    let basis = factor_basis(&f, 4);
    let index: HashMap<FactorMono, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let theta = CohClass::theta(&s, 0).unwrap();
    let mut rows = Vec::new();
    for a in 1..=2 * g {
        for b in a + 1..=2 * g {
            let w = CohClass::from_terms(&s, [(Monomial::single(FactorMono::from_indices(&[a, b], 0)), Q::one())]);
            let mut v = vec![Q::zero(); basis.len()];
            for (m, c) in (&theta * &w).terms() {
                v[index[&m.0[0]]] = c.clone();
            }
            rows.push(v);
        }
    }
    let r = Arc::new(ThetaPic { basis, index, reducer: QuotientReducer::new(&rows) });
    THETA_PIC.lock().unwrap().insert((g, n), r.clone());
    r
}

/// Dimension of `theta H^2(Pic)` inside `H^4(C^(n))`.
pub fn theta_pic_dim(g: u32, n: u32) -> usize {
    theta_pic(g, n).reducer.dim()
}

/// Canonical representative of `c` modulo `theta H^2(Pic)` in the last
/// factor, which must be a symmetric product. Only the part of degree 4
/// in the last factor is reduced.
pub fn reduce_mod_theta_pic(c: &CohClass) -> Result<CohClass> {
    let space = c.space();
    let last = space.len().checked_sub(1).ok_or_else(|| Error::InvalidArgument("empty space".into()))?;
    let (g, n) = match space.factor(last) {
        FactorSpec::SymCurve { genus, n } => (genus, n),
        f => return Err(Error::InvalidArgument(format!("last factor must be a symmetric product, got {f}"))),
    };
    let tp = theta_pic(g, n);
    let mut groups: BTreeMap<Vec<FactorMono>, Vec<Q>> = BTreeMap::new();
    let mut terms = Vec::new();
    for (m, coef) in c.terms() {
        let fm = m.0[last];
        match tp.index.get(&fm) {
            Some(&i) => {
                let v = groups.entry(m.0[..last].to_vec()).or_insert_with(|| vec![Q::zero(); tp.basis.len()]);
                v[i] += coef;
            }
            None => terms.push((m.clone(), coef.clone())),
        }
    }
    for (prefix, v) in groups {
        for (i, x) in tp.reducer.reduce(&v).into_iter().enumerate() {
            if !x.is_zero() {
                let mut mono = prefix.clone();
                mono.push(tp.basis[i]);
                terms.push((Monomial(mono), x));
            }
        }
    }
    Ok(CohClass::from_terms(space, terms))
}

/// `a == b` modulo `theta H^2(Pic)` in the last factor.
pub fn equal_mod_theta_pic(a: &CohClass, b: &CohClass) -> Result<bool> {
    Ok(reduce_mod_theta_pic(&a.try_sub(b)?)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_parse() {
        assert_eq!("(4,1)(2,3)".parse::<Bidegree>().unwrap(), Bidegree::FourOneTwoThree);
        assert_eq!("(2,3) + (2,3)".parse::<Bidegree>().unwrap(), Bidegree::TwoThreeTwoThree);
        assert!("(3,3)(2,3)".parse::<Bidegree>().is_err());
    }

    #[test]
    fn pieces_match_published() {
        for tag in Bidegree::ALL {
            let b = bidegree_class(tag).unwrap();
            let got: BTreeMap<_, _> = b.pieces.iter().cloned().collect();
            for (md, want) in expected_pieces(tag) {
                assert_eq!(got.get(&md), Some(&want), "{tag} type {md:?}");
            }
            assert_eq!(got.len(), expected_pieces(tag).len(), "{tag}");
            assert_eq!(b.class, expected_bidegree_class(tag), "{tag}");
        }
    }

    #[test]
    fn totals_mod_theta_pic() {
        assert_eq!(theta_pic_dim(5, 4), 45);
        let total = total_class().unwrap();
        assert!(total.is_homogeneous() && total.degree() == Some(6));
        assert!(equal_mod_theta_pic(&total, &expected_total_class()).unwrap());
        let r = w_restrict(&total).unwrap();
        let want = w_restrict(&expected_restricted_class()).unwrap();
        assert!(equal_mod_theta_pic(&r, &want).unwrap());
        assert!(!reduce_mod_theta_pic(&r).unwrap().is_zero());
    }

    #[test]
    fn theta_squared_is_in_quotient_kernel() {
        let s = SpaceSpec::sym(5, 4);
        let t = CohClass::theta(&s, 0).unwrap();
        assert!(reduce_mod_theta_pic(&t.pow(2)).unwrap().is_zero());
        let e = CohClass::eta(&s, 0).unwrap();
        assert_eq!(reduce_mod_theta_pic(&(&t * &e)).unwrap(), &t * &e);
    }
}
