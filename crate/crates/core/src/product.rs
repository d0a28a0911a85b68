//! Künneth machinery: pulling classes back from factors, diagonal
//! corrections, multidegree components, and maps acting on a block of
//! adjacent factors.

use std::collections::HashMap;

use num_traits::One;

use crate::class::CohClass;
use crate::error::{Error, Result};
use crate::monomial::{FactorMono, Monomial};
use crate::rational::Q;
use crate::space::{FactorSpec, MultiDegree, SpaceSpec};

/// `pr_k^* c` for a class on the single factor `k` of `space`.
pub fn inject(c: &CohClass, space: &SpaceSpec, k: usize) -> Result<CohClass> {
    inject_multi(c, space, &[k])
}

/// Pulls back a class on `f_1 x ... x f_r` to `space` along the projection
/// onto the factors `positions` (distinct, any order). Odd parts are moved
/// into factor order with the usual Koszul sign.
pub fn inject_multi(c: &CohClass, space: &SpaceSpec, positions: &[usize]) -> Result<CohClass> {
    let src = c.space();
    if positions.len() != src.len() {
        return Err(Error::FactorMismatch(format!(
            "{} positions given for a class on {src}",
            positions.len()
        )));
    }
    for (j, &p) in positions.iter().enumerate() {
        if p >= space.len() {
            return Err(Error::IndexOutOfRange { index: p as u32 + 1, factor: space.to_string() });
        }
        if space.factor(p) != src.factor(j) {
            return Err(Error::FactorMismatch(format!(
                "factor {} of {space} is {}, the class lives on {}",
                p + 1,
                space.factor(p),
                src.factor(j)
            )));
        }
        if positions[..j].contains(&p) {
            return Err(Error::InvalidArgument(format!("position {} repeated", p + 1)));
        }
    }
    let mut terms = Vec::with_capacity(c.len());
    for (m, coef) in c.terms() {
        let mut out = Monomial::one(space.len());
        let mut neg = false;
        for i in 0..positions.len() {
            out.0[positions[i]] = m.0[i];
            for j in i + 1..positions.len() {
                if positions[i] > positions[j] && m.0[i].is_odd() && m.0[j].is_odd() {
                    neg = !neg;
                }
            }
        }
        terms.push((out, if neg { -coef.clone() } else { coef.clone() }));
    }
    Ok(CohClass::from_terms(space, terms))
}

/// `delta_kl = sum_i (xi_{k,i} xi'_{l,i} + xi_{l,i} xi'_{k,i})` (0-based `k`, `l`).
pub fn delta(space: &SpaceSpec, k: usize, l: usize) -> Result<CohClass> {
    if k == l {
        return Err(Error::InvalidArgument("delta needs two distinct factors".into()));
    }
    if k >= space.len() || l >= space.len() {
        return Err(Error::IndexOutOfRange { index: k.max(l) as u32 + 1, factor: space.to_string() });
    }
    let g = space.factor(k).genus();
    if space.factor(l).genus() != g {
        return Err(Error::FactorMismatch(format!(
            "delta between {} and {} needs equal genus",
            space.factor(k),
            space.factor(l)
        )));
    }
    let mut out = CohClass::zero(space);
    for i in 1..=g {
        let a = &CohClass::xi(space, k, i)? * &CohClass::xi(space, l, i + g)?;
        let b = &CohClass::xi(space, l, i)? * &CohClass::xi(space, k, i + g)?;
        out = &(&out + &a) + &b;
    }
    Ok(out)
}

/// The part of `c` whose per-factor degrees are exactly `md`.
pub fn kunneth_component(c: &CohClass, md: &MultiDegree) -> CohClass {
    c.filter(|m| m.0.len() == md.0.len() && m.0.iter().zip(&md.0).all(|(f, d)| f.degree() == *d))
}

/// All multidegrees present in `c`.
pub fn multidegrees(c: &CohClass) -> Vec<MultiDegree> {
    let mut v: Vec<MultiDegree> = c.terms().keys().map(|m| MultiDegree(m.multidegree())).collect();
    v.sort();
    v.dedup();
    v
}

/// Applies a degree-preserving linear map to the factors `start..start+len`,
/// replacing them by `with`. The map is given on classes of the block space
/// and is evaluated once per distinct block monomial.
pub fn map_block<F>(c: &CohClass, start: usize, len: usize, with: &[FactorSpec], f: F) -> Result<CohClass>
where
    F: Fn(&CohClass) -> Result<CohClass>,
{
    let space = c.space();
    if start + len > space.len() {
        return Err(Error::IndexOutOfRange { index: (start + len) as u32, factor: space.to_string() });
    }
    let block_space = space.slice(start, len);
    let new_block = SpaceSpec::new(with.to_vec())?;
    let target = space.splice(start, len, with);
    let mut cache: HashMap<Vec<FactorMono>, CohClass> = HashMap::new();
    let mut terms: Vec<(Monomial, Q)> = Vec::new();
    for (m, coef) in c.terms() {
        let block = m.0[start..start + len].to_vec();
        if !cache.contains_key(&block) {
            let src = CohClass::from_terms(&block_space, [(Monomial(block.clone()), Q::one())]);
            let img = f(&src)?;
            if img.space() != &new_block {
                return Err(Error::FactorMismatch(format!(
                    "block map produced a class on {}, expected {new_block}",
                    img.space()
                )));
            }
            cache.insert(block.clone(), img);
        }
        for (bm, bc) in cache[&block].terms() {
            let mut v = m.0[..start].to_vec();
            v.extend_from_slice(&bm.0);
            v.extend_from_slice(&m.0[start + len..]);
            terms.push((Monomial(v), coef * bc));
        }
    }
    Ok(CohClass::from_terms(&target, terms))
}

/// Dimension of `H^m` of a product, from the factor Betti numbers.
pub fn kunneth_dim(space: &SpaceSpec, m: u32) -> u64 {
    let mut poly = vec![1u64];
    for f in space.factors() {
        let b = crate::ring::betti_factor(f);
        let mut next = vec![0u64; poly.len() + b.len() - 1];
        for (i, x) in poly.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                next[i + j] += x * y;
            }
        }
        poly = next;
    }
    poly.get(m as usize).copied().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::gens;
    use crate::rational::q;

    #[test]
    fn inject_is_multiplicative() {
        let s = SpaceSpec::syms(5, &[3, 3, 4]);
        let f = SpaceSpec::sym(5, 3);
        let a = gens::sigma(&f, 1);
        let b = gens::sigma(&f, 2);
        let lhs = &inject(&a, &s, 1).unwrap() * &inject(&b, &s, 1).unwrap();
        assert_eq!(lhs, inject(&(&a * &b), &s, 1).unwrap());
        assert!(inject(&a, &s, 2).is_err());
    }

    #[test]
    fn inject_multi_signs() {
        // xi_1 @1 * xi_2 @2 placed at (2, 1) becomes -xi_2 @1 * xi_1 @2
        let src = SpaceSpec::syms(5, &[2, 2]);
        let c = &CohClass::xi(&src, 0, 1).unwrap() * &CohClass::xi(&src, 1, 2).unwrap();
        let out = inject_multi(&c, &src, &[1, 0]).unwrap();
        let expect = &CohClass::xi(&src, 0, 2).unwrap() * &CohClass::xi(&src, 1, 1).unwrap();
        assert_eq!(out, -&expect);
    }

    #[test]
    fn delta_symmetric() {
        let s = SpaceSpec::syms(5, &[3, 3, 4]);
        let d = delta(&s, 0, 2).unwrap();
        assert_eq!(d.len(), 10);
        assert_eq!(d, delta(&s, 2, 0).unwrap());
    }

    #[test]
    fn components_partition() {
        let s = SpaceSpec::syms(5, &[3, 3, 4]);
        let d = delta(&s, 0, 2).unwrap();
        let d2 = &d * &d;
        let mut sum = CohClass::zero(&s);
        for md in multidegrees(&d2) {
            sum = &sum + &kunneth_component(&d2, &md);
        }
        assert_eq!(sum, d2);
        assert!(kunneth_component(&d2, &MultiDegree(vec![2, 2, 2])).is_zero());
    }

    #[test]
    fn kunneth_dims() {
        let s = SpaceSpec::syms(5, &[3, 3, 4]);
        assert_eq!(kunneth_dim(&s, 0), 1);
        assert_eq!(kunneth_dim(&s, 1), 30);
        assert_eq!(kunneth_dim(&SpaceSpec::sym(5, 4), 4), 256);
    }

    #[test]
    fn product_integration() {
        let s = SpaceSpec::syms(5, &[1, 2]);
        let e1 = CohClass::eta(&s, 0).unwrap();
        let t2 = CohClass::theta(&s, 1).unwrap();
        assert_eq!((&e1 * &t2.pow(2)).integral(), q(20));
    }
}
