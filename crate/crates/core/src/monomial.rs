//! Monomials in the odd generators `xi_1..xi_2g` and `eta`.
//!
//! A factor monomial stores its odd generators as a bitmask (bit `i-1` for
//! `xi_i`), always read in increasing index order; the sign of any other
//! ordering is accounted for when monomials are multiplied. A product-space
//! monomial is the ordered product of its factor monomials, left to right.

use std::cmp::Ordering;
use std::fmt;

use crate::space::SpaceSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FactorMono {
    pub xi: u64,
    pub eta: u32,
}

impl FactorMono {
    pub const ONE: FactorMono = FactorMono { xi: 0, eta: 0 };

    pub fn new(xi: u64, eta: u32) -> Self {
        FactorMono { xi, eta }
    }

    pub fn xi(i: u32) -> Self {
        FactorMono { xi: 1 << (i - 1), eta: 0 }
    }

    pub fn eta(d: u32) -> Self {
        FactorMono { xi: 0, eta: d }
    }

    /// Builds `xi_{i1} xi_{i2} ... eta^d` from indices in increasing order.
    pub fn from_indices(indices: &[u32], eta: u32) -> Self {
        let mut xi = 0;
        for &i in indices {
            xi |= 1 << (i - 1);
        }
        FactorMono { xi, eta }
    }

    pub fn odd_count(&self) -> u32 {
        self.xi.count_ones()
    }

    pub fn degree(&self) -> u32 {
        self.odd_count() + 2 * self.eta
    }

    pub fn is_odd(&self) -> bool {
        self.odd_count() % 2 == 1
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        let mut m = self.xi;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros();
                m &= m - 1;
                Some(i + 1)
            }
        })
    }

    /// Product `self * other`; `None` when an odd generator repeats.
    /// The boolean is `true` when the reordering sign is negative.
    pub fn mul(&self, other: &FactorMono) -> Option<(bool, FactorMono)> {
        let (neg, xi) = mul_mask(self.xi, other.xi)?;
        Some((neg, FactorMono { xi, eta: self.eta + other.eta }))
    }

    /// Largest odd index used, or 0.
    pub fn max_index(&self) -> u32 {
        64 - self.xi.leading_zeros()
    }

    pub(crate) fn write(&self, f: &mut impl fmt::Write, tag: Option<usize>) -> fmt::Result {
        let suffix = tag.map(|k| format!("@{}", k + 1)).unwrap_or_default();
        let mut first = true;
        for i in self.indices() {
            if !first {
                f.write_char('*')?;
            }
            first = false;
            write!(f, "xi({i}){suffix}")?;
        }
        if self.eta > 0 {
            if !first {
                f.write_char('*')?;
            }
            first = false;
            write!(f, "eta{suffix}")?;
            if self.eta > 1 {
                write!(f, "^{}", self.eta)?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

/// Sign and mask of the exterior product of two sorted odd monomials.
pub fn mul_mask(a: u64, b: u64) -> Option<(bool, u64)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a >> j >> 1).count_ones();
    }
    Some((swaps % 2 == 1, a | b))
}

impl Ord for FactorMono {
    /// Lexicographic on `(eta, xi index list)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.eta.cmp(&other.eta).then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for FactorMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A monomial on a product space: one factor monomial per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<FactorMono>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![FactorMono::ONE; len])
    }

    pub fn single(m: FactorMono) -> Self {
        Monomial(vec![m])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|m| m.degree()).sum()
    }

    pub fn multidegree(&self) -> Vec<u32> {
        self.0.iter().map(|m| m.degree()).collect()
    }

    pub fn is_odd(&self) -> bool {
        self.0.iter().filter(|m| m.is_odd()).count() % 2 == 1
    }

    pub fn factors(&self) -> &[FactorMono] {
        &self.0
    }

    /// Raw product before normalization, with the Koszul sign for moving the
    /// factors of `other` past the higher factors of `self`.
    pub fn mul_raw(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut neg = false;
        let mut suffix_odd = 0u32;
        // parity of odd generators of `self` strictly to the right of factor k
        let mut right_parity = vec![0u32; self.0.len()];
        for k in (0..self.0.len()).rev() {
            right_parity[k] = suffix_odd;
            suffix_odd += self.0[k].odd_count();
        }
        let mut out = Vec::with_capacity(self.0.len());
        for (k, (a, b)) in self.0.iter().zip(&other.0).enumerate() {
            if (b.odd_count() * right_parity[k]) % 2 == 1 {
                neg = !neg;
            }
            let (s, m) = a.mul(b)?;
            neg ^= s;
            out.push(m);
        }
        Some((neg, Monomial(out)))
    }

    pub fn display(&self, space: &SpaceSpec) -> String {
        let mut s = String::new();
        let tagged = space.len() > 1;
        let mut first = true;
        for (k, m) in self.0.iter().enumerate() {
            if *m == FactorMono::ONE {
                continue;
            }
            if !first {
                s.push('*');
            }
            first = false;
            m.write(&mut s, tagged.then_some(k)).unwrap();
        }
        if first {
            s.push('1');
        }
        s
    }
}

/// Checks that every odd index is within `1..=2g` for its factor.
pub fn indices_valid(m: &Monomial, space: &SpaceSpec) -> bool {
    m.0.iter().zip(space.factors()).all(|(fm, f)| {
        fm.max_index() <= 2 * f.genus() && (f.has_eta() || fm.eta == 0)
    })
}

/// Index of the symplectic partner: `i <-> i+g`.
pub fn partner(i: u32, g: u32) -> u32 {
    if i <= g {
        i + g
    } else {
        i - g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exterior_signs() {
        // xi2 * xi1 = -xi1 xi2
        assert_eq!(mul_mask(0b10, 0b01), Some((true, 0b11)));
        assert_eq!(mul_mask(0b01, 0b10), Some((false, 0b11)));
        assert_eq!(mul_mask(0b01, 0b01), None);
        // xi1 xi3 * xi2 = -xi1 xi2 xi3
        assert_eq!(mul_mask(0b101, 0b010), Some((true, 0b111)));
    }

    #[test]
    fn koszul_across_factors() {
        // (xi1 @1 * xi1 @2) * (xi2 @1) = - xi1 xi2 @1 * xi1 @2
        let a = Monomial(vec![FactorMono::xi(1), FactorMono::xi(1)]);
        let b = Monomial(vec![FactorMono::xi(2), FactorMono::ONE]);
        let (neg, m) = a.mul_raw(&b).unwrap();
        assert!(neg);
        assert_eq!(m.0[0], FactorMono::from_indices(&[1, 2], 0));
    }

    #[test]
    fn ordering_is_eta_then_indices() {
        let a = FactorMono::from_indices(&[1, 3], 0);
        let b = FactorMono::from_indices(&[2], 0);
        let c = FactorMono::eta(1);
        assert!(a < b);
        assert!(b < c);
    }

    #[test]
    fn printing() {
        let s = SpaceSpec::sym(5, 3);
        let m = Monomial::single(FactorMono::from_indices(&[1, 6], 1));
        assert_eq!(m.display(&s), "xi(1)*xi(6)*eta");
        let p = SpaceSpec::syms(5, &[3, 3]);
        let m = Monomial(vec![FactorMono::ONE, FactorMono::eta(2)]);
        assert_eq!(m.display(&p), "eta@2^2");
    }
}
