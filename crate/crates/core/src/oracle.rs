//! Brute-force reference model: the invariant part of the cohomology of the
//! Cartesian power `C^n`.
//!
//! Each copy of the curve has basis `1, xi_1..xi_2g, pt` with
//! `xi_i xi_{i+g} = pt = -xi_{i+g} xi_i` and all other products of two
//! `xi`'s zero. A class on `C^(n)` is embedded by `xi_i -> sum_k xi_i^(k)`,
//! `eta -> sum_k pt^(k)`, and `int_{C^(n)} = (1/n!) int_{C^n}`.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_traits::{One, Zero};

use crate::class::CohClass;
use crate::error::{Error, Result};
use crate::linalg;
use crate::monomial::{FactorMono, Monomial};
use crate::rational::{factorial, q, Q};
use crate::ring::factor_basis;
use crate::space::{FactorSpec, SpaceSpec};

/// Per-copy state: 0 is the unit, `1..=2g` is `xi_i`, `PT` is the point class.
const PT: u8 = u8::MAX;

pub const DEFAULT_CUTOFF: u32 = 4;

/// A class on `C^n` as a map from per-copy states to coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartesianClass {
    pub genus: u32,
    pub copies: u32,
    pub terms: HashMap<Vec<u8>, Q>,
}

fn is_odd(s: u8) -> bool {
    s != 0 && s != PT
}

fn mul_copy(a: u8, b: u8, g: u32) -> Option<(bool, u8)> {
    match (a, b) {
        (0, x) | (x, 0) => Some((false, x)),
        (PT, _) | (_, PT) => None,
        (x, y) => {
            let (x, y) = (x as u32, y as u32);
            if y == x + g {
                Some((false, PT))
            } else if x == y + g {
                Some((true, PT))
            } else {
                None
            }
        }
    }
}

impl CartesianClass {
    pub fn zero(genus: u32, copies: u32) -> Self {
        CartesianClass { genus, copies, terms: HashMap::new() }
    }

    pub fn one(genus: u32, copies: u32) -> Self {
        let mut c = Self::zero(genus, copies);
        c.terms.insert(vec![0; copies as usize], Q::one());
        c
    }

    fn add_term(&mut self, m: Vec<u8>, c: Q) {
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &CartesianClass) -> CartesianClass {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> CartesianClass {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn mul(&self, other: &CartesianClass) -> CartesianClass {
        let g = self.genus;
        let n = self.copies as usize;
        let mut acc: HashMap<Vec<u8>, Q> = HashMap::new();
        for (a, ca) in &self.terms {
            let mut right = vec![0u32; n];
            let mut odd = 0u32;
            for k in (0..n).rev() {
                right[k] = odd;
                odd += is_odd(a[k]) as u32;
            }
            'outer: for (b, cb) in &other.terms {
                let mut neg = false;
                let mut out = Vec::with_capacity(n);
                for k in 0..n {
                    if is_odd(b[k]) && right[k] % 2 == 1 {
                        neg = !neg;
                    }
                    match mul_copy(a[k], b[k], g) {
                        Some((s, x)) => {
                            neg ^= s;
                            out.push(x);
                        }
                        None => continue 'outer,
                    }
                }
                let c = ca * cb;
                *acc.entry(out).or_insert_with(Q::zero) += if neg { -c } else { c };
            }
        }
        acc.retain(|_, v| !v.is_zero());
        CartesianClass { genus: g, copies: self.copies, terms: acc }
    }

    /// `sum_k x^(k)` for a single-copy state `x`, restricted to copies `range`.
    fn diagonal(genus: u32, copies: u32, state: u8, range: std::ops::Range<usize>) -> Self {
        let mut c = Self::zero(genus, copies);
        for k in range {
            let mut m = vec![0u8; copies as usize];
            m[k] = state;
            c.terms.insert(m, Q::one());
        }
        c
    }

    /// `int_{C^n}`: the coefficient of `pt x ... x pt`.
    pub fn integrate(&self) -> Q {
        self.terms.get(&vec![PT; self.copies as usize]).cloned().unwrap_or_else(Q::zero)
    }

    /// `sigma^*` for a permutation of the copies (`perm[k]` is the new slot of copy `k`).
    pub fn permute(&self, perm: &[usize]) -> CartesianClass {
        let mut out = Self::zero(self.genus, self.copies);
        for (m, c) in &self.terms {
            let mut v = vec![0u8; m.len()];
            let mut neg = false;
            for i in 0..m.len() {
                v[perm[i]] = m[i];
                if is_odd(m[i]) {
                    for j in i + 1..m.len() {
                        if is_odd(m[j]) && perm[i] > perm[j] {
                            neg = !neg;
                        }
                    }
                }
            }
            out.add_term(v, if neg { -c.clone() } else { c.clone() });
        }
        out
    }
}

struct InvariantSolver {
    basis: Vec<FactorMono>,
    embedded: Vec<CartesianClass>,
    /// Coordinates of `C^n` on which the embedded basis is invertible.
    pivots: Vec<Vec<u8>>,
    inv: linalg::Matrix,
}

static SOLVERS: LazyLock<Mutex<HashMap<(u32, u32, u32), Arc<InvariantSolver>>>> = LazyLock::new(Default::default);

/// Brute-force evaluator with a configurable size cutoff.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub cutoff: u32,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cutoff: DEFAULT_CUTOFF }
    }
}

fn sym_factor(space: &SpaceSpec) -> Result<(u32, u32)> {
    match space.factors() {
        [FactorSpec::SymCurve { genus, n }] => Ok((*genus, *n)),
        _ => Err(Error::InvalidArgument(format!("oracle needs a single symmetric product, got {space}"))),
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

impl Oracle {
    pub fn new(cutoff: u32) -> Self {
        Oracle { cutoff }
    }

    fn check(&self, n: u32) -> Result<()> {
        if n > self.cutoff {
            return Err(Error::OracleScaleExceeded { n, cutoff: self.cutoff });
        }
        Ok(())
    }

    /// Embeds the factor monomial placed on copies `range` of `C^copies`.
    fn embed_mono(&self, m: &FactorMono, g: u32, copies: u32, range: std::ops::Range<usize>) -> CartesianClass {
        let mut out = CartesianClass::one(g, copies);
        for i in m.indices() {
            out = out.mul(&CartesianClass::diagonal(g, copies, i as u8, range.clone()));
        }
        let eta = CartesianClass::diagonal(g, copies, PT, range);
        for _ in 0..m.eta {
            out = out.mul(&eta);
        }
        out
    }

    /// The image of a class on `C^(n)` in `H^*(C^n)`.
    pub fn embed(&self, c: &CohClass) -> Result<CartesianClass> {
        let (g, n) = sym_factor(c.space())?;
        self.check(n)?;
        let mut out = CartesianClass::zero(g, n);
        for (m, coef) in c.terms() {
            out = out.add(&self.embed_mono(&m.0[0], g, n, 0..n as usize).scale(coef));
        }
        Ok(out)
    }

    /// Embeds a class on `C^(a) x C^(b)` into `C^(a+b)` copies (first `a`, then `b`).
    fn embed_pair(&self, c: &CohClass) -> Result<CartesianClass> {
        let (g, a, b) = match c.space().factors() {
            [FactorSpec::SymCurve { genus: g, n: a }, FactorSpec::SymCurve { genus: h, n: b }] if g == h => {
                (*g, *a, *b)
            }
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "expected sym(g,a) x sym(g,b), got {}",
                    c.space()
                )))
            }
        };
        let n = a + b;
        self.check(n)?;
        let mut out = CartesianClass::zero(g, n);
        for (m, coef) in c.terms() {
            let x = self.embed_mono(&m.0[0], g, n, 0..a as usize);
            let y = self.embed_mono(&m.0[1], g, n, a as usize..n as usize);
            out = out.add(&x.mul(&y).scale(coef));
        }
        Ok(out)
    }

    /// `int_{C^(n)} c = (1/n!) int_{C^n} embed(c)`.
    pub fn integrate(&self, c: &CohClass) -> Result<Q> {
        let (_, n) = sym_factor(c.space())?;
        let e = self.embed(c)?;
        Ok(e.integrate() / Q::from_integer(factorial(n)))
    }

    fn solver(&self, g: u32, n: u32, k: u32) -> Result<Arc<InvariantSolver>> {
        if let Some(s) = SOLVERS.lock().unwrap().get(&(g, n, k)) {
            return Ok(s.clone());
        }
        let f = FactorSpec::sym(g, n);
        let basis = factor_basis(&f, k);
        let embedded: Vec<CartesianClass> = basis.iter().map(|m| self.embed_mono(m, g, n, 0..n as usize)).collect();
        let mut keys: Vec<Vec<u8>> = embedded.iter().flat_map(|e| e.terms.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let mut rows: linalg::Matrix = embedded
            .iter()
            .map(|e| keys.iter().map(|k| e.terms.get(k).cloned().unwrap_or_else(Q::zero)).collect())
            .collect();
        let pivots = linalg::rref(&mut rows);
        if pivots.len() != basis.len() {
            return Err(Error::Eval(format!("oracle: embedding of degree {k} on sym({g},{n}) is not injective")));
        }
        let square: linalg::Matrix = pivots
            .iter()
            .map(|&p| embedded.iter().map(|e| e.terms.get(&keys[p]).cloned().unwrap_or_else(Q::zero)).collect())
            .collect();
        let inv = linalg::inverse(&square).expect("pivot rows are independent");
        let solver = Arc::new(InvariantSolver { basis, embedded, pivots: pivots.into_iter().map(|p| keys[p].clone()).collect(), inv });
        SOLVERS.lock().unwrap().insert((g, n, k), solver.clone());
        Ok(solver)
    }

    /// Finds the class on `C^(n)` whose embedding is `target`, and checks
    /// that the embedding of the answer reproduces `target`.
    pub fn pull_back_invariant(&self, target: &CartesianClass, space: &SpaceSpec) -> Result<CohClass> {
        let (g, n) = sym_factor(space)?;
        let mut out = CohClass::zero(space);
        for k in 0..=2 * n {
            let part = CartesianClass {
                genus: g,
                copies: n,
                terms: target
                    .terms
                    .iter()
                    .filter(|(m, _)| m.iter().map(|&s| if s == PT { 2 } else { is_odd(s) as u32 }).sum::<u32>() == k)
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect(),
            };
            if part.terms.is_empty() {
                continue;
            }
            let sol = self.solver(g, n, k)?;
            let rhs: Vec<Q> = sol.pivots.iter().map(|p| part.terms.get(p).cloned().unwrap_or_else(Q::zero)).collect();
            let x: Vec<Q> = sol.inv.iter().map(|row| row.iter().zip(&rhs).map(|(a, b)| a * b).sum()).collect();
            let mut back = CartesianClass::zero(g, n);
            for (e, c) in sol.embedded.iter().zip(&x) {
                if !c.is_zero() {
                    back = back.add(&e.scale(c));
                }
            }
            if back != part {
                return Err(Error::Eval(format!("oracle: degree-{k} part is not in the invariant image")));
            }
            for (m, c) in sol.basis.iter().zip(x) {
                out = &out + &CohClass::from_terms(space, [(Monomial::single(*m), c)]);
            }
        }
        Ok(out)
    }

    /// Gysin push-forward along `C^(a) x C^(b) -> C^(a+b)` by symmetrizing:
    /// `pi^* m_*(w) = (1/(a! b!)) sum_sigma sigma^*(m1^* w)`.
    pub fn gysin_sum(&self, c: &CohClass) -> Result<CohClass> {
        let lifted = self.embed_pair(c)?;
        let (g, a, b) = (c.space().factor(0).genus(), c.space().factor(0).dim(), c.space().factor(1).dim());
        let n = a + b;
        let mut sym = CartesianClass::zero(g, n);
        for p in permutations(n as usize) {
            sym = sym.add(&lifted.permute(&p));
        }
        let deg_m1 = Q::from_integer(factorial(a) * factorial(b));
        let sym = sym.scale(&(q(1) / deg_m1));
        self.pull_back_invariant(&sym, &SpaceSpec::sym(g, n))
    }

    /// Degree of `C^a x C^b -> C^(a) x C^(b)`.
    pub fn deg_m1(a: u32, b: u32) -> Q {
        Q::from_integer(factorial(a) * factorial(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::gens;

    #[test]
    fn embed_eta() {
        let s = SpaceSpec::sym(5, 3);
        let e = Oracle::default().embed(&gens::eta(&s)).unwrap();
        assert_eq!(e.terms.len(), 3);
        assert_eq!(Oracle::default().integrate(&gens::eta(&s).pow(3)).unwrap(), q(1));
    }

    #[test]
    fn cutoff() {
        let s = SpaceSpec::sym(5, 5);
        let err = Oracle::default().embed(&gens::eta(&s)).unwrap_err();
        assert!(err.to_string().contains("oracle scale exceeded"));
    }

    #[test]
    fn oracle_matches_ring() {
        let s = SpaceSpec::sym(5, 3);
        let o = Oracle::default();
        let (t, e) = (gens::theta(&s), gens::eta(&s));
        assert_eq!(o.integrate(&t.pow(3)).unwrap(), q(60));
        assert_eq!(o.integrate(&(&t * &e.pow(2))).unwrap(), q(5));
        let s1 = gens::sigma(&s, 1);
        let s2 = gens::sigma(&s, 2);
        let prod = &s1 * &s2;
        assert_eq!(o.embed(&prod).unwrap(), o.embed(&s1).unwrap().mul(&o.embed(&s2).unwrap()));
        let back = o.pull_back_invariant(&o.embed(&prod).unwrap(), &s).unwrap();
        assert_eq!(back, prod);
    }

    #[test]
    fn deg_m1_value() {
        assert_eq!(Oracle::deg_m1(2, 2), q(4));
    }
}
