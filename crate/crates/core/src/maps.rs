//! Maps between symmetric products: the addition map `C^(a) x C^(b) -> C^(a+b)`
//! (pullback and Gysin push-forward), the residual involution on `C^(g-1)`,
//! and the restriction and push-forward rules for the surface
//! `W in C^(3) x C^(3)` of complementary pairs.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_traits::{One, Zero};

use crate::class::CohClass;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::monomial::{FactorMono, Monomial};
use crate::rational::{qf, Q};
use crate::ring::{factor_basis, integrate_raw_factor};
use crate::space::{FactorSpec, SpaceSpec};

fn sym_pair(space: &SpaceSpec) -> Result<(u32, u32, u32)> {
    match space.factors() {
        [FactorSpec::SymCurve { genus: g, n: a }, FactorSpec::SymCurve { genus: h, n: b }] if g == h => {
            Ok((*g, *a, *b))
        }
        _ => Err(Error::InvalidArgument(format!("expected sym(g,a) x sym(g,b), got {space}"))),
    }
}

fn sym_single(space: &SpaceSpec) -> Result<(u32, u32)> {
    match space.factors() {
        [FactorSpec::SymCurve { genus, n }] => Ok((*genus, *n)),
        _ => Err(Error::InvalidArgument(format!("expected a single symmetric product, got {space}"))),
    }
}

/// Pullback along the addition map `C^(a) x C^(b) -> C^(a+b)`:
/// `xi_i -> xi_i (x) 1 + 1 (x) xi_i`, `eta -> eta (x) 1 + 1 (x) eta`.
pub fn pull_sum(c: &CohClass, a: u32) -> Result<CohClass> {
    let (g, n) = sym_single(c.space())?;
    if a > n {
        return Err(Error::InvalidArgument(format!("cannot split sym({g},{n}) with a = {a}")));
    }
    let target = SpaceSpec::syms(g, &[a, n - a]);
    let gen = |mono: FactorMono| -> CohClass {
        let left = Monomial(vec![mono, FactorMono::ONE]);
        let right = Monomial(vec![FactorMono::ONE, mono]);
        CohClass::from_terms(&target, [(left, Q::one()), (right, Q::one())])
    };
    let eta = gen(FactorMono::eta(1));
    let mut out = CohClass::zero(&target);
    for (m, coef) in c.terms() {
        let fm = m.0[0];
        let mut img = CohClass::one(&target);
        for i in fm.indices() {
            img = &img * &gen(FactorMono::xi(i));
        }
        for _ in 0..fm.eta {
            img = &img * &eta;
        }
        out = &out + &img.scale(coef);
    }
    Ok(out)
}

/// Pairing partner key of a product monomial: per factor, the odd indices
/// without their partner, and the degree.
type PairKey = Vec<(u64, u32)>;

fn unpaired(m: &FactorMono, g: u32) -> u64 {
    let low = (1u64 << g) - 1;
    let paired = (m.xi & low) & (m.xi >> g);
    m.xi & !(paired | (paired << g))
}

fn partner_mask(mask: u64, g: u32) -> u64 {
    let low = (1u64 << g) - 1;
    ((mask & low) << g) | (mask >> g)
}

fn key_of(m: &Monomial, space: &SpaceSpec) -> PairKey {
    m.0.iter().zip(space.factors()).map(|(f, s)| (unpaired(f, s.genus()), f.degree())).collect()
}

/// The key a monomial must have to pair nontrivially with `x`.
fn dual_key(x: &Monomial, space: &SpaceSpec) -> PairKey {
    x.0.iter()
        .zip(space.factors())
        .map(|(f, s)| (partner_mask(unpaired(f, s.genus()), s.genus()), s.top_degree() - f.degree()))
        .collect()
}

/// `int x * y` for two monomials on a product space.
pub fn pair_monomials(x: &Monomial, y: &Monomial, space: &SpaceSpec) -> Q {
    let Some((neg, m)) = x.mul_raw(y) else { return Q::zero() };
    let mut v = Q::one();
    for (fm, f) in m.0.iter().zip(space.factors()) {
        v *= integrate_raw_factor(fm, f);
        if v.is_zero() {
            return v;
        }
    }
    if neg {
        -v
    } else {
        v
    }
}

/// Data for the Gysin map in one degree: the target basis, the inverse of
/// the Poincaré pairing, and the pulled-back dual basis indexed by key.
struct GysinData {
    basis: Vec<FactorMono>,
    pinv: Matrix,
    pulled: HashMap<PairKey, Vec<(usize, Monomial, Q)>>,
}

type GysinCache = Mutex<HashMap<(u32, u32, u32, u32), Arc<GysinData>>>;
static GYSIN: LazyLock<GysinCache> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Poincaré pairing matrix `P[i][j] = int b_j * b'_i` between degree `k`
/// and degree `top - k` normal-form bases of a single factor.
pub fn pairing_matrix(f: &FactorSpec, k: u32) -> (Vec<FactorMono>, Vec<FactorMono>, Matrix) {
    let space = SpaceSpec::single(*f);
    let basis = factor_basis(f, k);
    let dual = factor_basis(f, f.top_degree().saturating_sub(k));
    let mut p = linalg::zeros(dual.len(), basis.len());
    let dual_keys: Vec<PairKey> = dual.iter().map(|d| key_of(&Monomial::single(*d), &space)).collect();
    for (j, b) in basis.iter().enumerate() {
        let bm = Monomial::single(*b);
        let want = dual_key(&bm, &space);
        for (i, d) in dual.iter().enumerate() {
            if dual_keys[i] == want {
                p[i][j] = pair_monomials(&bm, &Monomial::single(*d), &space);
            }
        }
    }
    (basis, dual, p)
}

fn gysin_data(g: u32, a: u32, b: u32, k: u32) -> Result<Arc<GysinData>> {
    if let Some(d) = GYSIN.lock().unwrap().get(&(g, a, b, k)) {
        return Ok(d.clone());
    }
    let n = a + b;
    let f = FactorSpec::sym(g, n);
    let (basis, dual, p) = pairing_matrix(&f, k);
    let pinv = if basis.is_empty() {
        Vec::new()
    } else {
        linalg::inverse(&p).ok_or_else(|| Error::SingularPairing(format!("sym({g},{n}) degree {k}")))?
    };
    let target = SpaceSpec::sym(g, n);
    let src = SpaceSpec::syms(g, &[a, b]);
    let mut pulled: HashMap<PairKey, Vec<(usize, Monomial, Q)>> = HashMap::new();
    for (i, d) in dual.iter().enumerate() {
        let y = CohClass::from_terms(&target, [(Monomial::single(*d), Q::one())]);
        for (m, c) in pull_sum(&y, a)?.terms() {
            pulled.entry(key_of(m, &src)).or_default().push((i, m.clone(), c.clone()));
        }
    }
    let data = Arc::new(GysinData { basis, pinv, pulled });
    GYSIN.lock().unwrap().insert((g, a, b, k), data.clone());
    Ok(data)
}

/// Gysin push-forward along `C^(a) x C^(b) -> C^(a+b)`, defined by
/// `int m_*(x) y = int x m^*(y)`.
pub fn gysin_sum(c: &CohClass) -> Result<CohClass> {
    let (g, a, b) = sym_pair(c.space())?;
    let src = c.space().clone();
    let target = SpaceSpec::sym(g, a + b);
    let mut out = CohClass::zero(&target);
    for (x, coef) in c.terms() {
        let data = gysin_data(g, a, b, x.degree())?;
        let mut r: HashMap<usize, Q> = HashMap::new();
        if let Some(cands) = data.pulled.get(&dual_key(x, &src)) {
            for (i, m, cm) in cands {
                let v = pair_monomials(x, m, &src);
                if !v.is_zero() {
                    *r.entry(*i).or_insert_with(Q::zero) += v * cm;
                }
            }
        }
        for (j, bj) in data.basis.iter().enumerate() {
            let mut s = Q::zero();
            for (i, ri) in &r {
                if !data.pinv[j][*i].is_zero() {
                    s += &data.pinv[j][*i] * ri;
                }
            }
            if !s.is_zero() {
                out = &out + &CohClass::from_terms(&target, [(Monomial::single(*bj), s * coef)]);
            }
        }
    }
    Ok(out)
}

/// Push-forward of a block of two adjacent factors `k, k+1` of a product.
pub fn gysin_on_factors(c: &CohClass, k: usize) -> Result<CohClass> {
    let space = c.space();
    if k + 1 >= space.len() {
        return Err(Error::IndexOutOfRange { index: k as u32 + 2, factor: space.to_string() });
    }
    let (g, a, b) = sym_pair(&space.slice(k, 2))?;
    crate::product::map_block(c, k, 2, &[FactorSpec::sym(g, a + b)], gysin_sum)
}

/// Pullback along the addition map applied to factor `k` of a product.
pub fn pull_sum_on_factor(c: &CohClass, k: usize, a: u32) -> Result<CohClass> {
    let space = c.space();
    if k >= space.len() {
        return Err(Error::IndexOutOfRange { index: k as u32 + 1, factor: space.to_string() });
    }
    let (g, n) = sym_single(&space.slice(k, 1))?;
    if a > n {
        return Err(Error::InvalidArgument(format!("cannot split sym({g},{n}) with a = {a}")));
    }
    crate::product::map_block(c, k, 1, &[FactorSpec::sym(g, a), FactorSpec::sym(g, n - a)], |x| pull_sum(x, a))
}

/// The residual involution `D -> K - D` on `C^(g-1)`, on degree-4 classes:
/// identity on `H^4(Pic)`, `eta w -> (theta - eta) w` for `w` in `H^2(Pic)`,
/// and `eta^2 -> theta^2/2 - eta theta + eta^2`.
pub fn serre_involution(c: &CohClass) -> Result<CohClass> {
    let (g, n) = sym_single(c.space())?;
    if n + 1 != g || n < 2 {
        return Err(Error::InvalidArgument(format!("the involution acts on sym(g,g-1), got {}", c.space())));
    }
    if !c.is_zero() && c.degree() != Some(4) {
        return Err(Error::Degree(format!("involution needs a degree-4 class, got degrees {:?}", c.degrees())));
    }
    let s = c.space();
    let theta = CohClass::theta(s, 0)?;
    let eta = CohClass::eta(s, 0)?;
    let eta2_img = &(&theta.pow(2).scale(&qf(1, 2)) - &(&eta * &theta)) + &eta.pow(2);
    let mut out = CohClass::zero(s);
    for (m, coef) in c.terms() {
        let fm = m.0[0];
        let img = match fm.eta {
            0 => CohClass::from_terms(s, [(m.clone(), Q::one())]),
            1 => {
                let w = CohClass::from_terms(s, [(Monomial::single(FactorMono::new(fm.xi, 0)), Q::one())]);
                &w * &(&theta - &eta)
            }
            _ => eta2_img.clone(),
        };
        out = &out + &img.scale(coef);
    }
    Ok(out)
}

/// Applies the involution to factor `k` of a product.
pub fn involution_on_factor(c: &CohClass, k: usize) -> Result<CohClass> {
    let f = c.space().factor(k);
    crate::product::map_block(c, k, 1, &[f], serre_involution)
}

fn w_layout(space: &SpaceSpec) -> Result<()> {
    let w = FactorSpec::sym(5, 3);
    if space.len() < 2 || space.factor(0) != w || space.factor(1) != w {
        return Err(Error::InvalidArgument(format!(
            "W-restriction needs sym(5,3) x sym(5,3) as the first two factors, got {space}"
        )));
    }
    Ok(())
}

/// Restriction to `W x rest`: substitutes `xi_{2,i} -> -xi_{1,i}`, leaving
/// only powers of `eta_2` on the second factor.
pub fn w_restrict(c: &CohClass) -> Result<CohClass> {
    let space = c.space();
    w_layout(space)?;
    let mut terms = Vec::with_capacity(c.len());
    for (m, coef) in c.terms() {
        let (a, b) = (m.0[0], m.0[1]);
        let Some((neg, merged)) = a.mul(&FactorMono::new(b.xi, 0)) else { continue };
        let flip = neg ^ (b.odd_count() % 2 == 1);
        let mut v = m.0.clone();
        v[0] = merged;
        v[1] = FactorMono::eta(b.eta);
        terms.push((Monomial(v), if flip { -coef.clone() } else { coef.clone() }));
    }
    Ok(CohClass::from_terms(space, terms))
}

/// `q_{1*}` of a W-form class to `C^(3) x rest`, using
/// `q_{1*} q_1^* x = x (theta - eta)` and `q_{1*} q_2^* eta = theta^2/2 - theta eta + eta^2`.
pub fn w_push(c: &CohClass) -> Result<CohClass> {
    let space = c.space();
    w_layout(space)?;
    let c3 = SpaceSpec::sym(5, 3);
    let theta = CohClass::theta(&c3, 0)?;
    let eta = CohClass::eta(&c3, 0)?;
    let r3 = &theta - &eta;
    let r2 = &(&theta.pow(2).scale(&qf(1, 2)) - &(&theta * &eta)) + &eta.pow(2);
    let mut target_factors = vec![space.factor(0)];
    target_factors.extend_from_slice(&space.factors()[2..]);
    let target = SpaceSpec::new(target_factors)?;
    let mut terms = Vec::new();
    for (m, coef) in c.terms() {
        let b = m.0[1];
        if b.xi != 0 {
            return Err(Error::UnsupportedWIntegrand(format!(
                "odd classes from the second factor must be substituted first: {}",
                m.display(space)
            )));
        }
        let rule = match b.eta {
            0 => &r3,
            1 => &r2,
            e => {
                return Err(Error::UnsupportedWIntegrand(format!(
                    "no push-forward rule for eta_2^{e} in {}",
                    m.display(space)
                )))
            }
        };
        let x = CohClass::from_terms(&c3, [(Monomial::single(m.0[0]), Q::one())]);
        for (pm, pc) in (&x * rule).terms() {
            let mut v = vec![pm.0[0]];
            v.extend_from_slice(&m.0[2..]);
            terms.push((Monomial(v), pc * coef));
        }
    }
    Ok(CohClass::from_terms(&target, terms))
}

/// Integrates the first factor of a product away (`int_{X_1} : H(X_1 x R) -> H(R)`).
pub fn integrate_first_factor(c: &CohClass) -> Result<CohClass> {
    let space = c.space();
    if space.len() < 2 {
        return Err(Error::InvalidArgument("nothing left after integrating the only factor".into()));
    }
    let f = space.factor(0);
    let rest = SpaceSpec::new(space.factors()[1..].to_vec())?;
    let mut terms = Vec::new();
    for (m, coef) in c.terms() {
        let v = integrate_raw_factor(&m.0[0], &f);
        if !v.is_zero() {
            terms.push((Monomial(m.0[1..].to_vec()), v * coef));
        }
    }
    Ok(CohClass::from_terms(&rest, terms))
}

/// Result of integrating over `W`: a number when nothing else remains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WIntegral {
    Number(Q),
    Class(CohClass),
}

/// `int_W` of a class on `C^(3) x C^(3) x rest` restricted to `W x rest`.
pub fn w_integrate(c: &CohClass) -> Result<WIntegral> {
    let pushed = w_push(&w_restrict(c)?)?;
    if pushed.space().len() == 1 {
        Ok(WIntegral::Number(pushed.integral()))
    } else {
        Ok(WIntegral::Class(integrate_first_factor(&pushed)?))
    }
}

/// `int_W q_1^* a q_2^* b` for classes on `C^(3)`.
pub fn integrate_over_w(a: &CohClass, b: &CohClass) -> Result<Q> {
    let c3 = SpaceSpec::sym(5, 3);
    if a.space() != &c3 || b.space() != &c3 {
        return Err(Error::InvalidArgument("W-integration takes classes on sym(5,3)".into()));
    }
    let pair = SpaceSpec::syms(5, &[3, 3]);
    let x = &crate::product::inject(a, &pair, 0)? * &crate::product::inject(b, &pair, 1)?;
    match w_integrate(&x)? {
        WIntegral::Number(v) => Ok(v),
        WIntegral::Class(_) => unreachable!("two factors integrate to a number"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::gens;
    use crate::product::delta;
    use crate::rational::q;

    #[test]
    fn pull_theta() {
        let s = SpaceSpec::sym(5, 6);
        let p = pull_sum(&gens::theta(&s), 2).unwrap();
        let t = SpaceSpec::syms(5, &[2, 4]);
        let expect = &(&CohClass::theta(&t, 0).unwrap() + &CohClass::theta(&t, 1).unwrap()) + &delta(&t, 0, 1).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn gysin_anchor_rows() {
        let t = SpaceSpec::syms(5, &[2, 2]);
        let c4 = SpaceSpec::sym(5, 4);
        let x = CohClass::theta(&t, 1).unwrap();
        let expect = &gens::theta(&c4) + &gens::eta(&c4).scale(&q(10));
        assert_eq!(gysin_sum(&x).unwrap(), expect);
        let y = &CohClass::sigma(&t, 0, 3).unwrap() * &CohClass::sigma(&t, 1, 3).unwrap();
        assert_eq!(gysin_sum(&y).unwrap(), (&gens::sigma(&c4, 3) * &gens::eta(&c4)).scale(&q(2)));
        let u = SpaceSpec::syms(5, &[1, 3]);
        let z = CohClass::eta(&u, 1).unwrap().pow(2);
        assert_eq!(gysin_sum(&z).unwrap(), gens::eta(&c4).pow(2).scale(&q(2)));
    }

    #[test]
    fn involution_rules() {
        let s = SpaceSpec::sym(5, 4);
        let (t, e) = (gens::theta(&s), gens::eta(&s));
        let img = serre_involution(&e.pow(2)).unwrap();
        assert_eq!(img, &(&t.pow(2).scale(&qf(1, 2)) - &(&e * &t)) + &e.pow(2));
        let x = &t * &(&gens::xi(&s, 1) * &gens::xi(&s, 2));
        assert_eq!(serre_involution(&x).unwrap(), x);
        assert_eq!(serre_involution(&img).unwrap(), e.pow(2));
        assert!(serre_involution(&t).is_err());
    }

    #[test]
    fn w_rules() {
        let s = SpaceSpec::sym(5, 3);
        let e = gens::eta(&s);
        let one = CohClass::one(&s);
        assert_eq!(integrate_over_w(&e, &e).unwrap(), q(6));
        assert_eq!(integrate_over_w(&e.pow(2), &one).unwrap(), q(4));
        assert!(matches!(integrate_over_w(&one, &e.pow(2)), Err(Error::UnsupportedWIntegrand(_))));
        let t = SpaceSpec::syms(5, &[3, 3, 4]);
        let d = &delta(&t, 0, 2).unwrap() + &delta(&t, 1, 2).unwrap();
        assert!(w_restrict(&d).unwrap().is_zero());
    }
}
