//! Abel-Jacobi maps induced by the correspondence: the map on
//! `H^2(C^(3))` into `H^4(C^(4))` modulo `theta H^2(Pic)`, and the map from
//! curve classes on the two copies of `W` into `H^4(M_2)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::class::{gens, CohClass};
use crate::cycle::{reduce_mod_theta_pic, total_class};
use crate::data::{theta_eta_class, Constants};
use crate::error::{Error, Result};
use crate::linalg::{coords, rank, Matrix};
use crate::maps::{integrate_over_w, w_integrate, WIntegral};
use crate::monomial::{FactorMono, Monomial};
use crate::product::inject;
use crate::rational::{q, qf, to_i64, Q};
use crate::ring::factor_basis;
use crate::space::SpaceSpec;

const G: u32 = 5;

pub fn c3() -> SpaceSpec {
    SpaceSpec::sym(G, 3)
}

pub fn c4() -> SpaceSpec {
    SpaceSpec::sym(G, 4)
}

fn check_omega(omega: &CohClass) -> Result<()> {
    if omega.space() != &c3() {
        return Err(Error::InvalidArgument(format!("expected a class on sym(5,3), got {}", omega.space())));
    }
    if !omega.is_zero() && omega.degree() != Some(2) {
        return Err(Error::Degree(format!("expected a degree-2 class, got degrees {:?}", omega.degrees())));
    }
    Ok(())
}

/// Ordered product `xi_{i1} xi_{i2} ... eta^d`; an unsorted index list keeps its sign.
fn mono(s: &SpaceSpec, idx: &[u32], eta: u32) -> CohClass {
    let ordered = idx.iter().fold(CohClass::one(s), |acc, &i| &acc * &gens::xi(s, i));
    &ordered * &gens::eta(s).pow(eta)
}

/// Induced map on `omega` in `H^2(C^(3))`, evaluated through the closed
/// formula obtained by integrating the restricted total class over `W`.
/// The result is reduced modulo `theta H^2(Pic)`.
pub fn aj1_bar(omega: &CohClass) -> Result<CohClass> {
    check_omega(omega)?;
    let (s3, s4) = (c3(), c4());
    let (t, e) = (gens::theta(&s3), gens::eta(&s3));
    let (tt, ee) = (gens::theta(&s4), gens::eta(&s4));
    let w = &t - &e;
    let quad = &(&t.pow(2).scale(&qf(1, 2)) - &(&t * &e)) + &e.pow(2);
    let int = |x: &CohClass| (omega * x).integral();
    let lin = &e.scale(&q(4)) - &t.scale(&q(2));
    let mut out = ee.pow(2).scale(&(int(&(&lin * &w)) + q(4) * int(&quad)));
    for i in 1..=G {
        for j in 1..=G {
            let (xi, xpi, xj, xpj) = (i, i + G, j, j + G);
            let a = int(&(&mono(&s3, &[xi, xpj], 0) * &w));
            if !a.is_zero() {
                out = &out + &mono(&s4, &[xpi, xj], 1).scale(&(q(8) * a));
            }
            let b = int(&(&mono(&s3, &[xi, xj], 0) * &w));
            if !b.is_zero() {
                out = &out - &mono(&s4, &[xpi, xpj], 1).scale(&(q(4) * b));
            }
            let c = int(&(&mono(&s3, &[xpi, xpj], 0) * &w));
            if !c.is_zero() {
                out = &out - &mono(&s4, &[xi, xj], 1).scale(&(q(4) * c));
            }
        }
    }
    out = &out + &(&tt * &ee).scale(&int(&w.pow(2)));
    reduce_mod_theta_pic(&out)
}

/// The same map computed from the total correspondence class: pull
/// `omega` back to the first factor, restrict to `W x C^(4)` and integrate
/// over `W`.
pub fn aj1_bar_via_total(omega: &CohClass) -> Result<CohClass> {
    check_omega(omega)?;
    aj1_from_class(omega, &total_class()?)
}

/// Integrates `omega (x) 1 . total` over `W` for a given total class.
pub fn aj1_from_class(omega: &CohClass, total: &CohClass) -> Result<CohClass> {
    let x = &inject(omega, total.space(), 0)? * total;
    match w_integrate(&x)? {
        WIntegral::Class(c) => reduce_mod_theta_pic(&c),
        WIntegral::Number(_) => unreachable!("a factor remains after integrating over W"),
    }
}

/// Normal-form basis of `H^2(C^(3))` (46 classes).
pub fn h2_basis() -> Vec<CohClass> {
    let s = c3();
    factor_basis(&s.factor(0), 2)
        .into_iter()
        .map(|m| CohClass::from_terms(&s, [(Monomial::single(m), Q::one())]))
        .collect()
}

/// `eta H^2(Pic) + Q eta^2` inside `H^4(C^(4))`.
pub fn target_subspace_i() -> Vec<CohClass> {
    let s = c4();
    let e = gens::eta(&s);
    let mut out = vec![e.pow(2)];
    for a in 1..=2 * G {
        for b in a + 1..=2 * G {
            out.push(&mono(&s, &[a, b], 0) * &e);
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ImageReport {
    pub domain_dim: usize,
    pub rank: usize,
    pub target_dim: usize,
    /// Rank of images together with the target subspace.
    pub joint_rank: usize,
    pub contains_target: bool,
    pub paths_agree: bool,
    pub disagreements: Vec<String>,
}

/// Image of the map on all of `H^2(C^(3))`, modulo `theta H^2(Pic)`,
/// compared against `eta H^2(Pic) + Q eta^2`.
pub fn aj1_image_check() -> Result<ImageReport> {
    let total = total_class()?;
    let basis = h2_basis();
    let mut images = Vec::with_capacity(basis.len());
    let mut disagreements = Vec::new();
    for b in &basis {
        let x = aj1_bar(b)?;
        let y = aj1_from_class(b, &total)?;
        if x != y {
            disagreements.push(b.to_string());
        }
        images.push(x);
    }
    let target: Vec<CohClass> = target_subspace_i().iter().map(reduce_mod_theta_pic).collect::<Result<_>>()?;
    let r = rank(&coords(&images).vectors);
    let mut joint = images.clone();
    joint.extend(target.iter().cloned());
    let joint_rank = rank(&coords(&joint).vectors);
    Ok(ImageReport {
        domain_dim: basis.len(),
        rank: r,
        target_dim: rank(&coords(&target).vectors),
        joint_rank,
        contains_target: joint_rank == r,
        paths_agree: disagreements.is_empty(),
        disagreements,
    })
}

/// `(eta^2, theta eta)` coefficients of a class in `eta H^2(Pic) + Q eta^2`
/// after reduction, plus whatever is left over.
pub fn theta_eta_split(c: &CohClass) -> Result<(Q, Q, CohClass)> {
    let s = c4();
    let r = reduce_mod_theta_pic(c)?;
    let e2 = gens::eta(&s).pow(2);
    let te = &gens::theta(&s) * &gens::eta(&s);
    let a = r.coefficient(&Monomial::single(FactorMono::eta(2)));
    let rest = &r - &e2.scale(&a);
    // theta eta has the sigma_i eta monomials, all with coefficient 1
    let b = rest.coefficient(te.terms().keys().next().unwrap());
    let rest = &rest - &te.scale(&b);
    Ok((a, b, rest))
}

#[derive(Debug, Clone, Serialize)]
pub struct CijEntry {
    pub i: u32,
    pub j: u32,
    pub value: Option<i64>,
}

/// `c_ij` with `aj1_bar(xi_i xi_j) = c_ij xi_i xi_j eta` for `j != i +- 5`;
/// `None` when the image is not of that shape or the coefficient is not
/// an integer.
pub fn c_ij_table() -> Result<Vec<CijEntry>> {
    let (s3, s4) = (c3(), c4());
    let mut out = Vec::new();
    for i in 1..=2 * G {
        for j in i + 1..=2 * G {
            if j == i + G {
                continue;
            }
            let img = aj1_bar(&mono(&s3, &[i, j], 0))?;
            let unit = mono(&s4, &[i, j], 1);
            let (m, c) = unit.terms().iter().next().unwrap();
            let k = img.coefficient(m) / c;
            let value = if img == unit.scale(&k) { to_i64(&k) } else { None };
            out.push(CijEntry { i, j, value });
        }
    }
    Ok(out)
}

/// Which push-forward `q_{2*}` uses for the curve classes on `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PushReading {
    /// `q_{2*}[C_i] = q_{1*}[C'_i]` and `q_{2*}[C'_i] = q_{1*}[C_i]`, from
    /// `C'_i` being the image of `C_i` under the involution swapping `q_1, q_2`.
    Swapped,
    /// `q_{2*} = q_{1*}` on the curve classes.
    Same,
}

impl PushReading {
    pub const ALL: [PushReading; 2] = [PushReading::Swapped, PushReading::Same];
}

/// Labeled curve classes on `W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curve {
    C(usize),
    Cp(usize),
}

/// Intersection numbers of curve classes on `W` and their push-forwards
/// to `C^(3)`.
#[derive(Debug, Clone)]
pub struct PairingTable {
    /// Gram matrix on `C_1..C_5, C'_1..C'_5`.
    pub gram: Matrix,
    pub q1_c: CohClass,
    pub q1_cp: CohClass,
    pub q1_x1p: CohClass,
    pub q1_x1q: CohClass,
    pub reading: PushReading,
}

impl PairingTable {
    pub fn new(k: &Constants, reading: PushReading) -> Result<Self> {
        let cv = &k.curves;
        let (cc, pp, cp) = (cv.ci_ci.value()?, cv.cpi_cpi.value()?, cv.ci_cpi.value()?);
        let (ccj, ppj, cpj) = (cv.ci_cj.value()?, cv.cpi_cpj.value()?, cv.ci_cpj.value()?);
        let n = G as usize;
        let mut gram = vec![vec![Q::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                let same = i == j;
                gram[i][j] = if same { cc.clone() } else { ccj.clone() };
                gram[n + i][n + j] = if same { pp.clone() } else { ppj.clone() };
                let x = if same { cp.clone() } else { cpj.clone() };
                gram[i][n + j] = x.clone();
                gram[n + j][i] = x;
            }
        }
        let s = c3();
        let p = &k.pushforwards;
        Ok(PairingTable {
            gram,
            q1_c: theta_eta_class(&s, &p.q1_ci)?,
            q1_cp: theta_eta_class(&s, &p.q1_cpi)?,
            q1_x1p: theta_eta_class(&s, &p.q1_x1p)?,
            q1_x1q: theta_eta_class(&s, &p.q1_x1q)?,
            reading,
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.gram.len()).all(|i| (0..self.gram.len()).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    fn index(c: Curve) -> usize {
        match c {
            Curve::C(i) => i,
            Curve::Cp(i) => G as usize + i,
        }
    }

    pub fn curve_curve(&self, a: Curve, b: Curve) -> Q {
        self.gram[Self::index(a)][Self::index(b)].clone()
    }

    /// `q_{k*}[curve]` for `k` = 1 or 2.
    pub fn push(&self, k: u8, c: Curve) -> &CohClass {
        let swapped = k == 2 && self.reading == PushReading::Swapped;
        match (c, swapped) {
            (Curve::C(_), false) | (Curve::Cp(_), true) => &self.q1_c,
            (Curve::Cp(_), false) | (Curve::C(_), true) => &self.q1_cp,
        }
    }
}

/// A degree-2 class on `W`: a combination of curve classes plus pullbacks
/// `q_1^* a + q_2^* b` of classes on `C^(3)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WClass {
    pub c: Vec<Q>,
    pub cp: Vec<Q>,
    pub q1: CohClass,
    pub q2: CohClass,
}

impl WClass {
    pub fn zero() -> Self {
        let n = G as usize;
        WClass { c: vec![Q::zero(); n], cp: vec![Q::zero(); n], q1: CohClass::zero(&c3()), q2: CohClass::zero(&c3()) }
    }

    pub fn curve(c: Curve) -> Self {
        let mut w = Self::zero();
        match c {
            Curve::C(i) => w.c[i] = Q::one(),
            Curve::Cp(i) => w.cp[i] = Q::one(),
        }
        w
    }

    /// `[C]_tot = [C_1] + ... + [C_5]`.
    pub fn c_tot() -> Self {
        let mut w = Self::zero();
        w.c = vec![Q::one(); G as usize];
        w
    }

    pub fn pull(k: u8, x: CohClass) -> Self {
        let mut w = Self::zero();
        if k == 1 {
            w.q1 = x;
        } else {
            w.q2 = x;
        }
        w
    }

    pub fn add(&self, o: &WClass) -> WClass {
        WClass {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
            cp: self.cp.iter().zip(&o.cp).map(|(a, b)| a + b).collect(),
            q1: &self.q1 + &o.q1,
            q2: &self.q2 + &o.q2,
        }
    }

    pub fn scale(&self, x: &Q) -> WClass {
        WClass {
            c: self.c.iter().map(|a| a * x).collect(),
            cp: self.cp.iter().map(|a| a * x).collect(),
            q1: self.q1.scale(x),
            q2: self.q2.scale(x),
        }
    }

    fn curves(&self) -> impl Iterator<Item = (Curve, &Q)> {
        let a = self.c.iter().enumerate().map(|(i, x)| (Curve::C(i), x));
        let b = self.cp.iter().enumerate().map(|(i, x)| (Curve::Cp(i), x));
        a.chain(b).filter(|(_, x)| !x.is_zero())
    }
}

fn ambient_pair(k: u8, x: &CohClass, l: u8, y: &CohClass) -> Result<Q> {
    if x.is_zero() || y.is_zero() {
        return Ok(Q::zero());
    }
    let s = c3();
    let w = &gens::theta(&s) - &gens::eta(&s);
    match (k, l) {
        (1, 1) | (2, 2) => Ok((&(x * y) * &w).integral()),
        (1, 2) => integrate_over_w(x, y),
        (2, 1) => integrate_over_w(y, x),
        _ => Err(Error::InvalidArgument(format!("no map q_{k} or q_{l}"))),
    }
}

/// `int_W a . b` using the curve table, push-forwards and the W rules.
pub fn pair_w(t: &PairingTable, a: &WClass, b: &WClass) -> Result<Q> {
    let mut s = Q::zero();
    for (ca, xa) in a.curves() {
        for (cb, xb) in b.curves() {
            s += t.curve_curve(ca, cb) * xa * xb;
        }
        for (k, y) in [(1u8, &b.q1), (2, &b.q2)] {
            if !y.is_zero() {
                s += (t.push(k, ca) * y).integral() * xa;
            }
        }
    }
    for (cb, xb) in b.curves() {
        for (k, y) in [(1u8, &a.q1), (2, &a.q2)] {
            if !y.is_zero() {
                s += (t.push(k, cb) * y).integral() * xb;
            }
        }
    }
    for (k, x) in [(1u8, &a.q1), (2, &a.q2)] {
        for (l, y) in [(1u8, &b.q1), (2, &b.q2)] {
            s += ambient_pair(k, x, l, y)?;
        }
    }
    Ok(s)
}

/// Input to the second map: one class on each copy of `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct AJ2Domain {
    pub w1: WClass,
    pub w2: WClass,
}

/// Coefficients on `[P^2_1] .. [P^2_10]`, reported modulo `j_2* f`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AJ2Target {
    #[serde(serialize_with = "ser_qs")]
    pub p: Vec<Q>,
    pub modulo: Vec<String>,
}

fn ser_qs<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::rational::fmt_q))
}

impl AJ2Target {
    pub fn labels() -> Vec<String> {
        (1..=2 * G).map(|i| format!("P2_{i}")).collect()
    }
}

/// Applies the two formulas for the images of `H^2(W_1)` and `H^2(W_2)`.
pub fn aj2_map(t: &PairingTable, x: &AJ2Domain) -> Result<AJ2Target> {
    let n = G as usize;
    let s = c3();
    let w = &gens::theta(&s) - &gens::eta(&s);
    let mut p = vec![Q::zero(); 2 * n];
    for i in 0..n {
        let ci = WClass::curve(Curve::C(i));
        let cpi = WClass::curve(Curve::Cp(i));
        p[i + n] += pair_w(t, &x.w1, &ci)?;
        let k1 = WClass::c_tot().add(&cpi.scale(&q(4))).add(&WClass::pull(1, w.scale(&q(2))));
        p[i] += pair_w(t, &x.w1, &k1)?;
        p[i + n] -= pair_w(t, &x.w2, &ci.scale(&q(3)).add(&cpi))?;
        p[i] += pair_w(t, &x.w2, &cpi.add(&WClass::pull(2, w.clone())))?;
    }
    Ok(AJ2Target { p, modulo: vec!["j2*f".into()] })
}

/// One published test vector for the second map.
#[derive(Debug, Clone, Serialize)]
pub struct AJ2Sample {
    pub reading: PushReading,
    pub label: String,
    pub computed: AJ2Target,
    #[serde(serialize_with = "ser_qs")]
    pub published: Vec<Q>,
    /// Entries compared; the others are free in the stated quotient.
    pub compared: Vec<usize>,
    pub matches: bool,
}

/// The two published samples with `i` the first index.
pub fn aj2_samples(t: &PairingTable) -> Result<Vec<AJ2Sample>> {
    let n = G as usize;
    let i = 0;
    let s = c3();
    let sigma = gens::sigma(&s, 1);
    let alpha = WClass::curve(Curve::C(i))
        .scale(&q(12))
        .add(&WClass::c_tot().scale(&q(-3)))
        .add(&WClass::pull(2, (&gens::eta(&s) - &sigma).scale(&q(2))));
    let beta = WClass::curve(Curve::C(i)).scale(&q(3));
    let first = aj2_map(t, &AJ2Domain { w1: alpha, w2: beta })?;
    let mut pub1 = vec![Q::zero(); 2 * n];
    for (j, v) in pub1.iter_mut().enumerate().take(n) {
        *v = if j == i { q(-58) } else { q(44) };
    }
    let all: Vec<usize> = (0..2 * n).collect();
    let ok1 = all.iter().all(|&k| first.p[k] == pub1[k]);
    let second = aj2_map(t, &AJ2Domain { w1: WClass::curve(Curve::C(i)), w2: WClass::curve(Curve::Cp(i)) })?;
    let mut pub2 = vec![Q::zero(); 2 * n];
    for (j, v) in pub2.iter_mut().enumerate().take(n) {
        if j != i {
            *v = q(-6);
        }
    }
    let pub2: Vec<Q> = (0..2 * n).map(|k| if k >= n { pub2[k - n].clone() } else { Q::zero() }).collect();
    let upper: Vec<usize> = (n..2 * n).collect();
    let ok2 = upper.iter().all(|&k| second.p[k] == pub2[k]);
    Ok(vec![
        AJ2Sample {
            reading: t.reading,
            label: "12[C_1] - 3[C]_tot + 2 q_2^*(eta - sigma_1), 3[C_1]".into(),
            computed: first,
            published: pub1,
            compared: all,
            matches: ok1,
        },
        AJ2Sample {
            reading: t.reading,
            label: "[C_1], [C'_1]".into(),
            computed: second,
            published: pub2,
            compared: upper,
            matches: ok2,
        },
    ])
}

/// Spanning set of `H^2(W_1) + H^2(W_2)` used for the rank check.
pub fn aj2_domain_basis(curves: bool, ambient: bool) -> Vec<AJ2Domain> {
    let n = G as usize;
    let mut out = Vec::new();
    for side in 0..2 {
        let wrap = |w: WClass| {
            if side == 0 {
                AJ2Domain { w1: w, w2: WClass::zero() }
            } else {
                AJ2Domain { w1: WClass::zero(), w2: w }
            }
        };
        if curves {
            for i in 0..n {
                out.push(wrap(WClass::curve(Curve::C(i))));
                out.push(wrap(WClass::curve(Curve::Cp(i))));
            }
        }
        if ambient {
            for b in h2_basis() {
                out.push(wrap(WClass::pull(1, b.clone())));
                out.push(wrap(WClass::pull(2, b)));
            }
        }
    }
    out
}

/// Rank of the second map on a domain, in the span of `[P^2_1..P^2_10]`.
pub fn aj2_rank(t: &PairingTable, domain: &[AJ2Domain]) -> Result<usize> {
    let rows: Matrix = domain.iter().map(|d| aj2_map(t, d).map(|x| x.p)).collect::<Result<_>>()?;
    Ok(rank(&rows))
}

#[derive(Debug, Clone, Serialize)]
pub struct AJ2RankReport {
    pub reading: PushReading,
    pub full: usize,
    pub curves_only: usize,
    pub ambient_only: usize,
    pub empty: usize,
}

impl AJ2RankReport {
    pub fn passes(&self) -> bool {
        self.full == 2 * G as usize
    }
}

pub fn aj2_rank_check(t: &PairingTable) -> Result<AJ2RankReport> {
    Ok(AJ2RankReport {
        reading: t.reading,
        full: aj2_rank(t, &aj2_domain_basis(true, true))?,
        curves_only: aj2_rank(t, &aj2_domain_basis(true, false))?,
        ambient_only: aj2_rank(t, &aj2_domain_basis(false, true))?,
        empty: aj2_rank(t, &[])?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SpanReport {
    pub dim: usize,
    pub equals_theta_eta_span: bool,
    /// Coefficients of `theta^2` in `(theta eta, eta^2)`.
    #[serde(serialize_with = "ser_qs")]
    pub theta_squared: Vec<Q>,
}

/// The push-forwards of the curve classes span exactly `<theta eta, eta^2>`
/// in `H^4(C^(3))`.
pub fn span_check_theta_eta(t: &PairingTable) -> Result<SpanReport> {
    let s = c3();
    let (th, e) = (gens::theta(&s), gens::eta(&s));
    let w = &th - &e;
    let classes = vec![t.q1_c.clone(), &t.q1_cp.scale(&q(2)) + &w.pow(2), t.q1_x1p.clone(), t.q1_x1q.clone()];
    let te = vec![&th * &e, e.pow(2)];
    let dim = crate::linalg::span_dim(&classes);
    let mut joint = classes.clone();
    joint.extend(te.iter().cloned());
    let equals = dim == 2 && crate::linalg::span_dim(&joint) == 2 && crate::linalg::span_dim(&te) == 2;
    let theta_squared = crate::linalg::express_in(&th.pow(2), &te).unwrap_or_default();
    Ok(SpanReport { dim, equals_theta_eta_span: equals, theta_squared })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(r: PushReading) -> PairingTable {
        PairingTable::new(&Constants::embedded(), r).unwrap()
    }

    #[test]
    fn aj1_sigma() {
        let s = c3();
        let (a, b, rest) = theta_eta_split(&aj1_bar(&gens::sigma(&s, 2)).unwrap()).unwrap();
        assert_eq!((a, b), (q(8), q(-11)));
        let s4 = c4();
        assert_eq!(rest, (&gens::sigma(&s4, 2) * &gens::eta(&s4)).scale(&q(16)));
    }

    #[test]
    fn aj1_eta_coefficients() {
        let s = c3();
        let (a, b, rest) = theta_eta_split(&aj1_bar(&gens::eta(&s)).unwrap()).unwrap();
        assert_eq!(a, q(10));
        assert_eq!(b, q(-13));
        assert!(rest.is_zero());
    }

    #[test]
    fn aj1_paths_agree_on_samples() {
        let s = c3();
        for w in [gens::eta(&s), gens::sigma(&s, 4), mono(&s, &[1, 2], 0), mono(&s, &[3, 9], 0)] {
            assert_eq!(aj1_bar(&w).unwrap(), aj1_bar_via_total(&w).unwrap(), "{w}");
        }
        assert!(aj1_bar(&CohClass::zero(&s)).unwrap().is_zero());
        assert!(aj1_bar(&gens::theta(&s).pow(2)).is_err());
    }

    #[test]
    fn table_shape() {
        let t = table(PushReading::Swapped);
        assert!(t.is_symmetric());
        assert_eq!(t.curve_curve(Curve::C(0), Curve::C(0)), q(-2));
        assert_eq!(t.curve_curve(Curve::C(0), Curve::Cp(1)), q(2));
        assert_eq!(t.curve_curve(Curve::C(0), Curve::Cp(0)), q(0));
    }

    #[test]
    fn aj2_linear_and_zero() {
        let t = table(PushReading::Swapped);
        let z = aj2_map(&t, &AJ2Domain { w1: WClass::zero(), w2: WClass::zero() }).unwrap();
        assert!(z.p.iter().all(|x| x.is_zero()));
        let s = c3();
        let a = AJ2Domain { w1: WClass::curve(Curve::C(1)), w2: WClass::pull(1, gens::eta(&s)) };
        let b = AJ2Domain { w1: WClass::pull(2, gens::sigma(&s, 3)), w2: WClass::curve(Curve::Cp(4)) };
        let ab = AJ2Domain { w1: a.w1.add(&b.w1.scale(&q(3))), w2: a.w2.add(&b.w2.scale(&q(3))) };
        let (fa, fb, fab) = (aj2_map(&t, &a).unwrap(), aj2_map(&t, &b).unwrap(), aj2_map(&t, &ab).unwrap());
        for k in 0..10 {
            assert_eq!(fab.p[k], &fa.p[k] + &fb.p[k] * q(3));
        }
    }

    #[test]
    fn aj2_second_sample_matches() {
        for r in PushReading::ALL {
            let samples = aj2_samples(&table(r)).unwrap();
            assert!(samples[1].matches);
        }
    }

    #[test]
    fn span() {
        let r = span_check_theta_eta(&table(PushReading::Swapped)).unwrap();
        assert_eq!(r.dim, 2);
        assert!(r.equals_theta_eta_span);
        assert_eq!(r.theta_squared, vec![q(8), q(-20)]);
    }
}
