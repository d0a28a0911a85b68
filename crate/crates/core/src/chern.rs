//! Secant-plane classes, Chern classes of symmetric products, and
//! Riemann–Roch on surfaces and curves.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_traits::{One, Signed, Zero};

use crate::class::{gens, CohClass};
use crate::data::Constants;
use crate::error::{Error, Result};
use crate::linalg::express_in;
use crate::rational::{binom, factorial, fmt_q, q, qf, Q};
use crate::space::SpaceSpec;

/// A polynomial in `n` with rational coefficients, ascending powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialQ {
    coeffs: Vec<Q>,
}

impl PolynomialQ {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolynomialQ { coeffs }
    }

    /// From integer coefficients in ascending order.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, n: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * n + c)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl Add for &PolynomialQ {
    type Output = PolynomialQ;
    fn add(self, rhs: &PolynomialQ) -> PolynomialQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolynomialQ::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PolynomialQ {
    type Output = PolynomialQ;
    fn sub(self, rhs: &PolynomialQ) -> PolynomialQ {
        self + &rhs.scale(&q(-1))
    }
}

impl fmt::Display for PolynomialQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let a = c.abs();
            let body = match (k, a.is_one()) {
                (0, _) => fmt_q(&a),
                (1, true) => "n".to_string(),
                (1, false) => format!("{}n", fmt_q(&a)),
                (_, true) => format!("n^{k}"),
                (_, false) => format!("{}n^{k}", fmt_q(&a)),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// Class in `C^(k)` of divisors in a `g^r_d`:
/// `sum_{l=0}^{k-r} C(d-g-r, l) eta^l theta^{k-r-l} / (k-r-l)!`.
pub fn secant_class(d: u32, g: u32, r: u32, k: u32) -> Result<CohClass> {
    if k < r {
        return Err(Error::InvalidArgument(format!("secant class needs k >= r, got k = {k}, r = {r}")));
    }
    let s = SpaceSpec::sym(g, k);
    let m = d as i64 - g as i64 - r as i64;
    let terms: Vec<(Q, u32, u32)> = (0..=k - r)
        .map(|l| {
            let j = k - r - l;
            (binom(m, l) / Q::from_integer(factorial(j)), j, l)
        })
        .collect();
    Ok(gens::theta_eta(&s, &terms))
}

/// Total Chern class of `C^(n)`: `(1+eta)^{n-2g+1} prod_i (1 + eta - sigma_i)`.
pub fn chern_sym(g: u32, n: u32) -> CohClass {
    let s = SpaceSpec::sym(g, n);
    let eta = gens::eta(&s);
    let one = CohClass::one(&s);
    let m = n as i64 - 2 * g as i64 + 1;
    let mut out = CohClass::zero(&s);
    for l in 0..=n {
        out = &out + &eta.pow(l).scale(&binom(m, l));
    }
    for i in 1..=g {
        out = &out * &(&(&one + &eta) - &gens::sigma(&s, i));
    }
    out
}

/// Total Chern class of a smooth divisor with class `divisor`, as an ambient
/// class: `c(ambient) (1 + D)^{-1}`, truncated at the divisor's dimension.
pub fn chern_restrict_sub(ambient_chern: &CohClass, divisor: &CohClass) -> Result<CohClass> {
    if !divisor.is_zero() && divisor.degree() != Some(2) {
        return Err(Error::Degree("divisor class must have degree 2".into()));
    }
    let space = ambient_chern.space();
    let top = space.top_degree().saturating_sub(2);
    let mut inv = CohClass::zero(space);
    let neg = -divisor;
    for k in 0..=top / 2 {
        inv = &inv + &neg.pow(k);
    }
    Ok(ambient_chern.try_mul(&inv)?.truncate(top))
}

/// A curve on a surface that is not a restriction of an ambient class,
/// known only through its intersection numbers.
#[derive(Debug, Clone)]
pub struct ExtraCurve {
    pub name: String,
    pub self_intersection: Q,
    /// Intersection numbers with restricted ambient classes.
    pub ambient_pairings: Vec<(CohClass, Q)>,
    /// Intersection numbers with other extra curves, by name.
    pub curve_pairings: BTreeMap<String, Q>,
}

/// A surface `S` in an ambient product, described by its class, its
/// restricted total Chern class, and extra curves.
#[derive(Debug, Clone)]
pub struct SurfaceData {
    pub ambient: SpaceSpec,
    pub surface_class: CohClass,
    pub chern_total: CohClass,
    pub extra_curves: Vec<ExtraCurve>,
}

/// A divisor on a surface: a restricted ambient class plus extra curves.
#[derive(Debug, Clone)]
pub struct Divisor {
    pub ambient: CohClass,
    pub extra: Vec<(String, Q)>,
}

impl Divisor {
    pub fn ambient(c: CohClass) -> Self {
        Divisor { ambient: c, extra: Vec::new() }
    }

    pub fn with(mut self, name: &str, mult: Q) -> Self {
        self.extra.push((name.to_string(), mult));
        self
    }
}

impl SurfaceData {
    pub fn c1(&self) -> CohClass {
        self.chern_total.degree_part(2)
    }

    pub fn c2(&self) -> CohClass {
        self.chern_total.degree_part(4)
    }

    /// `int_S x` for an ambient class `x`.
    pub fn integrate(&self, x: &CohClass) -> Result<Q> {
        Ok(x.try_mul(&self.surface_class)?.integral())
    }

    fn curve(&self, name: &str) -> Result<&ExtraCurve> {
        self.extra_curves
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::MissingPairing(format!("no curve named {name}")))
    }

    fn ambient_dot_curve(&self, x: &CohClass, name: &str) -> Result<Q> {
        if x.is_zero() {
            return Ok(Q::zero());
        }
        let c = self.curve(name)?;
        let known: Vec<CohClass> = c.ambient_pairings.iter().map(|(k, _)| k.clone()).collect();
        let coeffs = express_in(x, &known)
            .ok_or_else(|| Error::MissingPairing(format!("{x} . {name}")))?;
        Ok(coeffs.iter().zip(&c.ambient_pairings).map(|(a, (_, v))| a * v).sum())
    }

    fn curve_dot_curve(&self, a: &str, b: &str) -> Result<Q> {
        if a == b {
            return Ok(self.curve(a)?.self_intersection.clone());
        }
        let ca = self.curve(a)?;
        if let Some(v) = ca.curve_pairings.get(b) {
            return Ok(v.clone());
        }
        self.curve(b)?
            .curve_pairings
            .get(a)
            .cloned()
            .ok_or_else(|| Error::MissingPairing(format!("{a} . {b}")))
    }

    /// Intersection number of two divisors on `S`.
    pub fn pair(&self, d: &Divisor, e: &Divisor) -> Result<Q> {
        let mut v = self.integrate(&d.ambient.try_mul(&e.ambient)?)?;
        for (name, m) in &e.extra {
            v += m * self.ambient_dot_curve(&d.ambient, name)?;
        }
        for (name, m) in &d.extra {
            v += m * self.ambient_dot_curve(&e.ambient, name)?;
            for (name2, m2) in &e.extra {
                v += m * m2 * self.curve_dot_curve(name, name2)?;
            }
        }
        Ok(v)
    }

    /// `chi(O_S) = (c1^2 + c2) / 12`.
    pub fn chi_o(&self) -> Result<Q> {
        let c1 = self.c1();
        Ok((self.integrate(&(&c1 * &c1))? + self.integrate(&self.c2())?) / q(12))
    }
}

/// `chi(nD) = (1/2) nD . (c1 + nD) + chi(O_S)` as a polynomial in `n`.
pub fn hrr_surface_chi(s: &SurfaceData, d: &Divisor) -> Result<PolynomialQ> {
    let c1 = Divisor::ambient(s.c1());
    let dd = s.pair(d, d)?;
    let dc = s.pair(d, &c1)?;
    Ok(PolynomialQ::new(vec![s.chi_o()?, dc / q(2), dd / q(2)]))
}

/// `chi(nL) = deg(L) n + 1 - genus` on a curve.
pub fn rr_curve_chi(genus: i64, degree: i64) -> PolynomialQ {
    PolynomialQ::from_ints(&[1 - genus, degree])
}

/// Genus of a curve `C` on `S` by adjunction: `2g - 2 = (K + C) . C`.
pub fn curve_genus_adjunction(s: &SurfaceData, curve: &Divisor) -> Result<i64> {
    let k = Divisor::ambient(-&s.c1());
    let two_g_minus_2 = s.pair(&k, curve)? + s.pair(curve, curve)?;
    let g = (two_g_minus_2 + q(2)) / q(2);
    crate::rational::to_i64(&g).ok_or_else(|| Error::NonIntegralGenus(format!("adjunction gives genus {}", fmt_q(&g))))
}

/// The surface `W_pq in C^(3)` (genus 5) with class `theta - eta` and the
/// curve `X_q`.
pub fn w_pq_surface(c: &Constants) -> Result<SurfaceData> {
    let s = SpaceSpec::sym(5, 3);
    let class = secant_class(6, 5, 2, 3)?;
    let chern = chern_restrict_sub(&chern_sym(5, 3), &class)?;
    let xq = ExtraCurve {
        name: "X_q".into(),
        self_intersection: c.w_pq.xq_squared.value()?,
        ambient_pairings: vec![(gens::theta(&s), c.w_pq.theta_dot_xq.value()?)],
        curve_pairings: BTreeMap::new(),
    };
    Ok(SurfaceData { ambient: s, surface_class: class, chern_total: chern, extra_curves: vec![xq] })
}

/// `X^(2)` for a curve of genus `g`, as a surface inside itself.
pub fn x2_surface(g: u32) -> SurfaceData {
    let s = SpaceSpec::sym(g, 2);
    SurfaceData { ambient: s.clone(), surface_class: CohClass::one(&s), chern_total: chern_sym(g, 2), extra_curves: Vec::new() }
}

/// One line of the Hilbert-polynomial suite.
#[derive(Debug, Clone)]
pub struct HilbertLine {
    pub label: &'static str,
    pub computed: PolynomialQ,
    pub expected: PolynomialQ,
}

impl HilbertLine {
    pub fn ok(&self) -> bool {
        self.computed == self.expected
    }
}

/// The two routes to the Hilbert polynomial of the flat limit, with all
/// intermediate polynomials.
pub fn hilbert_suite(c: &Constants) -> Result<Vec<HilbertLine>> {
    let w = w_pq_surface(c)?;
    let d = Divisor::ambient(gens::theta(&w.ambient)).with("X_q", q(1));
    let chi_w = hrr_surface_chi(&w, &d)?;
    let chi_w14 = rr_curve_chi(c.w14.genus, c.w14.theta_degree);
    let x2 = x2_surface(c.x2.genus);
    let chi_x2 = hrr_surface_chi(&x2, &Divisor::ambient(gens::theta(&x2.ambient)))?;
    let g14 = secant_class(c.x2.g14_degree as u32, c.x2.genus, 1, 2)?;
    let g14_genus = curve_genus_adjunction(&x2, &Divisor::ambient(g14.clone()))?;
    let g14_theta = x2.integrate(&(&g14 * &gens::theta(&x2.ambient)))?;
    let g14_theta = crate::rational::to_i64(&g14_theta)
        .ok_or_else(|| Error::NonIntegralGenus("theta degree on X_2(g^1_4) is not an integer".into()))?;
    let chi_g14 = rr_curve_chi(g14_genus, g14_theta);
    let route1 = &chi_w - &chi_w14;
    let route2 = &chi_x2.scale(&q(2)) - &chi_g14;
    let target = PolynomialQ::from_ints(&[32, -60, 30]);
    Ok(vec![
        HilbertLine { label: "chi(n Theta_pq | W_pq)", computed: chi_w, expected: PolynomialQ::from_ints(&[22, -50, 30]) },
        HilbertLine { label: "chi(n Theta | W^1_4)", computed: chi_w14, expected: PolynomialQ::from_ints(&[-10, 10]) },
        HilbertLine { label: "chi(n Theta_X | X^(2))", computed: chi_x2, expected: PolynomialQ::from_ints(&[10, -24, 15]) },
        HilbertLine { label: "chi(n Theta_X | X_2(g^1_4))", computed: chi_g14, expected: PolynomialQ::from_ints(&[-12, 12]) },
        HilbertLine { label: "route through W_pq", computed: route1, expected: target.clone() },
        HilbertLine { label: "route through X^(2)", computed: route2, expected: target },
    ])
}

/// `[t^n] (1-t)^{2g-2}`: the topological Euler characteristic of `C^(n)`.
pub fn euler_sym(g: u32, n: u32) -> Q {
    let s = if n.is_multiple_of(2) { q(1) } else { q(-1) };
    s * binom(2 * g as i64 - 2, n)
}

/// Convenience: `theta^2/2 - theta eta + eta^2` on a single factor.
pub fn quadric_class(s: &SpaceSpec) -> CohClass {
    gens::theta_eta(s, &[(qf(1, 2), 2, 0), (q(-1), 1, 1), (q(1), 0, 2)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn te(s: &SpaceSpec, t: &[(i64, i64, u32, u32)]) -> CohClass {
        gens::theta_eta(s, &t.iter().map(|(a, b, i, j)| (qf(*a, *b), *i, *j)).collect::<Vec<_>>())
    }

    #[test]
    fn secant_examples() {
        let s3 = SpaceSpec::sym(5, 3);
        assert_eq!(secant_class(6, 5, 2, 3).unwrap(), te(&s3, &[(1, 1, 1, 0), (-1, 1, 0, 1)]));
        let s4 = SpaceSpec::sym(5, 4);
        assert_eq!(secant_class(6, 5, 2, 4).unwrap(), quadric_class(&s4));
        let s2 = SpaceSpec::sym(6, 2);
        assert_eq!(secant_class(4, 6, 1, 2).unwrap(), te(&s2, &[(1, 1, 1, 0), (-3, 1, 0, 1)]));
        assert_eq!(secant_class(6, 5, 3, 3).unwrap(), CohClass::one(&s3));
        assert!(secant_class(6, 5, 3, 2).is_err());
    }

    #[test]
    fn chern_c3() {
        let s = SpaceSpec::sym(5, 3);
        let c = chern_sym(5, 3);
        let expect = te(&s, &[(1, 1, 0, 0), (-1, 1, 0, 1), (-1, 1, 1, 0), (-9, 1, 0, 2), (6, 1, 1, 1), (-56, 1, 0, 3)]);
        assert_eq!(c, expect);
        let r = chern_restrict_sub(&c, &secant_class(6, 5, 2, 3).unwrap()).unwrap();
        let expect = te(&s, &[(1, 1, 0, 0), (-2, 1, 1, 0), (-9, 1, 0, 2), (4, 1, 1, 1), (2, 1, 2, 0)]);
        assert_eq!(r, expect);
    }

    #[test]
    fn chern_curve() {
        let s = SpaceSpec::sym(4, 1);
        assert_eq!(chern_sym(4, 1), te(&s, &[(1, 1, 0, 0), (-6, 1, 0, 1)]));
    }

    #[test]
    fn euler_identity() {
        for (g, n) in [(5, 1), (5, 2), (5, 3), (6, 1), (6, 2)] {
            assert_eq!(chern_sym(g, n).degree_part(2 * n).integral(), euler_sym(g, n));
        }
        assert_eq!(euler_sym(5, 3), q(-56));
        assert_eq!(euler_sym(6, 2), q(45));
    }

    #[test]
    fn polynomial_display() {
        assert_eq!(PolynomialQ::from_ints(&[22, -50, 30]).to_string(), "30n^2 - 50n + 22");
        assert_eq!(PolynomialQ::from_ints(&[-10, 10]).to_string(), "10n - 10");
        assert_eq!(PolynomialQ::from_ints(&[1]).to_string(), "1");
        assert_eq!(PolynomialQ::new(vec![]).to_string(), "0");
    }

    #[test]
    fn hilbert_routes() {
        for line in hilbert_suite(&Constants::embedded()).unwrap() {
            assert!(line.ok(), "{}: {} vs {}", line.label, line.computed, line.expected);
        }
    }

    #[test]
    fn adjunction() {
        let x2 = x2_surface(6);
        let g = curve_genus_adjunction(&x2, &Divisor::ambient(secant_class(4, 6, 1, 2).unwrap())).unwrap();
        assert_eq!(g, 13);
        assert_eq!(x2.chi_o().unwrap(), q(10));
        assert_eq!(x2_surface(5).chi_o().unwrap(), q(6));
        // a (-1)-curve
        let s = SpaceSpec::sym(5, 2);
        let toy = SurfaceData {
            ambient: s.clone(),
            surface_class: CohClass::one(&s),
            chern_total: CohClass::one(&s) + gens::eta(&s),
            extra_curves: vec![ExtraCurve {
                name: "E".into(),
                self_intersection: q(-1),
                ambient_pairings: vec![(gens::eta(&s), q(1))],
                curve_pairings: BTreeMap::new(),
            }],
        };
        let e = Divisor::ambient(CohClass::zero(&s)).with("E", q(1));
        assert_eq!(curve_genus_adjunction(&toy, &e).unwrap(), 0);
    }
}
