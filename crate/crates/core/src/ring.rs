//! The cohomology ring of a single factor: Macdonald normal form for
//! symmetric products, exterior algebra for abelian varieties.
//!
//! On `C^(n)` the relations are `xi_A xi'_B prod_{i in C}(sigma_i - eta) eta^d = 0`
//! for disjoint `A, B, C` in `{1..g}` with `|A| + |B| + 2|C| + d = n + 1`.
//! A monomial `xi_S eta^d` is in normal form when its weight `|S| + d` is at
//! most `n`. A monomial of larger weight is rewritten by multiplying one such
//! relation by a cofactor and solving for the `sigma_C` term; every other term
//! of the relation has strictly smaller weight, so the rewriting terminates.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, Mutex};

use num_traits::{One, Zero};

use crate::monomial::FactorMono;
use crate::rational::{binom, q, Q};
use crate::space::FactorSpec;

/// A linear combination of normal-form monomials of one factor.
pub type FactorTerms = Vec<(FactorMono, Q)>;

type Cache = Mutex<HashMap<(FactorSpec, FactorMono), Arc<FactorTerms>>>;

static NORMAL_FORMS: LazyLock<Cache> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Weight `|S| + d` of a monomial `xi_S eta^d`.
pub fn weight(m: &FactorMono) -> u32 {
    m.odd_count() + m.eta
}

pub fn is_normal(m: &FactorMono, f: &FactorSpec) -> bool {
    match *f {
        FactorSpec::SymCurve { n, .. } => weight(m) <= n,
        FactorSpec::AbelianTorus { .. } => m.eta == 0,
    }
}

/// Normal form of a single (sorted) monomial on factor `f`.
pub fn normalize_mono(m: &FactorMono, f: &FactorSpec) -> Arc<FactorTerms> {
    if is_normal(m, f) {
        return Arc::new(vec![(*m, Q::one())]);
    }
    if m.degree() > f.top_degree() || !f.has_eta() {
        return Arc::new(Vec::new());
    }
    if let Some(hit) = NORMAL_FORMS.lock().unwrap().get(&(*f, *m)) {
        return hit.clone();
    }
    let result = Arc::new(rewrite(m, f));
    NORMAL_FORMS.lock().unwrap().insert((*f, *m), result.clone());
    result
}

fn rewrite(m: &FactorMono, f: &FactorSpec) -> FactorTerms {
    let FactorSpec::SymCurve { genus: g, n } = *f else {
        unreachable!("only symmetric products carry relations")
    };
    let target = n + 1;
    let low_mask = (1u64 << g) - 1;
    let lows = m.xi & low_mask;
    let highs = m.xi >> g;
    let paired = lows & highs;
    let unpaired = m.xi & !(paired | (paired << g));

    // Pick the relation factor P with weight n + 1, leaving the cofactor Q.
    let d_rel = m.eta.min(target);
    let mut rem = target - d_rel;
    let mut pairs = 0u64; // low-index mask of the sigma's in C
    let mut singles = 0u64; // full mask of the xi's in A and B
    for i in bits(paired) {
        if rem < 2 {
            break;
        }
        pairs |= 1 << i;
        rem -= 2;
    }
    for i in bits(unpaired) {
        if rem == 0 {
            break;
        }
        singles |= 1 << i;
        rem -= 1;
    }
    if rem == 1 {
        // split a pair that is not already in C: use its low xi as a single
        let spare = paired & !pairs;
        let i = spare.trailing_zeros();
        debug_assert!(spare != 0, "weight bookkeeping");
        singles |= 1 << i;
        rem = 0;
    }
    debug_assert_eq!(rem, 0);

    let pair_full = pairs | (pairs << g);
    let cofactor = FactorMono::new(m.xi & !(singles | pair_full), m.eta - d_rel);
    let pair_list: Vec<u32> = bits(pairs).collect();
    let c = pair_list.len();

    // Relation: sum_{T subset C} (-1)^{|C \ T|} xi_{A+B} sigma_T eta^{d + |C \ T|}.
    let mut top_sign = None;
    let mut others: Vec<(bool, FactorMono)> = Vec::new();
    for t in 0..(1u32 << c) {
        let mut term = FactorMono::new(singles, d_rel + (c as u32 - t.count_ones()));
        let mut neg = (c as u32 - t.count_ones()) % 2 == 1;
        for (j, &i) in pair_list.iter().enumerate() {
            if t & (1 << j) != 0 {
                let sigma = FactorMono::new((1u64 << i) | (1u64 << (i + g)), 0);
                let (s, prod) = term.mul(&sigma).expect("disjoint by construction");
                neg ^= s;
                term = prod;
            }
        }
        let (s, prod) = term.mul(&cofactor).expect("disjoint by construction");
        neg ^= s;
        if t == (1 << c) - 1 {
            debug_assert_eq!(prod, *m);
            top_sign = Some(neg);
        } else {
            others.push((neg, prod));
        }
    }
    let top_neg = top_sign.expect("top term present");

    // m = -(top sign) * sum of the other terms
    let mut acc: BTreeMap<FactorMono, Q> = BTreeMap::new();
    for (neg, prod) in others {
        let coef = if neg == top_neg { q(-1) } else { q(1) };
        for (mono, c2) in normalize_mono(&prod, f).iter() {
            let e = acc.entry(*mono).or_insert_with(Q::zero);
            *e += &coef * c2;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn bits(mask: u64) -> impl Iterator<Item = u32> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros();
            m &= m - 1;
            Some(i)
        }
    })
}

/// Normal-form monomials of degree `k` on a factor, in monomial order.
pub fn factor_basis(f: &FactorSpec, k: u32) -> Vec<FactorMono> {
    if k > f.top_degree() {
        return Vec::new();
    }
    let g = f.genus();
    let two_g = 2 * g;
    let mut out = Vec::new();
    let max_eta = if f.has_eta() { k / 2 } else { 0 };
    for d in 0..=max_eta {
        let s = k - 2 * d;
        if s > two_g {
            continue;
        }
        for subset in subsets(two_g, s) {
            let m = FactorMono::new(subset, d);
            if is_normal(&m, f) {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

/// All `size`-subsets of `{0..n}` as bitmasks.
pub(crate) fn subsets(n: u32, size: u32) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: u32, n: u32, left: u32, mask: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for i in start..n {
            if n - i < left {
                break;
            }
            rec(i + 1, n, left - 1, mask | (1 << i), out);
        }
    }
    rec(0, n, size, 0, &mut out);
    out
}

/// Normal-form basis of `H^k(C^(n))` for a genus-`g` curve.
pub fn basis(g: u32, n: u32, k: u32) -> Vec<FactorMono> {
    factor_basis(&FactorSpec::sym(g, n), k)
}

/// Betti numbers `h^0..h^{2n}` of `C^(n)`.
pub fn betti_sym(g: u32, n: u32) -> Vec<u64> {
    (0..=2 * n)
        .map(|k| {
            // sum over eta-exponents d with |S| = k - 2d and |S| + d <= n
            (0..=k / 2)
                .filter(|d| k - d <= n)
                .map(|d| binom_u(2 * g, k - 2 * d))
                .sum()
        })
        .collect()
}

fn binom_u(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    binom(n as i64, k).to_integer().try_into().unwrap_or(0)
}

/// Betti numbers of a factor (exterior algebra for a torus).
pub fn betti_factor(f: &FactorSpec) -> Vec<u64> {
    match *f {
        FactorSpec::SymCurve { genus, n } => betti_sym(genus, n),
        FactorSpec::AbelianTorus { genus } => (0..=2 * genus).map(|k| binom_u(2 * genus, k)).collect(),
    }
}

/// Integral of a normal-form monomial of top degree on a factor.
pub fn integrate_factor_mono(m: &FactorMono, f: &FactorSpec) -> Q {
    match *f {
        FactorSpec::SymCurve { n, .. } => {
            if m.xi == 0 && m.eta == n {
                Q::one()
            } else {
                Q::zero()
            }
        }
        FactorSpec::AbelianTorus { genus } => {
            if m.eta == 0 && m.odd_count() == 2 * genus {
                // sigma_1 ... sigma_g = (-1)^{g(g-1)/2} xi_1 ... xi_2g
                if (genus * (genus.saturating_sub(1)) / 2) % 2 == 1 {
                    q(-1)
                } else {
                    Q::one()
                }
            } else {
                Q::zero()
            }
        }
    }
}

/// Integral of an arbitrary (sorted) factor monomial: zero unless it has
/// top degree, otherwise read off its normal form.
pub fn integrate_raw_factor(m: &FactorMono, f: &FactorSpec) -> Q {
    if m.degree() != f.top_degree() {
        return Q::zero();
    }
    normalize_mono(m, f).iter().map(|(t, c)| c * integrate_factor_mono(t, f)).sum()
}
