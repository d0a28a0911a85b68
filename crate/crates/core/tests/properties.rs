use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symcoh_core::chern::{chern_sym, euler_sym};
use symcoh_core::expr::{parse_expression, Expr, Func, Gen};
use symcoh_core::linalg::rank;
use symcoh_core::maps::{gysin_sum, pairing_matrix, pull_sum, serre_involution};
use symcoh_core::oracle::Oracle;
use symcoh_core::product::kunneth_dim;
use symcoh_core::ring::betti_factor;
use symcoh_core::verify::{oracle_product_checks, random_class};
use symcoh_core::{FactorSpec, SpaceSpec};

fn leaf() -> impl Strategy<Value = Expr> {
    let gen = prop_oneof![
        Just(Gen::Eta),
        Just(Gen::Theta),
        (1u32..=10).prop_map(Gen::Xi),
        (1u32..=10).prop_map(Gen::XiPrime),
        (1u32..=5).prop_map(Gen::Sigma),
    ];
    prop_oneof![
        (0u64..1000).prop_map(|n| Expr::Num(BigInt::from(n))),
        (gen, proptest::option::of(1u32..=3)).prop_map(|(gen, factor)| Expr::Gen { gen, factor }),
    ]
}

fn call(f: Func, args: Vec<Expr>) -> Expr {
    Expr::Call(f, args)
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 48, 4, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            inner.clone().prop_map(move |a| Expr::Neg(b(a))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Div(b(x), b(y))),
            (inner.clone(), 0u32..6).prop_map(move |(x, e)| Expr::Pow(b(x), e)),
            inner.clone().prop_map(|x| call(Func::Integrate, vec![x])),
            inner.clone().prop_map(|x| call(Func::PushSum, vec![x])),
            inner.clone().prop_map(|x| call(Func::Involution, vec![x])),
            inner.clone().prop_map(|x| call(Func::WIntegrate, vec![x])),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| call(Func::PullSum, vec![x, y])),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| call(Func::Delta, vec![x, y])),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| call(Func::Chern, vec![x, y])),
            proptest::collection::vec(inner.clone(), 2..4).prop_map(|v| call(Func::Kunneth, v)),
            proptest::collection::vec(inner, 4..=4).prop_map(|v| call(Func::Secant, v)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        let text = e.to_string();
        let back = parse_expression(&text);
        prop_assert!(back.is_ok(), "{text}: {:?}", back.err());
        prop_assert_eq!(back.unwrap(), e, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_matches_normal_form(g in 1u32..=5, n in 1u32..=4, seed in any::<u64>()) {
        let o = Oracle::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = SpaceSpec::sym(g, n);
        let kx = rng.gen_range(0..=2 * n);
        let ky = rng.gen_range(0..=2 * n - kx);
        let x = random_class(&mut rng, &s, kx, 3);
        let y = random_class(&mut rng, &s, ky, 3);
        prop_assert_eq!(o.embed(&(&x * &y)).unwrap(), o.embed(&x).unwrap().mul(&o.embed(&y).unwrap()));
        let z = random_class(&mut rng, &s, 2 * n, 3);
        prop_assert_eq!(o.integrate(&z).unwrap(), z.integral());
    }

    #[test]
    fn graded_commutativity(g in 1u32..=5, n in 1u32..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = SpaceSpec::sym(g, n);
        let (kx, ky) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let x = random_class(&mut rng, &s, kx, 3);
        let y = random_class(&mut rng, &s, ky, 3);
        let yx = &y * &x;
        let sign = if (kx * ky) % 2 == 1 { -&yx } else { yx };
        prop_assert_eq!(&x * &y, sign);
    }

    #[test]
    fn pull_sum_is_multiplicative(g in 2u32..=5, n in 2u32..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = SpaceSpec::sym(g, n);
        let a = rng.gen_range(1..n);
        let (kx, ky) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let x = random_class(&mut rng, &s, kx, 2);
        let y = random_class(&mut rng, &s, ky, 2);
        prop_assert_eq!(pull_sum(&(&x * &y), a).unwrap(), &pull_sum(&x, a).unwrap() * &pull_sum(&y, a).unwrap());
    }

    #[test]
    fn projection_formula(g in 2u32..=5, n in 2u32..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = rng.gen_range(1..n);
        let (big, pair) = (SpaceSpec::sym(g, n), SpaceSpec::syms(g, &[a, n - a]));
        let (kx, ky) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let x = random_class(&mut rng, &big, kx, 2);
        let y = random_class(&mut rng, &pair, ky, 2);
        let lhs = gysin_sum(&(&pull_sum(&x, a).unwrap() * &y)).unwrap();
        prop_assert_eq!(lhs, &x * &gysin_sum(&y).unwrap());
    }

    #[test]
    fn involution_squares_to_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = SpaceSpec::sym(5, 4);
        let x = random_class(&mut rng, &s, 4, 4);
        prop_assert_eq!(serre_involution(&serre_involution(&x).unwrap()).unwrap(), x);
    }
}

#[test]
fn oracle_agrees_on_240_classes() {
    assert_eq!(oracle_product_checks(&Oracle::default(), 240).unwrap(), 240);
}

#[test]
fn oracle_gysin_agrees_with_duality() {
    let o = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for t in 0..40 {
        let g = 2 + t % 4;
        let a = 1 + rng.gen_range(0..3u32);
        let b = 1 + rng.gen_range(0..(4 - a));
        let s = SpaceSpec::syms(g, &[a, b]);
        let k = rng.gen_range(0..=2 * (a + b));
        let x = random_class(&mut rng, &s, k, 3);
        assert_eq!(gysin_sum(&x).unwrap(), o.gysin_sum(&x).unwrap(), "{x}");
    }
}

#[test]
fn pairing_is_nonsingular() {
    for g in 1..=5 {
        for n in 1..=4 {
            let f = FactorSpec::sym(g, n);
            for k in 0..=2 * n {
                let (b, _, m) = pairing_matrix(&f, k);
                assert_eq!(rank(&m), b.len(), "sym({g},{n}) degree {k}");
            }
        }
    }
}

#[test]
fn euler_identity() {
    for g in 1..=6 {
        for n in 1..=4 {
            let c = chern_sym(g, n).degree_part(2 * n).integral();
            assert_eq!(c, euler_sym(g, n), "sym({g},{n})");
        }
    }
}

#[test]
fn kunneth_dimension_is_a_convolution() {
    for ns in [&[1u32, 1][..], &[2, 2], &[1, 3], &[3, 3, 4], &[2, 1, 2]] {
        let s = SpaceSpec::syms(5, ns);
        let mut conv = vec![1u64];
        for f in s.factors() {
            let b = betti_factor(f);
            let mut next = vec![0u64; conv.len() + b.len() - 1];
            for (i, x) in conv.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    next[i + j] += x * y;
                }
            }
            conv = next;
        }
        for (m, want) in conv.iter().enumerate() {
            assert_eq!(kunneth_dim(&s, m as u32), *want, "{s} degree {m}");
        }
    }
}
