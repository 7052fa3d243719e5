use num_complex::Complex64;
use proptest::prelude::*;

use repind::exact::{int, UnitCoeff};
use repind::laguerre::laguerre;
use repind::opcore::{normal_order, Expr, Generator, OpExpr};
use repind::radial::{radial_normal_order, RadialExpr};
use repind::verify::gauss_laguerre;
use repind::verify::jet::{apply_at, momentum_degree, TestFunction};

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        6 => proptest::sample::select(Generator::ALL.to_vec()).prop_map(Expr::Gen),
        1 => (-3i64..=3).prop_map(Expr::int),
        1 => Just(Expr::i_hbar()),
        1 => Just(Expr::scalar(UnitCoeff::bohr())),
        1 => proptest::sample::select(vec![Generator::R, Generator::Rho]).prop_map(|g| Expr::gen(g).inv()),
    ]
}

/// Raw trees of depth at most 6.
fn expr() -> impl Strategy<Value = Expr> {
    leaf()
        .prop_recursive(4, 16, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 1..=3).prop_map(Expr::Sum),
                prop::collection::vec(inner.clone(), 1..=3).prop_map(Expr::Product),
                (inner.clone(), 1u32..=2).prop_map(|(e, k)| e.pow(k)),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::commutator(a, b)),
            ]
        })
        .prop_filter("depth at most 6", |e| e.depth() <= 6)
}

/// Small operators for algebraic laws: short products of generators.
fn small_op() -> impl Strategy<Value = OpExpr> {
    prop::collection::vec(prop::collection::vec(leaf(), 1..=3).prop_map(Expr::Product), 1..=2)
        .prop_map(|v| normal_order(&Expr::Sum(v)).expect("leaves are well formed"))
}

fn radial_expr() -> impl Strategy<Value = RadialExpr> {
    let leaf = prop_oneof![
        (-2i32..=2).prop_map(RadialExpr::x_pow),
        Just(RadialExpr::p()),
        (-2i64..=2).prop_map(RadialExpr::int),
    ];
    leaf.prop_recursive(3, 8, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..=3).prop_map(RadialExpr::Sum),
            prop::collection::vec(inner.clone(), 1..=3).prop_map(RadialExpr::Product),
            (inner, 1u32..=2).prop_map(|(e, k)| e.pow(k)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_order_is_idempotent(e in expr()) {
        let once = normal_order(&e).unwrap();
        let twice = normal_order(&once.to_expr()).unwrap();
        prop_assert_eq!(once, twice);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutator_antisymmetry(a in small_op(), b in small_op()) {
        prop_assert_eq!(a.commutator(&b), b.commutator(&a).neg());
    }

    #[test]
    fn jacobi_identity(a in small_op(), b in small_op(), c in small_op()) {
        let j = a.commutator(&b.commutator(&c))
            .add(&b.commutator(&c.commutator(&a)))
            .add(&c.commutator(&a.commutator(&b)));
        prop_assert!(j.is_zero(), "{}", j);
    }

    #[test]
    fn leibniz_rule(a in small_op(), b in small_op(), c in small_op()) {
        let lhs = a.commutator(&b.mul(&c));
        let rhs = a.commutator(&b).mul(&c).add(&b.mul(&a.commutator(&c)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_is_associative(a in small_op(), b in small_op(), c in small_op()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn differential_oracle_matches_normal_form(e in expr(), seed in any::<u64>()) {
        prop_assume!(momentum_degree(&e) <= 4);
        let ordered = normal_order(&e).unwrap().to_expr();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let point = repind::verify::jet::random_point(&mut rng);
        let f = TestFunction::random(&mut rng);
        let raw = apply_at(&e, &f, point).unwrap();
        let nf = apply_at(&ordered, &f, point).unwrap();
        let scale = raw.norm().max(nf.norm()).max(1.0);
        prop_assert!((raw - nf).norm() / scale < 1e-9, "{} vs {}", raw, nf);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn radial_embedding_is_a_homomorphism(e in radial_expr()) {
        let direct = normal_order(&e.embed()).unwrap();
        let via_radial = normal_order(&radial_normal_order(&e).embed()).unwrap();
        prop_assert_eq!(direct, via_radial);
    }
}

proptest! {
    #[test]
    fn laguerre_ratio_law(alpha in 0i64..=25, m in 0i64..=25) {
        prop_assert!(laguerre(alpha, m).unwrap().ratio_law_holds());
    }

    #[test]
    fn laguerre_value_at_zero(alpha in 0i64..=25, m in 0i64..=25) {
        let p = laguerre(alpha, m).unwrap();
        let b = repind::exact::binomial((m + alpha) as u32, m as u32);
        prop_assert_eq!(p.eval_exact(&int(0)), num_rational::BigRational::from_integer(b));
    }
}

#[test]
fn laguerre_orthogonality() {
    // ∫ x^α e^{−x} L_m L_k dx = δ_mk Γ(m+α+1)/m!
    let (x, w) = gauss_laguerre(40);
    for alpha in 0..=4i64 {
        for m in 0..=8i64 {
            for k in 0..=8i64 {
                let (pm, pk) = (laguerre(alpha, m).unwrap(), laguerre(alpha, k).unwrap());
                let s: f64 =
                    x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(alpha as i32) * pm.eval(*xi) * pk.eval(*xi)).sum();
                let norm: f64 = ((m + 1)..=(m + alpha)).map(|j| j as f64).product();
                let expect = if m == k { norm } else { 0.0 };
                assert!((s - expect).abs() < 1e-10 * norm.max(1.0), "α={alpha} m={m} k={k}: {s}");
            }
        }
    }
}

#[test]
fn oracle_on_a_known_value() {
    // [p_x, r_x] f = −i f
    let f = TestFunction { linear: [0.2, -0.1, 0.4], quadratic: [[0.1, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]] };
    let point = [0.7, 0.4, -0.9];
    let c = Expr::commutator(Expr::gen(Generator::Px), Expr::gen(Generator::Rx));
    let v = apply_at(&c, &f, point).unwrap();
    let fv = apply_at(&Expr::one(), &f, point).unwrap();
    assert!((v - Complex64::new(0.0, -1.0) * fv).norm() < 1e-14);
}
