use proptest::prelude::*;
use quantalg::diagram::{check_equal, evaluate, parse, Env, Expr};
use quantalg::linalg::{Morphism, Tolerance, Wire, WireWord, C64};

fn word(spec: &[(usize, bool)]) -> WireWord {
    WireWord::new(spec.iter().map(|&(d, s)| Wire::new(d, s)).collect())
}

fn small_word() -> impl Strategy<Value = WireWord> {
    prop::collection::vec((1usize..=3, any::<bool>()), 0..=2)
        .prop_map(|w| word(&w))
}

fn morphism(dom: WireWord, cod: WireWord) -> impl Strategy<Value = Morphism> {
    let len = dom.total_dim() * cod.total_dim();
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), len).prop_map(move |v| {
        let mut it = v.into_iter();
        Morphism::from_fn(dom.clone(), cod.clone(), |_, _| {
            let (re, im) = it.next().expect("enough entries");
            C64::new(re, im)
        })
    })
}

fn any_morphism() -> impl Strategy<Value = Morphism> {
    (small_word(), small_word()).prop_flat_map(|(d, c)| morphism(d, c))
}

/// `f : a → b` and `g : b → c`.
fn composable() -> impl Strategy<Value = (Morphism, Morphism)> {
    (small_word(), small_word(), small_word())
        .prop_flat_map(|(a, b, c)| (morphism(a, b.clone()), morphism(b, c)))
}

fn close(a: &Morphism, b: &Morphism) -> bool {
    a.compare(b, Tolerance::default()).map(|c| c.pass).unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functors_are_involutive(f in any_morphism()) {
        prop_assert_eq!(f.dagger().dagger(), f.clone());
        prop_assert_eq!(f.conjugate().conjugate(), f.clone());
        prop_assert_eq!(f.dual().dual(), f);
    }

    #[test]
    fn dual_conjugate_dagger_commute(f in any_morphism()) {
        prop_assert_eq!(f.dual(), f.conjugate().dagger());
        prop_assert_eq!(f.conjugate(), f.dagger().dual());
    }

    #[test]
    fn functoriality((f, g) in composable()) {
        let gf = Morphism::compose(&g, &f).unwrap();
        prop_assert!(close(&gf.dagger(), &Morphism::compose(&f.dagger(), &g.dagger()).unwrap()));
        prop_assert!(close(&gf.conjugate(), &Morphism::compose(&g.conjugate(), &f.conjugate()).unwrap()));
        prop_assert!(close(&gf.dual(), &Morphism::compose(&f.dual(), &g.dual()).unwrap()));
    }

    #[test]
    fn tensor_is_monoidal_for_the_functors(f in any_morphism(), g in any_morphism()) {
        let fg = f.tensor(&g);
        prop_assert_eq!(fg.dagger(), f.dagger().tensor(&g.dagger()));
        prop_assert_eq!(fg.conjugate(), g.conjugate().tensor(&f.conjugate()));
        prop_assert_eq!(fg.dual(), g.dual().tensor(&f.dual()));
    }

    #[test]
    fn interchange((f1, g1) in composable(), (f2, g2) in composable()) {
        let lhs = Morphism::compose(&g1, &f1).unwrap().tensor(&Morphism::compose(&g2, &f2).unwrap());
        let rhs = Morphism::compose(&g1.tensor(&g2), &f1.tensor(&f2)).unwrap();
        prop_assert!(close(&lhs, &rhs));
    }
}

#[test]
fn triangle_equations_are_exact() {
    for n in 1..=16 {
        let a = WireWord::object(n);
        let id = Morphism::identity(a.clone());
        let left = Morphism::compose(
            &Morphism::cap(a.clone()).tensor(&id),
            &id.tensor(&Morphism::cup(a.clone())),
        )
        .unwrap();
        assert_eq!(left, id);
        let idd = Morphism::identity(a.dual());
        let right = Morphism::compose(
            &idd.tensor(&Morphism::cap(a.clone())),
            &Morphism::cup(a.clone()).tensor(&idd),
        )
        .unwrap();
        assert_eq!(right, idd);
    }
    // A two-wire object.
    let a = word(&[(2, false), (3, true)]);
    let id = Morphism::identity(a.clone());
    let snake = Morphism::compose(
        &Morphism::cap(a.clone()).tensor(&id),
        &id.tensor(&Morphism::cup(a.clone())),
    )
    .unwrap();
    assert_eq!(snake, id);
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        "[a-h]".prop_map(Expr::Gen),
        small_word().prop_map(Expr::Id),
        small_word().prop_map(Expr::Cup),
        small_word().prop_map(Expr::Cap),
        (small_word(), small_word()).prop_map(|(a, b)| Expr::Swap(a, b)),
        (-5i32..5, any::<bool>()).prop_map(|(v, imaginary)| Expr::Scalar { value: v as f64 / 2.0, imaginary }),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.then(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.tensor(b)),
            inner.clone().prop_map(Expr::dag),
            inner.clone().prop_map(Expr::conj),
            inner.prop_map(Expr::dual),
        ]
    })
}

fn two_by_two_env() -> impl Strategy<Value = Env> {
    let two = WireWord::object(2);
    (morphism(two.clone(), two.clone()), morphism(two.clone(), two))
        .prop_map(|(f, g)| Env::from([("f".to_string(), f), ("g".to_string(), g)]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_parse_round_trip(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn dagger_reverses_composition(env in two_by_two_env()) {
        let tol = Tolerance::default();
        let lhs = parse("dag(f ; g)").unwrap();
        let rhs = parse("dag(g) ; dag(f)").unwrap();
        prop_assert!(check_equal(&lhs, &rhs, &env, tol).unwrap().pass);
        let lhs = parse("(f ; g) * (g ; f)").unwrap();
        let rhs = parse("(f * g) ; (g * f)").unwrap();
        prop_assert!(check_equal(&lhs, &rhs, &env, tol).unwrap().pass);
        let lhs = parse("conj(f * g)").unwrap();
        let rhs = parse("conj(g) * conj(f)").unwrap();
        prop_assert!(check_equal(&lhs, &rhs, &env, tol).unwrap().pass);
    }

    #[test]
    fn trace_is_cyclic(env in two_by_two_env()) {
        let tr = |text: &str| evaluate(&parse(text).unwrap(), &env).unwrap().scalar_value().unwrap();
        let a = tr("cup[2] ; (id[2*] * (f ; g)) ; swap[2*,2] ; cap[2]");
        let b = tr("cup[2] ; (id[2*] * (g ; f)) ; swap[2*,2] ; cap[2]");
        prop_assert!((a - b).norm() < 1e-9);
    }
}
