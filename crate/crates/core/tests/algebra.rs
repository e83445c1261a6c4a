use proptest::prelude::*;
use quantalg::cstar::{realize, rescale};
use quantalg::endo::{cstar_norm, embed, embed_report, end_monoid, name, retraction};
use quantalg::families::{self, standard_family};
use quantalg::frobenius::{classify, Monoid};
use quantalg::involution::frobenius_right_involution;
use quantalg::linalg::operator_norm;
use quantalg::spectral::{compatibility, internal_diagonalize};
use quantalg::{Matrix, Morphism, Tolerance, WireWord, C64};

fn random_state(dim: usize, coords: &[(f64, f64)]) -> Morphism {
    let v: Vec<C64> = coords.iter().take(dim).map(|&(a, b)| C64::new(a, b)).collect();
    Morphism::state(WireWord::object(dim), &v).unwrap()
}

fn frobenius_members() -> Vec<(String, Monoid)> {
    let tol = Tolerance::default();
    standard_family()
        .unwrap()
        .into_iter()
        .filter(|m| classify(&m.monoid, tol).is_dagger_frobenius())
        .map(|m| (m.name, m.monoid.flattened()))
        .collect()
}

fn coords() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn star_element_is_an_antimultiplicative_involution(a in coords(), b in coords()) {
        for (label, monoid) in frobenius_members() {
            let n = monoid.dim();
            let (x, y) = (random_state(n, &a), random_state(n, &b));
            let xx = monoid.star_element(&monoid.star_element(&x).unwrap()).unwrap();
            prop_assert!(xx.max_abs_diff(&x) < 1e-9, "{}", label);
            let lhs = monoid.star_element(&monoid.product(&x, &y).unwrap()).unwrap();
            let rhs = monoid
                .product(&monoid.star_element(&y).unwrap(), &monoid.star_element(&x).unwrap())
                .unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-9, "{}", label);
        }
    }

    #[test]
    fn cstar_identity(a in coords()) {
        let tol = Tolerance::default();
        for (label, monoid) in frobenius_members() {
            let im = frobenius_right_involution(&monoid, tol).unwrap();
            let x = random_state(monoid.dim(), &a);
            let xs = monoid.star_element(&x).unwrap();
            let norm = cstar_norm(&im, &x, tol).unwrap();
            let star_norm = cstar_norm(&im, &xs, tol).unwrap();
            let product = cstar_norm(&im, &monoid.product(&xs, &x).unwrap(), tol).unwrap();
            prop_assert!((product - norm * norm).abs() < 1e-8 * (1.0 + norm * norm), "{}", label);
            prop_assert!((star_norm - norm).abs() < 1e-8 * (1.0 + norm), "{}", label);
            let right = operator_norm(&monoid.right_action(&x).unwrap());
            let right_star = operator_norm(&monoid.right_action(&xs).unwrap());
            prop_assert!((right - right_star).abs() < 1e-8 * (1.0 + right), "{}", label);
        }
    }
}

#[test]
fn embedding_is_a_split_monic_involution_hom() {
    let tol = Tolerance::default();
    for (label, monoid) in frobenius_members() {
        let h = embed(&monoid).unwrap();
        let back = Morphism::compose(&retraction(&monoid), &h).unwrap();
        assert!(back.max_abs_diff(&Morphism::identity(monoid.object().clone())) < 1e-12, "{label}");
        let source = frobenius_right_involution(&monoid, tol).unwrap();
        let report = embed_report(&source, tol).unwrap();
        assert!(report.pass(), "{label}: {report:?}");
    }
}

#[test]
fn diagonal_submonoid_of_end_is_frobenius() {
    let tol = Tolerance::default();
    for n in 1..=4 {
        let e = end_monoid(n).flattened();
        let mut p = Matrix::zeros(n * n, n);
        for i in 0..n {
            p.set_column(i, &name(&Matrix::from_fn(n, n, |r, c| {
                if r == i && c == i { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }
            })).data().column(0));
        }
        let p = Morphism::new(WireWord::object(n), WireWord::object(n * n), p).unwrap();
        let m = Morphism::compose(&Morphism::compose(&p.dagger(), e.m()).unwrap(), &p.tensor(&p)).unwrap();
        let u = Morphism::compose(&p.dagger(), e.u()).unwrap();
        let sub = Monoid::new(m, u).unwrap();
        let report = classify(&sub, tol);
        assert!(report.is_dagger_frobenius() && report.special.pass && report.commutative.pass, "{n}: {report:?}");
    }
}

#[test]
fn isometric_comultiplication_forces_frobenius() {
    // m ∘ m† = id on these inputs; the Frobenius law then comes for free.
    let tol = Tolerance::default();
    let z3 = realize(&families::cyclic_group_algebra(3), tol).unwrap().monoid;
    for monoid in [z3, rescale(&end_monoid(3), 3.0).unwrap()] {
        let report = classify(&monoid, tol);
        assert!(report.special.pass);
        assert!(report.frobenius.pass);
    }
}

fn random_unitary(n: usize, entries: &[(f64, f64)]) -> Matrix {
    let a = Matrix::from_fn(n, n, |r, c| {
        let (x, y) = entries[r * n + c];
        C64::new(x, y)
    });
    a.qr().q()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_operators_diagonalize_internally(
        n in 1usize..=5,
        entries in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 25),
        eigen in prop::collection::vec((-3i32..3, -3i32..3), 5),
    ) {
        let tol = Tolerance::default();
        let u = random_unitary(n, &entries);
        // Small integer eigenvalues make repeated values common.
        let d = Matrix::from_fn(n, n, |r, c| {
            if r == c { C64::new(eigen[r].0 as f64, eigen[r].1 as f64) } else { C64::new(0.0, 0.0) }
        });
        let f = Morphism::new(WireWord::object(n), WireWord::object(n), &u * d * u.adjoint()).unwrap();
        let diag = internal_diagonalize(&f, tol).unwrap();
        let report = classify(&diag.monoid, tol);
        prop_assert!(report.is_dagger_frobenius() && report.special.pass && report.commutative.pass);
        prop_assert!(compatibility(&f, &diag.monoid, tol).unwrap().pass);
        let rebuilt = diag.monoid.left_action(&diag.phi).unwrap();
        prop_assert!(rebuilt.max_abs_diff(&f) < 1e-8);
    }
}
