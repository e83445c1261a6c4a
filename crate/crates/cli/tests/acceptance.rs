//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs under `cargo test` with its own harness.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_complex::Complex64 as C64;
use quantalg::cstar::{realize, realize_with_transform, rescale, scaled_adjoint, wedderburn};
use quantalg::diagram::identities::{perturb_m, FAMILIES};
use quantalg::endo::{embed, embed_report, end_monoid, name, retraction};
use quantalg::families::{self, standard_family, Member};
use quantalg::frobenius::{classify, left_involution, right_involution, Monoid};
use quantalg::groupoid::{enumerate_gsets, extract_gset, linearize_gset, EquivariantClassicalStructure, Groupoid, UnitaryRep};
use quantalg::involution::{frobenius_left_involution, frobenius_right_involution, is_involution_hom};
use quantalg::io::monoid_to_json;
use quantalg::spectral::{compatibility, free, free_map, internal_diagonalize, spectrum, transport_function, FinSetMap};
use quantalg::sweep;
use quantalg::{Error, Matrix, Morphism, Tolerance, WireWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Entrywise tolerance for the axiom, involution and scaling suites.
const AXIOM_TOL: f64 = 1e-9;
/// Retraction after embedding.
const MONIC_TOL: f64 = 1e-12;
/// Reconstruction of a diagonalized operator.
const RECONSTRUCT_TOL: f64 = 1e-8;
const SCRAMBLE_SEEDS: u64 = 20;
const HOM_INSTANCES: usize = 50;
const NORMAL_CASES: usize = 100;
const PERTURBATION: f64 = 1e-3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn tol() -> Tolerance {
    Tolerance::new(AXIOM_TOL, AXIOM_TOL)
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    random_matrix(rng, n, n).qr().q()
}

/// `U m (U† ⊗ U†)`, `U u`: the same monoid in another orthonormal basis.
fn conjugate_monoid(monoid: &Monoid, u: &Matrix) -> Monoid {
    let ud = u.adjoint();
    let m = u * monoid.m().data() * ud.kronecker(&ud);
    let unit = u * monoid.u().data();
    Monoid::from_matrices(WireWord::object(monoid.dim()), m, unit.as_slice()).unwrap()
}

fn family() -> Vec<Member> {
    standard_family().expect("standard family builds")
}

// 1 ----------------------------------------------------------------------

fn axiom_suite(members: &[Member]) -> Outcome {
    let results = sweep::map(members, |member| {
        let report = classify(&member.monoid, tol());
        let flags_match = report.flags() == member.expected;
        let worst = report
            .entries()
            .iter()
            .filter(|(_, c)| c.pass)
            .map(|(_, c)| c.max_deviation)
            .fold(0.0, f64::max);
        (member.name.clone(), flags_match && worst < AXIOM_TOL, worst)
    });
    let bad: Vec<&String> = results.iter().filter(|r| !r.1).map(|r| &r.0).collect();
    let worst = results.iter().map(|r| r.2).fold(0.0, f64::max);
    outcome(
        bad.is_empty(),
        format!("{} members, worst passing deviation {worst:.1e}, mismatches {bad:?}", results.len()),
    )
}

// 2 ----------------------------------------------------------------------

fn involution_suite(members: &[Member]) -> Outcome {
    let frobenius: Vec<&Member> = members.iter().filter(|m| m.expected[2]).collect();
    let results = sweep::map(&frobenius, |member| {
        let monoid = &member.monoid;
        let a = monoid.object().clone();
        let sl = left_involution(monoid).unwrap();
        let sr = right_involution(monoid).unwrap();
        let id_a = Morphism::identity(a.clone());
        let id_ad = Morphism::identity(a.dual());
        let dev = |x: &Morphism, y: &Morphism| x.max_abs_diff(y);
        let compose = |g: &Morphism, f: &Morphism| Morphism::compose(g, f).unwrap();
        let equations = [
            dev(&sl.dual(), &sr),
            dev(&sr.dual(), &sl),
            dev(&compose(&sl.conjugate(), &sl), &id_a),
            dev(&compose(&sl, &sl.conjugate()), &id_ad),
            dev(&compose(&sr.conjugate(), &sr), &id_a),
            dev(&compose(&sr, &sr.conjugate()), &id_ad),
            dev(&compose(&sr.dagger(), &sl), &id_a),
            dev(&compose(&sl, &sr.dagger()), &id_ad),
        ];
        let worst = equations.iter().copied().fold(0.0, f64::max);
        let report = classify(monoid, tol());
        let equal = sl.max_abs_diff(&sr) < AXIOM_TOL;
        let agree = report.unitary.pass == report.balanced_symmetric.pass && report.unitary.pass == equal;
        (member.name.clone(), worst, agree)
    });
    let worst = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let disagree: Vec<&String> = results.iter().filter(|r| !r.2).map(|r| &r.0).collect();
    outcome(
        worst < AXIOM_TOL && disagree.is_empty(),
        format!(
            "{} dagger-Frobenius members, worst equation deviation {worst:.1e}, flag disagreements {disagree:?}",
            results.len()
        ),
    )
}

// 3 ----------------------------------------------------------------------

fn embedding_suite(members: &[Member]) -> Outcome {
    let results = sweep::map(members, |member| {
        let monoid = &member.monoid;
        let h = embed(monoid).unwrap();
        let back = Morphism::compose(&retraction(monoid), &h).unwrap();
        let monic = back.max_abs_diff(&Morphism::identity(monoid.object().clone()));
        let right = frobenius_right_involution(monoid, tol()).unwrap();
        let right_ok = embed_report(&right, tol()).unwrap().pass();
        let left = frobenius_left_involution(monoid, tol()).unwrap();
        let left_ok = embed_report(&left, tol()).unwrap().pass();
        (member.name.clone(), monic, right_ok, left_ok, member.expected[4])
    });
    let worst = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let right_bad: Vec<&String> = results.iter().filter(|r| !r.2).map(|r| &r.0).collect();
    let left_failures: Vec<&String> = results.iter().filter(|r| !r.3 && !r.4).map(|r| &r.0).collect();
    outcome(
        worst < MONIC_TOL && right_bad.is_empty() && !left_failures.is_empty(),
        format!(
            "retraction deviation {worst:.1e}; right-involution failures {right_bad:?}; left-involution variant fails (expected) on {left_failures:?}"
        ),
    )
}

// 4 ----------------------------------------------------------------------

fn sorted(mut dims: Vec<usize>) -> Vec<usize> {
    dims.sort_unstable();
    dims
}

fn cstar_pipeline() -> Outcome {
    let s3 = families::symmetric_group_algebra();
    let base = realize_with_transform(&s3, tol()).unwrap();
    let report = classify(&base.monoid.monoid, tol());
    let special_unitary =
        report.is_dagger_frobenius() && report.special.pass && report.unitary.pass;
    let dims = sorted(wedderburn(&base.monoid, tol(), 0).unwrap().block_dims);
    let rejects = matches!(realize(&families::dual_numbers(), tol()), Err(Error::NotCStar { .. }));

    let seeds: Vec<u64> = (0..SCRAMBLE_SEEDS).collect();
    let scrambled = sweep::map(&seeds, |&seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = s3.dim();
        // Identity plus a random perturbation keeps the change well conditioned.
        let p = Matrix::identity(n, n) + random_matrix(&mut rng, n, n).scale(0.4);
        let moved = s3.change_basis(&p).unwrap();
        let r = realize_with_transform(&moved, tol()).unwrap();
        let d = sorted(wedderburn(&r.monoid, tol(), seed).unwrap().block_dims);
        // Realized coordinates are related by U = T · P · T'⁻¹, which must
        // be a unitary monoid isomorphism.
        let u = &base.transform * &p * r.transform.clone().try_inverse().unwrap();
        let unitary = (u.adjoint() * &u - Matrix::identity(n, n)).camax();
        let (m1, m2) = (base.monoid.monoid.m().data(), r.monoid.monoid.m().data());
        let hom = (&u * m2 - m1 * u.kronecker(&u)).camax();
        let unit = (&u * r.monoid.monoid.u().data() - base.monoid.monoid.u().data()).camax();
        (d, unitary.max(hom).max(unit))
    });
    let same_dims = scrambled.iter().all(|(d, _)| *d == vec![1, 1, 2]);
    let worst = scrambled.iter().map(|r| r.1).fold(0.0, f64::max);
    outcome(
        special_unitary && dims == vec![1, 1, 2] && rejects && same_dims && worst < 1e-8,
        format!(
            "S3 blocks {dims:?}, dual numbers rejected: {rejects}, {SCRAMBLE_SEEDS} scrambles reproduce [1, 1, 2]: {same_dims}, worst U deviation {worst:.1e}"
        ),
    )
}

// 5 ----------------------------------------------------------------------

struct HomCase {
    label: String,
    hom: Morphism,
    source: Monoid,
    target: Monoid,
}

fn hom_cases() -> Vec<HomCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases = Vec::new();
    let all: Vec<FinSetMap> = (1..=3)
        .flat_map(|s| (1..=3).flat_map(move |t| FinSetMap::all(s, t)))
        .collect();
    while cases.len() < 36 {
        let f = &all[rng.random_range(0..all.len())];
        cases.push(HomCase {
            label: format!("free_map {:?}", f.table),
            hom: free_map(f),
            source: free(f.target),
            target: free(f.source),
        });
    }
    for k in 0..8 {
        let n = 2 + k % 2;
        let u = random_unitary(&mut rng, n);
        let e = end_monoid(n);
        let word = e.object().clone();
        let data = u.kronecker(&u.map(|z| z.conj()));
        cases.push(HomCase {
            label: format!("unitary conjugation of End({n})"),
            hom: Morphism::new(word.clone(), word, data).unwrap(),
            source: e.clone(),
            target: e,
        });
    }
    for n in 2..=4 {
        for rescaled in [false, true] {
            let (target, scale) = if rescaled {
                (rescale(&end_monoid(n), n as f64).unwrap(), (n as f64).sqrt())
            } else {
                (end_monoid(n), 1.0)
            };
            let mut data = Matrix::zeros(n * n, n);
            for i in 0..n {
                let mut e = Matrix::zeros(n, n);
                e[(i, i)] = c(scale, 0.0);
                data.set_column(i, &name(&e).data().column(0));
            }
            cases.push(HomCase {
                label: format!("diagonal into End({n}){}", if rescaled { " rescaled" } else { "" }),
                hom: Morphism::new(WireWord::object(n), target.object().clone(), data).unwrap(),
                source: free(n),
                target,
            });
        }
    }
    cases
}

fn counit_isometry() -> Outcome {
    let cases = hom_cases();
    assert_eq!(cases.len(), HOM_INSTANCES);
    let results = sweep::map(&cases, |case| {
        let a = frobenius_right_involution(&case.source, tol()).unwrap();
        let b = frobenius_right_involution(&case.target, tol()).unwrap();
        let is_hom = is_involution_hom(&case.hom, &a, &b, tol()).pass();
        let j = &case.hom;
        let isometry = Morphism::compose(&j.dagger(), j)
            .unwrap()
            .compare(&Morphism::identity(case.source.object().clone()), tol())
            .unwrap()
            .pass;
        let counit = Morphism::compose(&case.target.counit(), j)
            .unwrap()
            .compare(&case.source.counit(), tol())
            .unwrap()
            .pass;
        (case.label.clone(), is_hom, isometry, counit)
    });
    let not_hom: Vec<&String> = results.iter().filter(|r| !r.1).map(|r| &r.0).collect();
    let mismatch: Vec<&String> = results.iter().filter(|r| r.2 != r.3).map(|r| &r.0).collect();
    let isometries = results.iter().filter(|r| r.2).count();
    outcome(
        not_hom.is_empty() && mismatch.is_empty() && isometries > 0 && isometries < results.len(),
        format!(
            "{} homomorphisms ({isometries} isometric), non-homomorphisms {not_hom:?}, iff violations {mismatch:?}",
            results.len()
        ),
    )
}

// 6 ----------------------------------------------------------------------

fn inner(x: &Matrix, y: &Matrix) -> C64 {
    x.dotc(y)
}

fn scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let sources = [free(3), end_monoid(2).flattened(), weighted(), realize_s3()];
    let mut worst: f64 = 0.0;
    let mut flags_ok = true;
    let mut count = 0;
    for base in &sources {
        let u = random_unitary(&mut rng, base.dim());
        let monoid = conjugate_monoid(base, &u);
        let before = classify(&monoid, tol());
        for alpha in [0.5, 2.0, 10.0] {
            let scaled = rescale(&monoid, alpha).unwrap();
            let after = classify(&scaled, tol());
            flags_ok &= before.is_dagger_frobenius() == after.is_dagger_frobenius()
                && before.unitary.pass == after.unitary.pass
                && after.is_dagger_frobenius();
            let a = monoid.object().clone();
            let power = |k: usize| (0..k).fold(WireWord::unit(), |w, _| w.concat(&a));
            for (n_in, n_out) in [(1, 1), (2, 1), (0, 1), (1, 2), (2, 2)] {
                let (dom, cod) = (power(n_in), power(n_out));
                let f = Morphism::new(dom.clone(), cod.clone(), random_matrix(&mut rng, cod.total_dim(), dom.total_dim())).unwrap();
                let adj = scaled_adjoint(&f, &a, alpha).unwrap();
                // (f x, y) in the scaled product on A^⊗m against (x, f‡ y) on A^⊗n.
                for _ in 0..3 {
                    let x = random_matrix(&mut rng, dom.total_dim(), 1);
                    let y = random_matrix(&mut rng, cod.total_dim(), 1);
                    let lhs = inner(&(f.data() * &x), &y) * alpha.powi(n_out as i32);
                    let rhs = inner(&x, &(adj.data() * &y)) * alpha.powi(n_in as i32);
                    worst = worst.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
                    count += 1;
                }
            }
        }
    }
    outcome(
        flags_ok && worst < AXIOM_TOL,
        format!("flags preserved: {flags_ok}; {count} adjoint probes, worst relative deviation {worst:.1e}"),
    )
}

fn weighted() -> Monoid {
    families::weighted_matrix_monoid(&[1.0, 2.0])
}

fn realize_s3() -> Monoid {
    realize(&families::symmetric_group_algebra(), tol()).unwrap().monoid
}

// 7 ----------------------------------------------------------------------

/// A basis-copying monoid in a random orthonormal basis, with the index of
/// the basis vector each spectrum point equals.
struct Scrambled {
    monoid: Monoid,
    basis: Matrix,
    order: Vec<usize>,
}

fn scrambled(n: usize, rng: &mut ChaCha8Rng) -> Scrambled {
    let basis = random_unitary(rng, n);
    let monoid = conjugate_monoid(&free(n), &basis);
    let spec = spectrum(&monoid, tol(), 0).unwrap();
    let order = spec
        .points
        .iter()
        .map(|p| {
            (0..n)
                .find(|&k| (p.data() - basis.columns(k, 1)).camax() < 1e-8)
                .expect("spectrum point is a basis vector")
        })
        .collect();
    Scrambled { monoid, basis, order }
}

/// The homomorphism `B → A` induced by `f : points(A) → points(B)` in
/// spectrum order, built from the points.
fn induced(f: &FinSetMap, a: &Scrambled, b: &Scrambled) -> Morphism {
    let (pa, pb) = (&a.basis, &b.basis);
    let mut data = Matrix::zeros(pa.nrows(), pb.nrows());
    for (s, &t) in f.table.iter().enumerate() {
        data += pa.columns(a.order[s], 1) * pb.columns(b.order[t], 1).adjoint();
    }
    Morphism::new(WireWord::object(pb.nrows()), WireWord::object(pa.nrows()), data).unwrap()
}

fn spectral_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let objects: Vec<Scrambled> = (1..=3).map(|n| scrambled(n, &mut rng)).collect();
    let obj = |n: usize| &objects[n - 1];
    let mut cases = 0;
    let mut failures = Vec::new();
    // Function → homomorphism → function, and homomorphism → function →
    // homomorphism.
    for s in 1..=3 {
        for t in 1..=3 {
            for f in FinSetMap::all(s, t) {
                let h = induced(&f, obj(s), obj(t));
                match transport_function(&h, &obj(s).monoid, &obj(t).monoid, tol(), 0) {
                    Ok(g) if g == f => {
                        if induced(&g, obj(s), obj(t)).max_abs_diff(&h) > 1e-9 {
                            failures.push(format!("hom round trip {:?}", f.table));
                        }
                    }
                    other => failures.push(format!("{:?} -> {other:?}", f.table)),
                }
                cases += 1;
            }
        }
    }
    // Functoriality on every composable pair: h_f ∘ h_g is induced by g then f.
    let mut pairs = 0;
    for a in 1..=3 {
        for b in 1..=3 {
            for cc in 1..=3 {
                for f in FinSetMap::all(a, b) {
                    for g in FinSetMap::all(b, cc) {
                        let hf = induced(&f, obj(a), obj(b));
                        let hg = induced(&g, obj(b), obj(cc));
                        let composite = Morphism::compose(&hf, &hg).unwrap();
                        let got = transport_function(&composite, &obj(a).monoid, &obj(cc).monoid, tol(), 0);
                        if got.as_ref().ok() != Some(&f.then(&g).unwrap()) {
                            failures.push(format!("compose {:?} {:?}", f.table, g.table));
                        }
                        pairs += 1;
                    }
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{cases} functions and {pairs} composable pairs, failures {:?}", &failures[..failures.len().min(5)]),
    )
}

// 8 ----------------------------------------------------------------------

fn diagonalization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    let mut structure_ok = true;
    for case in 0..NORMAL_CASES {
        let n = 1 + case % 6;
        let u = random_unitary(&mut rng, n);
        // Every other case draws eigenvalues from a tiny set to force repeats.
        let eig: Vec<C64> = (0..n)
            .map(|_| {
                if case % 2 == 0 {
                    c(rng.random_range(0..2) as f64, rng.random_range(0..2) as f64)
                } else {
                    c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))
                }
            })
            .collect();
        let d = Matrix::from_fn(n, n, |r, col| if r == col { eig[r] } else { c(0.0, 0.0) });
        let f = Morphism::new(WireWord::object(n), WireWord::object(n), &u * d * u.adjoint()).unwrap();
        let diag = internal_diagonalize(&f, tol()).unwrap();
        let report = classify(&diag.monoid, tol());
        structure_ok &= report.is_dagger_frobenius()
            && report.special.pass
            && report.commutative.pass
            && compatibility(&f, &diag.monoid, tol()).unwrap().pass;
        let rebuilt = Morphism::compose(diag.monoid.m(), &diag.phi.tensor(&Morphism::identity(n))).unwrap();
        worst = worst.max(rebuilt.max_abs_diff(&f));
    }
    let mut rejected = 0;
    for case in 0..NORMAL_CASES {
        let n = 2 + case % 5;
        let mut a = random_matrix(&mut rng, n, n);
        // A nonzero strictly upper corner on a triangular matrix is never normal.
        for r in 0..n {
            for col in 0..r {
                a[(r, col)] = c(0.0, 0.0);
            }
        }
        a[(0, n - 1)] = c(1.0, 0.5);
        let f = Morphism::new(WireWord::object(n), WireWord::object(n), a).unwrap();
        if matches!(internal_diagonalize(&f, tol()), Err(Error::NotNormal { .. })) {
            rejected += 1;
        }
    }
    outcome(
        structure_ok && worst < RECONSTRUCT_TOL && rejected == NORMAL_CASES,
        format!(
            "{NORMAL_CASES} normal: structure ok {structure_ok}, worst reconstruction {worst:.1e}; {rejected}/{NORMAL_CASES} non-normal rejected"
        ),
    )
}

// 9 ----------------------------------------------------------------------

fn groupoid_equivalence() -> Outcome {
    let groupoids = [
        ("Z2", Groupoid::cyclic(2).unwrap()),
        ("Z3", Groupoid::cyclic(3).unwrap()),
        ("pair", Groupoid::connected_pair().unwrap()),
    ];
    let mut total = 0;
    let mut failures = Vec::new();
    for (label, g) in &groupoids {
        for x in enumerate_gsets(g, 4) {
            let (rep, cs) = linearize_gset(g, &x).unwrap();
            match extract_gset(g, &rep, &cs, tol(), 0) {
                Ok(y) if y == x => {}
                other => failures.push(format!("{label} {x:?} -> {other:?}")),
            }
            total += 1;
        }
    }
    let (classes, expected) = z2_counting();
    outcome(
        failures.is_empty() && classes == expected && classes == 2,
        format!("{total} G-sets round trip, failures {failures:?}; Z2 classes found {classes}, two-point Z2-sets {expected}"),
    )
}

/// Classical structures on 2-dimensional permutation representations of
/// ℤ₂, over a finite set of orthonormal bases, sorted into isomorphism
/// classes of their extracted G-sets.
fn z2_counting() -> (usize, usize) {
    let g = Groupoid::cyclic(2).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bases = [
        Matrix::identity(2, 2),
        Matrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]),
        Matrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(0.0, s), c(0.0, -s)]),
        Matrix::from_row_slice(2, 2, &[c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
    ];
    let identity_arrow = g.identity(0);
    let mut found: Vec<quantalg::groupoid::GSet> = Vec::new();
    for generator in quantalg::groupoid::permutations(2) {
        let perm = Matrix::from_fn(2, 2, |r, col| if generator[col] == r { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let maps = (0..g.arrows().len())
            .map(|a| {
                let data = if a == identity_arrow { Matrix::identity(2, 2) } else { perm.clone() };
                Morphism::new(WireWord::object(2), WireWord::object(2), data).unwrap()
            })
            .collect();
        let rep = UnitaryRep { dims: vec![2], maps };
        for basis in &bases {
            let cs = EquivariantClassicalStructure {
                monoids: vec![conjugate_monoid(&free(2), basis)],
            };
            if let Ok(x) = extract_gset(&g, &rep, &cs, tol(), 0) {
                if !found.iter().any(|y| y.is_isomorphic(&x, &g)) {
                    found.push(x);
                }
            }
        }
    }
    let mut two_point: Vec<quantalg::groupoid::GSet> = Vec::new();
    for x in enumerate_gsets(&g, 2).into_iter().filter(|x| x.total_size() == 2) {
        if !two_point.iter().any(|y| y.is_isomorphic(&x, &g)) {
            two_point.push(x);
        }
    }
    (found.len(), two_point.len())
}

// 10 ---------------------------------------------------------------------

fn prove_all(env: &Path) -> (i32, serde_json::Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_quantalg"))
        .args(["prove", "--family", "all", "--env"])
        .arg(env)
        .output()
        .expect("run quantalg");
    let value = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (out.status.code().unwrap_or(-1), value)
}

/// Per family: whether every equation passed.
fn family_results(value: &serde_json::Value) -> Vec<(String, bool)> {
    FAMILIES
        .iter()
        .map(|fam| {
            let pass = value["equations"]
                .as_array()
                .map(|eqs| {
                    eqs.iter()
                        .filter(|e| e["family"] == *fam)
                        .all(|e| e["pass"] == true)
                })
                .unwrap_or(false);
            (fam.to_string(), pass)
        })
        .collect()
}

fn diagram_prover(members: &[Member]) -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut problems = Vec::new();
    let mut exempt = Vec::new();
    for (k, member) in members.iter().enumerate() {
        let unitary = member.expected[6];
        let clean = dir.path().join(format!("m{k}.json"));
        fs::write(&clean, monoid_to_json(&member.monoid).to_string()).unwrap();
        let (_, value) = prove_all(&clean);
        for (fam, pass) in family_results(&value) {
            // The dimension chain presupposes a unitary monoid.
            if fam == "dimension" && !unitary {
                if pass {
                    problems.push(format!("{}: dimension unexpectedly holds", member.name));
                }
                exempt.push(format!("{} dimension", member.name));
                continue;
            }
            if !pass {
                problems.push(format!("{}: {fam} fails", member.name));
            }
        }
        let bad = perturb_m(&member.monoid, PERTURBATION).unwrap();
        let perturbed = dir.path().join(format!("p{k}.json"));
        fs::write(&perturbed, monoid_to_json(&bad).to_string()).unwrap();
        let (code, value) = prove_all(&perturbed);
        if code != 1 {
            problems.push(format!("{}: perturbed prove exited {code}", member.name));
        }
        for (fam, pass) in family_results(&value) {
            // On a line every composite of m and m† is a product of
            // commuting scalars, so the Frobenius equations cannot fail.
            if fam == "frobenius" && member.monoid.dim() == 1 {
                exempt.push(format!("{} perturbed frobenius", member.name));
                continue;
            }
            if pass {
                problems.push(format!("{}: perturbed {fam} still passes", member.name));
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "{} members x {} families via `prove`; problems {problems:?}; out of scope: {} cases ({})",
            members.len(),
            FAMILIES.len(),
            exempt.len(),
            exempt.join(", ")
        ),
    )
}

fn main() {
    let members = family();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("axiom suite", Box::new(|| axiom_suite(&members))),
        ("involution lemma suite", Box::new(|| involution_suite(&members))),
        ("embedding suite", Box::new(|| embedding_suite(&members))),
        ("C*-pipeline", Box::new(cstar_pipeline)),
        ("counit/isometry", Box::new(counit_isometry)),
        ("scaling", Box::new(scaling)),
        ("spectral equivalence", Box::new(spectral_equivalence)),
        ("internal diagonalization", Box::new(diagonalization)),
        ("groupoid equivalence", Box::new(groupoid_equivalence)),
        ("diagram prover", Box::new(|| diagram_prover(&members))),
    ];
    let mut failed = 0;
    for (k, (label, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| outcome(false, "panicked"));
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:2} {verdict} {label} ({:.1}s): {}",
            k + 1,
            start.elapsed().as_secs_f64(),
            result.detail
        );
        failed += usize::from(!result.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
