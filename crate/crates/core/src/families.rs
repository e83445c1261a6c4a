//! Standard algebras and monoids used by the test suites and the CLI.

use crate::cstar::{realize, rescale, StarAlgebra};
use crate::endo::end_monoid;
use crate::error::Result;
use crate::frobenius::Monoid;
use crate::involution::AntilinearInvolution;
use crate::linalg::{Matrix, Tolerance, WireWord, C64, ONE, ZERO};
use crate::spectral::free;

/// The group algebra of a finite group given by its Cayley table
/// (`table[a][b]` = index of `a·b`), with star `g ↦ g⁻¹`.
pub fn group_algebra(table: &[Vec<usize>]) -> StarAlgebra {
    let n = table.len();
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .expect("Cayley table without identity");
    let mut mult = Matrix::zeros(n, n * n);
    for a in 0..n {
        for b in 0..n {
            mult[(table[a][b], a * n + b)] = ONE;
        }
    }
    let mut unit = Matrix::zeros(n, 1);
    unit[(identity, 0)] = ONE;
    let mut star = Matrix::zeros(n, n);
    for g in 0..n {
        let inv = (0..n).find(|&h| table[g][h] == identity).expect("group element without inverse");
        star[(inv, g)] = ONE;
    }
    StarAlgebra {
        mult,
        unit,
        star: AntilinearInvolution { s: star },
    }
}

pub fn cyclic_group_algebra(k: usize) -> StarAlgebra {
    let table: Vec<Vec<usize>> = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
    group_algebra(&table)
}

/// Elements of `S₃` as permutation tables, identity first.
pub fn symmetric_group_3() -> Vec<[usize; 3]> {
    vec![
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ]
}

/// `ℂ[S₃]`, with `(a·b)(x) = a(b(x))`.
pub fn symmetric_group_algebra() -> StarAlgebra {
    let elems = symmetric_group_3();
    let index = |p: [usize; 3]| elems.iter().position(|q| *q == p).expect("closed under composition");
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| elems.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    group_algebra(&table)
}

/// `Mat(k)` in the matrix-unit basis `e_ij ↦ i·k + j`, star the conjugate
/// transpose.
pub fn matrix_algebra(k: usize) -> StarAlgebra {
    let n = k * k;
    let mut mult = Matrix::zeros(n, n * n);
    let mut unit = Matrix::zeros(n, 1);
    let mut star = Matrix::zeros(n, n);
    for i in 0..k {
        unit[(i * k + i, 0)] = ONE;
        for j in 0..k {
            star[(j * k + i, i * k + j)] = ONE;
            for l in 0..k {
                mult[(i * k + l, (i * k + j) * n + j * k + l)] = ONE;
            }
        }
    }
    StarAlgebra {
        mult,
        unit,
        star: AntilinearInvolution { s: star },
    }
}

/// `ℂ[x]/x²` with `x* = x`: a *-algebra that is not C*.
pub fn dual_numbers() -> StarAlgebra {
    let mut mult = Matrix::zeros(2, 4);
    mult[(0, 0)] = ONE; // 1·1
    mult[(1, 1)] = ONE; // 1·x
    mult[(1, 2)] = ONE; // x·1
    StarAlgebra {
        mult,
        unit: Matrix::from_column_slice(2, 1, &[ONE, ZERO]),
        star: AntilinearInvolution::identity(2),
    }
}

/// `Mat(k)` with inner product `⟨a, b⟩ = Tr(Q a† b)`, `Q = diag(q)`, in the
/// orthonormal basis `E_ij / √q_j`. Dagger-Frobenius for every positive
/// `q`; balanced-symmetric (and unitary) only when `q` is constant.
pub fn weighted_matrix_monoid(q: &[f64]) -> Monoid {
    let k = q.len();
    let n = k * k;
    let mut m = Matrix::zeros(n, n * n);
    let mut unit = vec![ZERO; n];
    for i in 0..k {
        unit[i * k + i] = C64::new(q[i].sqrt(), 0.0);
        for j in 0..k {
            for l in 0..k {
                m[(i * k + l, (i * k + j) * n + j * k + l)] = C64::new(1.0 / q[j].sqrt(), 0.0);
            }
        }
    }
    Monoid::from_matrices(WireWord::object(n), m, &unit).expect("weighted matrix signature")
}

/// Block direct sum on the flattened object `[n₁ + n₂]`.
pub fn direct_sum(a: &Monoid, b: &Monoid) -> Monoid {
    let (p, q) = (a.dim(), b.dim());
    let n = p + q;
    let mut m = Matrix::zeros(n, n * n);
    let (ma, mb) = (a.m().data(), b.m().data());
    for k in 0..p {
        for i in 0..p {
            for j in 0..p {
                m[(k, i * n + j)] = ma[(k, i * p + j)];
            }
        }
    }
    for k in 0..q {
        for i in 0..q {
            for j in 0..q {
                m[(p + k, (p + i) * n + p + j)] = mb[(k, i * q + j)];
            }
        }
    }
    let mut unit = a.u().coords();
    unit.extend(b.u().coords());
    Monoid::from_matrices(WireWord::object(n), m, &unit).expect("direct sum signature")
}

/// A named monoid with the seven flags theory predicts for it, in
/// [`crate::PropertyReport::flags`] order.
#[derive(Clone, Debug)]
pub struct Member {
    pub name: String,
    pub monoid: Monoid,
    pub expected: [bool; 7],
}

impl Member {
    fn new(name: impl Into<String>, monoid: Monoid, expected: [bool; 7]) -> Self {
        Member {
            name: name.into(),
            monoid,
            expected,
        }
    }
}

const ALL: [bool; 7] = [true; 7];
/// Special unitary dagger-Frobenius, not commutative.
const SIMPLE_NONCOMMUTATIVE: [bool; 7] = [true, true, true, true, false, true, true];
/// Unitary dagger-Frobenius, neither special nor commutative.
const RAW_END: [bool; 7] = [true, true, true, false, false, true, true];
/// Dagger-Frobenius only.
const FROBENIUS_ONLY: [bool; 7] = [true, true, true, false, false, false, false];

fn and(a: [bool; 7], b: [bool; 7]) -> [bool; 7] {
    std::array::from_fn(|i| a[i] && b[i])
}

/// Basis monoids, raw and rescaled endomorphism monoids, realized group
/// and matrix algebras, a non-unitary weighted matrix monoid, and direct
/// sums of these.
pub fn standard_family() -> Result<Vec<Member>> {
    let tol = Tolerance::default();
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push(Member::new(format!("basis({n})"), free(n), ALL));
    }
    for n in 1..=4 {
        let raw = if n == 1 { ALL } else { RAW_END };
        out.push(Member::new(format!("end({n})"), end_monoid(n), raw));
        let special = if n == 1 { ALL } else { SIMPLE_NONCOMMUTATIVE };
        out.push(Member::new(
            format!("end({n}) rescaled"),
            rescale(&end_monoid(n), n as f64)?,
            special,
        ));
    }
    let z2 = realize(&cyclic_group_algebra(2), tol)?.monoid;
    let z3 = realize(&cyclic_group_algebra(3), tol)?.monoid;
    let s3 = realize(&symmetric_group_algebra(), tol)?.monoid;
    let m2c = realize(&matrix_algebra(2).direct_sum(&matrix_algebra(1)), tol)?.monoid;
    out.push(Member::new("realize(Z2)", z2.clone(), ALL));
    out.push(Member::new("realize(Z3)", z3.clone(), ALL));
    out.push(Member::new("realize(S3)", s3.clone(), SIMPLE_NONCOMMUTATIVE));
    out.push(Member::new("realize(Mat2+C)", m2c.clone(), SIMPLE_NONCOMMUTATIVE));
    let weighted = weighted_matrix_monoid(&[1.0, 2.0]);
    out.push(Member::new("weighted mat(1,2)", weighted.clone(), FROBENIUS_ONLY));

    let sums: Vec<(&str, Monoid, [bool; 7], Monoid, [bool; 7])> = vec![
        ("basis(2)+end(2)", free(2), ALL, end_monoid(2), RAW_END),
        ("realize(Z2)+realize(Mat2+C)", z2, ALL, m2c, SIMPLE_NONCOMMUTATIVE),
        ("realize(Z3)+realize(S3)", z3, ALL, s3, SIMPLE_NONCOMMUTATIVE),
        ("end(3)+basis(1)", end_monoid(3), RAW_END, free(1), ALL),
        ("weighted mat(1,2)+basis(1)", weighted, FROBENIUS_ONLY, free(1), ALL),
    ];
    for (name, a, fa, b, fb) in sums {
        out.push(Member::new(name, direct_sum(&a, &b), and(fa, fb)));
    }
    Ok(out)
}
