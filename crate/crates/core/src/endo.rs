//! Endomorphism monoids and the canonical embedding `A → End(A)`.
//!
//! Names: a state of `[n*, n]` corresponds to an `n × n` matrix by reading
//! the coordinates row-major, `name(X) = Σ X_ij e_i ⊗ e_j`. With this
//! convention `m(name(X) ⊗ name(Y)) = name(X · Y)`.

use crate::error::{Error, Result};
use crate::frobenius::{self, Monoid};
use crate::involution::{antilinear_from_linear, linear_from_antilinear, HomReport, InvolutionMonoid};
use crate::linalg::{kernels, operator_norm, Matrix, Morphism, Tolerance, WireWord};

/// `End(A)` on the word `A* ⊗ A` with `m = id ⊗ η_A ⊗ id` and `u = ε_A`.
pub fn end_monoid_of(a: &WireWord) -> Monoid {
    let ad = a.dual();
    let m = Morphism::identity(ad.clone())
        .tensor(&Morphism::cap(a.clone()))
        .tensor(&Morphism::identity(a.clone()));
    Monoid::new(m, Morphism::cup(a.clone())).expect("End signature")
}

pub fn end_monoid(n: usize) -> Monoid {
    end_monoid_of(&WireWord::object(n))
}

/// Row-major name of a square matrix as a state of `[n*, n]`.
pub fn name(x: &Matrix) -> Morphism {
    let n = x.nrows();
    assert_eq!(n, x.ncols(), "name of a non-square matrix");
    let word = WireWord::dual_object(n).concat(&WireWord::object(n));
    Morphism::from_fn(WireWord::unit(), word, |r, _| x[(r / n, r % n)])
}

/// Inverse of [`name`] for any state whose dimension is a perfect square.
pub fn unname(state: &Morphism) -> Result<Matrix> {
    let total = state.cod().total_dim();
    let n = (total as f64).sqrt().round() as usize;
    if n * n != total || !state.dom().is_empty() {
        return Err(Error::shape("state of [n*, n]", format!("{} -> {}", state.dom(), state.cod())));
    }
    let data = state.data();
    Ok(Matrix::from_fn(n, n, |i, j| data[(i * n + j, 0)]))
}

/// `h = (id_A* ⊗ m) ∘ (ε_A ⊗ id_A) : A → A* ⊗ A`.
pub fn embed(monoid: &Monoid) -> Result<Morphism> {
    let a = monoid.object();
    let bend = Morphism::cup(a.clone()).tensor(&Morphism::identity(a.clone()));
    monoid.m().apply_whiskered(&a.dual(), &WireWord::unit(), &bend)
}

/// `(u* ⊗ id) : A* ⊗ A → A`, the left inverse of [`embed`].
pub fn retraction(monoid: &Monoid) -> Morphism {
    monoid
        .u()
        .dual()
        .tensor(&Morphism::identity(monoid.object().clone()))
}

/// [`crate::involution::is_involution_hom`] for `embed : (A, s) → End(A)`
/// with `End(A)` carrying its right involution, without materializing the
/// `n² × n⁴` multiplication of `End(A)`. Products are taken as `n × n`
/// matrix products of names, and the right involution of `End(A)` is the
/// identity on `A* ⊗ A`.
pub fn embed_report(im: &InvolutionMonoid, tol: Tolerance) -> Result<HomReport> {
    let flat = im.monoid.flattened();
    let n = flat.dim();
    let h = embed(&flat)?;
    let images: Vec<Matrix> = (0..n)
        .map(|i| unname(&Morphism::new(WireWord::unit(), h.cod().clone(), h.data().columns(i, 1).into_owned())?))
        .collect::<Result<_>>()?;
    let hm = kernels::matmul(h.data(), flat.m().data());
    let mut multiplicative = crate::linalg::Comparison { pass: true, max_deviation: 0.0 };
    for i in 0..n {
        for j in 0..n {
            let product = &images[i] * &images[j];
            let expected = name(&product);
            let got = hm.columns(i * n + j, 1).into_owned();
            multiplicative = multiplicative.and(tol.compare(&got, expected.data()));
        }
    }
    let unital = Morphism::compose(&h, flat.u())?.compare_data(&Morphism::cup(n), tol)?;
    let s = linear_from_antilinear(&antilinear_from_linear(&im.s)?, flat.object())?;
    let involution_preserving = Morphism::compose(&h.conjugate(), &s)?.compare_data(&h, tol)?;
    Ok(HomReport {
        multiplicative,
        unital,
        involution_preserving,
    })
}

/// Operator norm of `h(α)` read as a matrix on the flattened object.
pub fn cstar_norm(im: &InvolutionMonoid, alpha: &Morphism, tol: Tolerance) -> Result<f64> {
    frobenius::require_frobenius(&im.monoid, tol)?;
    im.require_valid(tol)?;
    let image = Morphism::compose(&embed(&im.monoid)?, alpha)?;
    let n = im.monoid.dim();
    let matrix = unname(&image)?;
    debug_assert_eq!(matrix.nrows(), n);
    let square = Morphism::new(WireWord::object(n), WireWord::object(n), matrix)?;
    Ok(operator_norm(&square))
}
