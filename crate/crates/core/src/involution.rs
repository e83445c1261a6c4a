//! Involution monoids and the linear/antilinear involution correspondence.
//!
//! An antilinear map `t` on `ℂⁿ` is stored as the matrix `S` with
//! `t(v) = S · conj(v)`. Composing two of them gives a linear map:
//! `t₁ ∘ t₂ (v) = S₁ · conj(S₂) · v`, so `t ∘ t = id` reads
//! `S · conj(S) = I`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::{self, Monoid};
use crate::linalg::{Comparison, Matrix, Morphism, Tolerance, WireWord};

/// A monoid with a linear involution `s : A → A*`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvolutionMonoid {
    pub monoid: Monoid,
    pub s: Morphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvolutionReport {
    /// `s_* ∘ s = id`.
    pub involution_condition: Comparison,
    /// `s ∘ m = m_* ∘ (s ⊗ s)`.
    pub multiplicative: Comparison,
    /// `s ∘ u = u_*`.
    pub unital: Comparison,
}

impl InvolutionReport {
    pub fn valid(&self) -> bool {
        self.involution_condition.pass && self.multiplicative.pass && self.unital.pass
    }

    fn worst(&self) -> f64 {
        self.involution_condition
            .and(self.multiplicative)
            .and(self.unital)
            .max_deviation
    }
}

fn failed() -> Comparison {
    Comparison {
        pass: false,
        max_deviation: f64::INFINITY,
    }
}

impl InvolutionMonoid {
    /// Wraps a monoid and an involution after checking the signature of `s`.
    pub fn new(monoid: Monoid, s: Morphism) -> Result<Self> {
        let a = monoid.object();
        if s.dom() != a || s.cod() != &a.dual() {
            return Err(Error::shape(
                format!("{} -> {}", a, a.dual()),
                format!("{} -> {}", s.dom(), s.cod()),
            ));
        }
        Ok(InvolutionMonoid { monoid, s })
    }

    pub fn validate(&self, tol: Tolerance) -> InvolutionReport {
        let m = &self.monoid;
        let s = &self.s;
        let involution_condition = Morphism::compose(&s.conjugate(), s)
            .and_then(|ss| ss.compare(&Morphism::identity(m.object().clone()), tol))
            .unwrap_or_else(|_| failed());
        let multiplicative = Morphism::compose(s, m.m())
            .and_then(|lhs| {
                let rhs = Morphism::compose(&m.m().conjugate(), &s.tensor(s))?;
                lhs.compare(&rhs, tol)
            })
            .unwrap_or_else(|_| failed());
        let unital = Morphism::compose(s, m.u())
            .and_then(|su| su.compare(&m.u().conjugate(), tol))
            .unwrap_or_else(|_| failed());
        InvolutionReport {
            involution_condition,
            multiplicative,
            unital,
        }
    }

    /// [`InvolutionMonoid::validate`] as a `Result`.
    pub fn require_valid(&self, tol: Tolerance) -> Result<InvolutionReport> {
        let report = self.validate(tol);
        if report.valid() {
            Ok(report)
        } else {
            Err(Error::InvalidInvolution(format!(
                "worst deviation {:e}",
                report.worst()
            )))
        }
    }
}

/// An antilinear map `t(v) = S · conj(v)` on the flattened object.
#[derive(Clone, Debug, PartialEq)]
pub struct AntilinearInvolution {
    pub s: Matrix,
}

impl AntilinearInvolution {
    pub fn new(s: Matrix) -> Result<Self> {
        if !s.is_square() {
            return Err(Error::shape("square matrix", format!("{:?}", s.shape())));
        }
        Ok(AntilinearInvolution { s })
    }

    pub fn identity(n: usize) -> Self {
        AntilinearInvolution {
            s: Matrix::identity(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.s.nrows()
    }

    pub fn apply(&self, v: &Matrix) -> Matrix {
        &self.s * v.map(|z| z.conj())
    }

    /// Matrix of the linear map `self ∘ other`.
    pub fn compose_linear(&self, other: &AntilinearInvolution) -> Matrix {
        &self.s * other.s.map(|z| z.conj())
    }

    /// `S · conj(S) = I`.
    pub fn involutive(&self, tol: Tolerance) -> Comparison {
        tol.compare(&self.compose_linear(self), &Matrix::identity(self.dim(), self.dim()))
    }

    /// Checks `t ∘ t = id`, `t(u) = u` and `t(a·b) = t(b)·t(a)` against a
    /// multiplication matrix `mult` (`n × n²`) and unit vector.
    pub fn check_star(&self, mult: &Matrix, unit: &Matrix, tol: Tolerance) -> Comparison {
        let n = self.dim();
        let mut report = self.involutive(tol);
        report = report.and(tol.compare(&self.apply(unit), unit));
        // t(e_i e_j) = t(e_j) t(e_i) for basis vectors; by antilinearity
        // this covers all products.
        let images: Vec<Matrix> = (0..n).map(|i| self.s.columns(i, 1).into_owned()).collect();
        for i in 0..n {
            for j in 0..n {
                let prod = mult.columns(i * n + j, 1).into_owned();
                let lhs = self.apply(&prod);
                let rhs = mult * crate::linalg::kernels::kron(&images[j], &images[i]);
                report = report.and(tol.compare(&lhs, &rhs));
            }
        }
        report
    }
}

/// `s[rev(x), y] = conj(S[x, y])`: the linear involution with
/// `s ∘ φ = (t(φ))_*` for states `φ` of `object`.
pub fn linear_from_antilinear(t: &AntilinearInvolution, object: &WireWord) -> Result<Morphism> {
    let n = object.total_dim();
    if t.dim() != n {
        return Err(Error::shape(format!("{n}x{n}"), format!("{:?}", t.s.shape())));
    }
    let rev = object.reversal();
    let mut data = Matrix::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            data[(rev[x], y)] = t.s[(x, y)].conj();
        }
    }
    Morphism::new(object.clone(), object.dual(), data)
}

/// Inverse of [`linear_from_antilinear`]: `t(φ) = (s ∘ φ)_*`.
pub fn antilinear_from_linear(s: &Morphism) -> Result<AntilinearInvolution> {
    let object = s.dom();
    if s.cod() != &object.dual() {
        return Err(Error::shape(
            format!("{} -> {}", object, object.dual()),
            format!("{} -> {}", s.dom(), s.cod()),
        ));
    }
    let n = object.total_dim();
    let rev = object.reversal();
    let data = s.data();
    Ok(AntilinearInvolution {
        s: Matrix::from_fn(n, n, |x, y| data[(rev[x], y)].conj()),
    })
}

/// [`linear_from_antilinear`] after checking `t ∘ t = id`.
pub fn checked_linear_from_antilinear(
    t: &AntilinearInvolution,
    object: &WireWord,
    tol: Tolerance,
) -> Result<Morphism> {
    let inv = t.involutive(tol);
    if !inv.pass {
        return Err(Error::InvalidInvolution(format!(
            "S conj(S) differs from the identity by {:e}",
            inv.max_deviation
        )));
    }
    linear_from_antilinear(t, object)
}

/// [`antilinear_from_linear`] after checking `s_* ∘ s = id`.
pub fn checked_antilinear_from_linear(s: &Morphism, tol: Tolerance) -> Result<AntilinearInvolution> {
    let ss = Morphism::compose(&s.conjugate(), s)?;
    let cmp = ss.compare(&Morphism::identity(s.dom().clone()), tol)?;
    if !cmp.pass {
        return Err(Error::InvalidInvolution(format!(
            "s_* s differs from the identity by {:e}",
            cmp.max_deviation
        )));
    }
    antilinear_from_linear(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomReport {
    /// `f ∘ m_A = m_B ∘ (f ⊗ f)`.
    pub multiplicative: Comparison,
    /// `f ∘ u_A = u_B`.
    pub unital: Comparison,
    /// `s_B ∘ f = f_* ∘ s_A`.
    pub involution_preserving: Comparison,
}

impl HomReport {
    pub fn is_monoid_hom(&self) -> bool {
        self.multiplicative.pass && self.unital.pass
    }

    pub fn pass(&self) -> bool {
        self.is_monoid_hom() && self.involution_preserving.pass
    }
}

/// Monoid-homomorphism equations only.
pub fn monoid_hom_report(f: &Morphism, a: &Monoid, b: &Monoid, tol: Tolerance) -> (Comparison, Comparison) {
    let multiplicative = Morphism::compose(f, a.m())
        .and_then(|lhs| lhs.compare(&Morphism::compose(b.m(), &f.tensor(f))?, tol))
        .unwrap_or_else(|_| failed());
    let unital = Morphism::compose(f, a.u())
        .and_then(|fu| fu.compare(b.u(), tol))
        .unwrap_or_else(|_| failed());
    (multiplicative, unital)
}

pub fn is_involution_hom(
    f: &Morphism,
    a: &InvolutionMonoid,
    b: &InvolutionMonoid,
    tol: Tolerance,
) -> HomReport {
    let (multiplicative, unital) = monoid_hom_report(f, &a.monoid, &b.monoid, tol);
    let involution_preserving = Morphism::compose(&b.s, f)
        .and_then(|lhs| lhs.compare(&Morphism::compose(&f.conjugate(), &a.s)?, tol))
        .unwrap_or_else(|_| failed());
    HomReport {
        multiplicative,
        unital,
        involution_preserving,
    }
}

/// `(A, m, u; s_R)`.
pub fn frobenius_right_involution(monoid: &Monoid, tol: Tolerance) -> Result<InvolutionMonoid> {
    frobenius::require_frobenius(monoid, tol)?;
    InvolutionMonoid::new(monoid.clone(), frobenius::right_involution(monoid)?)
}

/// `(A, m, u; s_L)`.
pub fn frobenius_left_involution(monoid: &Monoid, tol: Tolerance) -> Result<InvolutionMonoid> {
    frobenius::require_frobenius(monoid, tol)?;
    InvolutionMonoid::new(monoid.clone(), frobenius::left_involution(monoid)?)
}
