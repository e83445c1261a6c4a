//! Monoids and their dagger-Frobenius theory.
//!
//! A [`Monoid`] is an object (a wire word `A`) with multiplication
//! `m : A ⊗ A → A` and unit `u : I → A`; its adjoint comonoid is
//! `(m†, u†)`. [`classify`] evaluates the seven structural predicates and
//! reports the worst entrywise deviation of each.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Comparison, Matrix, Morphism, Tolerance, WireWord, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct Monoid {
    object: WireWord,
    m: Morphism,
    u: Morphism,
}

impl Monoid {
    /// Wraps a multiplication and unit; only the signatures are checked
    /// here, the laws are checked by [`classify`].
    pub fn new(m: Morphism, u: Morphism) -> Result<Self> {
        let object = u.cod().clone();
        if !u.dom().is_empty() {
            return Err(Error::shape("unit I -> A", format!("{} -> {}", u.dom(), u.cod())));
        }
        let pair = object.concat(&object);
        if m.dom() != &pair || m.cod() != &object {
            return Err(Error::shape(
                format!("{pair} -> {object}"),
                format!("{} -> {}", m.dom(), m.cod()),
            ));
        }
        Ok(Monoid { object, m, u })
    }

    /// Builds a monoid on `object` from an `n × n²` multiplication matrix and
    /// unit coordinates.
    pub fn from_matrices(object: WireWord, m: Matrix, u: &[C64]) -> Result<Self> {
        let pair = object.concat(&object);
        let m = Morphism::new(pair, object.clone(), m)?;
        let u = Morphism::state(object, u)?;
        Monoid::new(m, u)
    }

    pub fn object(&self) -> &WireWord {
        &self.object
    }

    pub fn dim(&self) -> usize {
        self.object.total_dim()
    }

    pub fn m(&self) -> &Morphism {
        &self.m
    }

    pub fn u(&self) -> &Morphism {
        &self.u
    }

    pub fn comultiplication(&self) -> Morphism {
        self.m.dagger()
    }

    pub fn counit(&self) -> Morphism {
        self.u.dagger()
    }

    /// `m ∘ (a ⊗ b)` for states `a`, `b`.
    pub fn product(&self, a: &Morphism, b: &Morphism) -> Result<Morphism> {
        Morphism::compose(&self.m, &a.tensor(b))
    }

    /// The same algebra regarded on the single wire `[n]`.
    pub fn flattened(&self) -> Monoid {
        let n = self.dim();
        let object = WireWord::object(n);
        Monoid {
            m: self
                .m
                .relabel(object.concat(&object), object.clone())
                .expect("same dimensions"),
            u: self.u.relabel(WireWord::unit(), object.clone()).expect("same dimensions"),
            object,
        }
    }

    /// Replace the multiplication matrix, keeping the signature.
    pub fn with_m_data(&self, data: Matrix) -> Result<Monoid> {
        Monoid::new(self.m.relabel_data(data)?, self.u.clone())
    }

    /// `m ∘ (id ⊗ α)`.
    pub fn right_action(&self, alpha: &Morphism) -> Result<Morphism> {
        self.check_state(alpha)?;
        Morphism::compose(&self.m, &Morphism::identity(self.object.clone()).tensor(alpha))
    }

    /// `m ∘ (α ⊗ id)`.
    pub fn left_action(&self, alpha: &Morphism) -> Result<Morphism> {
        self.check_state(alpha)?;
        Morphism::compose(&self.m, &alpha.tensor(&Morphism::identity(self.object.clone())))
    }

    /// `α' = (id ⊗ α†) ∘ m† ∘ u`, the element whose right action is the
    /// adjoint of the right action of `α` when the monoid is
    /// dagger-Frobenius.
    pub fn star_element(&self, alpha: &Morphism) -> Result<Morphism> {
        self.check_state(alpha)?;
        let split = Morphism::compose(&self.comultiplication(), &self.u)?;
        let pair = Morphism::identity(self.object.clone()).tensor(&alpha.dagger());
        Morphism::compose(&pair, &split)
    }

    fn check_state(&self, alpha: &Morphism) -> Result<()> {
        if !alpha.dom().is_empty() || alpha.cod() != &self.object {
            return Err(Error::shape(
                format!("I -> {}", self.object),
                format!("{} -> {}", alpha.dom(), alpha.cod()),
            ));
        }
        Ok(())
    }

    fn id(&self) -> Morphism {
        Morphism::identity(self.object.clone())
    }
}

impl Morphism {
    /// Same signature, new matrix.
    pub fn relabel_data(&self, data: Matrix) -> Result<Morphism> {
        Morphism::new(self.dom().clone(), self.cod().clone(), data)
    }
}

/// Flags with worst-case deviations for the seven predicates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub associative: Comparison,
    pub unital: Comparison,
    pub frobenius: Comparison,
    pub special: Comparison,
    pub commutative: Comparison,
    pub balanced_symmetric: Comparison,
    pub unitary: Comparison,
}

impl PropertyReport {
    pub fn is_monoid(&self) -> bool {
        self.associative.pass && self.unital.pass
    }

    /// Associative, unital, and Frobenius with its adjoint comonoid.
    pub fn is_dagger_frobenius(&self) -> bool {
        self.is_monoid() && self.frobenius.pass
    }

    pub fn flags(&self) -> [bool; 7] {
        [
            self.associative.pass,
            self.unital.pass,
            self.frobenius.pass,
            self.special.pass,
            self.commutative.pass,
            self.balanced_symmetric.pass,
            self.unitary.pass,
        ]
    }

    pub fn entries(&self) -> [(&'static str, Comparison); 7] {
        [
            ("associative", self.associative),
            ("unital", self.unital),
            ("frobenius", self.frobenius),
            ("special", self.special),
            ("commutative", self.commutative),
            ("balanced_symmetric", self.balanced_symmetric),
            ("unitary", self.unitary),
        ]
    }
}

/// `(id_left ⊗ f ⊗ id_right) ∘ x`.
fn whisker(left: &WireWord, f: &Morphism, right: &WireWord, x: &Morphism) -> Result<Morphism> {
    f.apply_whiskered(left, right, x)
}

pub fn associativity(monoid: &Monoid, tol: Tolerance) -> Result<Comparison> {
    let m = monoid.m();
    let lhs = Morphism::compose(m, &m.tensor(&monoid.id()))?;
    let rhs = Morphism::compose(m, &monoid.id().tensor(m))?;
    lhs.compare(&rhs, tol)
}

pub fn unitality(monoid: &Monoid, tol: Tolerance) -> Result<Comparison> {
    let id = monoid.id();
    let left = Morphism::compose(monoid.m(), &monoid.u().tensor(&id))?;
    let right = Morphism::compose(monoid.m(), &id.tensor(monoid.u()))?;
    Ok(left.compare(&id, tol)?.and(right.compare(&id, tol)?))
}

/// `(id ⊗ m)(m† ⊗ id) = m† m = (m ⊗ id)(id ⊗ m†)`.
pub fn frobenius_law(monoid: &Monoid, tol: Tolerance) -> Result<Comparison> {
    let a = monoid.object();
    let unit = WireWord::unit();
    let m = monoid.m();
    let md = monoid.comultiplication();
    let id = monoid.id();
    let middle = Morphism::compose(&md, m)?;
    let left = whisker(a, m, &unit, &md.tensor(&id))?;
    let right = whisker(&unit, m, a, &id.tensor(&md))?;
    Ok(left.compare(&middle, tol)?.and(right.compare(&middle, tol)?))
}

/// `m ∘ m† = id`.
pub fn speciality(monoid: &Monoid, tol: Tolerance) -> Result<Comparison> {
    let mmd = Morphism::compose(monoid.m(), &monoid.comultiplication())?;
    mmd.compare(&monoid.id(), tol)
}

pub fn commutativity(monoid: &Monoid, tol: Tolerance) -> Result<Comparison> {
    let a = monoid.object();
    let swapped = Morphism::compose(monoid.m(), &Morphism::swap(a.clone(), a.clone()))?;
    swapped.compare(monoid.m(), tol)
}

/// `u† ∘ m ∘ swap = u† ∘ m` (the balancing loop is the identity here).
pub fn balanced_symmetry(monoid: &Monoid, tol: Tolerance) -> Result<Comparison> {
    let a = monoid.object();
    let pairing = Morphism::compose(&monoid.counit(), monoid.m())?;
    let swapped = Morphism::compose(&pairing, &Morphism::swap(a.clone(), a.clone()))?;
    swapped.compare(&pairing, tol)
}

/// `s_L† s_L = id` and `s_L s_L† = id`.
pub fn unitarity(monoid: &Monoid, tol: Tolerance) -> Result<Comparison> {
    let s = left_involution(monoid)?;
    let sds = Morphism::compose(&s.dagger(), &s)?;
    let ssd = Morphism::compose(&s, &s.dagger())?;
    Ok(sds
        .compare(&Morphism::identity(s.dom().clone()), tol)?
        .and(ssd.compare(&Morphism::identity(s.cod().clone()), tol)?))
}

pub fn classify(monoid: &Monoid, tol: Tolerance) -> PropertyReport {
    let run = |r: Result<Comparison>| {
        r.unwrap_or(Comparison {
            pass: false,
            max_deviation: f64::INFINITY,
        })
    };
    PropertyReport {
        associative: run(associativity(monoid, tol)),
        unital: run(unitality(monoid, tol)),
        frobenius: run(frobenius_law(monoid, tol)),
        special: run(speciality(monoid, tol)),
        commutative: run(commutativity(monoid, tol)),
        balanced_symmetric: run(balanced_symmetry(monoid, tol)),
        unitary: run(unitarity(monoid, tol)),
    }
}

/// `u† ∘ m : A ⊗ A → I`.
fn pairing(monoid: &Monoid) -> Result<Morphism> {
    Morphism::compose(&monoid.counit(), monoid.m())
}

/// `s_L = ((u† ∘ m) ⊗ id_A*) ∘ (id_A ⊗ ε_A*)`.
pub fn left_involution(monoid: &Monoid) -> Result<Morphism> {
    let a = monoid.object();
    let a_dual = a.dual();
    let bend = monoid.id().tensor(&Morphism::cup(a_dual.clone()));
    let close = pairing(monoid)?.tensor(&Morphism::identity(a_dual));
    Morphism::compose(&close, &bend)
}

/// `s_R = (id_A* ⊗ (u† ∘ m)) ∘ (ε_A ⊗ id_A)`.
pub fn right_involution(monoid: &Monoid) -> Result<Morphism> {
    let a = monoid.object();
    let bend = Morphism::cup(a.clone()).tensor(&monoid.id());
    let close = Morphism::identity(a.dual()).tensor(&pairing(monoid)?);
    Morphism::compose(&close, &bend)
}

/// The canonical dimension `ε† ∘ ε` together with the two scalars the
/// dimension lemmas compare it against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    /// `ε† ∘ ε`.
    pub dimension: C64,
    /// `u† ∘ m ∘ m† ∘ u`, the squared norm of `m† ∘ u`.
    pub comultiplied_unit_norm: C64,
    /// `u† ∘ u`.
    pub unit_norm: C64,
}

pub fn dimension(monoid: &Monoid) -> Result<DimensionReport> {
    let eps = Morphism::cup(monoid.object().clone());
    let dimension = scalar(&Morphism::compose(&eps.dagger(), &eps)?);
    let split = Morphism::compose(&monoid.comultiplication(), monoid.u())?;
    let comultiplied_unit_norm = scalar(&Morphism::compose(&split.dagger(), &split)?);
    let unit_norm = scalar(&Morphism::compose(&monoid.counit(), monoid.u())?);
    Ok(DimensionReport {
        dimension,
        comultiplied_unit_norm,
        unit_norm,
    })
}

fn scalar(f: &Morphism) -> C64 {
    f.scalar_value().expect("scalar morphism")
}

/// `Z_g = u† ∘ m ∘ H^g ∘ m† ∘ u` with handle operator `H = m ∘ m†`.
pub fn genus_invariant(monoid: &Monoid, genus: usize, tol: Tolerance) -> Result<C64> {
    let report = classify(monoid, tol);
    if !report.is_dagger_frobenius() {
        return Err(Error::NotFrobenius(format!(
            "associative {:e}, unital {:e}, frobenius {:e}",
            report.associative.max_deviation,
            report.unital.max_deviation,
            report.frobenius.max_deviation
        )));
    }
    let handle = Morphism::compose(monoid.m(), &monoid.comultiplication())?;
    let mut state = monoid.u().clone();
    for _ in 0..genus {
        state = Morphism::compose(&handle, &state)?;
    }
    let closed = Morphism::compose(&monoid.u().dagger(), &state)?;
    Ok(scalar(&closed))
}

/// Requires the dagger-Frobenius flags, returning the report on success.
pub fn require_frobenius(monoid: &Monoid, tol: Tolerance) -> Result<PropertyReport> {
    let report = classify(monoid, tol);
    if report.is_dagger_frobenius() {
        Ok(report)
    } else {
        Err(Error::NotFrobenius(format!(
            "associative {:e}, unital {:e}, frobenius {:e}",
            report.associative.max_deviation,
            report.unital.max_deviation,
            report.frobenius.max_deviation
        )))
    }
}
