//! Classical structures: spectra of commutative dagger-Frobenius monoids,
//! the free construction on finite sets, and internal diagonalization of
//! normal operators.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::cstar::{coordinates_descending, split_idempotents};
use crate::error::{Error, Result};
use crate::frobenius::{classify, right_involution, Monoid};
use crate::involution::{is_involution_hom, monoid_hom_report, InvolutionMonoid};
use crate::linalg::{eig_normal, kernels, Comparison, EigenPair, Matrix, Morphism, Tolerance, WireWord, C64, ONE, ZERO};

/// Copyable points of a commutative dagger-Frobenius monoid and their
/// characters `χᵢ = pᵢ† / ‖pᵢ‖²`.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub points: Vec<Morphism>,
    pub characters: Vec<Morphism>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Columns are the points.
    pub fn point_matrix(&self, dim: usize) -> Matrix {
        let mut out = Matrix::zeros(dim, self.points.len());
        for (k, p) in self.points.iter().enumerate() {
            out.set_column(k, &p.data().column(0));
        }
        out
    }

    /// `χ_i(x)` for every point.
    pub fn evaluate(&self, x: &Morphism) -> Result<Vec<C64>> {
        self.characters
            .iter()
            .map(|chi| Ok(Morphism::compose(chi, x)?.scalar_value().unwrap_or(ZERO)))
            .collect()
    }

    /// `free(k)` transported along the points: `U m (U† ⊗ U†)` and `U u`
    /// with `U` the point matrix. Equals the original monoid exactly when
    /// it is special (orthonormal points).
    pub fn reconstruct(&self, object: &WireWord) -> Result<Monoid> {
        let n = object.total_dim();
        let u = self.point_matrix(n);
        let base = free(self.points.len());
        let ud = u.adjoint();
        let m = kernels::matmul(&kernels::matmul(&u, base.m().data()), &kernels::kron(&ud, &ud));
        let unit = kernels::matmul(&u, base.u().data());
        Monoid::from_matrices(object.clone(), m, unit.as_slice())
    }
}

/// Points of a commutative dagger-Frobenius monoid, ordered by descending
/// `(Re, Im)` of `χᵢ(probe)` with `probe = Σ_k (n − k) e_k`.
pub fn spectrum(monoid: &Monoid, tol: Tolerance, seed: u64) -> Result<Spectrum> {
    let report = classify(monoid, tol);
    if !report.commutative.pass {
        return Err(Error::NotCommutative {
            deviation: report.commutative.max_deviation,
        });
    }
    if !report.is_dagger_frobenius() {
        return Err(Error::NotFrobenius(format!(
            "associative {:e}, unital {:e}, frobenius {:e}",
            report.associative.max_deviation, report.unital.max_deviation, report.frobenius.max_deviation
        )));
    }
    let n = monoid.dim();
    let points = split_idempotents(monoid, &Matrix::identity(n, n), seed)?;
    let probe = Morphism::from_fn(WireWord::unit(), monoid.object().clone(), |k, _| {
        C64::new((n - k) as f64, 0.0)
    });
    let mut entries: Vec<(C64, Morphism, Morphism)> = points
        .into_iter()
        .map(|p| {
            let norm = (p.data().adjoint() * p.data())[(0, 0)].re;
            let chi = p.dagger().scale(C64::new(1.0 / norm, 0.0));
            let value = Morphism::compose(&chi, &probe)?.scalar_value().unwrap_or(ZERO);
            Ok((value, p, chi))
        })
        .collect::<Result<_>>()?;
    entries.sort_by(|a, b| {
        let by_value = if (a.0.re - b.0.re).abs() > 1e-9 {
            b.0.re.total_cmp(&a.0.re)
        } else if (a.0.im - b.0.im).abs() > 1e-9 {
            b.0.im.total_cmp(&a.0.im)
        } else {
            Ordering::Equal
        };
        by_value.then_with(|| coordinates_descending(&a.1, &b.1))
    });
    let (points, characters) = entries.into_iter().map(|(_, p, c)| (p, c)).unzip();
    Ok(Spectrum { points, characters })
}

/// The monoid copying the standard basis of `ℂᵏ`.
pub fn free(k: usize) -> Monoid {
    let object = WireWord::object(k);
    let m = Morphism::from_fn(object.concat(&object), object.clone(), |r, c| {
        if c == r * k + r {
            ONE
        } else {
            ZERO
        }
    });
    let u = Morphism::from_fn(WireWord::unit(), object, |_, _| ONE);
    Monoid::new(m, u).expect("free signature")
}

/// A total function `{0..source} → {0..target}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinSetMap {
    pub source: usize,
    pub target: usize,
    pub table: Vec<usize>,
}

impl FinSetMap {
    pub fn new(source: usize, target: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != source || table.iter().any(|&t| t >= target) {
            return Err(Error::Format(format!(
                "table {table:?} is not a function {source} -> {target}"
            )));
        }
        Ok(FinSetMap { source, target, table })
    }

    pub fn identity(n: usize) -> Self {
        FinSetMap {
            source: n,
            target: n,
            table: (0..n).collect(),
        }
    }

    /// `self` then `next`.
    pub fn then(&self, next: &FinSetMap) -> Result<FinSetMap> {
        if self.target != next.source {
            return Err(Error::shape(next.source, self.target));
        }
        Ok(FinSetMap {
            source: self.source,
            target: next.target,
            table: self.table.iter().map(|&x| next.table[x]).collect(),
        })
    }

    /// Every function `source → target`, in lexicographic table order.
    pub fn all(source: usize, target: usize) -> Vec<FinSetMap> {
        let count = (target as u64).pow(source as u32) as usize;
        (0..count)
            .map(|mut code| {
                let mut table = vec![0; source];
                for slot in table.iter_mut().rev() {
                    *slot = code % target.max(1);
                    code /= target.max(1);
                }
                FinSetMap { source, target, table }
            })
            .collect()
    }
}

/// `(δ_f)† : free(target) → free(source)`.
pub fn free_map(f: &FinSetMap) -> Morphism {
    Morphism::from_fn(WireWord::object(f.target), WireWord::object(f.source), |s, t| {
        if f.table[s] == t {
            ONE
        } else {
            ZERO
        }
    })
}

/// The function on spectra induced by a homomorphism `h : B → A` of
/// commutative dagger-Frobenius monoids: point `s` of `A` goes to the
/// unique point `t` of `B` with `χ_s(h(q_t)) = 1`.
pub fn transport_function(h: &Morphism, a: &Monoid, b: &Monoid, tol: Tolerance, seed: u64) -> Result<FinSetMap> {
    if h.dom() != b.object() || h.cod() != a.object() {
        return Err(Error::shape(
            format!("{} -> {}", b.object(), a.object()),
            format!("{} -> {}", h.dom(), h.cod()),
        ));
    }
    let (mult, unit) = monoid_hom_report(h, b, a, tol);
    if !(mult.pass && unit.pass) {
        return Err(Error::NotHomomorphism(format!(
            "multiplicativity {:e}, unit {:e}",
            mult.max_deviation, unit.max_deviation
        )));
    }
    let wrap = |m: &Monoid| -> Result<InvolutionMonoid> { InvolutionMonoid::new(m.clone(), right_involution(m)?) };
    let preserving = is_involution_hom(h, &wrap(b)?, &wrap(a)?, tol).involution_preserving;
    if !preserving.pass {
        return Err(Error::NotHomomorphism(format!(
            "does not preserve involutions ({:e})",
            preserving.max_deviation
        )));
    }
    let spec_a = spectrum(a, tol, seed)?;
    let spec_b = spectrum(b, tol, seed)?;
    let images: Vec<Morphism> = spec_b
        .points
        .iter()
        .map(|q| Morphism::compose(h, q))
        .collect::<Result<_>>()?;
    let mut table = Vec::with_capacity(spec_a.len());
    for (s, chi) in spec_a.characters.iter().enumerate() {
        let values: Vec<C64> = images
            .iter()
            .map(|img| Ok(Morphism::compose(chi, img)?.scalar_value().unwrap_or(ZERO)))
            .collect::<Result<_>>()?;
        let hits: Vec<usize> = (0..values.len()).filter(|&t| (values[t] - ONE).norm() < 1e-6).collect();
        let clean = values
            .iter()
            .enumerate()
            .all(|(t, v)| hits.contains(&t) || v.norm() < 1e-6);
        match hits.as_slice() {
            [t] if clean => table.push(*t),
            _ => {
                return Err(Error::NotHomomorphism(format!(
                    "point {s} has character values {values:?} on the image points"
                )))
            }
        }
    }
    FinSetMap::new(spec_a.len(), spec_b.len(), table)
}

/// `m ∘ (f ⊗ id) = f ∘ m = m ∘ (id ⊗ f)`.
pub fn compatibility(f: &Morphism, monoid: &Monoid, tol: Tolerance) -> Result<Comparison> {
    let a = monoid.object();
    if f.dom() != a || f.cod() != a {
        return Err(Error::shape(format!("{a} -> {a}"), format!("{} -> {}", f.dom(), f.cod())));
    }
    let id = Morphism::identity(a.clone());
    let middle = Morphism::compose(f, monoid.m())?;
    let left = Morphism::compose(monoid.m(), &f.tensor(&id))?;
    let right = Morphism::compose(monoid.m(), &id.tensor(f))?;
    Ok(left.compare(&middle, tol)?.and(right.compare(&middle, tol)?))
}

pub fn is_compatible(f: &Morphism, monoid: &Monoid, tol: Tolerance) -> Result<bool> {
    compatibility(f, monoid, tol).map(|c| c.pass)
}

#[derive(Clone, Debug)]
pub struct Diagonalization {
    /// Copies the eigenbasis: `m = Σ aᵢ (aᵢ† ⊗ aᵢ†)`, `u = Σ aᵢ`.
    pub monoid: Monoid,
    /// `φ_f = f ∘ u`, so that `f = m ∘ (φ_f ⊗ id)`.
    pub phi: Morphism,
    pub eigenpairs: Vec<EigenPair>,
}

pub fn internal_diagonalize(f: &Morphism, tol: Tolerance) -> Result<Diagonalization> {
    let eigenpairs = eig_normal(f, tol)?;
    let object = f.dom().clone();
    let n = object.total_dim();
    let mut basis = Matrix::zeros(n, n);
    for (k, p) in eigenpairs.iter().enumerate() {
        basis.set_column(k, &p.vector.data().column(0));
    }
    let base = free(n);
    let bd = basis.adjoint();
    let m = kernels::matmul(&kernels::matmul(&basis, base.m().data()), &kernels::kron(&bd, &bd));
    let unit = kernels::matmul(&basis, base.u().data());
    let monoid = Monoid::from_matrices(object, m, unit.as_slice())?;
    let phi = Morphism::compose(f, monoid.u())?;
    Ok(Diagonalization {
        monoid,
        phi,
        eigenpairs,
    })
}
