//! From basis-presented *-algebras to special unitary dagger-Frobenius
//! involution monoids.
//!
//! The canonical inner product is the regular trace form
//! `G(a, b) = Tr(L_{t(a)·b})`. On a block `Mat(k)` left multiplication by
//! `c` has trace `k · Tr(c)`, so this form is `k · Tr(a†b)` blockwise and
//! needs no decomposition to compute. Orthonormalizing with the Hermitian
//! square root `T = G^{1/2}` gives the realized monoid.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frobenius::{classify, Monoid};
use crate::involution::{linear_from_antilinear, AntilinearInvolution, InvolutionMonoid};
use crate::linalg::{
    hermitian_eigen, hermitian_power, kernels, Comparison, Matrix, Morphism, Tolerance, WireWord,
    C64, ONE, ZERO,
};

/// Attempts made by the randomized center split before giving up.
pub const SPLIT_ATTEMPTS: usize = 9;
/// Smallest accepted relative eigenvalue gap in the center split.
pub const SPLIT_GAP: f64 = 1e-6;
/// Pivot threshold for the center nullspace.
pub const PIVOT_THRESHOLD: f64 = 1e-10;
/// Relative eigenvalue floor for positive-definiteness of the trace form.
pub const PD_THRESHOLD: f64 = 1e-8;

/// An algebra given by structure constants, unit and antilinear star.
#[derive(Clone, Debug, PartialEq)]
pub struct StarAlgebra {
    /// `n × n²` with `mult[(k, i·n + j)] = c[i][j][k]`.
    pub mult: Matrix,
    /// Unit coordinates as an `n × 1` column.
    pub unit: Matrix,
    pub star: AntilinearInvolution,
}

impl StarAlgebra {
    pub fn new(mult: Matrix, unit: Matrix, star: AntilinearInvolution) -> Result<Self> {
        let n = unit.nrows();
        if unit.ncols() != 1 || mult.shape() != (n, n * n) || star.dim() != n {
            return Err(Error::shape(
                format!("{n}x{} multiplication, {n}x1 unit, {n}x{n} star", n * n),
                format!("{:?}, {:?}, {:?}", mult.shape(), unit.shape(), star.s.shape()),
            ));
        }
        Ok(StarAlgebra { mult, unit, star })
    }

    /// From nested structure constants `c[i][j][k]`.
    pub fn from_constants(c: &[Vec<Vec<C64>>], unit: &[C64], star: Matrix) -> Result<Self> {
        let n = unit.len();
        let mut mult = Matrix::zeros(n, n * n);
        if c.len() != n {
            return Err(Error::shape(format!("{n} rows of constants"), c.len()));
        }
        for (i, row) in c.iter().enumerate() {
            if row.len() != n {
                return Err(Error::shape(format!("{n} constants"), row.len()));
            }
            for (j, out) in row.iter().enumerate() {
                if out.len() != n {
                    return Err(Error::shape(format!("{n} constants"), out.len()));
                }
                for (k, &v) in out.iter().enumerate() {
                    mult[(k, i * n + j)] = v;
                }
            }
        }
        StarAlgebra::new(mult, Matrix::from_column_slice(n, 1, unit), AntilinearInvolution::new(star)?)
    }

    pub fn dim(&self) -> usize {
        self.unit.nrows()
    }

    /// `c[i][j][k]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> C64 {
        self.mult[(k, i * self.dim() + j)]
    }

    pub fn product(&self, a: &Matrix, b: &Matrix) -> Matrix {
        kernels::matmul(&self.mult, &kernels::kron(a, b))
    }

    /// Associativity, unit laws and the star axioms, as one comparison.
    pub fn check(&self, tol: Tolerance) -> Comparison {
        let n = self.dim();
        let id = Matrix::identity(n, n);
        let left = kernels::matmul(&self.mult, &kernels::kron(&self.mult, &id));
        let right = kernels::matmul(&self.mult, &kernels::kron(&id, &self.mult));
        let unit_left = kernels::matmul(&self.mult, &kernels::kron(&self.unit, &id));
        let unit_right = kernels::matmul(&self.mult, &kernels::kron(&id, &self.unit));
        tol.compare(&left, &right)
            .and(tol.compare(&unit_left, &id))
            .and(tol.compare(&unit_right, &id))
            .and(self.star.check_star(&self.mult, &self.unit, tol))
    }

    pub fn validate(&self, tol: Tolerance) -> Result<()> {
        let report = self.check(tol);
        if report.pass {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(format!(
                "algebra or star laws fail by {:e}",
                report.max_deviation
            )))
        }
    }

    /// The same algebra in the basis given by the columns of `p`:
    /// coordinates transform by `p⁻¹`, the star by `p⁻¹ · S · conj(p)`.
    pub fn change_basis(&self, p: &Matrix) -> Result<StarAlgebra> {
        let n = self.dim();
        let inv = p
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidAlgebra("basis change is singular".into()))?;
        let mult = kernels::matmul(&kernels::matmul(&inv, &self.mult), &kernels::kron(p, p));
        let unit = &inv * &self.unit;
        let star = &inv * &self.star.s * p.map(|z| z.conj());
        debug_assert_eq!(mult.shape(), (n, n * n));
        StarAlgebra::new(mult, unit, AntilinearInvolution::new(star)?)
    }

    /// Block direct sum `A ⊕ B` with `A`'s basis first.
    pub fn direct_sum(&self, other: &StarAlgebra) -> StarAlgebra {
        let (a, b) = (self.dim(), other.dim());
        let n = a + b;
        let mut mult = Matrix::zeros(n, n * n);
        for i in 0..a {
            for j in 0..a {
                for k in 0..a {
                    mult[(k, i * n + j)] = self.constant(i, j, k);
                }
            }
        }
        for i in 0..b {
            for j in 0..b {
                for k in 0..b {
                    mult[(a + k, (a + i) * n + a + j)] = other.constant(i, j, k);
                }
            }
        }
        let mut unit = Matrix::zeros(n, 1);
        unit.view_mut((0, 0), (a, 1)).copy_from(&self.unit);
        unit.view_mut((a, 0), (b, 1)).copy_from(&other.unit);
        let mut star = Matrix::zeros(n, n);
        star.view_mut((0, 0), (a, a)).copy_from(&self.star.s);
        star.view_mut((a, a), (b, b)).copy_from(&other.star.s);
        StarAlgebra {
            mult,
            unit,
            star: AntilinearInvolution { s: star },
        }
    }
}

/// `G_ij = Tr(L_{t(e_i)·e_j})`, so that `G(a, b) = a† G b`.
pub fn regular_trace_gram(algebra: &StarAlgebra, tol: Tolerance) -> Result<Matrix> {
    algebra.validate(tol)?;
    Ok(trace_gram_unchecked(algebra))
}

fn trace_gram_unchecked(algebra: &StarAlgebra) -> Matrix {
    let n = algebra.dim();
    // τ(e_p) = Tr(L_{e_p}) = Σ_q c[p][q][q].
    let tau: Vec<C64> = (0..n)
        .map(|p| (0..n).map(|q| algebra.constant(p, q, q)).sum())
        .collect();
    let s = &algebra.star.s;
    Matrix::from_fn(n, n, |i, j| {
        let mut acc = ZERO;
        for k in 0..n {
            let ski = s[(k, i)];
            if ski == ZERO {
                continue;
            }
            let inner: C64 = (0..n).map(|p| algebra.constant(k, j, p) * tau[p]).sum();
            acc += ski * inner;
        }
        acc
    })
}

/// A realized algebra together with the coordinate change that produced it.
#[derive(Clone, Debug)]
pub struct Realization {
    pub monoid: InvolutionMonoid,
    /// `T = G^{1/2}`; new coordinates are `T · old`.
    pub transform: Matrix,
    pub gram: Matrix,
}

/// Orthonormalize the trace form and transport the structure to `ℂⁿ`.
pub fn realize(algebra: &StarAlgebra, tol: Tolerance) -> Result<InvolutionMonoid> {
    realize_with_transform(algebra, tol).map(|r| r.monoid)
}

pub fn realize_with_transform(algebra: &StarAlgebra, tol: Tolerance) -> Result<Realization> {
    let gram = regular_trace_gram(algebra, tol)?;
    let n = algebra.dim();
    let hermitian = tol.compare(&gram, &gram.adjoint());
    if !hermitian.pass {
        return Err(Error::InvalidAlgebra(format!(
            "trace form is not Hermitian (deviation {:e})",
            hermitian.max_deviation
        )));
    }
    let (values, _) = hermitian_eigen(&gram);
    let min = values.first().copied().unwrap_or(0.0);
    let max = values.last().copied().unwrap_or(0.0);
    if n > 0 && !(max > 0.0 && min > PD_THRESHOLD * max) {
        return Err(Error::NotCStar {
            min_eigenvalue: min,
            max_eigenvalue: max,
        });
    }
    let t = hermitian_power(&gram, 0.5);
    let t_inv = hermitian_power(&gram, -0.5);
    let mult = kernels::matmul(
        &kernels::matmul(&t, &algebra.mult),
        &kernels::kron(&t_inv, &t_inv),
    );
    let unit = &t * &algebra.unit;
    let star = AntilinearInvolution::new(&t * &algebra.star.s * t_inv.map(|z| z.conj()))?;
    let object = WireWord::object(n);
    let monoid = Monoid::from_matrices(object.clone(), mult, unit.as_slice())?;
    let s = linear_from_antilinear(&star, &object)?;
    Ok(Realization {
        monoid: InvolutionMonoid::new(monoid, s)?,
        transform: t,
        gram,
    })
}

/// The monoid in orthonormal coordinates for the inner product scaled by
/// `alpha`: `m ↦ m / √α`, `u ↦ √α · u`.
pub fn rescale(monoid: &Monoid, alpha: f64) -> Result<Monoid> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::NonpositiveScale(alpha));
    }
    let root = alpha.sqrt();
    Monoid::new(
        monoid.m().scale(C64::new(1.0 / root, 0.0)),
        monoid.u().scale(C64::new(root, 0.0)),
    )
}

/// Adjoint of `f : A^{⊗n} → A^{⊗m}` when every `A^{⊗k}` carries the inner
/// product scaled by `α^k`: `α^{m−n} f†`. `object` is `A`; both words of
/// `f` must be repetitions of it.
pub fn scaled_adjoint(f: &Morphism, object: &WireWord, alpha: f64) -> Result<Morphism> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::NonpositiveScale(alpha));
    }
    let n = copies(f.dom(), object)?;
    let m = copies(f.cod(), object)?;
    Ok(f.dagger().scale(C64::new(alpha.powi(m as i32 - n as i32), 0.0)))
}

fn copies(word: &WireWord, object: &WireWord) -> Result<usize> {
    if object.is_empty() {
        return Err(Error::shape("nonempty object", object));
    }
    let k = word.len() / object.len();
    let rebuilt = (0..k).fold(WireWord::unit(), |acc, _| acc.concat(object));
    if &rebuilt != word {
        return Err(Error::shape(format!("power of {object}"), word));
    }
    Ok(k)
}

/// Orthonormal basis of the nullspace of `a`, by row reduction with
/// partial pivoting. Pivots below `threshold · max|a|` count as zero.
pub fn nullspace(a: &Matrix, threshold: f64) -> Matrix {
    let (rows, cols) = a.shape();
    let mut r = a.clone();
    let scale = a.iter().fold(0.0f64, |acc, z| acc.max(z.norm())).max(f64::MIN_POSITIVE);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let (best, size) = (row..rows)
            .map(|i| (i, r[(i, col)].norm()))
            .fold((row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if size <= threshold * scale {
            continue;
        }
        r.swap_rows(row, best);
        let p = r[(row, col)];
        for j in col..cols {
            r[(row, j)] /= p;
        }
        for i in 0..rows {
            if i == row {
                continue;
            }
            let factor = r[(i, col)];
            if factor == ZERO {
                continue;
            }
            for j in col..cols {
                let v = r[(row, j)];
                r[(i, j)] -= factor * v;
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    if free.is_empty() {
        return Matrix::zeros(cols, 0);
    }
    let mut basis = Matrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis[(f, k)] = ONE;
        for &(pr, pc) in &pivots {
            basis[(pc, k)] = -r[(pr, f)];
        }
    }
    basis.qr().q()
}

/// Orthonormal basis of the center `{x : x·b = b·x for all b}`.
pub fn center_basis(monoid: &Monoid) -> Result<Matrix> {
    let n = monoid.dim();
    let mut stacked = Matrix::zeros(n * n, n);
    for i in 0..n {
        let e = Morphism::basis_state(monoid.object().clone(), i);
        let diff = monoid.left_action(&e)?.sub(&monoid.right_action(&e)?)?;
        // x ↦ x·e_i − e_i·x = (R_{e_i} − L_{e_i}) x.
        stacked
            .view_mut((i * n, 0), (n, n))
            .copy_from(&(-diff.data()));
    }
    Ok(nullspace(&stacked, PIVOT_THRESHOLD))
}

/// Minimal idempotents of the commutative *-closed subalgebra spanned by
/// the orthonormal columns of `basis`, found by diagonalizing the right
/// action of a random self-adjoint element. Requires a dagger-Frobenius
/// monoid so that right actions of self-adjoint elements are Hermitian.
pub(crate) fn split_idempotents(monoid: &Monoid, basis: &Matrix, seed: u64) -> Result<Vec<Morphism>> {
    let n = monoid.dim();
    let z = basis.ncols();
    let object = monoid.object().clone();
    if z == 0 {
        return Ok(Vec::new());
    }
    let mut smallest_gap = f64::INFINITY;
    for attempt in 0..SPLIT_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let coeffs = Matrix::from_fn(z, 1, |_, _| {
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let element = Morphism::new(WireWord::unit(), object.clone(), basis * coeffs)?;
        let h = element.add(&monoid.star_element(&element)?)?;
        let action = monoid.right_action(&h)?;
        let restricted = basis.adjoint() * action.data() * basis;
        let (values, vectors) = hermitian_eigen(&restricted);
        let scale = values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
        let gap = values
            .windows(2)
            .map(|w| (w[1] - w[0]) / scale)
            .fold(f64::INFINITY, f64::min);
        if gap < SPLIT_GAP {
            smallest_gap = smallest_gap.min(gap);
            continue;
        }
        let mut out = Vec::with_capacity(z);
        for k in 0..z {
            let v = basis * vectors.columns(k, 1);
            let v = Morphism::new(WireWord::unit(), object.clone(), v)?;
            let square = monoid.product(&v, &v)?;
            let c = (v.data().adjoint() * square.data())[(0, 0)]
                / (v.data().adjoint() * v.data())[(0, 0)];
            out.push(v.scale(ONE / c));
        }
        debug_assert!(out.iter().all(|p| p.cod().total_dim() == n));
        return Ok(out);
    }
    Err(Error::DegenerateSplit {
        attempts: SPLIT_ATTEMPTS,
        gap: smallest_gap,
    })
}

/// Compare coordinate vectors descending by real part, then imaginary part.
pub(crate) fn coordinates_descending(a: &Morphism, b: &Morphism) -> Ordering {
    const EPS: f64 = 1e-9;
    for (x, y) in a.data().iter().zip(b.data().iter()) {
        if (x.re - y.re).abs() > EPS {
            return y.re.total_cmp(&x.re);
        }
        if (x.im - y.im).abs() > EPS {
            return y.im.total_cmp(&x.im);
        }
    }
    Ordering::Equal
}

#[derive(Clone, Debug)]
pub struct Wedderburn {
    /// Minimal central idempotents, ordered by block size then coordinates.
    pub idempotents: Vec<Morphism>,
    /// `nᵢ` with block `i` isomorphic to `Mat(nᵢ)`.
    pub block_dims: Vec<usize>,
}

/// Central idempotents and block sizes of a special unitary
/// dagger-Frobenius involution monoid.
pub fn wedderburn(im: &InvolutionMonoid, tol: Tolerance, seed: u64) -> Result<Wedderburn> {
    let report = classify(&im.monoid, tol);
    if !(report.is_dagger_frobenius() && report.special.pass && report.unitary.pass) {
        return Err(Error::NotFrobenius(format!(
            "expected special unitary dagger-Frobenius (frobenius {:e}, special {:e}, unitary {:e})",
            report.frobenius.max_deviation, report.special.max_deviation, report.unitary.max_deviation
        )));
    }
    im.require_valid(tol)?;
    let monoid = &im.monoid;
    let center = center_basis(monoid)?;
    let idempotents = split_idempotents(monoid, &center, seed)?;
    let mut blocks = Vec::with_capacity(idempotents.len());
    for p in idempotents {
        let rank = monoid.right_action(&p)?.data().trace().re;
        let d = rank.round() as usize;
        let k = (d as f64).sqrt().round() as usize;
        if k * k != d || (rank - d as f64).abs() > 1e-6 {
            return Err(Error::InvalidAlgebra(format!(
                "central block has dimension {rank}, not a perfect square"
            )));
        }
        blocks.push((k, p));
    }
    blocks.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| coordinates_descending(&a.1, &b.1)));
    Ok(Wedderburn {
        block_dims: blocks.iter().map(|b| b.0).collect(),
        idempotents: blocks.into_iter().map(|b| b.1).collect(),
    })
}
