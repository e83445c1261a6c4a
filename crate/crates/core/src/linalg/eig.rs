use nalgebra::SymmetricEigen;

use super::{kernels, Matrix, Morphism, Tolerance, WireWord, C64, ZERO};
use crate::error::{Error, Result};

/// Mixing weight used to separate joint eigenspaces inside a degenerate
/// cluster of the Hermitian part. Any irrational-looking constant works.
const CLUSTER_MIX: f64 = 0.577_215_664_901_532_9;

/// Relative gap below which eigenvalues of the Hermitian part are treated as
/// one cluster.
const CLUSTER_GAP: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub value: C64,
    /// Unit-norm eigenvector as a state `I → A`.
    pub vector: Morphism,
}

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascending,
/// eigenvectors as the matching columns.
pub fn hermitian_eigen(h: &Matrix) -> (Vec<f64>, Matrix) {
    let n = h.nrows();
    if n == 0 {
        return (Vec::new(), Matrix::zeros(0, 0));
    }
    let sym = (h + h.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// `h^p` for a positive-definite Hermitian `h` (any real `p`).
pub fn hermitian_power(h: &Matrix, p: f64) -> Matrix {
    let (values, v) = hermitian_eigen(h);
    let n = values.len();
    let scaled = Matrix::from_fn(n, n, |r, c| v[(r, c)] * values[c].powf(p));
    kernels::matmul(&scaled, &v.adjoint())
}

/// Largest singular value.
pub fn operator_norm(f: &Morphism) -> f64 {
    let data = f.data();
    if data.is_empty() {
        return 0.0;
    }
    data.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0f64, |acc, &s| acc.max(s))
}

fn fix_phase(v: &mut [C64]) {
    let max = v.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    if max == 0.0 {
        return;
    }
    let pivot = v
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-9))
        .unwrap_or(0);
    let phase = v[pivot].conj() / v[pivot].norm();
    for z in v.iter_mut() {
        *z *= phase;
    }
}

/// Orthonormal eigenbasis of a normal operator.
///
/// The Hermitian parts `H1 = (f + f†)/2` and `H2 = (f - f†)/2i` commute, so
/// `H1` is diagonalized first and every cluster of (near-)equal eigenvalues
/// is then split by `H2 + c·H1` restricted to that cluster. Degenerate
/// eigenspaces come back orthonormalized but the particular basis chosen
/// inside them is not canonical. Each eigenvector is phase-fixed so that its
/// first largest-magnitude coordinate is real and positive. A matrix that is
/// already diagonal returns the standard basis in index order.
pub fn eig_normal(f: &Morphism, tol: Tolerance) -> Result<Vec<EigenPair>> {
    if !f.is_square() {
        return Err(Error::shape(f.dom(), f.cod()));
    }
    let normal = f.normality(tol);
    if !normal.pass {
        return Err(Error::NotNormal {
            deviation: normal.max_deviation,
        });
    }
    let word: WireWord = f.dom().clone();
    let data = f.data();
    let n = data.nrows();

    let diagonal = (0..n).all(|c| (0..n).all(|r| r == c || data[(r, c)] == ZERO));
    if diagonal {
        return Ok((0..n)
            .map(|i| EigenPair {
                value: data[(i, i)],
                vector: Morphism::basis_state(word.clone(), i),
            })
            .collect());
    }

    let half = C64::new(0.5, 0.0);
    let h1 = (data + data.adjoint()) * half;
    let h2 = (data - data.adjoint()) * C64::new(0.0, -0.5);
    let (values, v1) = hermitian_eigen(&h1);

    let scale = data.norm().max(1.0);
    let mut basis = Matrix::zeros(n, n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end] - values[end - 1] <= CLUSTER_GAP * scale {
            end += 1;
        }
        let block = v1.columns(start, end - start).into_owned();
        if end - start == 1 {
            basis.set_column(start, &block.column(0));
        } else {
            let mixed = &h2 + &h1 * C64::new(CLUSTER_MIX, 0.0);
            let restricted = block.adjoint() * mixed * &block;
            let (_, w) = hermitian_eigen(&restricted);
            let rotated = &block * w;
            for k in 0..(end - start) {
                basis.set_column(start + k, &rotated.column(k));
            }
        }
        start = end;
    }

    let mut pairs = Vec::with_capacity(n);
    for k in 0..n {
        let mut coords: Vec<C64> = basis.column(k).iter().copied().collect();
        fix_phase(&mut coords);
        let norm = coords.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in coords.iter_mut() {
            *z /= norm;
        }
        let col = Matrix::from_column_slice(n, 1, &coords);
        let fv = data * &col;
        let value = (col.adjoint() * fv)[(0, 0)];
        pairs.push(EigenPair {
            value,
            vector: Morphism::state(word.clone(), &coords)?,
        });
    }
    Ok(pairs)
}
