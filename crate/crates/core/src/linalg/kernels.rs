//! Dense complex kernels behind composition and tensor products.
//!
//! Each kernel fills its output one column at a time (nalgebra storage is
//! column-major, so a column is a contiguous slice). With the `parallel`
//! feature, columns are distributed over the rayon pool once the work
//! estimate passes [`PARALLEL_THRESHOLD`]; otherwise they run in order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::{Matrix, C64, ZERO};
use crate::Execution;

/// Minimum multiply-add count before a kernel goes parallel.
pub const PARALLEL_THRESHOLD: usize = 1 << 15;

fn fill_columns<F>(out: &mut Matrix, work: usize, mode: Execution, fill: F)
where
    F: Fn(usize, &mut [C64]) + Sync + Send,
{
    let rows = out.nrows();
    if rows == 0 || out.ncols() == 0 {
        return;
    }
    let slice = out.as_mut_slice();
    match mode {
        #[cfg(feature = "parallel")]
        Execution::Parallel if work >= PARALLEL_THRESHOLD => {
            slice
                .par_chunks_mut(rows)
                .enumerate()
                .for_each(|(j, col)| fill(j, col));
        }
        _ => {
            let _ = work;
            slice
                .chunks_mut(rows)
                .enumerate()
                .for_each(|(j, col)| fill(j, col));
        }
    }
}

/// Matrix product `a · b`, skipping zero entries of `b` (structural
/// morphisms are mostly zeros).
pub fn matmul_with(a: &Matrix, b: &Matrix, mode: Execution) -> Matrix {
    assert_eq!(a.ncols(), b.nrows(), "matmul: inner dimensions differ");
    let (m, k) = a.shape();
    let p = b.ncols();
    let mut out = Matrix::zeros(m, p);
    let a_cols = a.as_slice();
    fill_columns(&mut out, m * k * p, mode, |j, col| {
        for l in 0..k {
            let blj = b[(l, j)];
            if blj == ZERO {
                continue;
            }
            let a_col = &a_cols[l * m..(l + 1) * m];
            for (o, &x) in col.iter_mut().zip(a_col) {
                *o += x * blj;
            }
        }
    });
    out
}

/// Kronecker product with the left factor as the major index.
pub fn kron_with(a: &Matrix, b: &Matrix, mode: Execution) -> Matrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = Matrix::zeros(ar * br, ac * bc);
    fill_columns(&mut out, ar * br * ac * bc, mode, |j, col| {
        let (ja, jb) = (j / bc, j % bc);
        for ia in 0..ar {
            let x = a[(ia, ja)];
            if x == ZERO {
                continue;
            }
            for ib in 0..br {
                col[ia * br + ib] = x * b[(ib, jb)];
            }
        }
    });
    out
}

/// `(id_left ⊗ f ⊗ id_right) · x` without building the whiskered matrix.
pub fn apply_local_with(
    left: usize,
    f: &Matrix,
    right: usize,
    x: &Matrix,
    mode: Execution,
) -> Matrix {
    let (fr, fc) = f.shape();
    assert_eq!(x.nrows(), left * fc * right, "apply_local: row count");
    let mut out = Matrix::zeros(left * fr * right, x.ncols());
    fill_columns(
        &mut out,
        left * right * fr * fc * x.ncols(),
        mode,
        |j, col| {
            for i in 0..left {
                for c in 0..fc {
                    let base_in = (i * fc + c) * right;
                    for k in 0..right {
                        let v = x[(base_in + k, j)];
                        if v == ZERO {
                            continue;
                        }
                        for r in 0..fr {
                            col[(i * fr + r) * right + k] += f[(r, c)] * v;
                        }
                    }
                }
            }
        },
    );
    out
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    matmul_with(a, b, Execution::default())
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    kron_with(a, b, Execution::default())
}

pub fn apply_local(left: usize, f: &Matrix, right: usize, x: &Matrix) -> Matrix {
    apply_local_with(left, f, right, x, Execution::default())
}
