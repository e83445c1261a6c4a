//! Finite-dimensional quantum algebras as concrete complex-matrix
//! structures: dagger-Frobenius monoids, involution monoids, the
//! C*-algebra correspondence, classical structures and their spectra, and
//! equivariant classical structures over finite groupoids.
//!
//! Morphisms live in [`linalg`]; every graphical identity can be written in
//! the expression language of [`diagram`] and checked numerically.

pub mod cstar;
pub mod diagram;
pub mod endo;
pub mod error;
pub mod families;
pub mod frobenius;
pub mod groupoid;
pub mod involution;
pub mod io;
pub mod linalg;
pub mod spectral;
pub mod sweep;

pub use error::{Error, Result};
pub use frobenius::{Monoid, PropertyReport};
pub use involution::InvolutionMonoid;
pub use linalg::{Comparison, Matrix, Morphism, Tolerance, Wire, WireWord, C64};

/// How data-parallel work is scheduled.
///
/// `Parallel` uses the rayon pool when the crate is built with the
/// `parallel` feature (the default) and falls back to in-order execution
/// otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}
