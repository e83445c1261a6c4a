//! Typed complex matrices: the category of finite-dimensional Hilbert spaces
//! with its dagger, duals and conjugation.
//!
//! Index convention: in a tensor product the LEFT factor is the major index,
//! so basis vector `a ⊗ b` of `A ⊗ B` sits at flat index `a * dim(B) + b`.
//! Every other module relies on this.

mod eig;
pub mod kernels;

use std::fmt;

use nalgebra::DMatrix;
pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
pub use eig::{eig_normal, hermitian_eigen, hermitian_power, operator_norm, EigenPair};

pub type Matrix = DMatrix<C64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// One tensor factor: a Hilbert space of dimension `dim`, or its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Wire {
    pub dim: usize,
    pub dual: bool,
}

impl Wire {
    pub fn new(dim: usize, dual: bool) -> Self {
        Wire { dim, dual }
    }

    pub fn flipped(self) -> Self {
        Wire {
            dim: self.dim,
            dual: !self.dual,
        }
    }
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dual {
            write!(f, "{}*", self.dim)
        } else {
            write!(f, "{}", self.dim)
        }
    }
}

/// An ordered tensor product of wires. The empty word is the tensor unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WireWord(Vec<Wire>);

impl WireWord {
    pub fn unit() -> Self {
        WireWord(Vec::new())
    }

    pub fn new(wires: Vec<Wire>) -> Self {
        WireWord(wires)
    }

    pub fn object(dim: usize) -> Self {
        WireWord(vec![Wire::new(dim, false)])
    }

    pub fn dual_object(dim: usize) -> Self {
        WireWord(vec![Wire::new(dim, true)])
    }

    pub fn wires(&self) -> &[Wire] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.0.iter().map(|w| w.dim).product()
    }

    /// `(A ⊗ B)* = B* ⊗ A*`.
    pub fn dual(&self) -> Self {
        WireWord(self.0.iter().rev().map(|w| w.flipped()).collect())
    }

    pub fn concat(&self, other: &WireWord) -> Self {
        let mut wires = self.0.clone();
        wires.extend_from_slice(&other.0);
        WireWord(wires)
    }

    /// Flat index of the reversed factor tuple: maps the index of
    /// `x1 ⊗ … ⊗ xk` in this word to the index of `xk ⊗ … ⊗ x1` in the
    /// dual word.
    pub fn reversal(&self) -> Vec<usize> {
        let dims: Vec<usize> = self.0.iter().map(|w| w.dim).collect();
        let total = self.total_dim();
        if dims.len() <= 1 {
            return (0..total).collect();
        }
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0usize; dims.len()];
        for flat in 0..total {
            let mut rest = flat;
            for (slot, &d) in digits.iter_mut().zip(&dims).rev() {
                *slot = rest % d;
                rest /= d;
            }
            let mut rev = 0;
            for (&digit, &d) in digits.iter().zip(&dims).rev() {
                rev = rev * d + digit;
            }
            out.push(rev);
        }
        out
    }
}

impl From<usize> for WireWord {
    fn from(dim: usize) -> Self {
        WireWord::object(dim)
    }
}

impl From<Vec<Wire>> for WireWord {
    fn from(wires: Vec<Wire>) -> Self {
        WireWord(wires)
    }
}

impl fmt::Display for WireWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

/// Entrywise comparison thresholds: `|x - y| <= atol + rtol * max(|x|, |y|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub atol: f64,
    pub rtol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            atol: 1e-9,
            rtol: 1e-9,
        }
    }
}

/// Result of comparing two matrices: whether every entry passed, and the
/// largest absolute entry deviation (reported even on success).
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Comparison {
    pub pass: bool,
    pub max_deviation: f64,
}

impl Comparison {
    pub fn and(self, other: Comparison) -> Comparison {
        Comparison {
            pass: self.pass && other.pass,
            max_deviation: self.max_deviation.max(other.max_deviation),
        }
    }
}

impl Tolerance {
    pub fn new(atol: f64, rtol: f64) -> Self {
        Tolerance { atol, rtol }
    }

    /// Exact comparison, for analytically exact inputs.
    pub fn strict() -> Self {
        Tolerance::new(0.0, 0.0)
    }

    pub fn entry_ok(&self, x: C64, y: C64) -> bool {
        (x - y).norm() <= self.atol + self.rtol * x.norm().max(y.norm())
    }

    pub fn compare(&self, a: &Matrix, b: &Matrix) -> Comparison {
        debug_assert_eq!(a.shape(), b.shape());
        let mut pass = true;
        let mut max_deviation = 0.0f64;
        for (x, y) in a.iter().zip(b.iter()) {
            let d = (x - y).norm();
            if d.is_nan() {
                pass = false;
                max_deviation = f64::NAN;
                continue;
            }
            max_deviation = max_deviation.max(d);
            pass &= self.entry_ok(*x, *y);
        }
        Comparison {
            pass,
            max_deviation,
        }
    }

    pub fn scalar_ok(&self, x: f64, y: f64) -> bool {
        self.entry_ok(C64::new(x, 0.0), C64::new(y, 0.0))
    }
}

/// A linear map between tensor products of wires, stored as a dense
/// `cod × dom` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    dom: WireWord,
    cod: WireWord,
    data: Matrix,
}

impl Morphism {
    pub fn new(dom: WireWord, cod: WireWord, data: Matrix) -> Result<Self> {
        if data.nrows() != cod.total_dim() || data.ncols() != dom.total_dim() {
            return Err(Error::shape(
                format!("{}x{} for {dom} -> {cod}", cod.total_dim(), dom.total_dim()),
                format!("{}x{}", data.nrows(), data.ncols()),
            ));
        }
        Ok(Morphism { dom, cod, data })
    }

    pub fn from_fn(
        dom: WireWord,
        cod: WireWord,
        f: impl FnMut(usize, usize) -> C64,
    ) -> Self {
        let data = Matrix::from_fn(cod.total_dim(), dom.total_dim(), f);
        Morphism { dom, cod, data }
    }

    pub fn identity(word: impl Into<WireWord>) -> Self {
        let word = word.into();
        let n = word.total_dim();
        Morphism {
            dom: word.clone(),
            cod: word,
            data: Matrix::identity(n, n),
        }
    }

    pub fn zero(dom: WireWord, cod: WireWord) -> Self {
        let data = Matrix::zeros(cod.total_dim(), dom.total_dim());
        Morphism { dom, cod, data }
    }

    pub fn scalar(value: C64) -> Self {
        Morphism {
            dom: WireWord::unit(),
            cod: WireWord::unit(),
            data: Matrix::from_element(1, 1, value),
        }
    }

    /// A state `I → word` with the given coordinates.
    pub fn state(word: impl Into<WireWord>, coords: &[C64]) -> Result<Self> {
        let word = word.into();
        let data = Matrix::from_column_slice(coords.len(), 1, coords);
        Morphism::new(WireWord::unit(), word, data)
    }

    /// Standard basis state `e_index` of `word`.
    pub fn basis_state(word: impl Into<WireWord>, index: usize) -> Self {
        let word = word.into();
        let n = word.total_dim();
        let mut data = Matrix::zeros(n, 1);
        data[(index, 0)] = ONE;
        Morphism {
            dom: WireWord::unit(),
            cod: word,
            data,
        }
    }

    pub fn dom(&self) -> &WireWord {
        &self.dom
    }

    pub fn cod(&self) -> &WireWord {
        &self.cod
    }

    pub fn data(&self) -> &Matrix {
        &self.data
    }

    pub fn into_data(self) -> Matrix {
        self.data
    }

    pub fn is_square(&self) -> bool {
        self.dom == self.cod
    }

    /// Coordinates of a state (first column).
    pub fn coords(&self) -> Vec<C64> {
        self.data.column(0).iter().copied().collect()
    }

    /// The single entry of a scalar `I → I`.
    pub fn scalar_value(&self) -> Option<C64> {
        (self.data.shape() == (1, 1)).then(|| self.data[(0, 0)])
    }

    /// Same matrix with new (dimension-compatible) wire words.
    pub fn relabel(&self, dom: WireWord, cod: WireWord) -> Result<Self> {
        Morphism::new(dom, cod, self.data.clone())
    }

    /// Category composition `g ∘ f` (apply `f` first).
    pub fn compose(g: &Morphism, f: &Morphism) -> Result<Self> {
        if f.cod != g.dom {
            return Err(Error::shape(&g.dom, &f.cod));
        }
        Ok(Morphism {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            data: kernels::matmul(&g.data, &f.data),
        })
    }

    /// Data-flow composition: `self` first, then `next`.
    pub fn then(&self, next: &Morphism) -> Result<Self> {
        Morphism::compose(next, self)
    }

    pub fn tensor(&self, other: &Morphism) -> Self {
        Morphism {
            dom: self.dom.concat(&other.dom),
            cod: self.cod.concat(&other.cod),
            data: kernels::kron(&self.data, &other.data),
        }
    }

    /// `(id_left ⊗ self ⊗ id_right) ∘ x` without materializing the
    /// whiskered matrix.
    pub fn apply_whiskered(
        &self,
        left: &WireWord,
        right: &WireWord,
        x: &Morphism,
    ) -> Result<Self> {
        let expected = left.concat(&self.dom).concat(right);
        if x.cod != expected {
            return Err(Error::shape(&expected, &x.cod));
        }
        let data = kernels::apply_local(
            left.total_dim(),
            &self.data,
            right.total_dim(),
            &x.data,
        );
        Ok(Morphism {
            dom: x.dom.clone(),
            cod: left.concat(&self.cod).concat(right),
            data,
        })
    }

    /// Conjugate transpose, domain and codomain swapped.
    pub fn dagger(&self) -> Self {
        Morphism {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            data: self.data.adjoint(),
        }
    }

    /// The conjugation functor `f_* : A* → B*`. On single wires this is the
    /// entrywise conjugate; on longer words the factor order reverses
    /// along with the object.
    pub fn conjugate(&self) -> Self {
        let rows = self.cod.reversal();
        let cols = self.dom.reversal();
        let mut data = Matrix::zeros(self.data.nrows(), self.data.ncols());
        for c in 0..self.data.ncols() {
            for r in 0..self.data.nrows() {
                data[(rows[r], cols[c])] = self.data[(r, c)].conj();
            }
        }
        Morphism {
            dom: self.dom.dual(),
            cod: self.cod.dual(),
            data,
        }
    }

    /// The duality functor `f* : B* → A*` (transpose, with factor order
    /// reversed on both sides).
    pub fn dual(&self) -> Self {
        let rows = self.cod.reversal();
        let cols = self.dom.reversal();
        let mut data = Matrix::zeros(self.data.ncols(), self.data.nrows());
        for c in 0..self.data.ncols() {
            for r in 0..self.data.nrows() {
                data[(cols[c], rows[r])] = self.data[(r, c)];
            }
        }
        Morphism {
            dom: self.cod.dual(),
            cod: self.dom.dual(),
            data,
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Morphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            data: &self.data * factor,
        }
    }

    pub fn add(&self, other: &Morphism) -> Result<Self> {
        self.same_signature(other)?;
        Ok(Morphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            data: &self.data + &other.data,
        })
    }

    pub fn sub(&self, other: &Morphism) -> Result<Self> {
        self.same_signature(other)?;
        Ok(Morphism {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            data: &self.data - &other.data,
        })
    }

    fn same_signature(&self, other: &Morphism) -> Result<()> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::shape(
                format!("{} -> {}", self.dom, self.cod),
                format!("{} -> {}", other.dom, other.cod),
            ));
        }
        Ok(())
    }

    /// Entrywise comparison. Wire words must agree exactly.
    pub fn compare(&self, other: &Morphism, tol: Tolerance) -> Result<Comparison> {
        self.same_signature(other)?;
        Ok(tol.compare(&self.data, &other.data))
    }

    /// Like [`Morphism::compare`] but only requires equal matrix shapes.
    pub fn compare_data(&self, other: &Morphism, tol: Tolerance) -> Result<Comparison> {
        if self.data.shape() != other.data.shape() {
            return Err(Error::shape(
                format!("{:?}", self.data.shape()),
                format!("{:?}", other.data.shape()),
            ));
        }
        Ok(tol.compare(&self.data, &other.data))
    }

    pub fn max_abs_diff(&self, other: &Morphism) -> f64 {
        (&self.data - &other.data)
            .iter()
            .fold(0.0, |acc, z| acc.max(z.norm()))
    }

    /// The cup `ε : I → w* ⊗ w`, `Σ_x e_rev(x) ⊗ e_x`.
    pub fn cup(word: impl Into<WireWord>) -> Self {
        let word = word.into();
        let n = word.total_dim();
        let rev = word.reversal();
        let mut data = Matrix::zeros(n * n, 1);
        for (x, &rx) in rev.iter().enumerate() {
            data[(rx * n + x, 0)] = ONE;
        }
        Morphism {
            dom: WireWord::unit(),
            cod: word.dual().concat(&word),
            data,
        }
    }

    /// The cap `η : w ⊗ w* → I`.
    pub fn cap(word: impl Into<WireWord>) -> Self {
        let word = word.into();
        let n = word.total_dim();
        let rev = word.reversal();
        let mut data = Matrix::zeros(1, n * n);
        for (x, &rx) in rev.iter().enumerate() {
            data[(0, x * n + rx)] = ONE;
        }
        Morphism {
            dom: word.concat(&word.dual()),
            cod: WireWord::unit(),
            data,
        }
    }

    /// Braiding `a ⊗ b → b ⊗ a`.
    pub fn swap(a: impl Into<WireWord>, b: impl Into<WireWord>) -> Self {
        let (a, b) = (a.into(), b.into());
        let (na, nb) = (a.total_dim(), b.total_dim());
        let mut data = Matrix::zeros(na * nb, na * nb);
        for i in 0..na {
            for j in 0..nb {
                data[(j * na + i, i * nb + j)] = ONE;
            }
        }
        Morphism {
            dom: a.concat(&b),
            cod: b.concat(&a),
            data,
        }
    }

    /// `f f† = f† f` within tolerance.
    pub fn normality(&self, tol: Tolerance) -> Comparison {
        let ffd = kernels::matmul(&self.data, &self.data.adjoint());
        let fdf = kernels::matmul(&self.data.adjoint(), &self.data);
        tol.compare(&ffd, &fdf)
    }
}

/// `g ∘ f`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    Morphism::compose(g, f)
}

pub fn tensor(f: &Morphism, g: &Morphism) -> Morphism {
    f.tensor(g)
}

/// Compose a data-flow chain `fs[0]` first, then `fs[1]`, ….
pub fn chain(fs: &[&Morphism]) -> Result<Morphism> {
    let (first, rest) = fs
        .split_first()
        .ok_or_else(|| Error::Format("empty composition chain".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, f| acc.then(f))
}
