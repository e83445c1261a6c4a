use std::fmt;

use crate::linalg::{Wire, WireWord};

/// A morphism expression. `Compose(f, g)` is written `f ; g` and means
/// `g ∘ f` (data flows left to right).
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(String),
    Id(WireWord),
    Cup(WireWord),
    Cap(WireWord),
    Swap(WireWord, WireWord),
    /// `value` or `value·i`.
    Scalar { value: f64, imaginary: bool },
    Compose(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Dag(Box<Expr>),
    Conj(Box<Expr>),
    Dual(Box<Expr>),
}

impl Expr {
    pub fn gen(name: &str) -> Expr {
        Expr::Gen(name.to_string())
    }

    pub fn then(self, next: Expr) -> Expr {
        Expr::Compose(Box::new(self), Box::new(next))
    }

    pub fn tensor(self, other: Expr) -> Expr {
        Expr::Tensor(Box::new(self), Box::new(other))
    }

    pub fn dag(self) -> Expr {
        Expr::Dag(Box::new(self))
    }

    pub fn conj(self) -> Expr {
        Expr::Conj(Box::new(self))
    }

    pub fn dual(self) -> Expr {
        Expr::Dual(Box::new(self))
    }

    /// Nesting depth; leaves have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Expr::Compose(a, b) | Expr::Tensor(a, b) => 1 + a.depth().max(b.depth()),
            Expr::Dag(e) | Expr::Conj(e) | Expr::Dual(e) => 1 + e.depth(),
            _ => 1,
        }
    }
}

pub(crate) fn word_text(word: &WireWord) -> String {
    word.wires().iter().map(Wire::to_string).collect::<Vec<_>>().join(",")
}

fn group_text(word: &WireWord) -> String {
    if word.len() == 1 {
        word_text(word)
    } else {
        format!("({})", word_text(word))
    }
}

const SEQ: u8 = 0;
const PAR: u8 = 1;
const ATOM: u8 = 2;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Compose(..) => SEQ,
        Expr::Tensor(..) => PAR,
        _ => ATOM,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        write!(f, "(")?;
        write_at(f, e, SEQ)?;
        return write!(f, ")");
    }
    match e {
        Expr::Gen(name) => write!(f, "{name}"),
        Expr::Id(w) => write!(f, "id[{}]", word_text(w)),
        Expr::Cup(w) => write!(f, "cup[{}]", word_text(w)),
        Expr::Cap(w) => write!(f, "cap[{}]", word_text(w)),
        Expr::Swap(a, b) => write!(f, "swap[{},{}]", group_text(a), group_text(b)),
        Expr::Scalar { value, imaginary } => {
            write!(f, "{value}")?;
            if *imaginary {
                write!(f, "i")?;
            }
            Ok(())
        }
        Expr::Compose(a, b) => {
            write_at(f, a, SEQ)?;
            write!(f, " ; ")?;
            write_at(f, b, PAR)
        }
        Expr::Tensor(a, b) => {
            write_at(f, a, PAR)?;
            write!(f, " * ")?;
            write_at(f, b, ATOM)
        }
        Expr::Dag(e) => {
            write!(f, "dag(")?;
            write_at(f, e, SEQ)?;
            write!(f, ")")
        }
        Expr::Conj(e) => {
            write!(f, "conj(")?;
            write_at(f, e, SEQ)?;
            write!(f, ")")
        }
        Expr::Dual(e) => {
            write!(f, "dual(")?;
            write_at(f, e, SEQ)?;
            write!(f, ")")
        }
    }
}

/// Prints with the fewest parentheses the parser needs to rebuild the
/// same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, SEQ)
    }
}
