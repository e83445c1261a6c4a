//! A small language for morphism expressions: parse, type-check, evaluate
//! and compare.

use std::collections::BTreeMap;

use crate::linalg::Morphism;

mod ast;
mod eval;
pub mod identities;
mod parser;

pub use ast::Expr;
pub use eval::{check_equal, evaluate, typecheck};
pub use parser::parse;

/// Generator bindings by name.
pub type Env = BTreeMap<String, Morphism>;
