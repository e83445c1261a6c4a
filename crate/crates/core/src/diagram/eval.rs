use super::ast::Expr;
use super::Env;
use crate::error::{Error, Result};
use crate::linalg::{Comparison, Morphism, Tolerance, WireWord, C64};

/// Domain and codomain of a well-typed expression.
pub fn typecheck(e: &Expr, env: &Env) -> Result<(WireWord, WireWord)> {
    Ok(match e {
        Expr::Gen(name) => {
            let f = env.get(name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            (f.dom().clone(), f.cod().clone())
        }
        Expr::Id(w) => (w.clone(), w.clone()),
        Expr::Cup(w) => (WireWord::unit(), w.dual().concat(w)),
        Expr::Cap(w) => (w.concat(&w.dual()), WireWord::unit()),
        Expr::Swap(a, b) => (a.concat(b), b.concat(a)),
        Expr::Scalar { .. } => (WireWord::unit(), WireWord::unit()),
        Expr::Compose(f, g) => {
            let (fd, fc) = typecheck(f, env)?;
            let (gd, gc) = typecheck(g, env)?;
            if fc != gd {
                return Err(Error::TypeMismatch { left: fc, right: gd });
            }
            (fd, gc)
        }
        Expr::Tensor(f, g) => {
            let (fd, fc) = typecheck(f, env)?;
            let (gd, gc) = typecheck(g, env)?;
            (fd.concat(&gd), fc.concat(&gc))
        }
        Expr::Dag(f) => {
            let (d, c) = typecheck(f, env)?;
            (c, d)
        }
        Expr::Conj(f) => {
            let (d, c) = typecheck(f, env)?;
            (d.dual(), c.dual())
        }
        Expr::Dual(f) => {
            let (d, c) = typecheck(f, env)?;
            (c.dual(), d.dual())
        }
    })
}

/// The concrete composite. Type errors are reported before any matrix
/// arithmetic happens.
pub fn evaluate(e: &Expr, env: &Env) -> Result<Morphism> {
    typecheck(e, env)?;
    eval_typed(e, env)
}

fn eval_typed(e: &Expr, env: &Env) -> Result<Morphism> {
    Ok(match e {
        Expr::Gen(name) => env[name].clone(),
        Expr::Id(w) => Morphism::identity(w.clone()),
        Expr::Cup(w) => Morphism::cup(w.clone()),
        Expr::Cap(w) => Morphism::cap(w.clone()),
        Expr::Swap(a, b) => Morphism::swap(a.clone(), b.clone()),
        Expr::Scalar { value, imaginary } => Morphism::scalar(if *imaginary {
            C64::new(0.0, *value)
        } else {
            C64::new(*value, 0.0)
        }),
        Expr::Compose(f, g) => Morphism::compose(&eval_typed(g, env)?, &eval_typed(f, env)?)?,
        Expr::Tensor(f, g) => eval_typed(f, env)?.tensor(&eval_typed(g, env)?),
        Expr::Dag(f) => eval_typed(f, env)?.dagger(),
        Expr::Conj(f) => eval_typed(f, env)?.conjugate(),
        Expr::Dual(f) => eval_typed(f, env)?.dual(),
    })
}

/// Entrywise comparison of two expressions with identical signatures.
pub fn check_equal(lhs: &Expr, rhs: &Expr, env: &Env, tol: Tolerance) -> Result<Comparison> {
    let (ld, lc) = typecheck(lhs, env)?;
    let (rd, rc) = typecheck(rhs, env)?;
    if ld != rd || lc != rc {
        return Err(Error::SignatureMismatch {
            lhs: format!("{ld} -> {lc}"),
            rhs: format!("{rd} -> {rc}"),
        });
    }
    eval_typed(lhs, env)?.compare(&eval_typed(rhs, env)?, tol)
}
