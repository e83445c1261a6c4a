//! Named identity families, written in the expression language over the
//! generators `m` and `u` of a monoid on a fixed object.

use super::ast::{word_text, Expr};
use super::{check_equal, parse, Env};
use crate::error::Result;
use crate::frobenius::Monoid;
use crate::linalg::{Comparison, Tolerance, WireWord, C64};

pub const FAMILIES: [&str; 5] = ["triangle", "frobenius", "unit", "invprop", "dimension"];

#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub family: &'static str,
    pub lhs: Expr,
    pub rhs: Expr,
}

/// Every equation of the five families, instantiated on `object`.
pub fn named_identities(object: &WireWord) -> Vec<Identity> {
    let a = word_text(object);
    let ad = word_text(&object.dual());
    let cup_f = "(u ; dag(m))";
    let cap_f = "(m ; dag(u))";
    let s_l = format!("((id[{a}] * cup[{ad}]) ; ({cap_f} * id[{ad}]))");
    let s_r = format!("((cup[{a}] * id[{a}]) ; (id[{ad}] * {cap_f}))");
    let id_a = format!("id[{a}]");
    let table: Vec<(&'static str, String, String)> = vec![
        ("triangle", format!("(id[{a}] * cup[{a}]) ; (cap[{a}] * id[{a}])"), id_a.clone()),
        ("triangle", format!("(cup[{a}] * id[{ad}]) ; (id[{ad}] * cap[{a}])"), format!("id[{ad}]")),
        ("triangle", format!("(id[{a}] * {cup_f}) ; ({cap_f} * id[{a}])"), id_a.clone()),
        ("triangle", format!("({cup_f} * id[{a}]) ; (id[{a}] * {cap_f})"), id_a.clone()),
        ("frobenius", format!("(dag(m) * id[{a}]) ; (id[{a}] * m)"), "m ; dag(m)".into()),
        ("frobenius", format!("(id[{a}] * dag(m)) ; (m * id[{a}])"), "m ; dag(m)".into()),
        ("unit", format!("(u * id[{a}]) ; m"), id_a.clone()),
        ("unit", format!("(id[{a}] * u) ; m"), id_a.clone()),
        ("invprop", format!("dual({s_l})"), s_r.clone()),
        ("invprop", format!("dual({s_r})"), s_l.clone()),
        ("invprop", format!("{s_l} ; conj({s_l})"), id_a.clone()),
        ("invprop", format!("{s_r} ; conj({s_r})"), id_a.clone()),
        ("invprop", format!("{s_l} ; dag({s_r})"), id_a.clone()),
        ("invprop", format!("{s_r} ; dag({s_l})"), id_a.clone()),
        ("dimension", "u ; dag(m) ; m ; dag(u)".into(), format!("cup[{a}] ; dag(cup[{a}])")),
    ];
    table
        .into_iter()
        .map(|(family, lhs, rhs)| Identity {
            family,
            lhs: parse(&lhs).expect("identity text parses"),
            rhs: parse(&rhs).expect("identity text parses"),
        })
        .collect()
}

pub fn monoid_env(monoid: &Monoid) -> Env {
    let mut env = Env::new();
    env.insert("m".into(), monoid.m().clone());
    env.insert("u".into(), monoid.u().clone());
    env
}

/// Checks one family on a monoid, combining all of its equations.
pub fn check_family(monoid: &Monoid, family: &str, tol: Tolerance) -> Result<Comparison> {
    let env = monoid_env(monoid);
    let mut total = Comparison { pass: true, max_deviation: 0.0 };
    for id in named_identities(monoid.object()).iter().filter(|i| i.family == family) {
        total = total.and(check_equal(&id.lhs, &id.rhs, &env, tol)?);
    }
    Ok(total)
}

/// Adds `eps` to the coefficient of `e₀` in `e₀·e₁` (the only entry when
/// the object is one-dimensional).
pub fn perturb_m(monoid: &Monoid, eps: f64) -> Result<Monoid> {
    let mut data = monoid.m().data().clone();
    let col = if monoid.dim() >= 2 { 1 } else { 0 };
    data[(0, col)] += C64::new(eps, 0.0);
    monoid.with_m_data(data)
}
