use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quantalg::cstar::{realize, realize_with_transform, regular_trace_gram, rescale, wedderburn};
use quantalg::diagram::identities::{named_identities, FAMILIES};
use quantalg::diagram::{check_equal, evaluate, parse};
use quantalg::endo::{cstar_norm, embed, embed_report, retraction};
use quantalg::frobenius::{classify, right_involution, Monoid};
use quantalg::groupoid::{extract_gset, linearize_gset};
use quantalg::involution::InvolutionMonoid;
use quantalg::io;
use quantalg::spectral::{free, free_map, internal_diagonalize, spectrum, FinSetMap};
use quantalg::{Error, Morphism, Tolerance};

const SCHEMAS: &str = "\
JSON formats (complex numbers are [re, im]; matrices are lists of rows):
  morphism   {\"dom\": [wire], \"cod\": [wire], \"data\": rows}
             wire = {\"dim\": n, \"dual\": bool}
  monoid     {\"dim\": n, \"m\": n x n^2 rows, \"u\": [complex; n], \"s\"?: n x n rows,
              \"object\"?: [wire]}   column i*n+j of m is the product e_i e_j
  algebra    {\"dim\": n, \"mult\": c[i][j][k], \"unit\": [complex; n], \"star\": {\"S\": rows}}
             e_i e_j = sum_k c[i][j][k] e_k; star(v) = S conj(v)
  env        a monoid document (binds m, u, s) or {name: morphism}
  groupoid   {\"objects\": [name], \"morphisms\": [{\"id\", \"src\", \"tgt\"}],
              \"compose\": [[g, h, g∘h]], \"inverses\": [[g, g⁻¹]]}
  rep        {\"dims\": {object: n}, \"maps\": {arrow: rows}}
  structure  {\"monoids\": {object: monoid}}
  gset       {\"sizes\": {object: n}, \"actions\": {arrow: [image of each point]}}

Exit status: 0 property holds / computation succeeded, 1 property fails,
2 malformed input or usage error.";

#[derive(Parser)]
#[command(name = "quantalg", version, about = "Finite-dimensional quantum algebras as complex matrices")]
#[command(after_long_help = SCHEMAS)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Absolute tolerance for entrywise comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    atol: f64,
    /// Relative tolerance for entrywise comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    rtol: f64,
    /// Seed for randomized steps (center splitting).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Associative,
    Unital,
    Frobenius,
    Special,
    Commutative,
    BalancedSymmetric,
    Unitary,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the seven structural predicates of a monoid.
    Check {
        monoid: PathBuf,
        /// Properties that must hold for exit status 0 (default: the
        /// dagger-Frobenius ones).
        #[arg(long, value_enum, value_delimiter = ',')]
        require: Vec<Property>,
    },
    /// Copyable points and characters of a commutative dagger-Frobenius monoid.
    Spectrum { monoid: PathBuf },
    /// Classical structure diagonalizing a normal operator.
    Diagonalize {
        /// Square morphism document.
        #[arg(long, alias = "morphism")]
        matrix: PathBuf,
    },
    /// Regular trace form of a *-algebra.
    Gram { algebra: PathBuf },
    /// Special unitary dagger-Frobenius involution monoid of a C*-algebra.
    Realize { algebra: PathBuf },
    /// Central idempotents and block sizes (input: algebra or involution monoid).
    Decompose { input: PathBuf },
    /// Embedding of a dagger-Frobenius monoid into its endomorphism monoid.
    Embed { monoid: PathBuf },
    /// C*-norm of an element (involution defaults to the right involution).
    Norm {
        monoid: PathBuf,
        /// State `I → A` as a morphism document.
        #[arg(long, alias = "element")]
        state: PathBuf,
    },
    /// Evaluate a morphism expression.
    Eval {
        #[arg(long)]
        env: Option<PathBuf>,
        #[arg(long)]
        expr: String,
    },
    /// Check an equation, or a named identity family, numerically.
    Prove {
        #[arg(long)]
        env: PathBuf,
        #[arg(long, requires = "rhs", conflicts_with = "family")]
        lhs: Option<String>,
        #[arg(long, requires = "lhs")]
        rhs: Option<String>,
        /// triangle, frobenius, unit, invprop, dimension or all.
        #[arg(long)]
        family: Option<String>,
    },
    /// Basis-copying monoid on ℂⁿ, or the homomorphism a function induces.
    Free {
        #[arg(long = "size")]
        n: usize,
        /// Function table `f(0),f(1),...` from a set of size n.
        #[arg(long, value_delimiter = ',', requires = "target")]
        map: Option<Vec<usize>>,
        #[arg(long)]
        target: Option<usize>,
    },
    /// Extract a G-set from an equivariant classical structure, or linearize one.
    Gset {
        #[arg(long)]
        groupoid: PathBuf,
        #[arg(requires = "structure", conflicts_with = "linearize")]
        rep: Option<PathBuf>,
        #[arg(requires = "rep")]
        structure: Option<PathBuf>,
        #[arg(long)]
        linearize: Option<PathBuf>,
    },
    /// Monoid in coordinates for the inner product scaled by alpha.
    Rescale {
        monoid: PathBuf,
        #[arg(long)]
        alpha: f64,
    },
}

/// A JSON result and whether the checked property held.
struct Outcome {
    value: Value,
    holds: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, holds: true }
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_monoid(path: &Path) -> anyhow::Result<(Monoid, Option<Morphism>)> {
    Ok(io::monoid_from_json(&read_json(path)?)?)
}

fn with_right_involution(monoid: Monoid, s: Option<Morphism>) -> quantalg::Result<InvolutionMonoid> {
    let s = match s {
        Some(s) => s,
        None => right_involution(&monoid)?,
    };
    InvolutionMonoid::new(monoid, s)
}

fn comparison(c: quantalg::Comparison) -> Value {
    json!({ "pass": c.pass, "max_deviation": finite(c.max_deviation) })
}

/// JSON has no infinity; failed evaluations report `null`.
fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let opts = &cli.opts;
    let tol = Tolerance::new(opts.atol, opts.rtol);
    Ok(match &cli.command {
        Command::Check { monoid, require } => {
            let (monoid, _) = read_monoid(monoid)?;
            let report = classify(&monoid, tol);
            let flags = report.flags();
            let required: Vec<Property> = if require.is_empty() {
                vec![Property::Associative, Property::Unital, Property::Frobenius]
            } else {
                require.clone()
            };
            let holds = required.iter().all(|&p| flags[p as usize]);
            Outcome {
                value: serde_json::to_value(report)?,
                holds,
            }
        }
        Command::Spectrum { monoid } => {
            let (monoid, _) = read_monoid(monoid)?;
            let spec = spectrum(&monoid, tol, opts.seed)?;
            Outcome::ok(json!({
                "points": spec.points.iter().map(coords).collect::<Vec<_>>(),
                "characters": spec.characters.iter().map(coords).collect::<Vec<_>>(),
            }))
        }
        Command::Diagonalize { matrix } => {
            let f = io::morphism_from_json(&read_json(matrix)?)?;
            let d = internal_diagonalize(&f, tol)?;
            Outcome::ok(json!({
                "monoid": io::monoid_to_json(&d.monoid),
                "phi": io::morphism_to_json(&d.phi),
                "eigenvalues": d.eigenpairs.iter().map(|p| [p.value.re, p.value.im]).collect::<Vec<_>>(),
            }))
        }
        Command::Gram { algebra } => {
            let a = io::star_algebra_from_json(&read_json(algebra)?)?;
            let g = regular_trace_gram(&a, tol)?;
            let n = a.dim();
            let rows: Vec<Vec<[f64; 2]>> = (0..n)
                .map(|i| (0..n).map(|j| [g[(i, j)].re, g[(i, j)].im]).collect())
                .collect();
            Outcome::ok(json!({ "gram": rows }))
        }
        Command::Realize { algebra } => {
            let a = io::star_algebra_from_json(&read_json(algebra)?)?;
            let r = realize_with_transform(&a, tol)?;
            Outcome::ok(io::involution_monoid_to_json(&r.monoid))
        }
        Command::Decompose { input } => {
            let value = read_json(input)?;
            let im = if value.get("mult").is_some() {
                realize(&io::star_algebra_from_json(&value)?, tol)?
            } else {
                let (m, s) = io::monoid_from_json(&value)?;
                with_right_involution(m, s)?
            };
            let w = wedderburn(&im, tol, opts.seed)?;
            Outcome::ok(json!({
                "block_dims": w.block_dims,
                "idempotents": w.idempotents.iter().map(coords).collect::<Vec<_>>(),
            }))
        }
        Command::Embed { monoid } => {
            let (monoid, s) = read_monoid(monoid)?;
            quantalg::frobenius::require_frobenius(&monoid, tol)?;
            let im = with_right_involution(monoid, s)?;
            let h = embed(&im.monoid)?;
            let back = Morphism::compose(&retraction(&im.monoid), &h)?;
            let monic = back.max_abs_diff(&Morphism::identity(im.monoid.object().clone()));
            let report = embed_report(&im, tol)?;
            Outcome {
                holds: report.pass() && monic <= tol.atol,
                value: json!({
                    "embedding": io::morphism_to_json(&h),
                    "retraction_deviation": monic,
                    "report": serde_json::to_value(report)?,
                }),
            }
        }
        Command::Norm { monoid, state } => {
            let (monoid, s) = read_monoid(monoid)?;
            let im = with_right_involution(monoid, s)?;
            let alpha = io::morphism_from_json(&read_json(state)?)?;
            Outcome::ok(json!({ "norm": cstar_norm(&im, &alpha, tol)? }))
        }
        Command::Eval { env, expr } => {
            let env = match env {
                Some(path) => io::env_from_json(&read_json(path)?)?,
                None => Default::default(),
            };
            let f = evaluate(&parse(expr)?, &env)?;
            Outcome::ok(io::morphism_to_json(&f))
        }
        Command::Prove { env, lhs, rhs, family } => {
            let value = read_json(env)?;
            match (lhs, rhs, family) {
                (Some(lhs), Some(rhs), None) => {
                    let env = io::env_from_json(&value)?;
                    let c = check_equal(&parse(lhs)?, &parse(rhs)?, &env, tol)?;
                    Outcome {
                        value: comparison(c),
                        holds: c.pass,
                    }
                }
                (None, None, Some(family)) => prove_family(&value, family, tol)?,
                _ => bail!("prove needs either --lhs and --rhs, or --family"),
            }
        }
        Command::Free { n, map, target } => match (map, target) {
            (Some(table), Some(target)) => {
                let f = FinSetMap::new(*n, *target, table.clone())?;
                Outcome::ok(io::morphism_to_json(&free_map(&f)))
            }
            _ => Outcome::ok(io::monoid_to_json(&free(*n))),
        },
        Command::Gset {
            groupoid,
            rep,
            structure,
            linearize,
        } => {
            let g = io::groupoid_from_json(&read_json(groupoid)?)?;
            match (rep, structure, linearize) {
                (Some(rep), Some(structure), None) => {
                    let rep = io::rep_from_json(&g, &read_json(rep)?)?;
                    let cs = io::classical_structure_from_json(&g, &read_json(structure)?)?;
                    let x = extract_gset(&g, &rep, &cs, tol, opts.seed)?;
                    Outcome::ok(io::gset_to_json(&g, &x))
                }
                (None, None, Some(path)) => {
                    let x = io::gset_from_json(&g, &read_json(path)?)?;
                    let (rep, cs) = linearize_gset(&g, &x)?;
                    Outcome::ok(json!({
                        "rep": io::rep_to_json(&g, &rep),
                        "structure": io::classical_structure_to_json(&g, &cs),
                    }))
                }
                _ => bail!("gset needs either REP and STRUCTURE, or --linearize"),
            }
        }
        Command::Rescale { monoid, alpha } => {
            let (monoid, _) = read_monoid(monoid)?;
            Outcome::ok(io::monoid_to_json(&rescale(&monoid, *alpha)?))
        }
    })
}

fn coords(f: &Morphism) -> Vec<[f64; 2]> {
    f.coords().into_iter().map(|z| [z.re, z.im]).collect()
}

fn prove_family(env: &Value, family: &str, tol: Tolerance) -> anyhow::Result<Outcome> {
    if family != "all" && !FAMILIES.contains(&family) {
        bail!("unknown identity family `{family}` (expected one of {FAMILIES:?} or all)");
    }
    let (monoid, _) = io::monoid_from_json(env)?;
    let env = quantalg::diagram::identities::monoid_env(&monoid);
    let mut holds = true;
    let mut results = Vec::new();
    for id in named_identities(monoid.object())
        .into_iter()
        .filter(|i| family == "all" || i.family == family)
    {
        let c = check_equal(&id.lhs, &id.rhs, &env, tol)?;
        holds &= c.pass;
        results.push(json!({
            "family": id.family,
            "lhs": id.lhs.to_string(),
            "rhs": id.rhs.to_string(),
            "pass": c.pass,
            "max_deviation": finite(c.max_deviation),
        }));
    }
    Ok(Outcome {
        value: json!({ "pass": holds, "equations": results }),
        holds,
    })
}

/// 1 when a mathematical property of well-formed input fails, 2 for
/// malformed input.
fn exit_status(err: &Error) -> u8 {
    match err {
        Error::NotNormal { .. }
        | Error::NotFrobenius(_)
        | Error::NotCommutative { .. }
        | Error::InvalidInvolution(_)
        | Error::InvalidAlgebra(_)
        | Error::NotCStar { .. }
        | Error::DegenerateSplit { .. }
        | Error::NotHomomorphism(_)
        | Error::NotPermutation(_) => 1,
        _ => 2,
    }
}

fn error_json(err: &Error) -> Value {
    let kind = format!("{err:?}");
    let kind = kind.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
    let mut value = json!({ "error": kind, "message": err.to_string() });
    match err {
        Error::NotCStar {
            min_eigenvalue,
            max_eigenvalue,
        } => {
            value["min_eigenvalue"] = json!(min_eigenvalue);
            value["max_eigenvalue"] = json!(max_eigenvalue);
        }
        Error::NotNormal { deviation } | Error::NotCommutative { deviation } => {
            value["deviation"] = json!(deviation);
        }
        Error::Syntax { offset, .. } => value["offset"] = json!(offset),
        _ => {}
    }
    value
}

fn emit(value: &Value, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out = cli.opts.out.as_deref();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome.value, out) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.holds { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(err) => {
                    let code = exit_status(err);
                    if code == 1 {
                        let _ = emit(&error_json(err), out);
                    }
                    ExitCode::from(code)
                }
                None => ExitCode::from(2),
            }
        }
    }
}
