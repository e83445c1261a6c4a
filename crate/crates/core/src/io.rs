//! JSON encodings. Complex numbers are `[re, im]` pairs; matrices are
//! row-major lists of rows. Floats are written in shortest round-trip form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cstar::StarAlgebra;
use crate::diagram::Env;
use crate::error::{Error, Result};
use crate::frobenius::Monoid;
use crate::groupoid::{Arrow, EquivariantClassicalStructure, GSet, Groupoid, UnitaryRep};
use crate::involution::{AntilinearInvolution, InvolutionMonoid};
use crate::linalg::{Matrix, Morphism, Wire, WireWord, C64};

type Pair = [f64; 2];
type Rows = Vec<Vec<Pair>>;

fn pair(z: C64) -> Pair {
    [z.re, z.im]
}

fn complex(p: Pair) -> C64 {
    C64::new(p[0], p[1])
}

fn rows(m: &Matrix) -> Rows {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| pair(m[(r, c)])).collect())
        .collect()
}

fn matrix(rows: &Rows, expected_cols: Option<usize>) -> Result<Matrix> {
    let r = rows.len();
    let c = expected_cols.unwrap_or_else(|| rows.first().map_or(0, |row| row.len()));
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::Format("ragged matrix rows".into()));
    }
    Ok(Matrix::from_fn(r, c, |i, j| complex(rows[i][j])))
}

fn column(entries: &[Pair]) -> Vec<C64> {
    entries.iter().copied().map(complex).collect()
}

fn parse<T: for<'de> Deserialize<'de>>(value: &Value, what: &str) -> Result<T> {
    T::deserialize(value).map_err(|e| Error::Format(format!("{what}: {e}")))
}

fn encode<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("plain data serializes")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismJson {
    dom: Vec<Wire>,
    cod: Vec<Wire>,
    data: Rows,
}

pub fn morphism_to_json(f: &Morphism) -> Value {
    encode(&MorphismJson {
        dom: f.dom().wires().to_vec(),
        cod: f.cod().wires().to_vec(),
        data: rows(f.data()),
    })
}

pub fn morphism_from_json(value: &Value) -> Result<Morphism> {
    let raw: MorphismJson = parse(value, "morphism")?;
    let dom = WireWord::new(raw.dom);
    let cod = WireWord::new(raw.cod);
    let data = matrix(&raw.data, Some(dom.total_dim()))?;
    Morphism::new(dom, cod, data)
}

#[derive(Serialize, Deserialize)]
struct MonoidJson {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    object: Option<Vec<Wire>>,
    m: Rows,
    u: Vec<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<Rows>,
}

fn monoid_json(m: &Monoid, s: Option<&Morphism>) -> Value {
    let object = m.object();
    let plain = object.len() == 1 && !object.wires()[0].dual;
    encode(&MonoidJson {
        dim: m.dim(),
        object: (!plain).then(|| object.wires().to_vec()),
        m: rows(m.m().data()),
        u: m.u().coords().into_iter().map(pair).collect(),
        s: s.map(|s| rows(s.data())),
    })
}

pub fn monoid_to_json(m: &Monoid) -> Value {
    monoid_json(m, None)
}

pub fn involution_monoid_to_json(im: &InvolutionMonoid) -> Value {
    monoid_json(&im.monoid, Some(&im.s))
}

/// A monoid and its involution when the document has an `"s"` entry.
pub fn monoid_from_json(value: &Value) -> Result<(Monoid, Option<Morphism>)> {
    let raw: MonoidJson = parse(value, "monoid")?;
    let object = match raw.object {
        Some(w) => WireWord::new(w),
        None => WireWord::object(raw.dim),
    };
    if object.total_dim() != raw.dim {
        return Err(Error::Format(format!(
            "object {object} has dimension {}, not {}",
            object.total_dim(),
            raw.dim
        )));
    }
    let n = raw.dim;
    if raw.m.len() != n || raw.u.len() != n {
        return Err(Error::Format(format!("expected {n} rows in m and {n} unit entries")));
    }
    let m = matrix(&raw.m, Some(n * n))?;
    let monoid = Monoid::from_matrices(object.clone(), m, &column(&raw.u))?;
    let s = match raw.s {
        Some(s) => {
            if s.len() != n {
                return Err(Error::Format(format!("expected {n} rows in s")));
            }
            Some(Morphism::new(object.clone(), object.dual(), matrix(&s, Some(n))?)?)
        }
        None => None,
    };
    Ok((monoid, s))
}

pub fn involution_monoid_from_json(value: &Value) -> Result<InvolutionMonoid> {
    match monoid_from_json(value)? {
        (m, Some(s)) => InvolutionMonoid::new(m, s),
        (_, None) => Err(Error::Format("involution monoid needs an \"s\" entry".into())),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AntilinearJson {
    #[serde(rename = "S")]
    s: Rows,
}

pub fn antilinear_to_json(t: &AntilinearInvolution) -> Value {
    encode(&AntilinearJson { s: rows(&t.s) })
}

pub fn antilinear_from_json(value: &Value) -> Result<AntilinearInvolution> {
    let raw: AntilinearJson = parse(value, "antilinear involution")?;
    AntilinearInvolution::new(matrix(&raw.s, None)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraJson {
    dim: usize,
    mult: Vec<Vec<Vec<Pair>>>,
    unit: Vec<Pair>,
    star: AntilinearJson,
}

pub fn star_algebra_to_json(a: &StarAlgebra) -> Value {
    let n = a.dim();
    let mult = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| pair(a.constant(i, j, k))).collect()).collect())
        .collect();
    encode(&AlgebraJson {
        dim: n,
        mult,
        unit: a.unit.iter().copied().map(pair).collect(),
        star: AntilinearJson { s: rows(&a.star.s) },
    })
}

pub fn star_algebra_from_json(value: &Value) -> Result<StarAlgebra> {
    let raw: AlgebraJson = parse(value, "star algebra")?;
    if raw.unit.len() != raw.dim {
        return Err(Error::Format(format!("expected {} unit entries", raw.dim)));
    }
    let c: Vec<Vec<Vec<C64>>> = raw
        .mult
        .iter()
        .map(|row| row.iter().map(|out| column(out)).collect())
        .collect();
    StarAlgebra::from_constants(&c, &column(&raw.unit), matrix(&raw.star.s, None)?)
}

/// Object names and arrow ids may be given as strings or numbers.
#[derive(Serialize, Deserialize, Clone)]
#[serde(untagged)]
enum Label {
    Text(String),
    Number(u64),
}

impl Label {
    fn text(&self) -> String {
        match self {
            Label::Text(s) => s.clone(),
            Label::Number(n) => n.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowJson {
    id: Label,
    src: Label,
    tgt: Label,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupoidJson {
    objects: Vec<Label>,
    morphisms: Vec<ArrowJson>,
    compose: Vec<[Label; 3]>,
    inverses: Vec<[Label; 2]>,
}

fn lookup(names: &[String], label: &Label, what: &str) -> Result<usize> {
    let key = label.text();
    names
        .iter()
        .position(|n| *n == key)
        .ok_or_else(|| Error::Format(format!("unknown {what} `{key}`")))
}

pub fn groupoid_to_json(g: &Groupoid) -> Value {
    let objects = g.objects().to_vec();
    let ids: Vec<String> = g.arrows().iter().map(|a| a.id.clone()).collect();
    let id = |i: usize| Label::Text(ids[i].clone());
    encode(&GroupoidJson {
        objects: objects.iter().cloned().map(Label::Text).collect(),
        morphisms: g
            .arrows()
            .iter()
            .map(|a| ArrowJson {
                id: Label::Text(a.id.clone()),
                src: Label::Text(objects[a.src].clone()),
                tgt: Label::Text(objects[a.tgt].clone()),
            })
            .collect(),
        compose: g.composition_table().into_iter().map(|(a, b, c)| [id(a), id(b), id(c)]).collect(),
        inverses: (0..ids.len()).map(|a| [id(a), id(g.inverse(a))]).collect(),
    })
}

pub fn groupoid_from_json(value: &Value) -> Result<Groupoid> {
    let raw: GroupoidJson = parse(value, "groupoid")?;
    let objects: Vec<String> = raw.objects.iter().map(Label::text).collect();
    let arrows = raw
        .morphisms
        .iter()
        .map(|a| {
            Ok(Arrow {
                id: a.id.text(),
                src: lookup(&objects, &a.src, "object")?,
                tgt: lookup(&objects, &a.tgt, "object")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ids: Vec<String> = arrows.iter().map(|a| a.id.clone()).collect();
    let arrow = |l: &Label| lookup(&ids, l, "morphism");
    let compose = raw
        .compose
        .iter()
        .map(|[a, b, c]| Ok((arrow(a)?, arrow(b)?, arrow(c)?)))
        .collect::<Result<Vec<_>>>()?;
    let inverses = raw
        .inverses
        .iter()
        .map(|[a, b]| Ok((arrow(a)?, arrow(b)?)))
        .collect::<Result<Vec<_>>>()?;
    Groupoid::new(objects, arrows, &compose, &inverses)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepJson {
    dims: BTreeMap<String, usize>,
    maps: BTreeMap<String, Rows>,
}

pub fn rep_to_json(g: &Groupoid, rep: &UnitaryRep) -> Value {
    encode(&RepJson {
        dims: g.objects().iter().cloned().zip(rep.dims.iter().copied()).collect(),
        maps: g
            .arrows()
            .iter()
            .zip(&rep.maps)
            .map(|(a, f)| (a.id.clone(), rows(f.data())))
            .collect(),
    })
}

pub fn rep_from_json(g: &Groupoid, value: &Value) -> Result<UnitaryRep> {
    let raw: RepJson = parse(value, "representation")?;
    let dims = g
        .objects()
        .iter()
        .map(|o| raw.dims.get(o).copied().ok_or_else(|| Error::Format(format!("no dimension for `{o}`"))))
        .collect::<Result<Vec<_>>>()?;
    let maps = g
        .arrows()
        .iter()
        .map(|a| {
            let data = raw
                .maps
                .get(&a.id)
                .ok_or_else(|| Error::Format(format!("no matrix for `{}`", a.id)))?;
            let (s, t) = (dims[a.src], dims[a.tgt]);
            if data.len() != t {
                return Err(Error::Format(format!("matrix for `{}` needs {t} rows", a.id)));
            }
            Morphism::new(WireWord::object(s), WireWord::object(t), matrix(data, Some(s))?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UnitaryRep { dims, maps })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassicalJson {
    monoids: BTreeMap<String, Value>,
}

pub fn classical_structure_to_json(g: &Groupoid, cs: &EquivariantClassicalStructure) -> Value {
    encode(&ClassicalJson {
        monoids: g.objects().iter().cloned().zip(cs.monoids.iter().map(monoid_to_json)).collect(),
    })
}

pub fn classical_structure_from_json(g: &Groupoid, value: &Value) -> Result<EquivariantClassicalStructure> {
    let raw: ClassicalJson = parse(value, "classical structure")?;
    let monoids = g
        .objects()
        .iter()
        .map(|o| {
            let v = raw.monoids.get(o).ok_or_else(|| Error::Format(format!("no monoid for `{o}`")))?;
            Ok(monoid_from_json(v)?.0)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EquivariantClassicalStructure { monoids })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GSetJson {
    sizes: BTreeMap<String, usize>,
    actions: BTreeMap<String, Vec<usize>>,
}

pub fn gset_to_json(g: &Groupoid, x: &GSet) -> Value {
    encode(&GSetJson {
        sizes: g.objects().iter().cloned().zip(x.sizes.iter().copied()).collect(),
        actions: g
            .arrows()
            .iter()
            .zip(&x.actions)
            .map(|(a, t)| (a.id.clone(), t.clone()))
            .collect(),
    })
}

pub fn gset_from_json(g: &Groupoid, value: &Value) -> Result<GSet> {
    let raw: GSetJson = parse(value, "G-set")?;
    let sizes = g
        .objects()
        .iter()
        .map(|o| raw.sizes.get(o).copied().ok_or_else(|| Error::Format(format!("no size for `{o}`"))))
        .collect::<Result<Vec<_>>>()?;
    let actions = g
        .arrows()
        .iter()
        .map(|a| raw.actions.get(&a.id).cloned().ok_or_else(|| Error::Format(format!("no action for `{}`", a.id))))
        .collect::<Result<Vec<_>>>()?;
    let x = GSet { sizes, actions };
    x.validate(g)?;
    Ok(x)
}

/// An environment file is either a map from names to morphisms, or a
/// monoid document, which binds `m`, `u` and (when present) `s`.
pub fn env_from_json(value: &Value) -> Result<Env> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Format("environment must be a JSON object".into()))?;
    if obj.contains_key("m") && obj.contains_key("u") && obj.contains_key("dim") {
        let (monoid, s) = monoid_from_json(value)?;
        let mut env = Env::new();
        env.insert("m".into(), monoid.m().clone());
        env.insert("u".into(), monoid.u().clone());
        if let Some(s) = s {
            env.insert("s".into(), s);
        }
        return Ok(env);
    }
    obj.iter()
        .map(|(k, v)| Ok((k.clone(), morphism_from_json(v)?)))
        .collect()
}

pub fn env_to_json(env: &Env) -> Value {
    Value::Object(env.iter().map(|(k, f)| (k.clone(), morphism_to_json(f))).collect())
}
