//! Finite groupoids, unitary representations, equivariant classical
//! structures and finite G-sets.
//!
//! Composition tables store `compose(g, h) = g ∘ h` (apply `h` first),
//! defined exactly when `tgt(h) = src(g)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::{classify, Monoid, PropertyReport};
use crate::involution::monoid_hom_report;
use crate::linalg::{Comparison, Matrix, Morphism, Tolerance, WireWord, ONE};
use crate::spectral::{free, spectrum};

/// Point-matching radius for [`extract_gset`].
pub const POINT_MATCH: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Groupoid {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    compose: HashMap<(usize, usize), usize>,
    inverses: Vec<usize>,
    identities: Vec<usize>,
}

impl Groupoid {
    /// Builds and validates a groupoid. `compose` lists `(g, h, g∘h)` and
    /// `inverses` lists `(g, g⁻¹)`, all by arrow index.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        compose: &[(usize, usize, usize)],
        inverses: &[(usize, usize)],
    ) -> Result<Self> {
        let bad = |msg: String| Error::InvalidGroupoid(msg);
        let count = arrows.len();
        for a in &arrows {
            if a.src >= objects.len() || a.tgt >= objects.len() {
                return Err(bad(format!("arrow {} has an unknown endpoint", a.id)));
            }
        }
        let mut table = HashMap::new();
        for &(g, h, gh) in compose {
            if g >= count || h >= count || gh >= count {
                return Err(bad(format!("composition ({g}, {h}, {gh}) names an unknown arrow")));
            }
            if arrows[h].tgt != arrows[g].src {
                return Err(bad(format!("{} ∘ {} is not composable", arrows[g].id, arrows[h].id)));
            }
            if arrows[gh].src != arrows[h].src || arrows[gh].tgt != arrows[g].tgt {
                return Err(bad(format!("{} ∘ {} has the wrong endpoints", arrows[g].id, arrows[h].id)));
            }
            if table.insert((g, h), gh).is_some_and(|old| old != gh) {
                return Err(bad(format!("{} ∘ {} defined twice", arrows[g].id, arrows[h].id)));
            }
        }
        for g in 0..count {
            for h in 0..count {
                if arrows[h].tgt == arrows[g].src && !table.contains_key(&(g, h)) {
                    return Err(bad(format!("{} ∘ {} is missing", arrows[g].id, arrows[h].id)));
                }
            }
        }
        let mut identities = Vec::with_capacity(objects.len());
        for x in 0..objects.len() {
            let id = (0..count).find(|&e| {
                arrows[e].src == x
                    && arrows[e].tgt == x
                    && (0..count).all(|g| {
                        (arrows[g].src != x || table[&(g, e)] == g) && (arrows[g].tgt != x || table[&(e, g)] == g)
                    })
            });
            identities.push(id.ok_or_else(|| bad(format!("object {} has no identity", objects[x])))?);
        }
        for g in 0..count {
            for h in 0..count {
                for k in 0..count {
                    if let (Some(&gh), Some(&hk)) = (table.get(&(g, h)), table.get(&(h, k))) {
                        if table[&(gh, k)] != table[&(g, hk)] {
                            return Err(bad("composition is not associative".into()));
                        }
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; count];
        for &(g, gi) in inverses {
            if g >= count || gi >= count {
                return Err(bad(format!("inverse ({g}, {gi}) names an unknown arrow")));
            }
            inv[g] = gi;
        }
        for g in 0..count {
            let gi = inv[g];
            if gi == usize::MAX {
                return Err(bad(format!("{} has no inverse", arrows[g].id)));
            }
            let ok = table.get(&(gi, g)) == Some(&identities[arrows[g].src])
                && table.get(&(g, gi)) == Some(&identities[arrows[g].tgt]);
            if !ok {
                return Err(bad(format!("{} is not inverse to {}", arrows[gi].id, arrows[g].id)));
            }
        }
        Ok(Groupoid {
            objects,
            arrows,
            compose: table,
            inverses: inv,
            identities,
        })
    }

    /// One-object groupoid from a Cayley table (`table[a][b] = a·b`).
    pub fn group(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        let arrows = (0..n)
            .map(|g| Arrow {
                id: format!("g{g}"),
                src: 0,
                tgt: 0,
            })
            .collect();
        let mut compose = Vec::with_capacity(n * n);
        let mut inverses = Vec::with_capacity(n);
        let identity = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g)).unwrap_or(0);
        for a in 0..n {
            for b in 0..n {
                compose.push((a, b, table[a][b]));
            }
            if let Some(inv) = (0..n).find(|&b| table[a][b] == identity) {
                inverses.push((a, inv));
            }
        }
        Groupoid::new(vec!["*".into()], arrows, &compose, &inverses)
    }

    pub fn cyclic(k: usize) -> Result<Self> {
        let table: Vec<Vec<usize>> = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        Groupoid::group(&table)
    }

    /// Two objects `a`, `b` and one isomorphism `f : a → b`.
    pub fn connected_pair() -> Result<Self> {
        let arrow = |id: &str, src, tgt| Arrow {
            id: id.into(),
            src,
            tgt,
        };
        let arrows = vec![
            arrow("id_a", 0, 0),
            arrow("id_b", 1, 1),
            arrow("f", 0, 1),
            arrow("f_inv", 1, 0),
        ];
        let compose = [
            (0, 0, 0),
            (1, 1, 1),
            (2, 0, 2),
            (1, 2, 2),
            (3, 1, 3),
            (0, 3, 3),
            (3, 2, 0),
            (2, 3, 1),
        ];
        Groupoid::new(vec!["a".into(), "b".into()], arrows, &compose, &[(0, 0), (1, 1), (2, 3), (3, 2)])
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// `g ∘ h` when composable.
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.compose.get(&(g, h)).copied()
    }

    /// All `(g, h, g∘h)` in index order.
    pub fn composition_table(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<_> = self.compose.iter().map(|(&(g, h), &gh)| (g, h, gh)).collect();
        out.sort_unstable();
        out
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }
}

/// A functor into Hilbert spaces: a dimension per object and a matrix per
/// arrow.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryRep {
    pub dims: Vec<usize>,
    pub maps: Vec<Morphism>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepReport {
    pub unitary: Comparison,
    pub functorial: Comparison,
    /// `A(g⁻¹) = A(g)†`.
    pub dagger: Comparison,
}

impl RepReport {
    pub fn valid(&self) -> bool {
        self.unitary.pass && self.functorial.pass && self.dagger.pass
    }
}

fn failed() -> Comparison {
    Comparison {
        pass: false,
        max_deviation: f64::INFINITY,
    }
}

fn ok() -> Comparison {
    Comparison {
        pass: true,
        max_deviation: 0.0,
    }
}

pub fn validate_rep(g: &Groupoid, rep: &UnitaryRep, tol: Tolerance) -> RepReport {
    if rep.dims.len() != g.objects.len() || rep.maps.len() != g.arrows.len() {
        return RepReport {
            unitary: failed(),
            functorial: failed(),
            dagger: failed(),
        };
    }
    let shaped = g.arrows.iter().zip(&rep.maps).all(|(a, f)| {
        f.dom() == &WireWord::object(rep.dims[a.src]) && f.cod() == &WireWord::object(rep.dims[a.tgt])
    });
    if !shaped {
        return RepReport {
            unitary: failed(),
            functorial: failed(),
            dagger: failed(),
        };
    }
    let mut unitary = ok();
    let mut dagger = ok();
    for (idx, f) in rep.maps.iter().enumerate() {
        let fdf = Morphism::compose(&f.dagger(), f).expect("shapes checked");
        let ffd = Morphism::compose(f, &f.dagger()).expect("shapes checked");
        let tol_cmp = |x: &Morphism| x.compare(&Morphism::identity(x.dom().clone()), tol).unwrap_or_else(|_| failed());
        unitary = unitary.and(tol_cmp(&fdf)).and(tol_cmp(&ffd));
        dagger = dagger.and(
            rep.maps[g.inverse(idx)]
                .compare(&f.dagger(), tol)
                .unwrap_or_else(|_| failed()),
        );
    }
    let mut functorial = ok();
    for x in 0..g.objects.len() {
        let id = &rep.maps[g.identity(x)];
        functorial = functorial.and(
            id.compare(&Morphism::identity(rep.dims[x]), tol)
                .unwrap_or_else(|_| failed()),
        );
    }
    for (gh_pair, &gh) in &g.compose {
        let (a, b) = *gh_pair;
        let composite = Morphism::compose(&rep.maps[a], &rep.maps[b]).expect("composable arrows");
        functorial = functorial.and(composite.compare(&rep.maps[gh], tol).unwrap_or_else(|_| failed()));
    }
    RepReport {
        unitary,
        functorial,
        dagger,
    }
}

/// A classical structure on the space of every object.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantClassicalStructure {
    pub monoids: Vec<Monoid>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalReport {
    pub objects: Vec<PropertyReport>,
    /// Every `A(g)` is a monoid homomorphism between the structures at its
    /// endpoints.
    pub intertwiner: Comparison,
}

impl ClassicalReport {
    pub fn pass(&self) -> bool {
        self.intertwiner.pass
            && self
                .objects
                .iter()
                .all(|r| r.is_dagger_frobenius() && r.commutative.pass)
    }
}

pub fn check_classical_structure(
    g: &Groupoid,
    rep: &UnitaryRep,
    cs: &EquivariantClassicalStructure,
    tol: Tolerance,
) -> ClassicalReport {
    let objects: Vec<PropertyReport> = cs.monoids.iter().map(|m| classify(m, tol)).collect();
    let mut intertwiner = if cs.monoids.len() == g.objects.len() { ok() } else { failed() };
    if intertwiner.pass {
        for (arrow, f) in g.arrows.iter().zip(&rep.maps) {
            let (mult, unit) = monoid_hom_report(f, &cs.monoids[arrow.src], &cs.monoids[arrow.tgt], tol);
            intertwiner = intertwiner.and(mult).and(unit);
        }
    }
    ClassicalReport { objects, intertwiner }
}

/// A finite set per object and a bijection per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GSet {
    pub sizes: Vec<usize>,
    pub actions: Vec<Vec<usize>>,
}

impl GSet {
    pub fn validate(&self, g: &Groupoid) -> Result<()> {
        let bad = |msg: String| Error::NotPermutation(msg);
        if self.sizes.len() != g.objects.len() || self.actions.len() != g.arrows.len() {
            return Err(bad("G-set does not match the groupoid".into()));
        }
        for (arrow, table) in g.arrows.iter().zip(&self.actions) {
            let (s, t) = (self.sizes[arrow.src], self.sizes[arrow.tgt]);
            let mut seen = vec![false; t];
            if table.len() != s || s != t || table.iter().any(|&x| x >= t || std::mem::replace(&mut seen[x], true)) {
                return Err(bad(format!("action of {} is not a bijection", arrow.id)));
            }
        }
        for x in 0..g.objects.len() {
            if self.actions[g.identity(x)].iter().enumerate().any(|(i, &j)| i != j) {
                return Err(bad(format!("identity of {} acts nontrivially", g.objects[x])));
            }
        }
        for (&(a, b), &ab) in &g.compose {
            let composite: Vec<usize> = self.actions[b].iter().map(|&i| self.actions[a][i]).collect();
            if composite != self.actions[ab] {
                return Err(bad(format!("action is not functorial at {} ∘ {}", g.arrows[a].id, g.arrows[b].id)));
            }
        }
        Ok(())
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Isomorphic as G-sets: some per-object relabeling intertwines the
    /// actions. Brute force, intended for small sets.
    pub fn is_isomorphic(&self, other: &GSet, g: &Groupoid) -> bool {
        if self.sizes != other.sizes {
            return false;
        }
        let options: Vec<Vec<Vec<usize>>> = self.sizes.iter().map(|&n| permutations(n)).collect();
        let mut choice = vec![0usize; options.len()];
        loop {
            let relabel: Vec<&Vec<usize>> = choice.iter().zip(&options).map(|(&c, o)| &o[c]).collect();
            let intertwines = g.arrows.iter().enumerate().all(|(idx, arrow)| {
                (0..self.sizes[arrow.src]).all(|i| {
                    relabel[arrow.tgt][self.actions[idx][i]] == other.actions[idx][relabel[arrow.src][i]]
                })
            });
            if intertwines {
                return true;
            }
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    return false;
                }
                choice[pos] += 1;
                if choice[pos] < options[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Every G-set over `g` with total size at most `max_total`.
pub fn enumerate_gsets(g: &Groupoid, max_total: usize) -> Vec<GSet> {
    let mut out = Vec::new();
    let mut sizes = vec![0usize; g.objects.len()];
    loop {
        if sizes.iter().sum::<usize>() <= max_total {
            let compatible = g.arrows.iter().all(|a| sizes[a.src] == sizes[a.tgt]);
            if compatible {
                let options: Vec<Vec<Vec<usize>>> =
                    g.arrows.iter().map(|a| permutations(sizes[a.src])).collect();
                let mut choice = vec![0usize; options.len()];
                'assign: loop {
                    let candidate = GSet {
                        sizes: sizes.clone(),
                        actions: choice.iter().zip(&options).map(|(&c, o)| o[c].clone()).collect(),
                    };
                    if candidate.validate(g).is_ok() {
                        out.push(candidate);
                    }
                    let mut pos = 0;
                    loop {
                        if pos == choice.len() {
                            break 'assign;
                        }
                        choice[pos] += 1;
                        if choice[pos] < options[pos].len() {
                            break;
                        }
                        choice[pos] = 0;
                        pos += 1;
                    }
                }
            }
        }
        let mut pos = 0;
        loop {
            if pos == sizes.len() {
                return out;
            }
            sizes[pos] += 1;
            if sizes[pos] <= max_total {
                break;
            }
            sizes[pos] = 0;
            pos += 1;
        }
    }
}

/// The G-set of spectrum points, each arrow acting by the permutation its
/// representing unitary induces on points.
pub fn extract_gset(
    g: &Groupoid,
    rep: &UnitaryRep,
    cs: &EquivariantClassicalStructure,
    tol: Tolerance,
    seed: u64,
) -> Result<GSet> {
    let report = check_classical_structure(g, rep, cs, tol);
    if !report.pass() {
        return Err(Error::NotPermutation(format!(
            "not an equivariant classical structure (intertwiner deviation {:e})",
            report.intertwiner.max_deviation
        )));
    }
    let spectra = cs
        .monoids
        .iter()
        .map(|m| spectrum(m, tol, seed))
        .collect::<Result<Vec<_>>>()?;
    let mut actions = Vec::with_capacity(g.arrows.len());
    for (arrow, f) in g.arrows.iter().zip(&rep.maps) {
        let source = &spectra[arrow.src];
        let target = &spectra[arrow.tgt];
        let mut table = Vec::with_capacity(source.len());
        let mut used = vec![false; target.len()];
        for (i, p) in source.points.iter().enumerate() {
            let image = Morphism::compose(f, p)?;
            let nearest = target
                .points
                .iter()
                .enumerate()
                .map(|(j, q)| (j, image.max_abs_diff(q)))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match nearest {
                Some((j, d)) if d < POINT_MATCH && !used[j] => {
                    used[j] = true;
                    table.push(j);
                }
                _ => {
                    return Err(Error::NotPermutation(format!(
                        "{} does not send point {i} onto a point",
                        arrow.id
                    )))
                }
            }
        }
        actions.push(table);
    }
    let gset = GSet {
        sizes: spectra.iter().map(|s| s.len()).collect(),
        actions,
    };
    gset.validate(g)?;
    Ok(gset)
}

/// Permutation representation on `ℂ^X` with the basis-copying monoids.
pub fn linearize_gset(g: &Groupoid, x: &GSet) -> Result<(UnitaryRep, EquivariantClassicalStructure)> {
    x.validate(g)?;
    let maps = g
        .arrows
        .iter()
        .zip(&x.actions)
        .map(|(arrow, table)| {
            let (s, t) = (x.sizes[arrow.src], x.sizes[arrow.tgt]);
            let mut data = Matrix::zeros(t, s);
            for (i, &j) in table.iter().enumerate() {
                data[(j, i)] = ONE;
            }
            Morphism::new(WireWord::object(s), WireWord::object(t), data)
        })
        .collect::<Result<Vec<_>>>()?;
    let rep = UnitaryRep {
        dims: x.sizes.clone(),
        maps,
    };
    let cs = EquivariantClassicalStructure {
        monoids: x.sizes.iter().map(|&n| free(n)).collect(),
    };
    Ok((rep, cs))
}
