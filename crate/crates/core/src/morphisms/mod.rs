//! Homomorphisms given on strong generators, checked by transporting
//! λ-brackets, and commutative-diagram checks on composites.

pub mod catalog;
pub mod json;

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{print, print_lambda, Engine, EngineError, LambdaPoly, LatVec, Monomial, Presentation, State};
use crate::presentations::{CatalogError, Level};
use crate::scalars::Rat;

pub use catalog::{resolve_map, MAP_NAMES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorphismError {
    #[error("unknown map `{0}`; known: {1}")]
    UnknownMap(String, String),
    #[error("map `{map}`: {msg}")]
    Invalid { map: String, msg: String },
    #[error("pair ({left}, {right}): {source}")]
    Pair { left: String, right: String, source: EngineError },
    #[error("cannot compose `{0}` with `{1}`: target and source differ")]
    Incompatible(String, String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

type Res<T> = Result<T, MorphismError>;

/// A map of vertex superalgebras given by the images of the source's
/// generators (and of its lattice exponentials, if any).
#[derive(Debug, Clone)]
pub struct GenMap {
    pub name: String,
    pub source: Presentation,
    pub target: Presentation,
    pub images: Vec<State>,
    pub exp_images: Vec<(LatVec, State)>,
    pub level: Level,
    pub notes: Vec<String>,
}

impl GenMap {
    /// Builds a map from expression text over the target. Every source
    /// generator and exponential must be named.
    pub fn from_text(
        name: &str,
        source: Presentation,
        target: Presentation,
        images: &[(&str, &str)],
        level: Level,
    ) -> Res<GenMap> {
        let invalid = |msg: String| MorphismError::Invalid { map: name.to_string(), msg };
        let texts: HashMap<&str, &str> = images.iter().copied().collect();
        for key in texts.keys() {
            if source.index_of(key).is_none() && source.exponential(key).is_none() {
                return Err(invalid(format!("`{key}` is not a source generator")));
            }
        }
        let eng = Engine::new(&target);
        let mut out = Vec::with_capacity(source.len());
        for g in source.generators() {
            let t = texts.get(g.name.as_str()).ok_or_else(|| invalid(format!("no image for `{}`", g.name)))?;
            out.push(eng.eval(t).map_err(|e| invalid(format!("image of `{}`: {e}", g.name)))?);
        }
        let mut exps = Vec::new();
        for g in source.exponentials() {
            let t = texts.get(g.name.as_str()).ok_or_else(|| invalid(format!("no image for `{}`", g.name)))?;
            let v = source.exponential(&g.name).expect("declared exponential").clone();
            exps.push((v, eng.eval(t).map_err(|e| invalid(format!("image of `{}`: {e}", g.name)))?));
        }
        drop(eng);
        let mut map = GenMap {
            name: name.to_string(),
            source,
            target,
            images: out,
            exp_images: exps,
            level,
            notes: Vec::new(),
        };
        map.check_parities()?;
        map.note_weights();
        Ok(map)
    }

    fn check_parities(&self) -> Res<()> {
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let want = self.source.is_odd(i);
            match self.target.state_odd(img) {
                Some(p) if p == want => {}
                _ => {
                    return Err(MorphismError::Invalid {
                        map: self.name.clone(),
                        msg: format!("image of `{}` does not have the parity of its source", self.source.name(i)),
                    })
                }
            }
        }
        Ok(())
    }

    // Gradings of source and target need not agree (free-field targets use
    // their own), so weight differences are recorded, not rejected.
    fn note_weights(&mut self) {
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let w = self.source.weight(i);
            if self.target.state_weight(img) != Some(w) {
                self.notes.push(format!(
                    "image of {} is not homogeneous of weight {} in the target grading",
                    self.source.name(i),
                    w
                ));
            }
        }
    }

    pub fn image(&self, name: &str) -> Option<&State> {
        self.source.index_of(name).map(|i| &self.images[i])
    }

    /// The same map with `k` specialized per `level` (both ends and images).
    pub fn at(&self, level: &Level) -> Res<GenMap> {
        let Some(k0) = level.value_for(&self.source.label) else {
            return Ok(GenMap { level: level.clone(), ..self.clone() });
        };
        let sp = |s: &State| s.map_scalars(|c: &crate::scalars::LevelScalar| c.specialize_scalar(&k0));
        let spv = |v: &LatVec| -> Result<LatVec, EngineError> {
            Ok(LatVec(v.0.iter().map(|c| c.specialize_scalar(&k0)).collect::<Result<_, _>>()?))
        };
        Ok(GenMap {
            name: self.name.clone(),
            source: self.source.specialize(&k0)?,
            target: self.target.specialize(&k0)?,
            images: self.images.iter().map(sp).collect::<Result<_, _>>().map_err(EngineError::from)?,
            exp_images: self
                .exp_images
                .iter()
                .map(|(v, s)| Ok((spv(v)?, sp(s).map_err(EngineError::from)?)))
                .collect::<Result<_, EngineError>>()?,
            level: level.clone(),
            notes: self.notes.clone(),
        })
    }

    /// Image of a source state, built monomial by monomial as right-nested
    /// normally ordered products of the images of its factors.
    pub fn apply(&self, eng: &Engine, s: &State) -> Res<State> {
        let mut memo = HashMap::new();
        self.apply_memo(eng, s, &mut memo)
    }

    fn apply_memo(&self, eng: &Engine, s: &State, memo: &mut HashMap<Monomial, State>) -> Res<State> {
        let mut out = State::zero();
        for (m, c) in s.terms() {
            if !memo.contains_key(m) {
                let img = self.apply_mono(eng, m)?;
                memo.insert(m.clone(), img);
            }
            out.add_scaled(&memo[m], c);
        }
        Ok(out)
    }

    fn apply_mono(&self, eng: &Engine, m: &Monomial) -> Res<State> {
        let mut acc = match &m.exp {
            None => State::vacuum(),
            Some(v) => self
                .exp_images
                .iter()
                .find(|(w, _)| w == v)
                .map(|(_, s)| s.clone())
                .ok_or_else(|| MorphismError::Invalid {
                    map: self.name.clone(),
                    msg: "exponential outside the declared generators".into(),
                })?,
        };
        for f in m.factors.iter().rev() {
            let g = eng.derive_n(&self.images[f.gen as usize], f.deriv)?;
            acc = eng.nop(&g, &acc)?;
        }
        Ok(acc)
    }

    pub fn apply_lambda(&self, eng: &Engine, p: &LambdaPoly) -> Res<LambdaPoly> {
        let mut memo = HashMap::new();
        let mut out = LambdaPoly::zero();
        for (n, s) in p.iter() {
            out.add_at(n, &self.apply_memo(eng, s, &mut memo)?);
        }
        Ok(out)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GenMap) -> Res<GenMap> {
        let same = self.target.len() == next.source.len()
            && self.target.known_names().eq(next.source.known_names());
        if !same {
            return Err(MorphismError::Incompatible(self.name.clone(), next.name.clone()));
        }
        let eng = Engine::new(&next.target);
        let images = self.images.iter().map(|s| next.apply(&eng, s)).collect::<Res<Vec<_>>>()?;
        let exp_images =
            self.exp_images.iter().map(|(v, s)| Ok((v.clone(), next.apply(&eng, s)?))).collect::<Res<Vec<_>>>()?;
        drop(eng);
        Ok(GenMap {
            name: format!("{}.{}", next.name, self.name),
            source: self.source.clone(),
            target: next.target.clone(),
            images,
            exp_images,
            level: self.level.clone(),
            notes: Vec::new(),
        })
    }

    /// Source generators and exponentials as states, with names.
    pub fn source_atoms(&self) -> Vec<(String, State)> {
        let mut out: Vec<(String, State)> =
            (0..self.source.len()).map(|i| (self.source.name(i).to_string(), State::generator(i))).collect();
        for g in self.source.exponentials() {
            let v = self.source.exponential(&g.name).expect("declared").clone();
            out.push((g.name.clone(), State::monomial(Monomial::exponential(v))));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Mismatch {
    pub left: String,
    pub right: String,
    pub discrepancy: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HomReport {
    pub map: String,
    pub source: String,
    pub target: String,
    pub level: String,
    pub status: &'static str,
    pub pairs_checked: usize,
    pub unordered_pairs: usize,
    pub mismatches: Vec<Mismatch>,
    pub notes: Vec<String>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn level_name(level: &Level) -> String {
    match level {
        Level::Generic => "generic".into(),
        Level::Critical => "critical".into(),
        Level::Value(v) => format!("k={v}"),
    }
}

/// Compares `map([x λ y])` with `[map(x) λ map(y)]` for every ordered pair of
/// source generators; mismatches carry the difference (right minus left).
pub fn check_homomorphism(map: &GenMap) -> Res<HomReport> {
    let atoms = map.source_atoms();
    let pairs: Vec<(usize, usize)> =
        (0..atoms.len()).flat_map(|i| (0..atoms.len()).map(move |j| (i, j))).collect();
    let results: Vec<Res<Option<Mismatch>>> = pairs
        .par_iter()
        .map_init(
            || (Engine::new(&map.source), Engine::new(&map.target)),
            |(src, tgt), &(i, j)| {
                let (xn, x) = &atoms[i];
                let (yn, y) = &atoms[j];
                let wrap = |e: MorphismError| match e {
                    MorphismError::Engine(source) => {
                        MorphismError::Pair { left: xn.clone(), right: yn.clone(), source }
                    }
                    other => other,
                };
                let lhs = map.apply_lambda(tgt, &src.bracket(x, y)?).map_err(wrap)?;
                let fx = map.apply(tgt, x).map_err(wrap)?;
                let fy = map.apply(tgt, y).map_err(wrap)?;
                let rhs = tgt.bracket(&fx, &fy).map_err(|e| wrap(e.into()))?;
                let diff = &rhs - &lhs;
                Ok((!diff.is_zero()).then(|| Mismatch {
                    left: xn.clone(),
                    right: yn.clone(),
                    discrepancy: print_lambda(&diff, &map.target),
                }))
            },
        )
        .collect();
    let mut mismatches = Vec::new();
    for r in results {
        if let Some(m) = r? {
            mismatches.push(m);
        }
    }
    mismatches.sort_by(|a, b| (&a.left, &a.right).cmp(&(&b.left, &b.right)));
    let n = atoms.len();
    Ok(HomReport {
        map: map.name.clone(),
        source: map.source.label.clone(),
        target: map.target.label.clone(),
        level: level_name(&map.level),
        status: if mismatches.is_empty() { "pass" } else { "fail" },
        pairs_checked: n * n,
        unordered_pairs: n * (n + 1) / 2,
        mismatches,
        notes: map.notes.clone(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeResult {
    pub probe: String,
    pub left: String,
    pub right: String,
    pub equal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub status: &'static str,
    pub probes: Vec<ProbeResult>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.probes.iter().all(|p| p.equal)
    }
}

fn compose(path: &[GenMap]) -> Res<Option<GenMap>> {
    let mut it = path.iter();
    let Some(first) = it.next() else { return Ok(None) };
    let mut acc = first.clone();
    for m in it {
        acc = acc.then(m)?;
    }
    Ok(Some(acc))
}

/// Compares two composites (maps listed in order of application) on the
/// given probes of their common source. An empty path is the identity.
pub fn check_diagram(left: &[GenMap], right: &[GenMap], probes: &[&str]) -> Res<DiagramReport> {
    let l = compose(left)?;
    let r = compose(right)?;
    let (src, tgt) = match (&l, &r) {
        (Some(a), Some(b)) => {
            let same_src = a.source.known_names().eq(b.source.known_names());
            let same_tgt = a.target.known_names().eq(b.target.known_names());
            if !same_src || !same_tgt {
                return Err(MorphismError::Incompatible(a.name.clone(), b.name.clone()));
            }
            (&a.source, &a.target)
        }
        (Some(a), None) | (None, Some(a)) => (&a.source, &a.target),
        (None, None) => {
            return Ok(DiagramReport { left: vec![], right: vec![], status: "pass", probes: vec![] });
        }
    };
    let eng = Engine::new(tgt);
    let mut out = Vec::new();
    for name in probes {
        let i = src
            .index_of(name)
            .ok_or_else(|| MorphismError::Engine(EngineError::UnknownGenerator(name.to_string())))?;
        let x = State::generator(i);
        let img = |m: &Option<GenMap>| -> Res<State> {
            match m {
                Some(m) => m.apply(&eng, &x),
                None => Ok(x.clone()),
            }
        };
        let (a, b) = (img(&l)?, img(&r)?);
        out.push(ProbeResult { probe: name.to_string(), left: print(&a, tgt), right: print(&b, tgt), equal: a == b });
    }
    let names = |p: &[GenMap]| p.iter().map(|m| m.name.clone()).collect();
    let status = if out.iter().all(|p| p.equal) { "pass" } else { "fail" };
    Ok(DiagramReport { left: names(left), right: names(right), status, probes: out })
}

/// Monomial order for leading terms: generators ranked by `order` (highest
/// first; unlisted ones rank below, in declaration order), ∂^{n+1}A > ∂^n A,
/// and exponentials compared last by their coordinates.
pub fn leading_monomial<'s>(pres: &Presentation, order: &[&str], s: &'s State) -> Option<(&'s Monomial, Rat)> {
    let rank = |g: u32| -> usize {
        let name = pres.name(g as usize);
        order.iter().position(|n| *n == name).unwrap_or(order.len() + g as usize)
    };
    let key = |m: &Monomial| {
        let mut fs: Vec<(usize, std::cmp::Reverse<u32>)> =
            m.factors.iter().map(|f| (rank(f.gen), std::cmp::Reverse(f.deriv))).collect();
        fs.sort();
        fs
    };
    let cmp = |a: &Monomial, b: &Monomial| -> Ordering {
        // smaller rank = higher; compare factor lists, then exponentials
        let (ka, kb) = (key(a), key(b));
        for (x, y) in ka.iter().zip(&kb) {
            match y.cmp(x) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        ka.len().cmp(&kb.len()).then_with(|| a.exp.cmp(&b.exp))
    };
    s.terms()
        .max_by(|(a, _), (b, _)| cmp(a, b))
        .map(|(m, c)| (m, c.as_rat().unwrap_or_else(Rat::one)))
}

#[derive(Debug, Clone, Serialize)]
pub struct LeadingReport {
    pub map: String,
    pub leading: Vec<(String, String)>,
    pub distinct: bool,
}

/// Per-generator leading terms of the images, and whether they are distinct.
pub fn leading_terms(map: &GenMap, order: &[&str]) -> LeadingReport {
    let mut seen = Vec::new();
    let mut leading = Vec::new();
    for (i, img) in map.images.iter().enumerate() {
        let lead = leading_monomial(&map.target, order, img).map(|(m, _)| m.clone());
        let shown = match &lead {
            Some(m) => print(&State::monomial(m.clone()), &map.target),
            None => "0".into(),
        };
        leading.push((map.source.name(i).to_string(), shown));
        seen.push(lead);
    }
    let distinct = seen.iter().all(Option::is_some)
        && (0..seen.len()).all(|i| (i + 1..seen.len()).all(|j| seen[i] != seen[j]));
    LeadingReport { map: map.name.clone(), leading, distinct }
}
