//! Algebra-definition files.
//!
//! ```json
//! {"label": "A_phi",
//!  "generators": [{"name": "phi", "parity": "odd", "weight": "1/2", "kind": "plain"}, ...],
//!  "brackets": [{"left": "phi", "right": "phis", "lambdaPoly": {"0": "1"}}],
//!  "gram": {"basis": ["c", "d"], "matrix": [["0", "2"], ["2", "0"]]},
//!  "aliases": {"u": "1/2*c + 1/2*d"}}
//! ```
//!
//! Only one orientation of each bracket is required. `lambdaPoly` maps n to
//! the n-th product a_(n)b, so the λ^n coefficient is that value over n!.
//! Coefficients are expression text; products inside them are normalized against the table
//! itself, so any order of factors is accepted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::engine::{
    parse, print, Engine, EngineError, GeneratorKind, LambdaPoly, LatVec, Parity, Presentation,
    PresentationBuilder, Weight,
};
use crate::scalars::{factorial, LevelScalar, Rat};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub label: String,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<GramEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aliases: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub parity: Parity,
    pub weight: Value,
    #[serde(default = "plain")]
    pub kind: Value,
}

fn plain() -> Value {
    Value::String("plain".into())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    #[serde(rename = "lambdaPoly")]
    pub lambda_poly: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GramEntry {
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

fn bad(msg: impl Into<String>) -> EngineError {
    EngineError::Presentation(msg.into())
}

fn parse_weight(v: &Value) -> Result<Weight, EngineError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(bad("weight must be a string or integer")),
    };
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad(format!("bad weight `{text}`")))?;
    let d: i64 = d.parse().map_err(|_| bad(format!("bad weight `{text}`")))?;
    if d == 0 {
        return Err(bad(format!("bad weight `{text}`")));
    }
    Ok(Weight::new(n, d))
}

fn scalar(text: &str) -> Result<LevelScalar, EngineError> {
    text.parse::<LevelScalar>().map_err(EngineError::Scalar)
}

fn builder_skeleton(f: &AlgebraFile) -> Result<(PresentationBuilder, Vec<(String, LatVec)>), EngineError> {
    let mut b = PresentationBuilder::new(&f.label);
    let mut exps = Vec::new();
    for g in &f.generators {
        let weight = parse_weight(&g.weight)?;
        match &g.kind {
            Value::String(s) if s == "plain" => {
                b.generator(&g.name, g.parity, weight);
            }
            Value::Object(o) => {
                let Some(Value::Array(coords)) = o.get("latticeExponential") else {
                    return Err(bad(format!("unknown kind for `{}`", g.name)));
                };
                if g.parity != Parity::Even {
                    return Err(bad(format!("lattice exponential `{}` must be even", g.name)));
                }
                let v = coords
                    .iter()
                    .map(|c| match c {
                        Value::String(s) => scalar(s),
                        Value::Number(n) => scalar(&n.to_string()),
                        _ => Err(bad("lattice coordinates must be strings or integers")),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                exps.push((g.name.clone(), LatVec(v)));
            }
            _ => return Err(bad(format!("unknown kind for `{}`", g.name))),
        }
    }
    if let Some(gram) = &f.gram {
        let basis = gram
            .basis
            .iter()
            .map(|n| b.index_of(n).ok_or_else(|| EngineError::UnknownGenerator(n.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let matrix = gram
            .matrix
            .iter()
            .map(|row| row.iter().map(|x| scalar(x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        if matrix.len() != basis.len() || matrix.iter().any(|r| r.len() != basis.len()) {
            return Err(bad("Gram matrix size does not match its basis"));
        }
        b.set_lattice(basis, matrix);
    }
    for (n, v) in &exps {
        b.exponential(n, v.clone());
    }
    Ok((b, exps))
}

fn fill(b: &mut PresentationBuilder, f: &AlgebraFile, ctx: &Presentation) -> Result<(), EngineError> {
    let eng = Engine::new(ctx);
    for br in &f.brackets {
        let i = b.index_of(&br.left).ok_or_else(|| EngineError::UnknownGenerator(br.left.clone()))?;
        let j = b.index_of(&br.right).ok_or_else(|| EngineError::UnknownGenerator(br.right.clone()))?;
        let mut p = LambdaPoly::zero();
        for (deg, text) in &br.lambda_poly {
            let n: u32 = deg.parse().map_err(|_| bad(format!("bad λ-degree `{deg}`")))?;
            p.add_at(n, &eng.normalize(&parse(text, ctx)?)?.scale_rat(&Rat::new(1.into(), factorial(n))));
        }
        b.set(i, j, p);
    }
    Ok(())
}

impl AlgebraFile {
    /// Builds the presentation. Coefficients are normalized twice: first
    /// against the bare generators, then against the resulting table.
    pub fn to_presentation(&self) -> Result<Presentation, EngineError> {
        let (skeleton, _) = builder_skeleton(self)?;
        let mut first = skeleton.clone();
        fill(&mut first, self, &skeleton.draft())?;
        let draft = first.build()?;
        let mut second = skeleton;
        fill(&mut second, self, &draft)?;
        let eng = Engine::new(&draft);
        for (n, text) in &self.aliases {
            second.alias(n, eng.normalize(&parse(text, &draft)?)?);
        }
        second.build()
    }

    /// Serializes a presentation, writing every stored orientation.
    pub fn from_presentation(p: &Presentation) -> AlgebraFile {
        let mut generators: Vec<GeneratorEntry> = p
            .generators()
            .iter()
            .map(|g| GeneratorEntry {
                name: g.name.clone(),
                parity: g.parity,
                weight: Value::String(g.weight.to_string()),
                kind: plain(),
            })
            .collect();
        for g in p.exponentials() {
            if let GeneratorKind::LatticeExponential(v) = &g.kind {
                generators.push(GeneratorEntry {
                    name: g.name.clone(),
                    parity: Parity::Even,
                    weight: Value::String("0".into()),
                    kind: serde_json::json!({"latticeExponential": v.0.iter().map(|c| c.to_string()).collect::<Vec<_>>()}),
                });
            }
        }
        let mut brackets = Vec::new();
        for i in 0..p.len() {
            for j in 0..p.len() {
                let t = p.table(i, j);
                if t.is_zero() {
                    continue;
                }
                brackets.push(BracketEntry {
                    left: p.name(i).to_string(),
                    right: p.name(j).to_string(),
                    lambda_poly: t
                        .iter()
                        .map(|(n, s)| (n.to_string(), print(&s.scale_rat(&Rat::from(factorial(n))), p)))
                        .collect(),
                });
            }
        }
        let gram = p.lattice().map(|l| GramEntry {
            basis: l.basis.iter().map(|&i| p.name(i).to_string()).collect(),
            matrix: l.gram.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        });
        let aliases = p.aliases().iter().map(|(n, s)| (n.clone(), print(s, p))).collect();
        AlgebraFile { label: p.label.clone(), generators, brackets, gram, aliases }
    }
}

/// Reads an algebra-definition file's text.
pub fn presentation_from_json(text: &str) -> Result<Presentation, EngineError> {
    let f: AlgebraFile = serde_json::from_str(text).map_err(|e| bad(format!("malformed algebra file: {e}")))?;
    f.to_presentation()
}
