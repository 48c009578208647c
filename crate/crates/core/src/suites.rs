//! The verification suites, one function per headline check. Each returns a
//! [`SuiteResult`] whose detail is the JSON payload of the underlying
//! reports; the CLI's `verify-all` and the acceptance tests share them.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::brst;
use crate::center::{self, gl_diagonal_vars, leading_symbol, m0_hilbert};
use crate::engine::properties::{jacobi_suite, skew_suite, wick_suite, PropertyReport};
use crate::engine::{Engine, EngineError};
use crate::morphisms::catalog::resolve_at;
use crate::morphisms::{check_diagram, check_homomorphism, MorphismError};
use crate::presentations::{build_at, build_standard, CatalogError, Level, LABELS};
use crate::scalars::rat;
use crate::sugawara::{self, centrality_table, check_central, gl_presentation, ss_vectors};
use crate::susypoly::{affine_hilbert, is_supersymmetric, poly_rank};

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Brst(#[from] brst::BrstError),
    #[error(transparent)]
    Sugawara(#[from] sugawara::SugawaraError),
    #[error(transparent)]
    Center(#[from] center::CenterError),
}

type Res<T> = Result<T, SuiteError>;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub seconds: f64,
    pub detail: Value,
}

/// Knobs shared by the suites; the defaults are the documented cutoffs.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub gl11_max_weight: u32,
    pub gl21_max_weight: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, samples: 200, gl11_max_weight: 5, gl21_max_weight: 3 }
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

fn hom(name: &str, level: &Level) -> Res<(bool, Value, usize)> {
    let r = check_homomorphism(&resolve_at(name, Some(level))?)?;
    Ok((r.passed(), to_json(&r), r.pairs_checked))
}

pub const NAMES: [&str; 11] = [
    "eta isomorphism at the critical level",
    "W-algebra bracket table from the BRST complex",
    "Wakimoto realization rho",
    "screening kernels",
    "Kazama-Suzuki maps and the large-level diagram",
    "Segal-Sugawara centrality",
    "center Hilbert series of V(gl(1|1))",
    "center coincidence for gl(2|1)",
    "leading symbols of Wakimoto images",
    "inverse reduction and the simple-quotient diagram",
    "axiom property suite",
];

pub fn eta(_: &SuiteConfig) -> Res<(bool, Value)> {
    let r = check_homomorphism(&resolve_at("eta", Some(&Level::Critical))?)?;
    Ok((r.passed() && r.unordered_pairs == 10, to_json(&r)))
}

pub fn brst_table(cfg: &SuiteConfig) -> Res<(bool, Value)> {
    let r = brst::verify(&Level::Generic, cfg.samples, cfg.seed)?;
    let ok = r.d_squared.zero
        && r.d_squared.sample_failures.is_empty()
        && r.closed_generators.len() == 5
        && r.closed_generators.iter().all(|c| c.closed)
        && r.bracket_table_matches.matches;
    Ok((ok, to_json(&r)))
}

pub fn wakimoto(_: &SuiteConfig) -> Res<(bool, Value)> {
    let (ok, v, n) = hom("rho", &Level::Generic)?;
    Ok((ok && n == 81, v))
}

pub fn screenings(cfg: &SuiteConfig) -> Res<(bool, Value)> {
    let r = brst::verify(&Level::Generic, 0, cfg.seed)?;
    let ok = match &r.screening_kernel {
        Some(s) => {
            let full = s.checks.iter().filter(|c| c.screening.starts_with('S')).count();
            s.in_kernel && full == 18 && !s.witness.zero
        }
        None => false,
    };
    Ok((ok, json!({ "screeningKernel": r.screening_kernel, "reducedProjection": r.reduced_projection })))
}

pub fn kazama_suzuki(_: &SuiteConfig) -> Res<(bool, Value)> {
    let (ks, ks_v, _) = hom("ks", &Level::Generic)?;
    let (ksi, ksi_v, _) = hom("ks_inf", &Level::Critical)?;
    let crit = Some(&Level::Critical);
    let left = [resolve_at("ks_inf", crit)?, resolve_at("id_eta_bar", crit)?];
    let right = [resolve_at("eta", crit)?, resolve_at("q", crit)?];
    let d = check_diagram(&left, &right, &["J", "S", "G+", "G-"])?;
    Ok((ks && ksi && d.passed(), json!({ "ks": ks_v, "ksInf": ksi_v, "diagram": d })))
}

pub fn sugawara_centrality(_: &SuiteConfig) -> Res<(bool, Value)> {
    let mut ok = true;
    let mut tables = Vec::new();
    for (m, n) in [(1, 1), (2, 1)] {
        let pres = gl_presentation(m, n).specialize(&rat(-1))?;
        let t = centrality_table(&pres, m, n, 3, 1)?;
        ok &= t.len() == 6 && t.iter().all(|e| e.central);
        tables.push(json!({ "m": m, "n": n, "entries": t }));
    }
    let pres = gl_presentation(1, 1);
    let eng = Engine::new(&pres);
    let s22 = ss_vectors(&eng, 2, 1, 1)?.pop().expect("three entries");
    let generic = check_central(&eng, &s22)?;
    ok &= !generic.central && !generic.witnesses.is_empty();
    Ok((ok, json!({ "critical": tables, "s22GenericGl11": generic })))
}

pub fn gl11_hilbert(cfg: &SuiteConfig) -> Res<(bool, Value)> {
    let w = cfg.gl11_max_weight;
    let z = center::center_hilbert(&build_at("V_gl11", &Level::Critical)?, w)?;
    let m0 = m0_hilbert(w);
    let aff = affine_hilbert(1, 1, w);
    let prefix = z.len() >= 4 && z[..4] == [1, 1, 3, 6];
    Ok((z == m0 && z == aff && prefix, json!({ "center": z, "m0": m0, "affine": aff })))
}

pub fn gl21_coincidence(cfg: &SuiteConfig) -> Res<(bool, Value)> {
    let w = cfg.gl21_max_weight;
    let v = build_at("V_gl21", &Level::Critical)?;
    let slices = center::center(&v, w)?;
    let zv: Vec<usize> = slices.iter().map(center::CenterSlice::dim).collect();
    let zw = center::center_hilbert(&build_at("W_gl21", &Level::Critical)?, w)?;
    let aff = affine_hilbert(2, 1, w);
    let vars = gl_diagonal_vars(2, 1);
    let f = |i: usize| vars.iter().find(|(n, _)| n == v.name(i)).map(|(_, x)| *x);
    let mut symbols_ok = true;
    let mut symbols = Vec::new();
    for s in &slices {
        let syms = s.basis.iter().map(|z| leading_symbol(z, &f)).collect::<Result<Vec<_>, _>>()?;
        symbols_ok &= poly_rank(&syms) == syms.len() && syms.iter().all(|p| is_supersymmetric(p, 2, 1));
        symbols.push(syms.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    let ok = zv == zw && zv == aff && symbols_ok;
    Ok((ok, json!({ "centerV": zv, "centerW": zw, "affine": aff, "symbolsSupersymmetric": symbols_ok, "symbols": symbols })))
}

pub fn wakimoto_symbols(_: &SuiteConfig) -> Res<(bool, Value)> {
    let c = center::wakimoto_symbols(4)?;
    Ok((c.len() == 4 && c.iter().all(|x| x.equal), to_json(&c)))
}

pub fn inverse_reduction(_: &SuiteConfig) -> Res<(bool, Value)> {
    let (g, gv, _) = hom("phi", &Level::Generic)?;
    let (c, cv, _) = hom("phi", &Level::Value(rat(-1)))?;
    let crit = Some(&Level::Critical);
    let left = [resolve_at("phi", crit)?, resolve_at("quotient", crit)?, resolve_at("psi", crit)?];
    let right = [resolve_at("g", crit)?, resolve_at("fms2", crit)?];
    let probes = ["h1", "h2", "e12", "e13", "e32", "e21", "e31", "e23"];
    let d = check_diagram(&left, &right, &probes)?;
    let ok = g && c && d.passed() && d.probes.len() == 8;
    Ok((ok, json!({ "phiGeneric": gv, "phiCritical": cv, "diagram": d })))
}

fn property_reports(label: &str, cfg: &SuiteConfig) -> Res<Vec<PropertyReport>> {
    let p = build_standard(label)?;
    let eng = Engine::new(&p);
    Ok(vec![
        skew_suite(&eng, 0, cfg.seed)?,
        jacobi_suite(&eng, cfg.samples, cfg.seed)?,
        wick_suite(&eng, cfg.samples, cfg.seed)?,
    ])
}

pub fn axioms(cfg: &SuiteConfig) -> Res<(bool, Value)> {
    let reports: Vec<PropertyReport> = LABELS
        .par_iter()
        .map(|l| property_reports(l, cfg))
        .collect::<Res<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let ok = reports.iter().all(PropertyReport::passed)
        && reports.iter().filter(|r| r.property != "skew-symmetry").all(|r| r.checked >= cfg.samples);
    let summary: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "property": r.property, "algebra": r.algebra, "checked": r.checked,
                "failures": r.failures.iter().take(5).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok((ok, Value::Array(summary)))
}

type SuiteFn = fn(&SuiteConfig) -> Res<(bool, Value)>;

const SUITES: [SuiteFn; 11] = [
    eta,
    brst_table,
    wakimoto,
    screenings,
    kazama_suzuki,
    sugawara_centrality,
    gl11_hilbert,
    gl21_coincidence,
    wakimoto_symbols,
    inverse_reduction,
    axioms,
];

/// Runs suite `id` (1-based). Errors are reported as a failed result.
pub fn run(id: u32, cfg: &SuiteConfig) -> SuiteResult {
    let t = Instant::now();
    let (passed, detail) = match SUITES[(id - 1) as usize](cfg) {
        Ok(r) => r,
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    SuiteResult { id, name: NAMES[(id - 1) as usize], passed, seconds: t.elapsed().as_secs_f64(), detail }
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<SuiteResult> {
    (1..=SUITES.len() as u32).map(|i| run(i, cfg)).collect()
}
