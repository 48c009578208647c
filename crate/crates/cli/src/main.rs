//! `vsa`: λ-bracket computations and the verification suites from the
//! command line. Exit code 0 on pass, 1 on fail, 2 on errors.

use std::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vsa_core::brst;
use vsa_core::center::{self, CosetKind};
use vsa_core::engine::properties::{jacobi_suite, skew_suite, wick_suite};
use vsa_core::engine::{print, print_lambda, Engine, Presentation};
use vsa_core::morphisms::catalog::{resolve_map, PHI_ORDER, RHO_ORDER};
use vsa_core::morphisms::json::map_from_json;
use vsa_core::morphisms::{check_diagram, check_homomorphism, leading_terms, GenMap};
use vsa_core::presentations::json::presentation_from_json;
use vsa_core::presentations::{build_standard, GlSuper, Level};
use vsa_core::scalars::parse_rat;
use vsa_core::sugawara::{check_central, check_size, gl_presentation, ss_vectors};
use vsa_core::suites::{self, SuiteConfig};
use vsa_core::susypoly::affine_hilbert;

type Res<T> = Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "vsa", version, about = "Exact λ-bracket calculus for vertex superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone, Default)]
struct LevelArgs {
    /// Specialize k to a rational value.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["generic", "critical", "level"])]
    k: Option<String>,
    #[arg(long, conflicts_with_all = ["critical", "level"])]
    generic: bool,
    #[arg(long, conflicts_with = "level")]
    critical: bool,
    /// `critical`, `generic` or a rational value of k.
    #[arg(long, allow_hyphen_values = true)]
    level: Option<String>,
}

impl LevelArgs {
    fn resolve(&self, default: Level) -> Res<Level> {
        if let Some(k) = &self.k {
            return Ok(Level::Value(parse_rat(k)?));
        }
        if self.generic {
            return Ok(Level::Generic);
        }
        if self.critical {
            return Ok(Level::Critical);
        }
        match self.level.as_deref() {
            None => Ok(default),
            Some("critical") => Ok(Level::Critical),
            Some("generic") => Ok(Level::Generic),
            Some(v) => Ok(Level::Value(parse_rat(v)?)),
        }
    }

    fn given(&self) -> bool {
        self.k.is_some() || self.generic || self.critical || self.level.is_some()
    }
}

#[derive(Args, Clone)]
struct AlgebraArgs {
    /// Catalog label, e.g. V_gl21 or W_sl21*A_phi.
    #[arg(long)]
    algebra: Option<String>,
    /// JSON algebra definition.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl AlgebraArgs {
    fn load(&self, level: &Level) -> Res<Presentation> {
        let (label, p) = match (&self.algebra, &self.file) {
            (_, Some(f)) => {
                let p = presentation_from_json(&std::fs::read_to_string(f)?)?;
                (p.label.clone(), p)
            }
            (Some(a), None) => (a.clone(), build_standard(a)?),
            (None, None) => return Err("one of --algebra or --file is required".into()),
        };
        Ok(level.apply(&label, &p)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Ring {
    LambdaAff,
    M0,
    CosetSl2,
    CosetGl2,
    Center,
}

#[derive(Subcommand)]
enum Command {
    /// λ-bracket of two expressions.
    Bracket {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Normal form of an expression.
    Normalize {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Checks that a map preserves all generator brackets.
    CheckHom {
        /// Catalog map name or path to a JSON map file.
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        level: LevelArgs,
        /// Also report leading terms of the images.
        #[arg(long)]
        leading: bool,
    },
    /// Compares two composites of catalog maps on probe generators.
    CheckDiagram {
        /// Comma-separated maps, in order of application.
        #[arg(long, value_delimiter = ',')]
        left: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        right: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        probes: Vec<String>,
        #[command(flatten)]
        level: LevelArgs,
    },
    /// BRST certification of the W-algebra presentation.
    Brst {
        /// Only `verify` is available; kept for readability of scripts.
        #[arg(default_value = "verify")]
        action: String,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Segal–Sugawara vectors of gl(m|n).
    Ss {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        check_central: bool,
        #[command(flatten)]
        level: LevelArgs,
    },
    /// Graded center of a presentation.
    Center {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, default_value_t = 3)]
        max_weight: u32,
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        symbols: bool,
    },
    /// Hilbert series of the comparison rings.
    Hilbert {
        #[arg(long, value_enum)]
        ring: Ring,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 3)]
        max_weight: u32,
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        level: LevelArgs,
    },
    /// Skew-symmetry, Jacobi and Wick checks on random states.
    JacobiSample {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Every verification suite.
    VerifyAll {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        gl11_max_weight: u32,
        #[arg(long, default_value_t = 3)]
        gl21_max_weight: u32,
    },
}

struct Outcome {
    passed: bool,
    params: Value,
    payload: Value,
    text: String,
}

fn outcome(passed: bool, params: Value, payload: Value) -> Outcome {
    let text = serde_json::to_string_pretty(&payload).unwrap_or_default();
    Outcome { passed, params, payload, text }
}

fn level_json(l: &Level) -> Value {
    json!(vsa_core::morphisms::level_name(l))
}

fn load_map(map: &Option<String>, file: &Option<PathBuf>) -> Res<GenMap> {
    match (map, file) {
        (_, Some(f)) => Ok(map_from_json(&std::fs::read_to_string(f)?)?),
        (Some(m), None) if m.ends_with(".json") => Ok(map_from_json(&std::fs::read_to_string(m)?)?),
        (Some(m), None) => Ok(resolve_map(m)?),
        (None, None) => Err("one of --map or --file is required".into()),
    }
}

fn gl_vars(label: &str) -> Option<Vec<(String, vsa_core::susypoly::Var)>> {
    let rest = label.strip_prefix("V_gl")?;
    let b = rest.as_bytes();
    if b.len() != 2 || !b.iter().all(u8::is_ascii_digit) {
        return None;
    }
    Some(center::gl_diagonal_vars((b[0] - b'0') as usize, (b[1] - b'0') as usize))
}

fn run(cmd: &Command, seed: u64) -> Res<Outcome> {
    match cmd {
        Command::Bracket { alg, level, left, right } => {
            let lv = level.resolve(Level::Generic)?;
            let p = alg.load(&lv)?;
            let eng = Engine::new(&p);
            let b = eng.bracket(&eng.eval(left)?, &eng.eval(right)?)?;
            let shown = print_lambda(&b, &p);
            let mut o = outcome(
                true,
                json!({ "algebra": p.label, "level": level_json(&lv), "left": left, "right": right }),
                json!({ "bracket": shown }),
            );
            o.text = shown;
            Ok(o)
        }
        Command::Normalize { alg, level, expr } => {
            let lv = level.resolve(Level::Generic)?;
            let p = alg.load(&lv)?;
            let eng = Engine::new(&p);
            let s = print(&eng.eval(expr)?, &p);
            let mut o = outcome(true, json!({ "algebra": p.label, "level": level_json(&lv), "expr": expr }), json!({ "normalForm": s }));
            o.text = s;
            Ok(o)
        }
        Command::CheckHom { map, file, level, leading } => {
            let m = load_map(map, file)?;
            let m = if level.given() { m.at(&level.resolve(Level::Generic)?)? } else { m.at(&m.level.clone())? };
            let r = check_homomorphism(&m)?;
            let mut payload = serde_json::to_value(&r)?;
            if *leading {
                payload["leading"] = serde_json::to_value(leading_terms(&m, if m.name == "phi" { PHI_ORDER } else { RHO_ORDER }))?;
            }
            let text = format!(
                "{} {} -> {} at {}: {} ({} ordered pairs, {} unordered, {} mismatches)",
                r.map,
                r.source,
                r.target,
                r.level,
                r.status,
                r.pairs_checked,
                r.unordered_pairs,
                r.mismatches.len()
            );
            let mut o = outcome(r.passed(), json!({ "map": m.name, "level": r.level }), payload);
            o.text = text;
            Ok(o)
        }
        Command::CheckDiagram { left, right, probes, level } => {
            let lv = level.given().then(|| level.resolve(Level::Generic)).transpose()?;
            let get = |names: &[String]| -> Res<Vec<GenMap>> {
                names
                    .iter()
                    .filter(|n| !n.is_empty())
                    .map(|n| {
                        let m = resolve_map(n)?;
                        let l = lv.clone().unwrap_or_else(|| m.level.clone());
                        Ok(m.at(&l)?)
                    })
                    .collect()
            };
            let probes: Vec<&str> = probes.iter().map(String::as_str).collect();
            let r = check_diagram(&get(left)?, &get(right)?, &probes)?;
            Ok(outcome(r.passed(), json!({ "left": left, "right": right, "probes": probes }), serde_json::to_value(&r)?))
        }
        Command::Brst { action, level, samples } => {
            if action != "verify" {
                return Err(format!("unknown brst action `{action}`").into());
            }
            let lv = level.resolve(Level::Generic)?;
            let r = brst::verify(&lv, *samples, seed)?;
            Ok(outcome(r.status == "pass", json!({ "level": level_json(&lv), "samples": samples, "seed": seed }), serde_json::to_value(&r)?))
        }
        Command::Ss { m, n, p, check_central: central, level } => {
            check_size(*m, *n)?;
            let lv = level.resolve(Level::Generic)?;
            let pres = match &lv {
                Level::Generic => gl_presentation(*m, *n),
                Level::Critical => gl_presentation(*m, *n).specialize(&GlSuper::new(*m, *n).critical_k())?,
                Level::Value(k) => gl_presentation(*m, *n).specialize(k)?,
            };
            let eng = Engine::new(&pres);
            let vs = ss_vectors(&eng, *p, *m, *n)?;
            let mut passed = true;
            let mut entries = Vec::new();
            for (q, s) in vs.iter().enumerate() {
                let mut e = json!({ "q": q, "state": print(s, &pres) });
                if *central {
                    let r = check_central(&eng, s)?;
                    passed &= r.central;
                    e["central"] = json!(r.central);
                    e["witnesses"] = serde_json::to_value(&r.witnesses)?;
                }
                entries.push(e);
            }
            Ok(outcome(
                passed,
                json!({ "m": m, "n": n, "p": p, "level": level_json(&lv), "checkCentral": central }),
                json!({ "vectors": entries }),
            ))
        }
        Command::Center { alg, level, max_weight, basis, symbols } => {
            let lv = level.resolve(Level::Critical)?;
            let p = alg.load(&lv)?;
            let slices = center::center(&p, *max_weight)?;
            let vars = if *symbols { gl_vars(&p.label) } else { None };
            if *symbols && vars.is_none() {
                return Err(format!("symbols are only defined for V_gl presentations, not {}", p.label).into());
            }
            let reports = center::slice_reports(&p, &slices, *basis, vars.as_deref())?;
            let dims: Vec<usize> = slices.iter().map(center::CenterSlice::dim).collect();
            let mut o = outcome(
                true,
                json!({ "algebra": p.label, "level": level_json(&lv), "maxWeight": max_weight }),
                json!({ "weights": reports }),
            );
            if !*basis && !*symbols {
                o.text = format!("{dims:?}");
            }
            Ok(o)
        }
        Command::Hilbert { ring, m, n, max_weight, alg, level } => {
            let (name, dims) = match ring {
                Ring::LambdaAff => ("lambda-aff", affine_hilbert(*m, *n, *max_weight)),
                Ring::M0 => ("m0", center::m0_hilbert(*max_weight)),
                Ring::CosetSl2 => ("coset-sl2", center::large_level_coset_hilbert(CosetKind::Sl2, *max_weight)),
                Ring::CosetGl2 => ("coset-gl2", center::large_level_coset_hilbert(CosetKind::Gl2, *max_weight)),
                Ring::Center => {
                    let lv = level.resolve(Level::Critical)?;
                    ("center", center::center_hilbert(&alg.load(&lv)?, *max_weight)?)
                }
            };
            let mut o = outcome(true, json!({ "ring": name, "m": m, "n": n, "maxWeight": max_weight }), json!(dims));
            o.text = format!("{dims:?}");
            Ok(o)
        }
        Command::JacobiSample { alg, level, samples } => {
            let lv = level.resolve(Level::Generic)?;
            let p = alg.load(&lv)?;
            let eng = Engine::new(&p);
            let reports = [skew_suite(&eng, *samples, seed)?, jacobi_suite(&eng, *samples, seed)?, wick_suite(&eng, *samples, seed)?];
            let passed = reports.iter().all(|r| r.passed());
            Ok(outcome(
                passed,
                json!({ "algebra": p.label, "level": level_json(&lv), "samples": samples, "seed": seed }),
                serde_json::to_value(&reports)?,
            ))
        }
        Command::VerifyAll { samples, gl11_max_weight, gl21_max_weight } => {
            let cfg = SuiteConfig {
                seed,
                samples: *samples,
                gl11_max_weight: *gl11_max_weight,
                gl21_max_weight: *gl21_max_weight,
            };
            let results = suites::run_all(&cfg);
            let passed = results.iter().all(|r| r.passed);
            let text = results
                .iter()
                .map(|r| format!("[{}] {:>2} {} ({:.1}s)", if r.passed { "pass" } else { "FAIL" }, r.id, r.name, r.seconds))
                .collect::<Vec<_>>()
                .join("\n");
            let mut o = outcome(
                passed,
                json!({ "seed": seed, "samples": samples, "gl11MaxWeight": gl11_max_weight, "gl21MaxWeight": gl21_max_weight }),
                serde_json::to_value(&results)?,
            );
            o.text = text;
            Ok(o)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Bracket { .. } => "bracket",
        Command::Normalize { .. } => "normalize",
        Command::CheckHom { .. } => "check-hom",
        Command::CheckDiagram { .. } => "check-diagram",
        Command::Brst { .. } => "brst",
        Command::Ss { .. } => "ss",
        Command::Center { .. } => "center",
        Command::Hilbert { .. } => "hilbert",
        Command::JacobiSample { .. } => "jacobi-sample",
        Command::VerifyAll { .. } => "verify-all",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let name = command_name(&cli.command);
    match run(&cli.command, cli.seed) {
        Ok(o) => {
            let status = if o.passed { "pass" } else { "fail" };
            if cli.json {
                let report = json!({
                    "command": name,
                    "parameters": o.params,
                    "status": status,
                    "payload": o.payload,
                    "wallTime": start.elapsed().as_secs_f64(),
                });
                println!("{}", serde_json::to_string_pretty(&report).unwrap_or_default());
            } else {
                println!("{}", o.text);
                if name != "bracket" && name != "normalize" {
                    println!("status: {status}");
                }
            }
            ExitCode::from(if o.passed { 0 } else { 1 })
        }
        Err(e) => {
            if cli.json {
                let report = json!({ "command": name, "status": "error", "payload": { "error": e.to_string() } });
                println!("{}", serde_json::to_string_pretty(&report).unwrap_or_default());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
