use vsa_core::engine::{print_lambda, Engine};
use vsa_core::presentations::json::{presentation_from_json, AlgebraFile};
use vsa_core::presentations::*;

fn bracket(label: &str, level: &Level, a: &str, b: &str) -> String {
    let p = build_at(label, level).unwrap();
    let eng = Engine::new(&p);
    let r = eng.bracket(&eng.eval(a).unwrap(), &eng.eval(b).unwrap()).unwrap();
    print_lambda(&r, &p)
}

#[test]
fn half_lattice_gram() {
    assert_eq!(bracket("Pi_half", &Level::Generic, "c", "d"), "(2)*lambda");
    assert_eq!(bracket("Pi_half", &Level::Generic, "c", "c"), "0");
}

#[test]
fn tensor_factors_commute() {
    let p = tensor(&build_standard("A_phi").unwrap(), &build_standard("M").unwrap());
    let eng = Engine::new(&p);
    let r = eng.bracket(&eng.eval("phi").unwrap(), &eng.eval("xi+").unwrap()).unwrap();
    assert!(r.is_zero());
    assert_eq!(p.len(), 4);
    assert_eq!(build_standard("A_phi*M").unwrap().len(), 4);
}

#[test]
fn identity_current_is_central_at_the_critical_level() {
    let crit = Level::Critical;
    for g in ["e11", "e12", "e13", "e21", "e22", "e23", "e31", "e32", "e33"] {
        assert_eq!(bracket("V_gl21", &crit, "e11 + e22 + e33", g), "0", "{g}");
    }
    assert_ne!(bracket("V_gl21", &Level::Generic, "e11 + e22 + e33", "e11 + e22 + e33"), "0");
}

#[test]
fn critical_levels() {
    assert_eq!(critical_level("V_gl11"), Some(vsa_core::scalars::rat(-1)));
    assert_eq!(critical_level("V_sl2"), Some(vsa_core::scalars::rat(-2)));
    assert_eq!(critical_level("A_phi"), None);
    assert_eq!(GlSuper::new(2, 0).critical_k(), vsa_core::scalars::rat(-2));
    assert!(build_standard("nope").is_err());
}

#[test]
fn json_round_trip() {
    for label in ["A_phi", "V_gl11", "W_sl21", "Pi_half"] {
        let p = build_standard(label).unwrap();
        let text = serde_json::to_string(&AlgebraFile::from_presentation(&p)).unwrap();
        let q = presentation_from_json(&text).unwrap();
        assert_eq!(q.len(), p.len(), "{label}");
        for i in 0..p.len() {
            for j in 0..p.len() {
                assert_eq!(print_lambda(p.table(i, j), &p), print_lambda(q.table(i, j), &q), "{label} {i} {j}");
            }
        }
    }
    assert!(presentation_from_json("[]").is_err());
}
