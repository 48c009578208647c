use vsa_core::brst::*;
use vsa_core::engine::properties::Sampler;
use vsa_core::engine::{print_lambda, Engine, State};
use vsa_core::morphisms::catalog::resolve_at;
use vsa_core::presentations::{build_standard, Level};
use vsa_core::scalars::rat;

fn complex() -> BrstComplex {
    BrstComplex::new(&Level::Generic).unwrap()
}

#[test]
fn charge_squares_to_zero() {
    let c = complex();
    let eng = Engine::new(&c.ambient);
    assert!(eng.bracket(&c.charge, &c.charge).unwrap().is_zero());
    let mut s = Sampler::new(&eng, 0);
    for _ in 0..100 {
        let x = s.state().unwrap();
        let dx = c.apply_differential(&eng, &x).unwrap();
        assert!(c.apply_differential(&eng, &dx).unwrap().is_zero());
    }
}

#[test]
fn charge_and_ghost_pairing() {
    let c = complex();
    let eng = Engine::new(&c.ambient);
    let lin = c.charge.filter(|m| m.factors.iter().any(|f| c.ambient.name(f.gen as usize) == "phi2s"));
    assert_eq!(lin, eng.eval(":e12 phi2s: + phi2s").unwrap());
    assert_eq!(eng.bracket(&eng.eval("phi2").unwrap(), &eng.eval("phi2s").unwrap()).unwrap().coeff(0), State::vacuum());
    let d = c.apply_differential(&eng, &eng.eval("phi2").unwrap()).unwrap();
    assert_eq!(d, eng.eval("e12 + 1").unwrap());
}

#[test]
fn kw_generators_are_closed() {
    let c = complex();
    let eng = Engine::new(&c.ambient);
    let gens = c.kw_generators(&eng).unwrap();
    assert_eq!(gens.len(), 5);
    for (name, z) in &gens {
        assert!(c.apply_differential(&eng, z).unwrap().is_zero(), "{name}");
    }
}

#[test]
fn kw_brackets() {
    let c = complex();
    let eng = Engine::new(&c.ambient);
    let g: std::collections::HashMap<_, _> = c.kw_generators(&eng).unwrap().into_iter().collect();
    let jj = eng.bracket(&g["J"], &g["J"]).unwrap();
    assert_eq!(print_lambda(&jj, &c.ambient), "((-2*k-1))*lambda");
    assert!(eng.bracket(&g["G+"], &g["G+"]).unwrap().is_zero());
    let sg = eng.bracket(&g["S"], &g["G+"]).unwrap();
    let w = build_standard("W_gl21").unwrap();
    let weng = Engine::new(&w);
    let expected = weng.bracket(&weng.eval("S").unwrap(), &weng.eval("G+").unwrap()).unwrap();
    let kw = c.kw_map().unwrap();
    assert_eq!(kw.apply_lambda(&eng, &expected).unwrap(), sg);
}

#[test]
fn screenings_annihilate_the_wakimoto_image() {
    let wak = build_standard("Wak").unwrap();
    let eng = Engine::new(&wak);
    let rho = resolve_at("rho", Some(&Level::Generic)).unwrap();
    let q1 = screening(1, false, &wak, &Level::Generic).unwrap();
    let q2 = screening(2, false, &wak, &Level::Generic).unwrap();
    let e12 = rho.image("e12").unwrap().clone();
    let e31 = rho.image("e31").unwrap().clone();
    assert!(screening_action(&eng, &q1, &e12).unwrap().is_zero());
    assert!(screening_action(&eng, &q2, &e31).unwrap().is_zero());
    assert!(!screening_action(&eng, &q1, &eng.eval("as").unwrap()).unwrap().is_zero());
    assert!(screening(3, false, &wak, &Level::Generic).is_err());
}

#[test]
fn screening_has_a_pole_at_the_critical_level() {
    let wak = build_standard("Wak").unwrap();
    assert!(screening(1, false, &wak, &Level::Critical).is_err());
}

#[test]
fn verify_at_several_levels() {
    for lv in [Level::Generic, Level::Value(rat(3))] {
        let r = verify(&lv, 20, 0).unwrap();
        assert_eq!(r.status, "pass");
        assert!(r.screening_kernel.as_ref().unwrap().in_kernel);
        assert!(r.reduced_projection.iter().all(|p| p.equal));
    }
    let r = verify(&Level::Critical, 20, 0).unwrap();
    assert_eq!(r.status, "pass");
    assert!(r.screening_kernel.is_none());
    assert!(r.screening_note.is_some());
    assert_eq!(r.bracket_table_matches.pairs_checked, 25);
}
