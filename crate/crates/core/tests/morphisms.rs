use vsa_core::engine::{print, Engine};
use vsa_core::morphisms::catalog::*;
use vsa_core::morphisms::json::map_from_json;
use vsa_core::morphisms::*;
use vsa_core::presentations::{build_at, build_standard, Level};

#[test]
fn every_catalog_map_is_a_homomorphism_at_its_level() {
    for name in MAP_NAMES {
        let m = resolve_at(name, None).unwrap();
        let r = check_homomorphism(&m).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.mismatches.first());
        assert_eq!(r.status, "pass");
    }
}

#[test]
fn catalog_images() {
    let q = resolve_map("q").unwrap();
    let e = Engine::new(&q.target);
    assert_eq!(q.image("e11").unwrap(), &e.eval(":phi phis:").unwrap());
    let eta = resolve_map("eta").unwrap();
    let e = Engine::new(&eta.target);
    assert_eq!(eta.image("S").unwrap(), &e.eval("e11 + e22").unwrap());
    let phi = resolve_map("phi").unwrap();
    let e = Engine::new(&phi.target);
    assert_eq!(phi.image("e12").unwrap(), &e.eval("ec").unwrap());
}

#[test]
fn identity_map_passes() {
    let a = build_standard("A_phi").unwrap();
    let images: Vec<(&str, &str)> = a.generators().iter().map(|g| (g.name.as_str(), g.name.as_str())).collect();
    let id = GenMap::from_text("id", a.clone(), a.clone(), &images, Level::Generic).unwrap();
    assert!(check_homomorphism(&id).unwrap().passed());
}

#[test]
fn corrupted_eta_fails_on_the_odd_pair() {
    let images = [("G+", "e12"), ("G-", "e21"), ("J", "e11"), ("S", "e11")];
    let m = GenMap::from_text(
        "eta*",
        build_at("W_sl21", &Level::Critical).unwrap(),
        build_at("V_gl11", &Level::Critical).unwrap(),
        &images,
        Level::Critical,
    )
    .unwrap();
    let r = check_homomorphism(&m).unwrap();
    assert!(!r.passed());
    let bad = r.mismatches.iter().find(|x| x.left == "G+" && x.right == "G-").expect("(G+,G-) mismatch");
    assert_eq!(bad.discrepancy, "(e22)");
}

#[test]
fn missing_or_foreign_images_are_rejected() {
    let a = build_standard("A_phi").unwrap();
    assert!(GenMap::from_text("x", a.clone(), a.clone(), &[("phi", "phi")], Level::Generic).is_err());
    assert!(GenMap::from_text("x", a.clone(), a.clone(), &[("zz", "phi")], Level::Generic).is_err());
    assert!(matches!(resolve_map("nope"), Err(MorphismError::UnknownMap(..))));
}

#[test]
fn diagrams() {
    let crit = Some(&Level::Critical);
    let left = [resolve_at("ks_inf", crit).unwrap(), resolve_at("id_eta_bar", crit).unwrap()];
    let right = [resolve_at("eta", crit).unwrap(), resolve_at("q", crit).unwrap()];
    let d = check_diagram(&left, &right, &["J", "S", "G+", "G-"]).unwrap();
    assert!(d.passed());
    assert_eq!(d.probes.len(), 4);

    // both paths the identity
    let a = build_standard("A_phi").unwrap();
    let images: Vec<(&str, &str)> = a.generators().iter().map(|g| (g.name.as_str(), g.name.as_str())).collect();
    let id = GenMap::from_text("id", a.clone(), a.clone(), &images, Level::Generic).unwrap();
    let d = check_diagram(std::slice::from_ref(&id), std::slice::from_ref(&id), &["phi", "phis"]).unwrap();
    assert!(d.passed());
}

#[test]
fn maps_load_from_json() {
    let text = r#"{"source":"W_sl21","target":"V_gl11","level":"critical",
        "images":{"G+":"e12","G-":"e21","J":"e11","S":"e11 + e22"}}"#;
    let m = map_from_json(text).unwrap();
    let m = m.at(&m.level.clone()).unwrap();
    assert!(check_homomorphism(&m).unwrap().passed());
    assert!(map_from_json("{").is_err());
}

#[test]
fn leading_terms_are_distinct() {
    let rho = resolve_map("rho").unwrap();
    assert!(leading_terms(&rho, RHO_ORDER).distinct);
    let phi = resolve_map("phi").unwrap();
    assert!(leading_terms(&phi, PHI_ORDER).distinct);
    let e = Engine::new(&rho.target);
    assert_eq!(print(rho.image("e12").unwrap(), &rho.target), print(&e.eval("a").unwrap(), &rho.target));
}
