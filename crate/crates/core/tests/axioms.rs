use vsa_core::engine::properties::{jacobi_suite, skew_suite, wick_suite};
use vsa_core::engine::Engine;
use vsa_core::presentations::{build_standard, LABELS};

#[test]
fn skew_symmetry_on_every_catalog_table() {
    for label in LABELS {
        let p = build_standard(label).unwrap();
        let eng = Engine::new(&p);
        let r = skew_suite(&eng, 50, 0).unwrap();
        assert!(r.passed(), "{label}: {:?}", r.failures);
    }
}

#[test]
fn jacobi_and_wick_small_algebras() {
    for label in ["A_phi", "betagamma", "V_gl11", "Pi_half", "W_sl21"] {
        let p = build_standard(label).unwrap();
        let eng = Engine::new(&p);
        let r = jacobi_suite(&eng, 200, 0).unwrap();
        assert!(r.passed(), "{label}: {:?}", &r.failures[..r.failures.len().min(5)]);
        let r = wick_suite(&eng, 200, 0).unwrap();
        assert!(r.passed(), "{label}: {:?}", &r.failures[..r.failures.len().min(5)]);
    }
}
