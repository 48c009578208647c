use vsa_core::center::*;
use vsa_core::engine::{Engine, Weight};
use vsa_core::presentations::{build_at, build_standard, Level};
use vsa_core::susypoly::{affine_hilbert, is_supersymmetric, poly_rank, SuperPoly, Var};

fn wt(n: i64) -> Weight {
    Weight::from_integer(n)
}

#[test]
fn graded_basis_counts() {
    let gl11 = build_standard("V_gl11").unwrap();
    assert_eq!(graded_basis(&gl11, wt(1)).unwrap().len(), 4);
    let a = build_standard("A_phi").unwrap();
    assert_eq!(graded_basis(&a, Weight::new(1, 2)).unwrap().len(), 2);
    let gl21 = build_standard("V_gl21").unwrap();
    assert_eq!(graded_basis(&gl21, wt(2)).unwrap().len(), 50);
    assert_eq!(graded_basis(&gl21, wt(0)).unwrap().len(), 1);
}

#[test]
fn lattice_presentations_are_rejected() {
    let pi = build_standard("Pi_half").unwrap();
    assert!(graded_basis(&pi, wt(1)).is_err());
}

#[test]
fn gl11_low_weights() {
    let crit = build_at("V_gl11", &Level::Critical).unwrap();
    let eng = Engine::new(&crit);
    let z1 = center_slice(&eng, wt(1)).unwrap();
    assert_eq!(z1.dim(), 1);
    assert_eq!(z1.basis[0], eng.eval("e11 + e22").unwrap());
    assert_eq!(center_slice(&eng, wt(2)).unwrap().dim(), 3);

    let gen = build_standard("V_gl11").unwrap();
    let eng = Engine::new(&gen);
    assert_eq!(center_slice(&eng, wt(1)).unwrap().dim(), 1);
}

#[test]
fn hilbert_oracles() {
    assert_eq!(m0_hilbert(3), vec![1, 1, 3, 6]);
    assert_eq!(large_level_coset_hilbert(CosetKind::Sl2, 3), vec![1, 1, 3, 6]);
    assert_eq!(m0_hilbert(5), affine_hilbert(1, 1, 5));
    let crit = build_at("V_gl11", &Level::Critical).unwrap();
    assert_eq!(center_hilbert(&crit, 3).unwrap(), vec![1, 1, 3, 6]);
}

#[test]
fn gl2_coset_includes_the_identity_current() {
    // Ī contributes at weight one on top of ξ₊ξ₋
    assert_eq!(large_level_coset_hilbert(CosetKind::Gl2, 2), vec![1, 2, 6]);
}

#[test]
fn symbols_of_derivatives_are_linear() {
    let pres = build_standard("V_gl21").unwrap();
    let eng = Engine::new(&pres);
    let vars = gl_diagonal_vars(2, 1);
    let f = |i: usize| vars.iter().find(|(n, _)| n == pres.name(i)).map(|(_, v)| *v);
    let dh = eng.eval("D(e11 + e22 + e33, 1)").unwrap();
    let expected = SuperPoly::var(Var::U(1, 1)).add(&SuperPoly::var(Var::U(2, 1))).add(&SuperPoly::var(Var::V(1, 1)));
    assert_eq!(leading_symbol(&dh, &f).unwrap(), expected);
}

#[test]
fn gl21_center_symbols_are_supersymmetric() {
    let crit = build_at("V_gl21", &Level::Critical).unwrap();
    let slices = center(&crit, 2).unwrap();
    let vars = gl_diagonal_vars(2, 1);
    let f = |i: usize| vars.iter().find(|(n, _)| n == crit.name(i)).map(|(_, v)| *v);
    for s in &slices {
        let syms: Vec<_> = s.basis.iter().map(|z| leading_symbol(z, &f).unwrap()).collect();
        assert_eq!(poly_rank(&syms), syms.len());
        for p in &syms {
            assert!(is_supersymmetric(p, 2, 1), "{p}");
        }
    }
    assert_eq!(slices.iter().map(|s| s.dim()).collect::<Vec<_>>(), affine_hilbert(2, 1, 2));
}

#[test]
fn wakimoto_images_of_sugawara_vectors_have_power_sum_symbols() {
    let checks = wakimoto_symbols(4).unwrap();
    assert_eq!(checks.len(), 4);
    for c in checks {
        assert!(c.equal, "p={}: {} vs {}", c.p, c.symbol, c.expected);
    }
}

#[test]
fn wakimoto_symbol_of_s22() {
    let c = &wakimoto_symbols(2).unwrap()[1];
    assert_eq!(c.symbol, "u1^2 + u2^2 - v1^2");
}
