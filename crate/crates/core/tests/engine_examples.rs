use vsa_core::engine::{parse, print, print_lambda, Engine, LambdaPoly, State};
use vsa_core::presentations::{build_at, build_standard, Level};
use vsa_core::scalars::{factorial, Rat};

// Expected brackets are written as n-th products a_(n)b.
fn lp(eng: &Engine, coeffs: &[(u32, &str)]) -> LambdaPoly {
    let mut p = LambdaPoly::zero();
    for (n, t) in coeffs {
        p.add_at(*n, &eng.eval(t).unwrap().scale_rat(&Rat::new(1.into(), factorial(*n))));
    }
    p
}

fn br(eng: &Engine, a: &str, b: &str) -> LambdaPoly {
    eng.bracket(&eng.eval(a).unwrap(), &eng.eval(b).unwrap()).unwrap()
}

#[test]
fn odd_square_vanishes() {
    let p = build_standard("A_phi").unwrap();
    let eng = Engine::new(&p);
    assert!(eng.eval(":phi phi:").unwrap().is_zero());
    assert!(eng.eval(":phi phis: + :phis phi:").unwrap().is_zero());
}

#[test]
fn commutator_of_normal_products_in_sl2() {
    let p = build_standard("Vl_sl2").unwrap();
    let eng = Engine::new(&p);
    assert_eq!(eng.eval(":E F: - :F E:").unwrap(), eng.eval("D(H,1)").unwrap());
}

#[test]
fn lattice_derivative() {
    let p = build_standard("Pi").unwrap();
    let eng = Engine::new(&p);
    assert_eq!(eng.eval("D(ec,1)").unwrap(), eng.eval(":c ec:").unwrap());
    // [h λ ∂e^c] = (λ+∂)[h λ e^c]
    let lhs = br(&eng, "d", "D(ec,1)");
    assert_eq!(lhs, lp(&eng, &[(0, "2*D(ec,1)"), (1, "2*ec")]));
}

#[test]
fn leibniz_in_m() {
    let p = build_standard("M").unwrap();
    let eng = Engine::new(&p);
    assert_eq!(
        eng.eval("D(:xi+ xi-:,1)").unwrap(),
        eng.eval(":D(xi+,1) xi-: + :xi+ D(xi-,1):").unwrap()
    );
    assert!(eng.derive(&State::vacuum()).unwrap().is_zero());
}

#[test]
fn w_table_entries() {
    let p = build_standard("W_sl21").unwrap();
    let eng = Engine::new(&p);
    assert_eq!(
        br(&eng, "G+", "G-"),
        lp(&eng, &[(2, "(k+1)*(2*k+1)"), (1, "-(k+1)*J"), (0, "S - (k+1)/2*D(J,1)")])
    );
    assert_eq!(
        br(&eng, "S", "S"),
        lp(&eng, &[(3, "-(k+1)*3/2*(k+1)*(2*k+1)"), (1, "-2*(k+1)*S"), (0, "-(k+1)*D(S,1)")])
    );
    let gp = eng.eval("G+").unwrap();
    let gm = eng.eval("G-").unwrap();
    assert_eq!(eng.nth_product(&gp, 2, &gm).unwrap(), eng.eval("(k+1)*(2*k+1)").unwrap());
    assert_eq!(
        br(&eng, "G-", "G+"),
        lp(&eng, &[(2, "(k+1)*(2*k+1)"), (1, "(k+1)*J"), (0, "S + (k+1)/2*D(J,1)")])
    );
}

#[test]
fn critical_gl11() {
    let p = build_at("V_gl11", &Level::Critical).unwrap();
    let eng = Engine::new(&p);
    assert_eq!(br(&eng, "e11", "e11"), lp(&eng, &[(1, "1")]));
    assert!(br(&eng, "h", "e12").is_zero());
}

#[test]
fn gl_h_h() {
    // κ = k₁κ_V with k₁ = k+m-n for gl_{2|1}; [h λ h] = (m-n)k₁λ - ½κ_g(h,h)λ, and κ_g(h,h) = 2(m-n)str(1)-2str(1)^2 = 0
    let p = build_standard("V_gl21").unwrap();
    let eng = Engine::new(&p);
    assert_eq!(br(&eng, "h", "h"), lp(&eng, &[(1, "k+1")]));
}

#[test]
fn half_lattice_gram() {
    let p = build_standard("Pi_half").unwrap();
    let eng = Engine::new(&p);
    assert_eq!(br(&eng, "c", "d"), lp(&eng, &[(1, "2")]));
    assert!(br(&eng, "c", "c").is_zero());
    assert_eq!(br(&eng, "u", "u"), lp(&eng, &[(1, "1")]));
    assert_eq!(br(&eng, "v", "v"), lp(&eng, &[(1, "-1")]));
}

#[test]
fn nth_products() {
    let p = build_standard("A_phi").unwrap();
    let eng = Engine::new(&p);
    let phi = eng.eval("phi").unwrap();
    let phis = eng.eval("phis").unwrap();
    assert_eq!(eng.nth_product(&phi, 0, &phis).unwrap(), State::vacuum());
    assert_eq!(eng.nth_product(&phi, -1, &State::vacuum()).unwrap(), phi);
}

#[test]
fn round_trip() {
    let p = build_standard("W_sl21").unwrap();
    let eng = Engine::new(&p);
    for t in ["(k+1)*:J J:", ":G+ G-: - 1/(k+1)*D(S,2)", ":J :J G+::", "D(:S J:,2)"] {
        let s = eng.eval(t).unwrap();
        let printed = print(&s, &p);
        let again = eng.normalize(&parse(&printed, &p).unwrap()).unwrap();
        assert_eq!(s, again, "{t} -> {printed}");
    }
    let _ = print_lambda(&br(&eng, "G+", "G-"), &p);
}

#[test]
fn tensor_factors_commute() {
    let a = build_standard("A_phi").unwrap();
    let m = build_standard("M").unwrap();
    let t = vsa_core::presentations::tensor(&a, &m);
    let eng = Engine::new(&t);
    assert!(br(&eng, "phi", "xi+").is_zero());
}
