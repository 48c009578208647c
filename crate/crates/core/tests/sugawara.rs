use vsa_core::engine::{Engine, State};
use vsa_core::presentations::GlSuper;
use vsa_core::scalars::rat;
use vsa_core::sugawara::*;

fn eval(eng: &Engine, text: &str) -> State {
    eng.eval(text).unwrap()
}

#[test]
fn s11_is_the_sum_of_diagonal_currents() {
    let pres = gl_presentation(2, 1);
    let eng = Engine::new(&pres);
    let s = ss_vectors(&eng, 1, 2, 1).unwrap();
    assert_eq!(s[0], State::vacuum());
    assert_eq!(s[1], eval(&eng, "e11 + e22 + e33"));
}

#[test]
fn leading_coefficient_is_the_superdimension() {
    // s_{p,0} = str(1) = m - n
    let pres = gl_presentation(2, 1);
    let eng = Engine::new(&pres);
    for p in 1..=3 {
        assert_eq!(ss_vectors(&eng, p, 2, 1).unwrap()[0], eval(&eng, "1"));
    }
    let pres = gl_presentation(1, 1);
    let eng = Engine::new(&pres);
    assert!(ss_vectors(&eng, 2, 1, 1).unwrap()[0].is_zero());
}

#[test]
fn s22_of_gl2() {
    // str (∂+E)^2 = ∂² + 2(e11+e22)_{(-1)}∂ + Σ e_ij e_ji + (e11+e22)_{(-2)}
    let pres = gl_presentation(2, 0);
    let eng = Engine::new(&pres);
    let s = ss_vectors(&eng, 2, 2, 0).unwrap();
    assert_eq!(s[1], eval(&eng, "2*(e11 + e22)"));
    assert_eq!(s[2], eval(&eng, ":e11 e11: + :e12 e21: + :e21 e12: + :e22 e22: + D(e11 + e22, 1)"));
}

#[test]
fn association_order_is_irrelevant() {
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        for p in 1..=3 {
            assert!(associativity_holds(p, m, n), "gl({m}|{n}) p={p}");
        }
    }
}

#[test]
fn supertrace_of_identity() {
    let x = SuperMatrix::identity(GlSuper::new(2, 1));
    let w: Vec<_> = x.supertrace().words().collect();
    assert_eq!(w.len(), 1);
    assert_eq!(w[0].coeff, rat(1));
}

#[test]
fn unsupported_sizes_are_rejected() {
    assert!(ss_words(2, 3, 2).is_err());
    assert!(ss_words(2, 0, 0).is_err());
}

#[test]
fn central_at_critical_level_gl11() {
    let pres = gl_presentation(1, 1).specialize(&rat(-1)).unwrap();
    for e in centrality_table(&pres, 1, 1, 3, 2).unwrap() {
        assert!(e.central, "p={} r={}: {:?}", e.p, e.r, e.witnesses);
    }
}

#[test]
fn central_at_critical_level_gl21() {
    let pres = gl_presentation(2, 1).specialize(&rat(-1)).unwrap();
    for e in centrality_table(&pres, 2, 1, 3, 2).unwrap() {
        assert!(e.central, "p={} r={}: {:?}", e.p, e.r, e.witnesses);
    }
}

#[test]
fn central_at_critical_level_gl2() {
    let pres = gl_presentation(2, 0).specialize(&rat(-2)).unwrap();
    for e in centrality_table(&pres, 2, 0, 3, 1).unwrap() {
        assert!(e.central, "p={} r={}: {:?}", e.p, e.r, e.witnesses);
    }
}

#[test]
fn not_central_away_from_critical() {
    let pres = gl_presentation(1, 1);
    let eng = Engine::new(&pres);
    let s = ss_vectors(&eng, 2, 1, 1).unwrap().pop().unwrap();
    let rep = check_central(&eng, &s).unwrap();
    assert!(!rep.central);
    assert!(!rep.witnesses.is_empty());
}
