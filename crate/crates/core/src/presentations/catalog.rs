//! Named presentations. Everything is built at generic level `k`; numeric
//! levels are obtained with [`Presentation::specialize`].

use crate::engine::{
    parse, Engine, EngineError, LambdaPoly, LatVec, Parity, Presentation, PresentationBuilder, State, Weight,
};
use crate::scalars::{factorial, rat, LevelScalar, Rat};

use super::lie::{affine_gl, affine_sl};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown algebra `{0}`; known: {1}")]
    UnknownLabel(String, String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

pub const LABELS: &[&str] = &[
    "A_phi", "M", "betagamma", "Wedge", "Heis", "pi_h", "V_gl11", "V_gl21", "V_gl2", "V_sl11", "V_sl21", "V_sl2",
    "Vl_sl2", "W_sl21", "W_gl21", "Pi", "Pi_half", "Vinf_sl2", "Vinf_gl2", "Wak", "Wak_red", "C_gl21",
    "V_nplus", "pi_J",
];

fn w(n: i64, d: i64) -> Weight {
    Weight::new(n, d)
}

/// Sets `[left λ right]` from `(n, a_(n)b)` pairs given as expression text,
/// parsed against the generators declared so far. Tables are written with
/// n-th products, i.e. as coefficients of λ^n/n!, the way they are usually
/// displayed.
pub fn set_text(b: &mut PresentationBuilder, left: &str, right: &str, coeffs: &[(u32, &str)]) {
    let draft = b.draft();
    let eng = Engine::new(&draft);
    let mut p = LambdaPoly::zero();
    for (n, text) in coeffs {
        let e = parse(text, &draft).unwrap_or_else(|err| panic!("bad table entry `{text}`: {err}"));
        let s = eng.normalize(&e).unwrap_or_else(|err| panic!("bad table entry `{text}`: {err}"));
        p.add_at(*n, &s.scale_rat(&Rat::new(1.into(), factorial(*n))));
    }
    let i = b.index_of(left).expect("left generator");
    let j = b.index_of(right).expect("right generator");
    b.set(i, j, p);
}

fn pair_system(label: &str, x: &str, y: &str, parity: Parity, wx: Weight, wy: Weight) -> Presentation {
    let mut b = PresentationBuilder::new(label);
    b.generator(x, parity, wx);
    b.generator(y, parity, wy);
    set_text(&mut b, x, y, &[(0, "1")]);
    b.build().unwrap()
}

/// bc-system: odd φ, φ* with `[φ λ φ*] = 1`.
pub fn bc_system() -> Presentation {
    pair_system("A_phi", "phi", "phis", Parity::Odd, w(1, 2), w(1, 2))
}

/// βγ-system: even a, a* with `[a λ a*] = 1`.
pub fn beta_gamma() -> Presentation {
    pair_system("betagamma", "a", "as", Parity::Even, w(1, 2), w(1, 2))
}

/// Commutative differential polynomials in even ξ±.
pub fn commutative(label: &str, names: &[&str], weight: Weight) -> Presentation {
    let mut b = PresentationBuilder::new(label);
    for n in names {
        b.generator(n, Parity::Even, weight);
    }
    b.build().unwrap()
}

/// Charged fermions φ_i, φ_i* (i = 2, 3) with parity opposite to e_{1,i}:
/// φ2, φ2* odd and φ3, φ3* even. Weights 0 for φ_i and 1 for φ_i*.
pub fn charged_fermions() -> Presentation {
    let mut b = PresentationBuilder::new("Wedge");
    b.generator("phi2", Parity::Odd, w(0, 1));
    b.generator("phi2s", Parity::Odd, w(1, 1));
    b.generator("phi3", Parity::Even, w(0, 1));
    b.generator("phi3s", Parity::Even, w(1, 1));
    set_text(&mut b, "phi2", "phi2s", &[(0, "1")]);
    set_text(&mut b, "phi3", "phi3s", &[(0, "1")]);
    b.build().unwrap()
}

/// Heisenberg algebra with `[x_i λ x_j] = G_ij λ`; the generators form a
/// lattice basis so exponentials `exp(...)` can be formed against them.
pub fn heisenberg(label: &str, names: &[&str], gram: Vec<Vec<LevelScalar>>) -> Presentation {
    let mut b = PresentationBuilder::new(label);
    let idx: Vec<usize> = names.iter().map(|n| b.generator(n, Parity::Even, w(1, 1))).collect();
    b.set_lattice(idx, gram);
    b.build().unwrap()
}

fn kp1() -> LevelScalar {
    &LevelScalar::k() + &LevelScalar::one()
}

/// π_h^{κ-κ_c} for gl_{2|1}: `[ê_i λ ê_j] = (k+1) diag(1,1,-1)`, with
/// b0 = ê1+ê2+ê3, b1 = ê1-ê2, b2 = ê2+ê3.
pub fn wakimoto_heisenberg() -> Presentation {
    let d = [1, 1, -1];
    let gram = (0..3)
        .map(|i| (0..3).map(|j| if i == j { &kp1() * &LevelScalar::int(d[i]) } else { LevelScalar::zero() }).collect())
        .collect();
    let h = heisenberg("Heis", &["ehat1", "ehat2", "ehat3"], gram);
    with_aliases(h, &[("b0", "ehat1 + ehat2 + ehat3"), ("b1", "ehat1 - ehat2"), ("b2", "ehat2 + ehat3")])
}

/// Adds aliases given as expression text.
pub fn with_aliases(p: Presentation, aliases: &[(&str, &str)]) -> Presentation {
    let eng = Engine::new(&p);
    let states: Vec<(String, State)> =
        aliases.iter().map(|(n, t)| (n.to_string(), eng.eval(t).expect("alias expression"))).collect();
    drop(eng);
    rebuild(&p, |b| {
        for (n, s) in &states {
            b.alias(n, s.clone());
        }
    })
}

/// Reassembles a presentation through a builder, allowing additions.
pub fn rebuild(p: &Presentation, extra: impl FnOnce(&mut PresentationBuilder)) -> Presentation {
    let mut b = PresentationBuilder::new(&p.label);
    for g in p.generators() {
        b.generator(&g.name, g.parity, g.weight);
    }
    for i in 0..p.len() {
        for j in 0..p.len() {
            b.set(i, j, p.table(i, j).clone());
        }
    }
    if let Some(l) = p.lattice() {
        b.set_lattice(l.basis.clone(), l.gram.clone());
    }
    for g in p.exponentials() {
        if let crate::engine::GeneratorKind::LatticeExponential(v) = &g.kind {
            b.exponential(&g.name, v.clone());
        }
    }
    for (n, s) in p.aliases() {
        b.alias(n, s.clone());
    }
    extra(&mut b);
    b.build().expect("rebuild of a valid presentation")
}

/// W^κ(sl_{2|1}) on J, S, G±.
pub fn w_sl21() -> Presentation {
    let mut b = PresentationBuilder::new("W_sl21");
    b.generator("J", Parity::Even, w(1, 1));
    b.generator("S", Parity::Even, w(2, 1));
    b.generator("G+", Parity::Odd, w(3, 2));
    b.generator("G-", Parity::Odd, w(3, 2));
    set_text(&mut b, "J", "J", &[(1, "-(2*k+1)")]);
    set_text(&mut b, "J", "G+", &[(0, "G+")]);
    set_text(&mut b, "J", "G-", &[(0, "-G-")]);
    set_text(&mut b, "S", "S", &[(3, "-(k+1)*3/2*(k+1)*(2*k+1)"), (1, "-(k+1)*2*S"), (0, "-(k+1)*D(S,1)")]);
    set_text(&mut b, "S", "J", &[(1, "-(k+1)*J"), (0, "-(k+1)*D(J,1)")]);
    set_text(&mut b, "S", "G+", &[(1, "-(k+1)*3/2*G+"), (0, "-(k+1)*D(G+,1)")]);
    set_text(&mut b, "S", "G-", &[(1, "-(k+1)*3/2*G-"), (0, "-(k+1)*D(G-,1)")]);
    set_text(&mut b, "G+", "G+", &[]);
    set_text(&mut b, "G-", "G-", &[]);
    set_text(&mut b, "G+", "G-", &[(2, "(k+1)*(2*k+1)"), (1, "-(k+1)*J"), (0, "S - (k+1)/2*D(J,1)")]);
    b.build().unwrap()
}

/// W^κ(gl_{2|1}) = π_h ⊗ W^κ(sl_{2|1}) with `[h λ h] = (k+1)λ`.
pub fn w_gl21() -> Presentation {
    Presentation::tensor(&pi_h(), &w_sl21()).with_label("W_gl21")
}

fn pi_h() -> Presentation {
    let mut b = PresentationBuilder::new("pi_h");
    b.generator("h", Parity::Even, w(1, 1));
    let mut p = LambdaPoly::zero();
    p.set(1, State::scalar(kp1()));
    b.set(0, 0, p);
    b.build().unwrap()
}

/// V^ℓ(sl_2) with ℓ = -2 + 1/(k+1).
pub fn affine_sl2_dual() -> Presentation {
    let mut b = PresentationBuilder::new("Vl_sl2");
    b.generator("E", Parity::Even, w(1, 1));
    b.generator("H", Parity::Even, w(1, 1));
    b.generator("F", Parity::Even, w(1, 1));
    let l = "(-2 + 1/(k+1))";
    set_text(&mut b, "E", "F", &[(0, "H"), (1, l)]);
    set_text(&mut b, "H", "E", &[(0, "2*E")]);
    set_text(&mut b, "H", "F", &[(0, "-2*F")]);
    set_text(&mut b, "H", "H", &[(1, &format!("2*{l}"))]);
    set_text(&mut b, "E", "E", &[]);
    set_text(&mut b, "F", "F", &[]);
    b.build().unwrap()
}

/// Π^{1/m}(0): c, d with (c,c)=0, (c,d)=2, (d,d)=0, exponentials e^{±c/m}
/// (and e^{±c}), aliases u = (c+d)/2, v = (c-d)/2.
pub fn half_lattice(label: &str, m: i64) -> Presentation {
    let mut b = PresentationBuilder::new(label);
    let c = b.generator("c", Parity::Even, w(1, 1));
    let d = b.generator("d", Parity::Even, w(1, 1));
    let z = LevelScalar::zero;
    b.set_lattice(vec![c, d], vec![vec![z(), LevelScalar::int(2)], vec![LevelScalar::int(2), z()]]);
    let e = |p: i64| LatVec(vec![LevelScalar::frac(p, m), z()]);
    b.exponential("ec", LatVec(vec![LevelScalar::one(), z()]));
    b.exponential("emc", LatVec(vec![LevelScalar::int(-1), z()]));
    if m == 2 {
        b.exponential("ehc", e(1));
        b.exponential("emhc", e(-1));
    }
    let half = Rat::new(1.into(), 2.into());
    let mut u = State::zero();
    u.add_scaled_rat(&State::generator(c), &half);
    u.add_scaled_rat(&State::generator(d), &half);
    let mut v = State::zero();
    v.add_scaled_rat(&State::generator(c), &half);
    v.add_scaled_rat(&State::generator(d), &-half);
    b.alias("u", u);
    b.alias("v", v);
    b.build().unwrap()
}

/// Free-field target A ⊗ π_h of the Wakimoto realization: even a (weight 1),
/// a* (weight 0), odd φ2, φ3 (weight 1) and φ2*, φ3* (weight 0), plus ê_i.
pub fn wakimoto_target() -> Presentation {
    let mut b = PresentationBuilder::new("A");
    b.generator("a", Parity::Even, w(1, 1));
    b.generator("as", Parity::Even, w(0, 1));
    b.generator("phi2", Parity::Odd, w(1, 1));
    b.generator("phi2s", Parity::Odd, w(0, 1));
    b.generator("phi3", Parity::Odd, w(1, 1));
    b.generator("phi3s", Parity::Odd, w(0, 1));
    set_text(&mut b, "a", "as", &[(0, "1")]);
    set_text(&mut b, "phi2", "phi2s", &[(0, "1")]);
    set_text(&mut b, "phi3", "phi3s", &[(0, "1")]);
    let a = b.build().unwrap();
    Presentation::tensor(&a, &wakimoto_heisenberg()).with_label("Wak")
}

/// Reduced target Ā ⊗ π_h with Ā = ⟨φ2, φ2*⟩.
pub fn wakimoto_reduced_target() -> Presentation {
    let mut b = PresentationBuilder::new("Abar");
    b.generator("phi2", Parity::Odd, w(1, 1));
    b.generator("phi2s", Parity::Odd, w(0, 1));
    set_text(&mut b, "phi2", "phi2s", &[(0, "1")]);
    let a = b.build().unwrap();
    Presentation::tensor(&a, &wakimoto_heisenberg()).with_label("Wak_red")
}

/// BRST ambient V^κ(gl_{2|1}) ⊗ ∧•.
pub fn brst_ambient() -> Presentation {
    Presentation::tensor(&affine_gl(2, 1, "V_gl21"), &charged_fermions()).with_label("C_gl21")
}

/// V^0(n_+) for the upper nilpotent part of gl_{2|1}: even e12, odd e23
/// and e13, with `[e12 λ e23] = e13` and no central term.
pub fn nilpotent_plus() -> Presentation {
    let mut b = PresentationBuilder::new("V_nplus");
    b.generator("e12", Parity::Even, w(1, 1));
    b.generator("e13", Parity::Odd, w(1, 1));
    b.generator("e23", Parity::Odd, w(1, 1));
    set_text(&mut b, "e12", "e23", &[(0, "e13")]);
    b.build().unwrap()
}

/// The Heisenberg quotient π_J of W^{κ_c}(sl_{2|1}): `[J λ J] = λ`.
pub fn pi_j() -> Presentation {
    let mut b = PresentationBuilder::new("pi_J");
    b.generator("J", Parity::Even, w(1, 1));
    set_text(&mut b, "J", "J", &[(1, "1")]);
    b.build().unwrap()
}

/// `A*B*C`: tensor product of catalog entries, left to right.
pub fn build_product(spec: &str) -> Result<Presentation, CatalogError> {
    let mut parts = spec.split('*').map(str::trim);
    let first = parts.next().unwrap_or_default();
    let mut acc = build_standard(first)?;
    for part in parts {
        acc = Presentation::tensor(&acc, &build_standard(part)?);
    }
    Ok(acc)
}

/// Builds a catalog entry at generic level.
pub fn build_standard(label: &str) -> Result<Presentation, CatalogError> {
    Ok(match label {
        "A_phi" => bc_system(),
        "M" => commutative("M", &["xi+", "xi-"], w(1, 2)),
        "betagamma" => beta_gamma(),
        "Wedge" => charged_fermions(),
        "Heis" => wakimoto_heisenberg(),
        "pi_h" => pi_h(),
        "V_gl11" => affine_gl(1, 1, "V_gl11"),
        "V_gl21" => affine_gl(2, 1, "V_gl21"),
        "V_gl2" => affine_gl(2, 0, "V_gl2"),
        "V_sl11" => affine_sl(1, 1, "V_sl11"),
        "V_sl21" => affine_sl(2, 1, "V_sl21"),
        "V_sl2" => affine_sl(2, 0, "V_sl2"),
        "Vl_sl2" => affine_sl2_dual(),
        "W_sl21" => w_sl21(),
        "W_gl21" => w_gl21(),
        "Pi" => half_lattice("Pi", 1),
        "Pi_half" => half_lattice("Pi_half", 2),
        "Vinf_sl2" => commutative("Vinf_sl2", &["Eb", "Hb", "Fb"], w(1, 1)),
        "Vinf_gl2" => commutative("Vinf_gl2", &["Eb", "Hb", "Fb", "Ib"], w(1, 1)),
        "Wak" => wakimoto_target(),
        "Wak_red" => wakimoto_reduced_target(),
        "C_gl21" => brst_ambient(),
        "V_nplus" => nilpotent_plus(),
        "pi_J" => pi_j(),
        _ if label.contains('*') => return build_product(label),
        _ => return Err(CatalogError::UnknownLabel(label.to_string(), LABELS.join(", "))),
    })
}

/// The value of `k` at which the entry's form is critical, if it has one.
pub fn critical_level(label: &str) -> Option<Rat> {
    match label {
        "V_gl2" | "V_sl2" => Some(rat(-2)),
        "A_phi" | "M" | "betagamma" | "Wedge" | "Pi" | "Pi_half" | "Vinf_sl2" | "Vinf_gl2" | "V_nplus" | "pi_J" => None,
        _ => Some(rat(-1)),
    }
}

/// Level selector shared by the library entry points and the CLI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Level {
    Generic,
    Critical,
    Value(Rat),
}

impl Level {
    pub fn value_for(&self, label: &str) -> Option<Rat> {
        match self {
            Level::Generic => None,
            Level::Critical => critical_level(label).or(Some(rat(-1))),
            Level::Value(v) => Some(v.clone()),
        }
    }

    pub fn apply(&self, label: &str, p: &Presentation) -> Result<Presentation, CatalogError> {
        match self.value_for(label) {
            None => Ok(p.clone()),
            Some(k0) => Ok(p.specialize(&k0)?),
        }
    }
}

/// Catalog entry at a level.
pub fn build_at(label: &str, level: &Level) -> Result<Presentation, CatalogError> {
    let p = build_standard(label)?;
    level.apply(label, &p)
}
