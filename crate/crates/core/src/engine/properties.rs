//! Randomized checks of the λ-bracket axioms against an engine: skew-symmetry,
//! the Jacobi identity, and the non-commutative Wick formula.
//!
//! Each check is computed by a route that does not share the engine's own
//! reduction path, so agreement is evidence rather than tautology.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{print, Engine, EngineError, LambdaPoly, Monomial, State};
use crate::scalars::{binom, rat, LevelScalar, Rat};

type Res<T> = Result<T, EngineError>;

/// Polynomial in two variables λ, μ with state coefficients.
type Poly2 = BTreeMap<(u32, u32), State>;

fn add2(p: &mut Poly2, key: (u32, u32), s: &State, c: &Rat) {
    let e = p.entry(key).or_insert_with(State::zero);
    e.add_scaled_rat(s, c);
    if e.is_zero() {
        p.remove(&key);
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub algebra: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PropertyReport {
    fn new(property: &str, algebra: &str) -> Self {
        PropertyReport { property: property.into(), algebra: algebra.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(-λ-∂)^n` applied termwise, with overall sign `-(-1)^{p(a)p(b)}`.
fn flip(eng: &Engine, ab: &LambdaPoly, odd_odd: bool) -> Res<LambdaPoly> {
    let mut out = LambdaPoly::zero();
    for (n, c) in ab.iter() {
        let mut d = c.clone();
        for r in 0..=n {
            // the λ^{n-r} ∂^r term
            let mut coef = Rat::from(binom(n as i64, r));
            if n % 2 == 1 {
                coef = -coef;
            }
            if !odd_odd {
                coef = -coef;
            }
            out.add_at(n - r, &d.scale_rat(&coef));
            if r < n {
                d = eng.derive(&d)?;
            }
        }
    }
    Ok(out)
}

fn odd(eng: &Engine, s: &State) -> bool {
    eng.presentation().state_odd(s).unwrap_or(false)
}

/// `[b λ a] = -(-1)^{p(a)p(b)} [a_{-λ-∂} b]`.
pub fn skew_holds(eng: &Engine, a: &State, b: &State) -> Res<bool> {
    let ab = eng.bracket(a, b)?;
    let ba = eng.bracket(b, a)?;
    Ok(ba == flip(eng, &ab, odd(eng, a) && odd(eng, b))?)
}

/// Both sides of `[a λ [b μ c]] - (-1)^{p(a)p(b)} [b μ [a λ c]] = [[a λ b]_{λ+μ} c]`.
pub fn jacobi_sides(eng: &Engine, a: &State, b: &State, c: &State) -> Res<(Poly2, Poly2)> {
    let one = rat(1);
    let sign = if odd(eng, a) && odd(eng, b) { -one.clone() } else { one.clone() };
    let mut lhs = Poly2::new();
    for (m, bc) in eng.bracket(b, c)?.iter() {
        for (n, x) in eng.bracket(a, bc)?.iter() {
            add2(&mut lhs, (n, m), x, &one);
        }
    }
    for (n, ac) in eng.bracket(a, c)?.iter() {
        for (m, x) in eng.bracket(b, ac)?.iter() {
            add2(&mut lhs, (n, m), x, &-sign.clone());
        }
    }
    let mut rhs = Poly2::new();
    for (n, ab) in eng.bracket(a, b)?.iter() {
        for (j, y) in eng.bracket(ab, c)?.iter() {
            // λ^n (λ+μ)^j
            for t in 0..=j {
                add2(&mut rhs, (n + t, j - t), y, &Rat::from(binom(j as i64, t)));
            }
        }
    }
    Ok((lhs, rhs))
}

/// Right side of the Wick formula
/// `[a λ :bc:] = :[a λ b] c: + (-1)^{p(a)p(b)} :b [a λ c]: + ∫_0^λ [[a λ b]_μ c] dμ`.
pub fn wick_rhs(eng: &Engine, a: &State, b: &State, c: &State) -> Res<LambdaPoly> {
    let mut out = LambdaPoly::zero();
    for (n, x) in eng.bracket(a, b)?.iter() {
        out.add_at(n, &eng.nop(x, c)?);
        for (j, y) in eng.bracket(x, c)?.iter() {
            out.add_at(n + j + 1, &y.scale_rat(&Rat::new(1.into(), (j as i64 + 1).into())));
        }
    }
    let sign = if odd(eng, a) && odd(eng, b) { rat(-1) } else { rat(1) };
    for (n, x) in eng.bracket(a, c)?.iter() {
        out.add_at(n, &eng.nop(b, x)?.scale_rat(&sign));
    }
    Ok(out)
}

/// `:bc:` rewritten as `(-1)^{p(b)p(c)} :cb: + ∫_{-∂}^0 [b λ c] dλ`.
pub fn reordered(eng: &Engine, b: &State, c: &State) -> Res<State> {
    let sign = if odd(eng, b) && odd(eng, c) { rat(-1) } else { rat(1) };
    let mut out = eng.nop(c, b)?.scale_rat(&sign);
    for (j, y) in eng.bracket(b, c)?.iter() {
        // ∫_{-∂}^0 λ^j dλ = (-1)^j ∂^{j+1} / (j+1)
        let mut coef = Rat::new(1.into(), (j as i64 + 1).into());
        if j % 2 == 1 {
            coef = -coef;
        }
        out.add_scaled_rat(&eng.derive_n(y, j + 1)?, &coef);
    }
    Ok(out)
}

/// Random single-term states of low weight.
pub struct Sampler<'e, 'p> {
    eng: &'e Engine<'p>,
    rng: ChaCha8Rng,
    atoms: Vec<State>,
}

impl<'e, 'p> Sampler<'e, 'p> {
    pub fn new(eng: &'e Engine<'p>, seed: u64) -> Self {
        let p = eng.presentation();
        let mut atoms: Vec<State> = (0..p.len()).map(State::generator).collect();
        for g in p.exponentials() {
            if let super::GeneratorKind::LatticeExponential(v) = &g.kind {
                atoms.push(State::monomial(Monomial::exponential(v.clone())));
            }
        }
        Sampler { eng, rng: ChaCha8Rng::seed_from_u64(seed), atoms }
    }

    fn atom(&mut self) -> Res<State> {
        let a = self.atoms.choose(&mut self.rng).expect("non-empty presentation").clone();
        let d = if self.rng.gen_bool(0.3) { 1 } else { 0 };
        self.eng.derive_n(&a, d)
    }

    fn coeff(&mut self) -> LevelScalar {
        match self.rng.gen_range(0..5) {
            0 => LevelScalar::int(-1),
            1 => LevelScalar::int(2),
            2 => LevelScalar::frac(1, 2),
            3 => &LevelScalar::k() + &LevelScalar::int(3),
            _ => LevelScalar::one(),
        }
    }

    /// A generator, a derivative, or a normally ordered pair, keeping one
    /// monomial of the result so that the parity is homogeneous.
    pub fn state(&mut self) -> Res<State> {
        loop {
            let s = if self.rng.gen_bool(0.6) {
                self.atom()?
            } else {
                let x = self.atom()?;
                let y = self.atom()?;
                self.eng.nop(&x, &y)?
            };
            let terms: Vec<_> = s.terms().collect();
            if terms.is_empty() {
                continue;
            }
            let (m, _) = terms[self.rng.gen_range(0..terms.len())];
            return Ok(State::term(m.clone(), self.coeff()));
        }
    }
}

fn show(eng: &Engine, s: &State) -> String {
    print(s, eng.presentation())
}

/// Skew-symmetry on every ordered generator pair plus `samples` random pairs.
pub fn skew_suite(eng: &Engine, samples: usize, seed: u64) -> Res<PropertyReport> {
    let p = eng.presentation();
    let mut rep = PropertyReport::new("skew-symmetry", &p.label);
    for i in 0..p.len() {
        for j in 0..p.len() {
            let (a, b) = (State::generator(i), State::generator(j));
            rep.checked += 1;
            if !skew_holds(eng, &a, &b)? {
                rep.failures.push(format!("({}, {})", p.name(i), p.name(j)));
            }
        }
    }
    let mut s = Sampler::new(eng, seed);
    for _ in 0..samples {
        let (a, b) = (s.state()?, s.state()?);
        rep.checked += 1;
        if !skew_holds(eng, &a, &b)? {
            rep.failures.push(format!("({}, {})", show(eng, &a), show(eng, &b)));
        }
    }
    Ok(rep)
}

pub fn jacobi_suite(eng: &Engine, samples: usize, seed: u64) -> Res<PropertyReport> {
    let mut rep = PropertyReport::new("jacobi", &eng.presentation().label);
    let mut s = Sampler::new(eng, seed);
    for _ in 0..samples {
        let (a, b, c) = (s.state()?, s.state()?, s.state()?);
        let (l, r) = jacobi_sides(eng, &a, &b, &c)?;
        rep.checked += 1;
        if l != r {
            rep.failures.push(format!("({}, {}, {})", show(eng, &a), show(eng, &b), show(eng, &c)));
        }
    }
    Ok(rep)
}

/// `[a λ :bc:]` three ways: the engine on the normal form, the engine on the
/// quasi-commutativity rewrite, and the Wick formula from generator-level
/// brackets.
pub fn wick_suite(eng: &Engine, samples: usize, seed: u64) -> Res<PropertyReport> {
    let mut rep = PropertyReport::new("wick", &eng.presentation().label);
    let mut s = Sampler::new(eng, seed);
    for _ in 0..samples {
        let (a, b, c) = (s.state()?, s.state()?, s.state()?);
        let direct = eng.bracket(&a, &eng.nop(&b, &c)?)?;
        let swapped = eng.bracket(&a, &reordered(eng, &b, &c)?)?;
        let wick = wick_rhs(eng, &a, &b, &c)?;
        rep.checked += 1;
        if direct != swapped || direct != wick {
            rep.failures.push(format!("({}, {}, {})", show(eng, &a), show(eng, &b), show(eng, &c)));
        }
    }
    Ok(rep)
}
