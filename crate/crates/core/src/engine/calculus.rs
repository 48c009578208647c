//! The mode algebra acting on normal forms.
//!
//! A monomial `:A R:` is the state `A_(-1) R`. Everything reduces to three
//! primitive actions on monomials: creation `(∂^n g)_(-1)`, which reorders
//! into canonical position using the commutator formula; annihilation
//! `g_(m)`, m ≥ 0, pushed through the factors one at a time; and modes of
//! lattice exponentials. Modes of composite states come from the Borcherds
//! expansion of a normally ordered product, truncated by weight.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_traits::{One, Zero};

use super::presentation::{Presentation, Weight};
use super::state::{Factor, LambdaPoly, LatVec, Monomial, State};
use super::EngineError;
use crate::scalars::{binom, factorial, falling, Rat};

type Res<T> = Result<T, EngineError>;

fn rat_of(n: num_bigint::BigInt) -> Rat {
    Rat::from(n)
}

fn floor(w: Weight) -> i64 {
    w.floor().to_integer()
}

/// Evaluation context bound to one presentation. Holds memo tables, so
/// one engine per thread; the presentation itself is shared freely.
pub struct Engine<'p> {
    pres: &'p Presentation,
    create_memo: RefCell<HashMap<(Factor, Monomial), Rc<State>>>,
    ann_memo: RefCell<HashMap<(u32, u32, Monomial), Rc<State>>>,
    mode_memo: RefCell<HashMap<(Monomial, i64, Monomial), Rc<State>>>,
    exp_memo: RefCell<HashMap<(LatVec, i64, Monomial), Rc<State>>>,
    pair_memo: RefCell<HashMap<(Factor, Factor), Rc<LambdaPoly>>>,
    derive_memo: RefCell<HashMap<Monomial, Rc<State>>>,
}

impl<'p> Engine<'p> {
    pub fn new(pres: &'p Presentation) -> Self {
        Engine {
            pres,
            create_memo: RefCell::default(),
            ann_memo: RefCell::default(),
            mode_memo: RefCell::default(),
            exp_memo: RefCell::default(),
            pair_memo: RefCell::default(),
            derive_memo: RefCell::default(),
        }
    }

    pub fn presentation(&self) -> &'p Presentation {
        self.pres
    }

    fn sign(&self, a: u32, b_odd: bool) -> bool {
        self.pres.is_odd(a as usize) && b_odd
    }

    /// `[∂^n g λ ∂^q f] = (-λ)^n (λ+∂)^q [g λ f]`.
    fn pair(&self, a: Factor, b: Factor) -> Res<Rc<LambdaPoly>> {
        if let Some(p) = self.pair_memo.borrow().get(&(a, b)) {
            return Ok(p.clone());
        }
        let base = self.pres.table(a.gen as usize, b.gen as usize);
        let mut out = LambdaPoly::zero();
        for (t, c) in base.iter() {
            let mut d = c.clone();
            let mut derivs = vec![d.clone()];
            for _ in 0..b.deriv {
                d = self.derive(&d)?;
                derivs.push(d.clone());
            }
            for i in 0..=b.deriv {
                let mut coef = rat_of(binom(b.deriv as i64, i));
                if a.deriv % 2 == 1 {
                    coef = -coef;
                }
                out.add_at(t + i + a.deriv, &derivs[(b.deriv - i) as usize].scale_rat(&coef));
            }
        }
        let out = Rc::new(out);
        self.pair_memo.borrow_mut().insert((a, b), out.clone());
        Ok(out)
    }

    /// Normal form of `:∂^n g x:`.
    fn create(&self, f: Factor, x: &Monomial) -> Res<Rc<State>> {
        let key = (f, x.clone());
        if let Some(s) = self.create_memo.borrow().get(&key) {
            return Ok(s.clone());
        }
        let out = self.create_uncached(f, x)?;
        let out = Rc::new(out);
        self.create_memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    fn create_uncached(&self, f: Factor, x: &Monomial) -> Res<State> {
        let Some((b, rest)) = x.split_first() else {
            return Ok(State::monomial(x.prepend(f)));
        };
        if f < b || (f == b && !self.pres.is_odd(f.gen as usize)) {
            return Ok(State::monomial(x.prepend(f)));
        }
        let rest_state = State::monomial(rest.clone());
        let mut out = State::zero();
        let pair = self.pair(f, b)?;
        // [A_(-1), B_(-1)] = Σ_j (-1)^j (A_(j)B)_(-2-j), and (Y)_(-2-j) = (∂^{j+1}Y)_(-1)/(j+1)!
        let mut corr = State::zero();
        for (j, c) in pair.iter() {
            let mut y = c.clone();
            for _ in 0..=j {
                y = self.derive(&y)?;
            }
            let mut coef = Rat::new(1.into(), (j as i64 + 1).into());
            if j % 2 == 1 {
                coef = -coef;
            }
            corr.add_scaled_rat(&self.mode(&y, -1, &rest_state)?, &coef);
        }
        if f == b {
            // odd square: A_(-1)A_(-1) = ½[A_(-1), A_(-1)]
            corr = corr.scale_rat(&Rat::new(1.into(), 2.into()));
            return Ok(corr);
        }
        let inner = self.create(f, &rest)?;
        let swapped = self.create_state(b, &inner)?;
        if self.sign(f.gen, self.pres.is_odd(b.gen as usize)) {
            out -= &swapped;
        } else {
            out += &swapped;
        }
        out += &corr;
        Ok(out)
    }

    fn create_state(&self, f: Factor, s: &State) -> Res<State> {
        let mut out = State::zero();
        for (m, c) in s.terms() {
            out.add_scaled(&*self.create(f, m)?, c);
        }
        Ok(out)
    }

    /// `g_(m) x` for m ≥ 0.
    fn annihilate(&self, g: u32, m: u32, x: &Monomial) -> Res<Rc<State>> {
        let key = (g, m, x.clone());
        if let Some(s) = self.ann_memo.borrow().get(&key) {
            return Ok(s.clone());
        }
        let out = Rc::new(self.annihilate_uncached(g, m, x)?);
        self.ann_memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    fn annihilate_uncached(&self, g: u32, m: u32, x: &Monomial) -> Res<State> {
        let Some((b, rest)) = x.split_first() else {
            if m == 0 {
                if let Some(v) = &x.exp {
                    return Ok(State::term(x.clone(), self.pres.pairing(g as usize, v)));
                }
            }
            return Ok(State::zero());
        };
        let mut out = State::zero();
        let inner = self.annihilate(g, m, &rest)?;
        if !inner.is_zero() {
            let moved = self.create_state(b, &inner)?;
            if self.sign(g, self.pres.is_odd(b.gen as usize)) {
                out -= &moved;
            } else {
                out += &moved;
            }
        }
        // [g_(m), B_(-1)] = Σ_t C(m,t) (g_(t)B)_(m-1-t)
        let pair = self.pair(Factor { gen: g, deriv: 0 }, b)?;
        let rest_state = State::monomial(rest);
        for (t, c) in pair.iter() {
            if t > m {
                break;
            }
            let coef = rat_of(binom(m as i64, t) * factorial(t));
            out.add_scaled_rat(&self.mode(c, m as i64 - 1 - t as i64, &rest_state)?, &coef);
        }
        Ok(out)
    }

    /// `g_(m) x` for any integer m.
    fn gen_mode(&self, g: u32, m: i64, x: &Monomial) -> Res<State> {
        if m < 0 {
            let r = (-m - 1) as u32;
            let s = self.create(Factor { gen: g, deriv: r }, x)?;
            if r <= 1 {
                return Ok((*s).clone());
            }
            Ok(s.scale_rat(&Rat::new(1.into(), factorial(r))))
        } else {
            Ok((*self.annihilate(g, m as u32, x)?).clone())
        }
    }

    /// `(∂^n g)_(t) = (-1)^n [t]_n g_(t-n)`.
    fn factor_mode(&self, f: Factor, t: i64, x: &Monomial) -> Res<State> {
        let mut coef = rat_of(falling(t, f.deriv));
        if coef.is_zero() {
            return Ok(State::zero());
        }
        if f.deriv % 2 == 1 {
            coef = -coef;
        }
        let s = self.gen_mode(f.gen, t - f.deriv as i64, x)?;
        Ok(if coef.is_one() { s } else { s.scale_rat(&coef) })
    }

    /// `y_(s) x` on monomials.
    fn mono_mode(&self, y: &Monomial, s: i64, x: &Monomial) -> Res<Rc<State>> {
        let key = (y.clone(), s, x.clone());
        if let Some(r) = self.mode_memo.borrow().get(&key) {
            return Ok(r.clone());
        }
        let out = Rc::new(self.mono_mode_uncached(y, s, x)?);
        self.mode_memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    fn mono_mode_uncached(&self, y: &Monomial, s: i64, x: &Monomial) -> Res<State> {
        let pres = self.pres;
        let Some((a, b)) = y.split_first() else {
            return match &y.exp {
                None => Ok(if s == -1 { State::monomial(x.clone()) } else { State::zero() }),
                Some(v) => Ok((*self.exp_mode(v, s, x)?).clone()),
            };
        };
        if b.is_vacuum() {
            return self.factor_mode(a, s, x);
        }
        let wx = pres.mono_weight(x);
        let wa = pres.factor_weight(a);
        let wb = pres.mono_weight(&b);
        let odd = self.sign(a.gen, pres.mono_odd(&b));
        let mut out = State::zero();
        // Σ_j A_(-1-j) B_(s+j) x, with A_(-1-j) = (∂^j A)_(-1)/j!
        let j1 = floor(wb + wx - Weight::one()) - s;
        for j in 0..(j1 + 1).max(0) {
            let u = self.mono_mode(&b, s + j, x)?;
            if u.is_zero() {
                continue;
            }
            let mut part = self.create_state(Factor { gen: a.gen, deriv: a.deriv + j as u32 }, &u)?;
            if j > 1 {
                part = part.scale_rat(&Rat::new(1.into(), factorial(j as u32)));
            }
            out += &part;
        }
        // ± Σ_j B_(s-1-j) A_(j) x
        let j2 = floor(wa + wx - Weight::one());
        for j in 0..(j2 + 1).max(0) {
            let v = self.factor_mode(a, j, x)?;
            for (m, c) in v.terms() {
                let r = self.mono_mode(&b, s - 1 - j, m)?;
                out.add_scaled(&r, &if odd { -c } else { c.clone() });
            }
        }
        Ok(out)
    }

    /// `e^γ_(s) x`.
    fn exp_mode(&self, v: &LatVec, s: i64, x: &Monomial) -> Res<Rc<State>> {
        let key = (v.clone(), s, x.clone());
        if let Some(r) = self.exp_memo.borrow().get(&key) {
            return Ok(r.clone());
        }
        let out = Rc::new(self.exp_mode_uncached(v, s, x)?);
        self.exp_memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    fn exp_mode_uncached(&self, v: &LatVec, s: i64, x: &Monomial) -> Res<State> {
        if let Some((b, rest)) = x.split_first() {
            // e^γ_(s) B_(-1) = B_(-1) e^γ_(s) - q!(f,γ) e^γ_(s-q-1)
            let mut out = self.create_state(b, &*self.exp_mode(v, s, &rest)?)?;
            let c = self.pres.pairing(b.gen as usize, v);
            if !c.is_zero() {
                let c = c.scale(&rat_of(factorial(b.deriv)));
                out.add_scaled(&*self.exp_mode(v, s - b.deriv as i64 - 1, &rest)?, &-c);
            }
            return Ok(out);
        }
        if let Some(d) = &x.exp {
            let p = self.pres.lat_pair(v, d);
            if !p.is_zero() {
                return Err(EngineError::NonOrthogonal(format!(
                    "exponential pairing ({}) is nonzero; only orthogonal exponentials are supported",
                    p
                )));
            }
        }
        if s >= 0 {
            return Ok(State::zero());
        }
        let n = (-s - 1) as u32;
        let target = Monomial { factors: Vec::new(), exp: LatVec::add(Some(v), x.exp.as_ref()) };
        self.schur(v, n, target)
    }

    /// `S_N |target⟩` with `N S_N = Σ_n γ_(-n) S_{N-n}`.
    fn schur(&self, v: &LatVec, n: u32, target: Monomial) -> Res<State> {
        let lat = self.pres.lattice().expect("exponential without lattice");
        let mut s: Vec<State> = vec![State::monomial(target)];
        for big_n in 1..=n {
            let mut acc = State::zero();
            for step in 1..=big_n {
                let prev = &s[(big_n - step) as usize];
                // γ_(-step) = Σ_i γ_i (h_i)_(-step)
                for (slot, &h) in lat.basis.iter().enumerate() {
                    let gi = &v.0[slot];
                    if gi.is_zero() {
                        continue;
                    }
                    let f = Factor { gen: h as u32, deriv: step - 1 };
                    let c = gi.scale(&Rat::new(1.into(), factorial(step - 1)));
                    acc.add_scaled(&self.create_state(f, prev)?, &c);
                }
            }
            s.push(acc.scale_rat(&Rat::new(1.into(), (big_n as i64).into())));
        }
        Ok(s.pop().unwrap())
    }

    fn derive_mono(&self, m: &Monomial) -> Res<Rc<State>> {
        if let Some(r) = self.derive_memo.borrow().get(m) {
            return Ok(r.clone());
        }
        let out = match m.split_first() {
            None => match &m.exp {
                None => State::zero(),
                Some(v) => {
                    let lat = self.pres.lattice().expect("exponential without lattice");
                    let mut out = State::zero();
                    for (slot, &h) in lat.basis.iter().enumerate() {
                        if !v.0[slot].is_zero() {
                            out.add_scaled(&*self.create(Factor::new(h, 0), m)?, &v.0[slot]);
                        }
                    }
                    out
                }
            },
            Some((a, rest)) => {
                let mut out = (*self.create(Factor { gen: a.gen, deriv: a.deriv + 1 }, &rest)?).clone();
                let d = self.derive_mono(&rest)?;
                out += &self.create_state(a, &d)?;
                out
            }
        };
        let out = Rc::new(out);
        self.derive_memo.borrow_mut().insert(m.clone(), out.clone());
        Ok(out)
    }

    /// Translation operator ∂.
    pub fn derive(&self, s: &State) -> Res<State> {
        let mut out = State::zero();
        for (m, c) in s.terms() {
            out.add_scaled(&*self.derive_mono(m)?, c);
        }
        Ok(out)
    }

    pub fn derive_n(&self, s: &State, n: u32) -> Res<State> {
        let mut x = s.clone();
        for _ in 0..n {
            x = self.derive(&x)?;
        }
        Ok(x)
    }

    /// `a_(n) b` for any integer n.
    pub fn mode(&self, a: &State, n: i64, b: &State) -> Res<State> {
        let mut out = State::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let r = self.mono_mode(ma, n, mb)?;
                if !r.is_zero() {
                    out.add_scaled(&r, &(ca * cb));
                }
            }
        }
        Ok(out)
    }

    /// Normally ordered product `:ab:`.
    pub fn nop(&self, a: &State, b: &State) -> Res<State> {
        self.mode(a, -1, b)
    }

    pub fn nth_product(&self, a: &State, n: i64, b: &State) -> Res<State> {
        self.mode(a, n, b)
    }

    /// `[a λ b]`, with the coefficient of λ^j equal to `a_(j)b / j!`.
    pub fn bracket(&self, a: &State, b: &State) -> Res<LambdaPoly> {
        let mut out = LambdaPoly::zero();
        for (ma, ca) in a.terms() {
            let wa = self.pres.mono_weight(ma);
            for (mb, cb) in b.terms() {
                let top = floor(wa + self.pres.mono_weight(mb) - Weight::one());
                let c = ca * cb;
                for j in 0..(top + 1).max(0) {
                    let r = self.mono_mode(ma, j, mb)?;
                    if r.is_zero() {
                        continue;
                    }
                    let coef = c.scale(&Rat::new(1.into(), factorial(j as u32)));
                    out.add_at(j as u32, &r.scale(&coef));
                }
            }
        }
        Ok(out)
    }

    pub fn clear_memo(&self) {
        self.create_memo.borrow_mut().clear();
        self.ann_memo.borrow_mut().clear();
        self.mode_memo.borrow_mut().clear();
        self.exp_memo.borrow_mut().clear();
        self.pair_memo.borrow_mut().clear();
        self.derive_memo.borrow_mut().clear();
    }
}
