use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::scalars::{LevelScalar, Rat, ScalarError};

/// One normally ordered factor `∂^deriv g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub gen: u32,
    pub deriv: u32,
}

impl Factor {
    pub fn new(gen: usize, deriv: u32) -> Self {
        Factor { gen: gen as u32, deriv }
    }
}

// Canonical order: generator index ascending, then derivative order descending.
impl Ord for Factor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gen.cmp(&other.gen).then_with(|| other.deriv.cmp(&self.deriv))
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coordinates of a lattice vector over a presentation's lattice basis.
/// Never all zero: the zero vector is represented by the absence of an
/// exponential factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatVec(pub Vec<LevelScalar>);

impl LatVec {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(LevelScalar::is_zero)
    }

    /// Returns `None` for the zero vector.
    pub fn nonzero(self) -> Option<LatVec> {
        if self.is_zero() {
            None
        } else {
            Some(self)
        }
    }

    pub fn add(a: Option<&LatVec>, b: Option<&LatVec>) -> Option<LatVec> {
        match (a, b) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (Some(x), Some(y)) => {
                LatVec(x.0.iter().zip(&y.0).map(|(p, q)| p + q).collect()).nonzero()
            }
        }
    }
}

/// A right-nested normally ordered monomial `:∂^{n1}g1 :∂^{n2}g2 ... e^γ::`,
/// factors in canonical order, with at most one exponential innermost.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub factors: Vec<Factor>,
    pub exp: Option<LatVec>,
}

impl Monomial {
    pub fn vacuum() -> Self {
        Monomial::default()
    }

    pub fn single(f: Factor) -> Self {
        Monomial { factors: vec![f], exp: None }
    }

    pub fn exponential(v: LatVec) -> Self {
        Monomial { factors: Vec::new(), exp: v.nonzero() }
    }

    pub fn is_vacuum(&self) -> bool {
        self.factors.is_empty() && self.exp.is_none()
    }

    /// Splits off the outermost factor.
    pub fn split_first(&self) -> Option<(Factor, Monomial)> {
        let (first, rest) = self.factors.split_first()?;
        Some((*first, Monomial { factors: rest.to_vec(), exp: self.exp.clone() }))
    }

    pub fn prepend(&self, f: Factor) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + 1);
        factors.push(f);
        factors.extend_from_slice(&self.factors);
        Monomial { factors, exp: self.exp.clone() }
    }

    /// Total number of derivatives, the Li-filtration degree of the monomial.
    pub fn deriv_count(&self) -> u32 {
        self.factors.iter().map(|f| f.deriv).sum()
    }
}

/// A finite linear combination of normal-form monomials with nonzero
/// coefficients. The empty combination is the zero state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct State {
    terms: BTreeMap<Monomial, LevelScalar>,
}

impl State {
    pub fn zero() -> Self {
        State::default()
    }

    pub fn vacuum() -> Self {
        Self::scalar(LevelScalar::one())
    }

    pub fn scalar(c: LevelScalar) -> Self {
        Self::term(Monomial::vacuum(), c)
    }

    pub fn term(m: Monomial, c: LevelScalar) -> Self {
        let mut s = State::zero();
        s.add_term(m, c);
        s
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, LevelScalar::one())
    }

    pub fn generator(idx: usize) -> Self {
        Self::monomial(Monomial::single(Factor::new(idx, 0)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LevelScalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, LevelScalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> LevelScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Coefficient of the vacuum.
    pub fn constant_term(&self) -> LevelScalar {
        self.coeff(&Monomial::vacuum())
    }

    pub fn add_term(&mut self, m: Monomial, c: LevelScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &State, c: &LevelScalar) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn add_scaled_rat(&mut self, other: &State, c: &Rat) {
        if num_traits::Zero::is_zero(c) {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v.scale(c));
        }
    }

    pub fn scale(&self, c: &LevelScalar) -> State {
        if c.is_zero() {
            return State::zero();
        }
        State { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn scale_rat(&self, c: &Rat) -> State {
        if num_traits::Zero::is_zero(c) {
            return State::zero();
        }
        State { terms: self.terms.iter().map(|(m, v)| (m.clone(), v.scale(c))).collect() }
    }

    pub fn map_scalars(
        &self,
        mut f: impl FnMut(&LevelScalar) -> Result<LevelScalar, ScalarError>,
    ) -> Result<State, ScalarError> {
        let mut out = State::zero();
        for (m, v) in &self.terms {
            let exp = match &m.exp {
                Some(l) => LatVec(l.0.iter().map(&mut f).collect::<Result<_, _>>()?).nonzero(),
                None => None,
            };
            out.add_term(Monomial { factors: m.factors.clone(), exp }, f(v)?);
        }
        Ok(out)
    }

    /// Relabels generators and re-embeds lattice coordinates.
    pub fn remap(&self, gen: &dyn Fn(u32) -> u32, lat: &dyn Fn(&LatVec) -> LatVec) -> State {
        let mut out = State::zero();
        for (m, v) in &self.terms {
            let mut factors: Vec<Factor> =
                m.factors.iter().map(|f| Factor { gen: gen(f.gen), deriv: f.deriv }).collect();
            factors.sort();
            out.add_term(Monomial { factors, exp: m.exp.as_ref().map(lat) }, v.clone());
        }
        out
    }

    /// Keeps the terms satisfying the predicate.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> State {
        State { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, v)| (m.clone(), v.clone())).collect() }
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }
}

impl AddAssign<&State> for State {
    fn add_assign(&mut self, rhs: &State) {
        for (m, v) in &rhs.terms {
            self.add_term(m.clone(), v.clone());
        }
    }
}

impl SubAssign<&State> for State {
    fn sub_assign(&mut self, rhs: &State) {
        for (m, v) in &rhs.terms {
            self.add_term(m.clone(), -v);
        }
    }
}

impl Add for &State {
    type Output = State;
    fn add(self, rhs: &State) -> State {
        let mut s = self.clone();
        s += rhs;
        s
    }
}

impl Sub for &State {
    type Output = State;
    fn sub(self, rhs: &State) -> State {
        let mut s = self.clone();
        s -= rhs;
        s
    }
}

impl Neg for &State {
    type Output = State;
    fn neg(self) -> State {
        State { terms: self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect() }
    }
}

/// `Σ λ^n coeffs[n]`, where `coeffs[n] = a_(n)b / n!`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LambdaPoly {
    coeffs: BTreeMap<u32, State>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly::default()
    }

    pub fn constant(s: State) -> Self {
        let mut p = LambdaPoly::zero();
        p.add_at(0, &s);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, n: u32) -> State {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, n: u32) -> Option<&State> {
        self.coeffs.get(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &State)> {
        self.coeffs.iter().map(|(n, s)| (*n, s))
    }

    pub fn add_at(&mut self, n: u32, s: &State) {
        if s.is_zero() {
            return;
        }
        let e = self.coeffs.entry(n).or_default();
        *e += s;
        if e.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn set(&mut self, n: u32, s: State) {
        if s.is_zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, s);
        }
    }

    pub fn scale(&self, c: &LevelScalar) -> LambdaPoly {
        let mut p = LambdaPoly::zero();
        for (n, s) in &self.coeffs {
            p.set(*n, s.scale(c));
        }
        p
    }

    pub fn map_states(&self, mut f: impl FnMut(&State) -> State) -> LambdaPoly {
        let mut p = LambdaPoly::zero();
        for (n, s) in &self.coeffs {
            p.set(*n, f(s));
        }
        p
    }

    pub fn try_map_states<E>(&self, mut f: impl FnMut(&State) -> Result<State, E>) -> Result<LambdaPoly, E> {
        let mut p = LambdaPoly::zero();
        for (n, s) in &self.coeffs {
            p.set(*n, f(s)?);
        }
        Ok(p)
    }
}

impl Sub for &LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut p = self.clone();
        for (n, s) in &rhs.coeffs {
            p.add_at(*n, &-s);
        }
        p
    }
}

impl Add for &LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut p = self.clone();
        for (n, s) in &rhs.coeffs {
            p.add_at(*n, s);
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_order_is_generator_then_descending_derivative() {
        let mut v = vec![Factor::new(1, 0), Factor::new(0, 0), Factor::new(1, 3), Factor::new(0, 2)];
        v.sort();
        assert_eq!(v, vec![Factor::new(0, 2), Factor::new(0, 0), Factor::new(1, 3), Factor::new(1, 0)]);
    }

    #[test]
    fn cancelling_terms_leave_zero() {
        let mut s = State::generator(0);
        s.add_term(Monomial::single(Factor::new(0, 0)), LevelScalar::int(-1));
        assert!(s.is_zero());
        let mut p = LambdaPoly::constant(State::vacuum());
        p.add_at(0, &-&State::vacuum());
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }
}
