//! Supersymmetric polynomials in u_1..u_m | v_1..v_n, their differential
//! extension inside R_∞ = Q[∂^N u_i, ∂^N v_j], and graded dimensions of the
//! algebra generated by all ∂^r s_p.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::{Echelon, SparseRow};
use crate::scalars::{rat, Rat};

/// A variable `∂^d u_i`, `∂^d v_j`, or an auxiliary `∂^d t` used by the
/// supersymmetry test. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    U(u32, u32),
    V(u32, u32),
    T(u32),
}

impl Var {
    pub fn deriv(self) -> u32 {
        match self {
            Var::U(_, d) | Var::V(_, d) | Var::T(d) => d,
        }
    }

    pub fn weight(self) -> u32 {
        self.deriv() + 1
    }

    fn bump(self) -> Var {
        match self {
            Var::U(i, d) => Var::U(i, d + 1),
            Var::V(j, d) => Var::V(j, d + 1),
            Var::T(d) => Var::T(d + 1),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (base, d) = match self {
            Var::U(i, d) => (format!("u{i}"), *d),
            Var::V(j, d) => (format!("v{j}"), *d),
            Var::T(d) => ("t".to_string(), *d),
        };
        match d {
            0 => write!(f, "{base}"),
            1 => write!(f, "D({base})"),
            _ => write!(f, "D^{d}({base})"),
        }
    }
}

/// Sorted (variable, exponent) pairs with positive exponents.
pub type Mono = Vec<(Var, u32)>;

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut m: BTreeMap<Var, u32> = a.iter().copied().collect();
    for &(v, e) in b {
        *m.entry(v).or_insert(0) += e;
    }
    m.into_iter().collect()
}

fn mono_weight(m: &Mono) -> u32 {
    m.iter().map(|(v, e)| v.weight() * e).sum()
}

/// Commutative polynomial with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SuperPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl SuperPoly {
    pub fn zero() -> Self {
        SuperPoly::default()
    }

    pub fn one() -> Self {
        SuperPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = SuperPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = SuperPoly::zero();
        p.add_term(vec![(v, 1)], Rat::one());
        p
    }

    pub fn u(i: u32) -> Self {
        SuperPoly::var(Var::U(i, 0))
    }

    pub fn v(j: u32) -> Self {
        SuperPoly::var(Var::V(j, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &SuperPoly) -> SuperPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d * c);
        }
        out
    }

    pub fn sub(&self, o: &SuperPoly) -> SuperPoly {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn mul(&self, o: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &o.terms {
                out.add_term(mono_mul(a, b), c * d);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SuperPoly {
        (0..e).fold(SuperPoly::one(), |acc, _| acc.mul(self))
    }

    /// The derivation `∂(∂^N x) = ∂^{N+1} x`.
    pub fn derive(&self) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (m, c) in &self.terms {
            for (k, &(v, e)) in m.iter().enumerate() {
                let mut rest: Mono = m.clone();
                if e == 1 {
                    rest.remove(k);
                } else {
                    rest[k].1 -= 1;
                }
                out.add_term(mono_mul(&rest, &vec![(v.bump(), 1)]), c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    pub fn derive_n(&self, n: u32) -> SuperPoly {
        (0..n).fold(self.clone(), |p, _| p.derive())
    }

    /// Weight if homogeneous, with `wt(∂^N x) = N + 1`.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(mono_weight);
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    pub fn has_derivatives(&self) -> bool {
        self.terms.keys().any(|m| m.iter().any(|(v, _)| v.deriv() > 0))
    }

    /// Substitutes each variable through `f`; variables for which `f`
    /// returns `None` are kept.
    pub fn substitute(&self, f: &dyn Fn(Var) -> Option<SuperPoly>) -> SuperPoly {
        let mut out = SuperPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = SuperPoly::constant(c.clone());
            for &(v, e) in m {
                let x = f(v).unwrap_or_else(|| SuperPoly::var(v));
                acc = acc.mul(&x.pow(e));
            }
            out = out.add(&acc);
        }
        out
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c < &Rat::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let body: Vec<String> =
                m.iter().map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") }).collect();
            match (a.is_one(), body.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", body.join("*"))?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{}", body.join("*"))?,
            }
        }
        Ok(())
    }
}

/// `s_p = Σ u_i^p - (-1)^p Σ v_j^p`.
pub fn power_sum(p: u32, m: u32, n: u32) -> SuperPoly {
    let mut out = SuperPoly::zero();
    for i in 1..=m {
        out = out.add(&SuperPoly::u(i).pow(p));
    }
    let sign = if p.is_multiple_of(2) { rat(-1) } else { rat(1) };
    for j in 1..=n {
        out = out.add(&SuperPoly::v(j).pow(p).scale(&sign));
    }
    out
}

/// Invariance under 𝔖_m × 𝔖_n (acting on every derivative order at once)
/// and independence of `t` after `u_m = t`, `v_n = -t` (with `∂^N u_m =
/// ∂^N t`, `∂^N v_n = -∂^N t`). For ∂-free input this is the usual
/// definition; in general it is satisfied by every element of the
/// differential algebra generated by supersymmetric polynomials.
pub fn is_supersymmetric(f: &SuperPoly, m: u32, n: u32) -> bool {
    for i in 1..m {
        let swapped = f.substitute(&|v| match v {
            Var::U(a, d) if a == i => Some(SuperPoly::var(Var::U(i + 1, d))),
            Var::U(a, d) if a == i + 1 => Some(SuperPoly::var(Var::U(i, d))),
            _ => None,
        });
        if &swapped != f {
            return false;
        }
    }
    for j in 1..n {
        let swapped = f.substitute(&|v| match v {
            Var::V(a, d) if a == j => Some(SuperPoly::var(Var::V(j + 1, d))),
            Var::V(a, d) if a == j + 1 => Some(SuperPoly::var(Var::V(j, d))),
            _ => None,
        });
        if &swapped != f {
            return false;
        }
    }
    if m == 0 || n == 0 {
        return true;
    }
    let g = f.substitute(&|v| match v {
        Var::U(a, d) if a == m => Some(SuperPoly::var(Var::T(d))),
        Var::V(a, d) if a == n => Some(SuperPoly::var(Var::T(d)).scale(&rat(-1))),
        _ => None,
    });
    !g.terms.keys().any(|mono| mono.iter().any(|(v, _)| matches!(v, Var::T(_))))
}

/// Multisets of generator indices with weights summing to `w`, each list
/// non-decreasing.
fn weight_partitions(weights: &[u32], w: u32) -> Vec<Vec<usize>> {
    fn go(weights: &[u32], w: u32, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if w == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..weights.len() {
            if weights[i] <= w {
                cur.push(i);
                go(weights, w - weights[i], i, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(weights, w, 0, &mut Vec::new(), &mut out);
    out
}

/// Rank of a list of polynomials over Q.
pub fn poly_rank(polys: &[SuperPoly]) -> usize {
    let mut index: BTreeMap<Mono, usize> = BTreeMap::new();
    let mut ech = Echelon::<Rat>::new();
    for p in polys {
        let mut row = SparseRow::new();
        for (m, c) in p.terms() {
            let l = index.len();
            let i = *index.entry(m.clone()).or_insert(l);
            row.insert(i, c.clone());
        }
        ech.insert(row);
    }
    ech.rank()
}

/// The differential generators `∂^r s_p` with `p + r ≤ max_weight`.
pub fn affine_generators(m: u32, n: u32, max_weight: u32) -> Vec<SuperPoly> {
    let mut gens = Vec::new();
    for p in 1..=max_weight {
        let s = power_sum(p, m, n);
        for r in 0..=(max_weight - p) {
            gens.push(s.derive_n(r));
        }
    }
    gens
}

/// Spanning set of the weight-`w` piece of Λ^{m|n}_aff: all products of
/// `∂^r s_p` of total weight `w`.
pub fn affine_span(m: u32, n: u32, w: u32) -> Vec<SuperPoly> {
    if w == 0 {
        return vec![SuperPoly::one()];
    }
    let gens = affine_generators(m, n, w);
    let weights: Vec<u32> = gens.iter().map(|g| g.weight().expect("homogeneous")).collect();
    weight_partitions(&weights, w)
        .into_iter()
        .map(|idx| idx.iter().fold(SuperPoly::one(), |acc, &i| acc.mul(&gens[i])))
        .collect()
}

/// Graded dimensions of Λ^{m|n}_aff for weights `0..=max_weight`.
pub fn affine_hilbert(m: u32, n: u32, max_weight: u32) -> Vec<usize> {
    (0..=max_weight).map(|w| poly_rank(&affine_span(m, n, w))).collect()
}

/// True if `f` lies in the span of the weight piece of Λ^{m|n}_aff.
pub fn in_affine_span(f: &SuperPoly, m: u32, n: u32) -> bool {
    let Some(w) = f.weight() else { return f.is_zero() };
    let mut span = affine_span(m, n, w);
    let r = poly_rank(&span);
    span.push(f.clone());
    poly_rank(&span) == r
}
