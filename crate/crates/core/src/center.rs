//! Graded centers by exact linear algebra: PBW bases, the kernel of the
//! brackets with all strong generators, Li-filtration leading symbols, and
//! the Hilbert series they are compared against.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{print, Engine, EngineError, Factor, Monomial, Presentation, State, Weight};
use crate::linalg::{Echelon, Field, SparseRow};
use crate::scalars::{LevelScalar, Rat};
use crate::morphisms::catalog::resolve_at;
use crate::morphisms::MorphismError;
use crate::presentations::Level;
use crate::sugawara::{ss_vectors, SugawaraError};
use crate::susypoly::{power_sum, SuperPoly, Var};

#[derive(Debug, thiserror::Error)]
pub enum CenterError {
    #[error("generator {0} has non-positive weight {1}")]
    NonPositiveWeight(String, Weight),
    #[error("presentation {0} has exponentials; graded bases are only enumerated for polynomial presentations")]
    Lattice(String),
    #[error("basis element at weight {0} failed re-verification against generator {1}")]
    Verification(Weight, String),
    #[error("coefficient {0} depends on k; symbols need a specialized level")]
    LevelDependent(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Sugawara(#[from] SugawaraError),
}

type Res<T> = Result<T, CenterError>;

fn check_polynomial(pres: &Presentation) -> Res<()> {
    if !pres.exponentials().is_empty() || pres.lattice().is_some() {
        return Err(CenterError::Lattice(pres.label.clone()));
    }
    for i in 0..pres.len() {
        let w = pres.weight(i);
        if w <= Weight::zero() {
            return Err(CenterError::NonPositiveWeight(pres.name(i).to_string(), w));
        }
    }
    Ok(())
}

/// PBW monomials of the given weight in canonical factor order; odd
/// factors appear at most once.
pub fn graded_basis(pres: &Presentation, weight: Weight) -> Res<Vec<Monomial>> {
    check_polynomial(pres)?;
    // every factor ∂^d g that fits, in canonical order
    let mut slots: Vec<(Factor, Weight, bool)> = Vec::new();
    for i in 0..pres.len() {
        let w0 = pres.weight(i);
        let mut d = 0u32;
        while w0 + Weight::from_integer(d as i64) <= weight {
            slots.push((Factor::new(i, d), w0 + Weight::from_integer(d as i64), pres.is_odd(i)));
            d += 1;
        }
    }
    slots.sort_by_key(|a| a.0);

    fn go(
        slots: &[(Factor, Weight, bool)],
        start: usize,
        left: Weight,
        cur: &mut Vec<Factor>,
        out: &mut Vec<Monomial>,
    ) {
        if left.is_zero() {
            out.push(Monomial { factors: cur.clone(), exp: None });
            return;
        }
        for s in start..slots.len() {
            let (f, w, odd) = slots[s];
            if w > left {
                continue;
            }
            cur.push(f);
            go(slots, if odd { s + 1 } else { s }, left - w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if weight >= Weight::zero() {
        go(&slots, 0, weight, &mut Vec::new(), &mut out);
    }
    out.sort();
    Ok(out)
}

/// Charges of every generator under each generator whose zero mode acts
/// diagonally on the generators with rational eigenvalues. A central
/// element is annihilated by these zero modes, so it lives in charge zero.
pub fn diagonal_charges(eng: &Engine) -> Res<Vec<Vec<Rat>>> {
    let pres = eng.presentation();
    let mut out = Vec::new();
    'c: for c in 0..pres.len() {
        let mut q = Vec::with_capacity(pres.len());
        for g in 0..pres.len() {
            let s = eng.bracket(&State::generator(c), &State::generator(g))?.coeff(0);
            let gm = Monomial::single(Factor::new(g, 0));
            let v = s.coeff(&gm);
            if s.len() > usize::from(!v.is_zero()) {
                continue 'c;
            }
            match v.as_rat() {
                Some(r) => q.push(r),
                None => continue 'c,
            }
        }
        if q.iter().any(|x| !Zero::is_zero(x)) {
            out.push(q);
        }
    }
    Ok(out)
}

fn charge(m: &Monomial, q: &[Rat]) -> Rat {
    m.factors.iter().map(|f| q[f.gen as usize].clone()).sum()
}

/// Center basis at one weight.
#[derive(Debug, Clone)]
pub struct CenterSlice {
    pub weight: Weight,
    pub basis: Vec<State>,
}

impl CenterSlice {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn kernel_states<F: Field>(
    rows: Vec<SparseRow<F>>,
    cols: &[Monomial],
    to_scalar: impl Fn(&F) -> LevelScalar,
) -> Vec<State> {
    let mut ech = Echelon::<F>::new();
    for r in rows {
        ech.insert(r);
    }
    // Kernel vectors, then re-echelonized so that each has a distinct
    // leading column; columns are sorted by Li degree, so the lowest-degree
    // parts of the result are independent.
    let mut ker = Echelon::<F>::new();
    for v in ech.kernel(cols.len()) {
        ker.insert(v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect());
    }
    ker.reduced()
        .into_values()
        .map(|row| {
            let mut s = State::zero();
            for (j, x) in row {
                s.add_term(cols[j].clone(), to_scalar(&x));
            }
            s
        })
        .collect()
}

/// Central elements of weight `w`: the kernel of `z ↦ ([g λ z])_g`, solved
/// over Q when all coefficients are constant and over Q(k) otherwise. Every
/// returned element is re-checked against all generators.
pub fn center_slice(eng: &Engine, w: Weight) -> Res<CenterSlice> {
    let pres = eng.presentation();
    let charges = diagonal_charges(eng)?;
    let mut cols: Vec<Monomial> = graded_basis(pres, w)?
        .into_iter()
        .filter(|m| charges.iter().all(|q| Zero::is_zero(&charge(m, q))))
        .collect();
    cols.sort_by(|a, b| a.deriv_count().cmp(&b.deriv_count()).then_with(|| a.cmp(b)));

    let mut index: HashMap<(usize, u32, Monomial), usize> = HashMap::new();
    let mut rows: Vec<SparseRow<LevelScalar>> = Vec::new();
    for (j, m) in cols.iter().enumerate() {
        let x = State::monomial(m.clone());
        for g in 0..pres.len() {
            let b = eng.bracket(&State::generator(g), &x)?;
            for (n, s) in b.iter() {
                for (mm, c) in s.terms() {
                    let key = (g, n, mm.clone());
                    let r = match index.get(&key) {
                        Some(r) => *r,
                        None => {
                            index.insert(key, rows.len());
                            rows.push(SparseRow::new());
                            rows.len() - 1
                        }
                    };
                    rows[r].insert(j, c.clone());
                }
            }
        }
    }

    let constant = rows.iter().all(|r| r.values().all(LevelScalar::is_constant));
    let basis = if constant {
        let rat_rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|(j, c)| (j, c.as_rat().expect("constant"))).collect())
            .collect();
        kernel_states::<Rat>(rat_rows, &cols, |x| LevelScalar::from_rat(x.clone()))
    } else {
        kernel_states::<LevelScalar>(rows, &cols, |x| x.clone())
    };

    for z in &basis {
        for g in 0..pres.len() {
            if !eng.bracket(&State::generator(g), z)?.is_zero() {
                return Err(CenterError::Verification(w, pres.name(g).to_string()));
            }
        }
    }
    Ok(CenterSlice { weight: w, basis })
}

/// Center slices for integer weights `0..=max_weight`, one engine per weight.
pub fn center(pres: &Presentation, max_weight: u32) -> Res<Vec<CenterSlice>> {
    (0..=max_weight)
        .into_par_iter()
        .map(|w| center_slice(&Engine::new(pres), Weight::from_integer(w as i64)))
        .collect()
}

pub fn center_hilbert(pres: &Presentation, max_weight: u32) -> Res<Vec<usize>> {
    Ok(center(pres, max_weight)?.iter().map(CenterSlice::dim).collect())
}

/// The lowest Li-degree part of `x` (fewest derivatives), as a commutative
/// polynomial: `∂^d g ↦ ∂^d vars(g)`, generators without a variable ↦ 0.
pub fn leading_symbol(x: &State, vars: &dyn Fn(usize) -> Option<Var>) -> Res<SuperPoly> {
    let Some(d0) = x.monomials().map(Monomial::deriv_count).min() else {
        return Ok(SuperPoly::zero());
    };
    let mut out = SuperPoly::zero();
    'm: for (m, c) in x.terms() {
        if m.deriv_count() != d0 || m.exp.is_some() {
            continue;
        }
        let c = c.as_rat().ok_or_else(|| CenterError::LevelDependent(c.to_string()))?;
        let mut p = SuperPoly::constant(c);
        for f in &m.factors {
            let Some(v) = vars(f.gen as usize) else { continue 'm };
            p = p.mul(&SuperPoly::var(v).derive_n(f.deriv));
        }
        out = out.add(&p);
    }
    Ok(out)
}

/// Variable assignment by generator name.
pub fn name_vars<'a>(pres: &'a Presentation, table: &'a [(&str, Var)]) -> impl Fn(usize) -> Option<Var> + 'a {
    move |i| table.iter().find(|(n, _)| *n == pres.name(i)).map(|(_, v)| *v)
}

/// Diagonal currents of gl_{m|n}: `e_ii ↦ u_i` for `i ≤ m`, `↦ v_{i-m}` after.
pub fn gl_diagonal_vars(m: usize, n: usize) -> Vec<(String, Var)> {
    (1..=m + n)
        .map(|i| {
            let v = if i <= m { Var::U(i as u32, 0) } else { Var::V((i - m) as u32, 0) };
            (format!("e{i}{i}"), v)
        })
        .collect()
}

/// Number of charge-zero monomials per weight in a free commutative
/// differential algebra. Each variable is `(weight of ∂^0, charge)`; `∂^a`
/// adds `a` to the weight. Weights are half-integers.
pub fn charge_zero_hilbert(vars: &[(Weight, i64)], max_weight: u32) -> Vec<usize> {
    let two = |w: Weight| -> usize {
        let x = w * Weight::from_integer(2);
        assert!(x.is_integer(), "half-integer weights only");
        *x.numer() as usize
    };
    let top = 2 * max_weight as usize;
    let bound: i64 = top as i64;
    // table[(2w, charge)] = count
    let mut table: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    table.insert((0, 0), 1);
    for &(w0, q) in vars {
        let mut a = 0usize;
        while two(w0) + 2 * a <= top {
            let step = two(w0) + 2 * a;
            // multiply by 1/(1 - x^step y^q)
            let mut next = table.clone();
            let mut keys: Vec<(usize, i64)> = next.keys().copied().collect();
            keys.sort();
            for key in keys {
                let mut e = 1usize;
                let base = table[&key];
                while key.0 + e * step <= top {
                    let k2 = (key.0 + e * step, key.1 + e as i64 * q);
                    if k2.1.abs() <= bound {
                        *next.entry(k2).or_insert(0) += base;
                    }
                    e += 1;
                }
            }
            table = next;
            a += 1;
        }
    }
    (0..=max_weight as usize).map(|w| table.get(&(2 * w, 0)).copied().unwrap_or(0)).collect()
}

/// M₀: charge-zero part of C[∂^a ξ±] with `wt ∂^a ξ± = a + 1/2`.
pub fn m0_hilbert(max_weight: u32) -> Vec<usize> {
    let h = Weight::new(1, 2);
    charge_zero_hilbert(&[(h, 1), (h, -1)], max_weight)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CosetKind {
    Sl2,
    Gl2,
}

/// K^∞: charge-zero part of the differential polynomials in Ē, F̄ (and Ī
/// for gl₂) modulo ∂ⁿH̄. Ē and F̄ carry the weight transported from ξ±; Ī
/// keeps weight one.
pub fn large_level_coset_hilbert(kind: CosetKind, max_weight: u32) -> Vec<usize> {
    let h = Weight::new(1, 2);
    let mut vars = vec![(h, 1), (h, -1)];
    if kind == CosetKind::Gl2 {
        vars.push((Weight::one(), 0));
    }
    charge_zero_hilbert(&vars, max_weight)
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceReport {
    pub w: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbols: Option<Vec<String>>,
}

/// Printable slices; symbols use the gl diagonal variables when `vars` is given.
pub fn slice_reports(
    pres: &Presentation,
    slices: &[CenterSlice],
    with_basis: bool,
    vars: Option<&[(String, Var)]>,
) -> Res<Vec<SliceReport>> {
    slices
        .iter()
        .map(|s| {
            let symbols = match vars {
                Some(t) => {
                    let f = |i: usize| t.iter().find(|(n, _)| n == pres.name(i)).map(|(_, v)| *v);
                    Some(s.basis.iter().map(|z| leading_symbol(z, &f).map(|p| p.to_string())).collect::<Res<_>>()?)
                }
                None => None,
            };
            Ok(SliceReport {
                w: s.weight.to_string(),
                dim: s.dim(),
                basis: with_basis.then(|| s.basis.iter().map(|z| print(z, pres)).collect()),
                symbols,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SymbolCheck {
    pub p: u32,
    pub symbol: String,
    pub expected: String,
    pub equal: bool,
}

/// Leading symbols of ρ(s_{p,p}) at the critical level with
/// `ê1, ê2, ê3 ↦ u1, u2, v1`, against the power sums of Λ^{2|1}.
pub fn wakimoto_symbols(max_p: u32) -> Res<Vec<SymbolCheck>> {
    let rho = resolve_at("rho", Some(&Level::Critical))?;
    let se = Engine::new(&rho.source);
    let te = Engine::new(&rho.target);
    let tab = [("ehat1", Var::U(1, 0)), ("ehat2", Var::U(2, 0)), ("ehat3", Var::V(1, 0))];
    let vars = name_vars(&rho.target, &tab);
    let mut out = Vec::new();
    for p in 1..=max_p {
        let s = ss_vectors(&se, p, 2, 1)?.pop().expect("p + 1 entries");
        let sym = leading_symbol(&rho.apply(&te, &s)?, &vars)?;
        let expected = power_sum(p, 2, 1);
        out.push(SymbolCheck { p, symbol: sym.to_string(), expected: expected.to_string(), equal: sym == expected });
    }
    Ok(out)
}
