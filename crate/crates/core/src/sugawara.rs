//! Segal–Sugawara vectors for gl_{m|n}: the coefficients of
//! `str (∂ + Ê)^p = Σ_q s_{p,q} ∂^{p-q}` inside U(t^{-1}gl[t^{-1}]) ⋊ C[∂],
//! projected to the vacuum module.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{print, print_lambda, Engine, EngineError, Presentation, State};
use crate::presentations::{affine_gl, GlSuper};
use crate::scalars::{rat, Rat};

/// `e_{ij,(-r)}` with 0-based `i, j` and `r ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub i: u8,
    pub j: u8,
    pub r: u32,
}

/// `coeff · u1_(-r1) ⋯ uk_(-rk) ∂^{d_power}`, with every ∂ already moved to
/// the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeWord {
    pub coeff: Rat,
    pub modes: Vec<Mode>,
    pub d_power: u32,
}

/// Formal sum of mode words keyed by (modes, ∂-power).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordSum(BTreeMap<(Vec<Mode>, u32), Rat>);

impl WordSum {
    pub fn zero() -> Self {
        WordSum::default()
    }

    fn add_word(&mut self, modes: Vec<Mode>, d: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = (modes, d);
        let e = self.0.entry(key.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&key);
        }
    }

    fn add_scaled(&mut self, o: &WordSum, c: &Rat) {
        for ((m, d), x) in &o.0 {
            self.add_word(m.clone(), *d, x * c);
        }
    }

    pub fn words(&self) -> impl Iterator<Item = ModeWord> + '_ {
        self.0.iter().map(|((m, d), c)| ModeWord { coeff: c.clone(), modes: m.clone(), d_power: *d })
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &WordSum) -> WordSum {
        let mut out = WordSum::zero();
        for ((m1, d1), c1) in &self.0 {
            for ((m2, d2), c2) in &o.0 {
                for (c, m, d) in push_derivations(*d1, m2) {
                    let mut modes = m1.clone();
                    modes.extend(m);
                    out.add_word(modes, d + d2, c1 * c2 * c);
                }
            }
        }
        out
    }
}

/// `∂^d · w` rewritten as `Σ c · w' ∂^{d'}` using `[∂, u_(-r)] = r u_(-r-1)`.
fn push_derivations(d: u32, modes: &[Mode]) -> Vec<(Rat, Vec<Mode>, u32)> {
    let mut cur: BTreeMap<(Vec<Mode>, u32), Rat> = BTreeMap::new();
    cur.insert((modes.to_vec(), 0), Rat::one());
    for _ in 0..d {
        let mut next: BTreeMap<(Vec<Mode>, u32), Rat> = BTreeMap::new();
        for ((m, e), c) in cur {
            for k in 0..m.len() {
                let mut m2 = m.clone();
                let r = m2[k].r;
                m2[k].r += 1;
                *next.entry((m2, e)).or_insert_with(Rat::zero) += &c * Rat::from_integer(r.into());
            }
            *next.entry((m, e + 1)).or_insert_with(Rat::zero) += c;
        }
        cur = next;
    }
    cur.into_iter().filter(|(_, c)| !c.is_zero()).map(|((m, e), c)| (c, m, e)).collect()
}

/// Square matrix over U(t^{-1}gl[t^{-1}]) ⋊ C[∂] for gl_{m|n}, with the
/// Koszul rule `(a⊗b)(a'⊗b') = (-1)^{p(b)p(a')} aa'⊗bb'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    pub lie: GlSuper,
    pub entries: Vec<Vec<WordSum>>,
}

impl SuperMatrix {
    fn p(&self, i: usize) -> usize {
        usize::from(self.lie.p(i))
    }

    /// `∂ + Ê = Σ e_ij ⊗ (δ_ij ∂ + (-1)^{p(j)} e_{ji,(-1)})`. The transposed
/// entry is what makes the Koszul-signed supertrace central at κ_c.
    pub fn d_plus_e(lie: GlSuper) -> Self {
        let s = lie.size();
        let mut entries = vec![vec![WordSum::zero(); s]; s];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                if i == j {
                    e.add_word(Vec::new(), 1, Rat::one());
                }
                let sign = if lie.p(j) { rat(-1) } else { rat(1) };
                e.add_word(vec![Mode { i: j as u8, j: i as u8, r: 1 }], 0, sign);
            }
        }
        SuperMatrix { lie, entries }
    }

    pub fn mul(&self, o: &SuperMatrix) -> SuperMatrix {
        let s = self.lie.size();
        let mut entries = vec![vec![WordSum::zero(); s]; s];
        for (i, row) in entries.iter_mut().enumerate() {
            for (l, e) in row.iter_mut().enumerate() {
                for j in 0..s {
                    // p(b) of the left entry is p(i)+p(j); p(a') is p(j)+p(l)
                    let odd = (self.p(i) + self.p(j)) % 2 == 1 && (self.p(j) + self.p(l)) % 2 == 1;
                    let sign = if odd { rat(-1) } else { rat(1) };
                    e.add_scaled(&self.entries[i][j].mul(&o.entries[j][l]), &sign);
                }
            }
        }
        SuperMatrix { lie: self.lie.clone(), entries }
    }

    pub fn supertrace(&self) -> WordSum {
        let mut out = WordSum::zero();
        for i in 0..self.lie.size() {
            let sign = if self.lie.p(i) { rat(-1) } else { rat(1) };
            out.add_scaled(&self.entries[i][i], &sign);
        }
        out
    }

    pub fn identity(lie: GlSuper) -> Self {
        let s = lie.size();
        let mut entries = vec![vec![WordSum::zero(); s]; s];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i].add_word(Vec::new(), 0, Rat::one());
        }
        SuperMatrix { lie, entries }
    }

    /// `self^p` multiplied left to right, or right to left if `right_first`.
    pub fn pow(&self, p: u32, right_first: bool) -> SuperMatrix {
        let mut acc = SuperMatrix::identity(self.lie.clone());
        for _ in 0..p {
            acc = if right_first { self.mul(&acc) } else { acc.mul(self) };
        }
        acc
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SugawaraError {
    #[error("unsupported size gl({0}|{1}): need m + n between 1 and 4")]
    UnsupportedSize(usize, usize),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

pub fn check_size(m: usize, n: usize) -> Result<(), SugawaraError> {
    if m + n == 0 || m + n > 4 {
        return Err(SugawaraError::UnsupportedSize(m, n));
    }
    Ok(())
}

/// The presentation V^κ(gl_{m|n}) at generic `k`; catalog labels are used
/// where they exist.
pub fn gl_presentation(m: usize, n: usize) -> Presentation {
    let label = match (m, n) {
        (1, 1) => "V_gl11".to_string(),
        (2, 1) => "V_gl21".to_string(),
        (2, 0) => "V_gl2".to_string(),
        _ => format!("V_gl{m}{n}"),
    };
    affine_gl(m, n, &label)
}

/// Word sums by ∂-power: entry `q` holds the coefficient of `∂^{p-q}`.
pub fn ss_words(p: u32, m: usize, n: usize) -> Result<Vec<WordSum>, SugawaraError> {
    check_size(m, n)?;
    let tr = SuperMatrix::d_plus_e(GlSuper::new(m, n)).pow(p, false).supertrace();
    let mut out = vec![WordSum::zero(); p as usize + 1];
    for w in tr.words() {
        out[(p - w.d_power) as usize].add_word(w.modes, 0, w.coeff);
    }
    Ok(out)
}

/// `u1_(-r1) ⋯ uk_(-rk) |0⟩` in the presentation (generators named `e{i}{j}`).
pub fn project(eng: &Engine, words: &WordSum) -> Result<State, SugawaraError> {
    let pres = eng.presentation();
    let s = (pres.len() as f64).sqrt() as usize;
    let mut out = State::zero();
    for w in words.words() {
        let mut acc = State::vacuum();
        for md in w.modes.iter().rev() {
            let g = State::generator(md.i as usize * s + md.j as usize);
            acc = eng.nth_product(&g, -(md.r as i64), &acc)?;
        }
        out.add_scaled_rat(&acc, &w.coeff);
    }
    Ok(out)
}

/// `[s_{p,0}, …, s_{p,p}]` as states of `eng`'s presentation.
pub fn ss_vectors(eng: &Engine, p: u32, m: usize, n: usize) -> Result<Vec<State>, SugawaraError> {
    ss_words(p, m, n)?.iter().map(|w| project(eng, w)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub generator: String,
    pub bracket: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CentralReport {
    pub state: String,
    pub central: bool,
    pub witnesses: Vec<Witness>,
}

/// Brackets `x` with every generator; central iff all vanish.
pub fn check_central(eng: &Engine, x: &State) -> Result<CentralReport, SugawaraError> {
    let pres = eng.presentation();
    let mut witnesses = Vec::new();
    for i in 0..pres.len() {
        let b = eng.bracket(&State::generator(i), x)?;
        if !b.is_zero() {
            witnesses.push(Witness { generator: pres.name(i).to_string(), bracket: print_lambda(&b, pres) });
        }
    }
    Ok(CentralReport { state: print(x, pres), central: witnesses.is_empty(), witnesses })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SsEntry {
    pub p: u32,
    pub r: u32,
    pub central: bool,
    pub witnesses: Vec<Witness>,
}

/// Centrality of `∂^r s_{p,p}` for `p ≤ max_p`, `r ≤ max_r`, in `pres`.
/// Each p runs on its own engine.
pub fn centrality_table(
    pres: &Presentation,
    m: usize,
    n: usize,
    max_p: u32,
    max_r: u32,
) -> Result<Vec<SsEntry>, SugawaraError> {
    let rows: Vec<Result<Vec<SsEntry>, SugawaraError>> = (1..=max_p)
        .into_par_iter()
        .map(|p| {
            let eng = Engine::new(pres);
            let s = ss_vectors(&eng, p, m, n)?.pop().expect("p + 1 entries");
            let mut out = Vec::new();
            for r in 0..=max_r {
                let x = eng.derive_n(&s, r)?;
                let rep = check_central(&eng, &x)?;
                out.push(SsEntry { p, r, central: rep.central, witnesses: rep.witnesses });
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in rows {
        all.extend(r?);
    }
    Ok(all)
}

/// The two association orders of `(∂+Ê)^p` give the same supertrace.
pub fn associativity_holds(p: u32, m: usize, n: usize) -> bool {
    let x = SuperMatrix::d_plus_e(GlSuper::new(m, n));
    x.pow(p, false).supertrace() == x.pow(p, true).supertrace()
}
