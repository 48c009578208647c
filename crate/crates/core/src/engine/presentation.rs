use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::state::{Factor, LambdaPoly, LatVec, Monomial, State};
use super::EngineError;
use crate::scalars::{binom, LevelScalar, Rat};

/// Conformal weight; may be half-integral.
pub type Weight = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorKind {
    Plain,
    /// `e^γ` with γ given over the lattice basis.
    LatticeExponential(LatVec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub parity: Parity,
    pub weight: Weight,
    pub kind: GeneratorKind,
}

/// Heisenberg generators spanning the lattice directions, with their Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub basis: Vec<usize>,
    pub gram: Vec<Vec<LevelScalar>>,
}

/// A vertex superalgebra given by strong generators and a λ-bracket table.
/// Lattice exponentials and aliases are named states usable in expressions;
/// only the plain generators enter normal forms as factors.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub label: String,
    generators: Vec<GeneratorSpec>,
    exponentials: Vec<GeneratorSpec>,
    table: Vec<LambdaPoly>,
    lattice: Option<Lattice>,
    lattice_slot: Vec<Option<usize>>,
    aliases: Vec<(String, State)>,
    index: HashMap<String, usize>,
}

impl Presentation {
    pub fn builder(label: &str) -> PresentationBuilder {
        PresentationBuilder::new(label)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn exponentials(&self) -> &[GeneratorSpec] {
        &self.exponentials
    }

    pub fn aliases(&self) -> &[(String, State)] {
        &self.aliases
    }

    pub fn gen(&self, i: usize) -> &GeneratorSpec {
        &self.generators[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.generators[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn alias(&self, name: &str) -> Option<&State> {
        self.aliases.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn exponential(&self, name: &str) -> Option<&LatVec> {
        self.exponentials.iter().find(|g| g.name == name).and_then(|g| match &g.kind {
            GeneratorKind::LatticeExponential(v) => Some(v),
            GeneratorKind::Plain => None,
        })
    }

    /// Every identifier the parser should recognise.
    pub fn known_names(&self) -> impl Iterator<Item = &str> {
        self.generators
            .iter()
            .map(|g| g.name.as_str())
            .chain(self.exponentials.iter().map(|g| g.name.as_str()))
            .chain(self.aliases.iter().map(|(n, _)| n.as_str()))
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.generators[i].parity.is_odd()
    }

    pub fn weight(&self, i: usize) -> Weight {
        self.generators[i].weight
    }

    /// The stored `[g_i λ g_j]`.
    pub fn table(&self, i: usize, j: usize) -> &LambdaPoly {
        &self.table[i * self.generators.len() + j]
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        self.lattice.as_ref()
    }

    pub fn lattice_dim(&self) -> usize {
        self.lattice.as_ref().map_or(0, |l| l.basis.len())
    }

    /// Position of generator `i` in the lattice basis, if it is one.
    pub fn lattice_slot(&self, i: usize) -> Option<usize> {
        self.lattice_slot[i]
    }

    /// `(g_i, γ)`: zero unless `g_i` is a lattice Heisenberg generator.
    pub fn pairing(&self, i: usize, v: &LatVec) -> LevelScalar {
        let (Some(slot), Some(lat)) = (self.lattice_slot[i], &self.lattice) else {
            return LevelScalar::zero();
        };
        let mut s = LevelScalar::zero();
        for (g, x) in lat.gram[slot].iter().zip(&v.0) {
            if !g.is_zero() && !x.is_zero() {
                s += &(g * x);
            }
        }
        s
    }

    pub fn lat_pair(&self, a: &LatVec, b: &LatVec) -> LevelScalar {
        let Some(lat) = &self.lattice else { return LevelScalar::zero() };
        let mut s = LevelScalar::zero();
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if !y.is_zero() && !lat.gram[i][j].is_zero() {
                    s += &(&(x * y) * &lat.gram[i][j]);
                }
            }
        }
        s
    }

    pub fn factor_weight(&self, f: Factor) -> Weight {
        self.weight(f.gen as usize) + Weight::from_integer(f.deriv as i64)
    }

    /// Exponentials carry weight zero.
    pub fn mono_weight(&self, m: &Monomial) -> Weight {
        m.factors.iter().fold(Weight::zero(), |w, f| w + self.factor_weight(*f))
    }

    pub fn mono_odd(&self, m: &Monomial) -> bool {
        m.factors.iter().filter(|f| self.is_odd(f.gen as usize)).count() % 2 == 1
    }

    /// The common weight of all terms, or `None` if the state is zero or
    /// inhomogeneous.
    pub fn state_weight(&self, s: &State) -> Option<Weight> {
        let mut w = None;
        for m in s.monomials() {
            let x = self.mono_weight(m);
            match w {
                None => w = Some(x),
                Some(y) if y != x => return None,
                _ => {}
            }
        }
        w
    }

    pub fn max_weight(&self, s: &State) -> Option<Weight> {
        s.monomials().map(|m| self.mono_weight(m)).max()
    }

    /// `Some(parity)` if all terms share one parity.
    pub fn state_odd(&self, s: &State) -> Option<bool> {
        let mut p = None;
        for m in s.monomials() {
            let x = self.mono_odd(m);
            match p {
                None => p = Some(x),
                Some(y) if y != x => return None,
                _ => {}
            }
        }
        p
    }

    /// Substitutes `k = k0` in every structure constant.
    pub fn specialize(&self, k0: &Rat) -> Result<Presentation, EngineError> {
        let f = |c: &LevelScalar| c.specialize_scalar(k0);
        let mut out = self.clone();
        out.label = self.label.clone();
        for p in out.table.iter_mut() {
            *p = p.try_map_states(|s| s.map_scalars(f))?;
        }
        if let Some(lat) = &mut out.lattice {
            for row in lat.gram.iter_mut() {
                for x in row.iter_mut() {
                    *x = f(x)?;
                }
            }
        }
        for g in out.exponentials.iter_mut() {
            if let GeneratorKind::LatticeExponential(v) = &mut g.kind {
                *v = LatVec(v.0.iter().map(f).collect::<Result<_, _>>()?);
            }
        }
        for (_, s) in out.aliases.iter_mut() {
            *s = s.map_scalars(f)?;
        }
        Ok(out)
    }

    /// Tensor product with vanishing cross brackets. Colliding names get the
    /// suffixes `1` and `2`.
    pub fn tensor(a: &Presentation, b: &Presentation) -> Presentation {
        let names_a: Vec<&str> = a.known_names().collect();
        let names_b: Vec<&str> = b.known_names().collect();
        let clash = |n: &str, other: &[&str]| other.contains(&n);
        let rename = |n: &str, other: &[&str], suffix: &str| {
            if clash(n, other) {
                format!("{n}{suffix}")
            } else {
                n.to_string()
            }
        };
        let na = a.len();
        let da = a.lattice_dim();
        let dim = da + b.lattice_dim();
        let embed = |off: usize| {
            move |v: &LatVec| {
                let mut x = vec![LevelScalar::zero(); dim];
                for (i, c) in v.0.iter().enumerate() {
                    x[off + i] = c.clone();
                }
                LatVec(x)
            }
        };
        let ea = embed(0);
        let eb = embed(da);
        let map_a = |s: &State| s.remap(&|g| g, &ea);
        let map_b = |s: &State| s.remap(&|g| g + na as u32, &eb);

        let mut bld = PresentationBuilder::new(&format!("{}*{}", a.label, b.label));
        for g in &a.generators {
            bld.generator(&rename(&g.name, &names_b, "1"), g.parity, g.weight);
        }
        for g in &b.generators {
            bld.generator(&rename(&g.name, &names_a, "2"), g.parity, g.weight);
        }
        for i in 0..a.len() {
            for j in 0..a.len() {
                bld.set(i, j, a.table(i, j).map_states(map_a));
            }
        }
        for i in 0..b.len() {
            for j in 0..b.len() {
                bld.set(na + i, na + j, b.table(i, j).map_states(map_b));
            }
        }
        if dim > 0 {
            let mut basis = Vec::new();
            let mut gram = vec![vec![LevelScalar::zero(); dim]; dim];
            if let Some(l) = &a.lattice {
                basis.extend(l.basis.iter().copied());
                for i in 0..l.basis.len() {
                    for j in 0..l.basis.len() {
                        gram[i][j] = l.gram[i][j].clone();
                    }
                }
            }
            if let Some(l) = &b.lattice {
                basis.extend(l.basis.iter().map(|x| x + na));
                for i in 0..l.basis.len() {
                    for j in 0..l.basis.len() {
                        gram[da + i][da + j] = l.gram[i][j].clone();
                    }
                }
            }
            bld.lattice = Some(Lattice { basis, gram });
        }
        for g in &a.exponentials {
            if let GeneratorKind::LatticeExponential(v) = &g.kind {
                bld.exponential(&rename(&g.name, &names_b, "1"), ea(v));
            }
        }
        for g in &b.exponentials {
            if let GeneratorKind::LatticeExponential(v) = &g.kind {
                bld.exponential(&rename(&g.name, &names_a, "2"), eb(v));
            }
        }
        for (n, s) in &a.aliases {
            bld.alias(&rename(n, &names_b, "1"), map_a(s));
        }
        for (n, s) in &b.aliases {
            bld.alias(&rename(n, &names_a, "2"), map_b(s));
        }
        bld.build().expect("tensor of valid presentations is valid")
    }

    /// Renames the presentation.
    pub fn with_label(mut self, label: &str) -> Presentation {
        self.label = label.to_string();
        self
    }
}

/// Accumulates generators and one or both orientations of each bracket; the
/// missing orientations are derived by skew-symmetry in [`build`](Self::build).
#[derive(Debug, Clone)]
pub struct PresentationBuilder {
    label: String,
    generators: Vec<GeneratorSpec>,
    exponentials: Vec<GeneratorSpec>,
    brackets: HashMap<(usize, usize), LambdaPoly>,
    lattice: Option<Lattice>,
    aliases: Vec<(String, State)>,
}

impl PresentationBuilder {
    pub fn new(label: &str) -> Self {
        PresentationBuilder {
            label: label.to_string(),
            generators: Vec::new(),
            exponentials: Vec::new(),
            brackets: HashMap::new(),
            lattice: None,
            aliases: Vec::new(),
        }
    }

    pub fn generator(&mut self, name: &str, parity: Parity, weight: Weight) -> usize {
        self.generators.push(GeneratorSpec {
            name: name.to_string(),
            parity,
            weight,
            kind: GeneratorKind::Plain,
        });
        self.generators.len() - 1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn set(&mut self, i: usize, j: usize, p: LambdaPoly) {
        self.brackets.insert((i, j), p);
    }

    /// Declares Heisenberg generators as a lattice basis; `[h_i λ h_j] = G_ij λ`
    /// is entered unless already present.
    pub fn set_lattice(&mut self, basis: Vec<usize>, gram: Vec<Vec<LevelScalar>>) {
        for (a, &i) in basis.iter().enumerate() {
            for (b, &j) in basis.iter().enumerate() {
                let mut p = LambdaPoly::zero();
                p.set(1, State::scalar(gram[a][b].clone()));
                self.brackets.entry((i, j)).or_insert(p);
            }
        }
        self.lattice = Some(Lattice { basis, gram });
    }

    pub fn exponential(&mut self, name: &str, v: LatVec) {
        self.exponentials.push(GeneratorSpec {
            name: name.to_string(),
            parity: Parity::Even,
            weight: Weight::zero(),
            kind: GeneratorKind::LatticeExponential(v),
        });
    }

    pub fn alias(&mut self, name: &str, s: State) {
        self.aliases.push((name.to_string(), s));
    }

    /// A presentation over the generators declared so far with only the
    /// explicitly given brackets; used to parse bracket coefficients.
    pub fn draft(&self) -> Presentation {
        self.assemble(false)
    }

    fn assemble(&self, with_table: bool) -> Presentation {
        let n = self.generators.len();
        let mut table = vec![LambdaPoly::zero(); n * n];
        if with_table {
            for ((i, j), p) in &self.brackets {
                table[i * n + j] = p.clone();
            }
        }
        let mut lattice_slot = vec![None; n];
        if let Some(l) = &self.lattice {
            for (s, &i) in l.basis.iter().enumerate() {
                lattice_slot[i] = Some(s);
            }
        }
        let index = self.generators.iter().enumerate().map(|(i, g)| (g.name.clone(), i)).collect();
        Presentation {
            label: self.label.clone(),
            generators: self.generators.clone(),
            exponentials: self.exponentials.clone(),
            table,
            lattice: self.lattice.clone(),
            lattice_slot,
            aliases: self.aliases.clone(),
            index,
        }
    }

    pub fn build(&self) -> Result<Presentation, EngineError> {
        let n = self.generators.len();
        let mut seen = std::collections::HashSet::new();
        for name in self
            .generators
            .iter()
            .map(|g| &g.name)
            .chain(self.exponentials.iter().map(|g| &g.name))
            .chain(self.aliases.iter().map(|(n, _)| n))
        {
            if !seen.insert(name.clone()) {
                return Err(EngineError::Presentation(format!("duplicate name `{name}`")));
            }
        }
        if !self.exponentials.is_empty() && self.lattice.is_none() {
            return Err(EngineError::Presentation("lattice exponentials need a Gram matrix".into()));
        }
        let mut pres = self.assemble(true);
        // Fill the missing orientations. Derivatives of table coefficients
        // only reorder factors of one generator, so the partial table suffices.
        let partial = pres.clone();
        let engine = super::Engine::new(&partial);
        for i in 0..n {
            for j in 0..n {
                if self.brackets.contains_key(&(i, j)) || !self.brackets.contains_key(&(j, i)) {
                    continue;
                }
                let sign = partial.is_odd(i) && partial.is_odd(j);
                let p = skew_flip(&engine, &self.brackets[&(j, i)], sign)?;
                pres.table[i * n + j] = p;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let wij = pres.weight(i) + pres.weight(j);
                for (deg, c) in pres.table(i, j).iter() {
                    let want = wij - Weight::from_integer(deg as i64 + 1);
                    for m in c.monomials() {
                        if pres.mono_weight(m) != want {
                            return Err(EngineError::Presentation(format!(
                                "[{} λ {}] has a λ^{} term of weight {} (expected {})",
                                pres.name(i),
                                pres.name(j),
                                deg,
                                pres.mono_weight(m),
                                want
                            )));
                        }
                    }
                }
            }
        }
        Ok(pres)
    }
}

/// `[b λ a] = -(-1)^{p(a)p(b)} [a_{-λ-∂} b]`, expanded.
pub fn skew_flip(engine: &super::Engine, ab: &LambdaPoly, odd_odd: bool) -> Result<LambdaPoly, EngineError> {
    let mut out = LambdaPoly::zero();
    for (n, c) in ab.iter() {
        // (-λ-∂)^n = (-1)^n Σ_t C(n,t) λ^t ∂^{n-t}
        let mut d = c.clone();
        let mut derivs = vec![c.clone()];
        for _ in 0..n {
            d = engine.derive(&d)?;
            derivs.push(d.clone());
        }
        for t in 0..=n {
            let mut coef = Rat::from(binom(n as i64, t));
            if n % 2 == 1 {
                coef = -coef;
            }
            if !odd_odd {
                coef = -coef;
            }
            out.add_at(t, &derivs[(n - t) as usize].scale_rat(&coef));
        }
    }
    Ok(out)
}
