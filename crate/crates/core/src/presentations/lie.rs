//! gl_{m|n} by elementary matrices, its invariant forms, and affine
//! presentations built from a chosen basis.

use num_traits::{One, Zero};

use crate::engine::{LambdaPoly, Parity, Presentation, PresentationBuilder, State, Weight};
use crate::linalg::{Echelon, SparseRow};
use crate::scalars::{rat, LevelScalar, Rat};

/// Dense square matrix over ℚ.
pub type Mat = Vec<Vec<Rat>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlSuper {
    pub m: usize,
    pub n: usize,
}

impl GlSuper {
    pub fn new(m: usize, n: usize) -> Self {
        GlSuper { m, n }
    }

    pub fn size(&self) -> usize {
        self.m + self.n
    }

    /// Parity of the index `i` (0-based): odd for `i ≥ m`.
    pub fn p(&self, i: usize) -> bool {
        i >= self.m
    }

    pub fn zero(&self) -> Mat {
        vec![vec![Rat::zero(); self.size()]; self.size()]
    }

    /// `e_{i+1,j+1}` with 0-based indices.
    pub fn e(&self, i: usize, j: usize) -> Mat {
        let mut x = self.zero();
        x[i][j] = Rat::one();
        x
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let s = self.size();
        let mut c = self.zero();
        for i in 0..s {
            for l in 0..s {
                if a[i][l].is_zero() {
                    continue;
                }
                for j in 0..s {
                    if !b[l][j].is_zero() {
                        c[i][j] += &a[i][l] * &b[l][j];
                    }
                }
            }
        }
        c
    }

    pub fn add(&self, a: &Mat, b: &Mat, cb: &Rat) -> Mat {
        let mut c = a.clone();
        for (ri, row) in c.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x += &b[ri][j] * cb;
            }
        }
        c
    }

    /// Parity of a homogeneous matrix; `None` for zero or mixed.
    pub fn parity(&self, a: &Mat) -> Option<bool> {
        let mut p = None;
        for (i, row) in a.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    let q = self.p(i) ^ self.p(j);
                    if p.is_some_and(|y| y != q) {
                        return None;
                    }
                    p = Some(q);
                }
            }
        }
        p
    }

    /// Supercommutator of homogeneous elements.
    pub fn bracket(&self, a: &Mat, b: &Mat) -> Mat {
        let sign = match (self.parity(a), self.parity(b)) {
            (Some(true), Some(true)) => rat(1),
            _ => rat(-1),
        };
        self.add(&self.mul(a, b), &self.mul(b, a), &sign)
    }

    pub fn str(&self, a: &Mat) -> Rat {
        let mut s = Rat::zero();
        for (i, row) in a.iter().enumerate() {
            if self.p(i) {
                s -= &row[i];
            } else {
                s += &row[i];
            }
        }
        s
    }

    /// κ_V(a,b) = str(ab).
    pub fn kappa_v(&self, a: &Mat, b: &Mat) -> Rat {
        self.str(&self.mul(a, b))
    }

    /// κ_g(a,b) = str_g(ad_a ad_b), from structure constants over the
    /// elementary basis.
    pub fn kappa_g(&self, a: &Mat, b: &Mat) -> Rat {
        let s = self.size();
        let mut acc = Rat::zero();
        for i in 0..s {
            for j in 0..s {
                let e = self.e(i, j);
                let inner = self.bracket(b, &e);
                if self.parity(&inner).is_none() {
                    continue;
                }
                let x = self.bracket(a, &inner)[i][j].clone();
                if self.p(i) ^ self.p(j) {
                    acc -= x;
                } else {
                    acc += x;
                }
            }
        }
        acc
    }

    /// κ_c = -½ κ_g.
    pub fn kappa_c(&self, a: &Mat, b: &Mat) -> Rat {
        -self.kappa_g(a, b) / rat(2)
    }

    /// The level family used throughout: `κ(k) = κ_c + (k - k_c) κ_V` with
    /// `k_c = -(m-n)` for m ≠ n, so that the sl-part has bracket `k κ_V`;
    /// for m = n, `κ(k) = (k/2) κ_g`, which keeps the identity central at
    /// every level. Critical at `k = k_c` (`-1` when m = n).
    pub fn kappa(&self, a: &Mat, b: &Mat) -> LevelScalar {
        let k = LevelScalar::k();
        if self.m == self.n {
            let g = LevelScalar::from_rat(self.kappa_g(a, b) / rat(2));
            return &k * &g;
        }
        let shift = LevelScalar::int(self.m as i64 - self.n as i64);
        &LevelScalar::from_rat(self.kappa_c(a, b)) + &(&(&k + &shift) * &LevelScalar::from_rat(self.kappa_v(a, b)))
    }

    pub fn critical_k(&self) -> Rat {
        if self.m == self.n {
            rat(-1)
        } else {
            rat(self.n as i64 - self.m as i64)
        }
    }

    /// Elementary basis `e_ij` named `e{i}{j}` (1-based).
    pub fn elementary_basis(&self) -> Vec<(String, Mat)> {
        let s = self.size();
        let mut out = Vec::new();
        for i in 0..s {
            for j in 0..s {
                out.push((format!("e{}{}", i + 1, j + 1), self.e(i, j)));
            }
        }
        out
    }
}

fn flatten(x: &Mat) -> SparseRow<Rat> {
    let s = x.len();
    let mut r = SparseRow::new();
    for (i, row) in x.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                r.insert(i * s + j, v.clone());
            }
        }
    }
    r
}

/// Coordinates of `x` in `basis`; `None` if `x` is outside the span.
pub fn decompose(basis: &[Mat], x: &Mat) -> Option<Vec<Rat>> {
    // Solve Σ c_b B_b = x via the kernel of [B_1 ... B_n | -x] in column form:
    // rows indexed by matrix entries, columns by basis elements plus one.
    let nb = basis.len();
    let cols: Vec<SparseRow<Rat>> = basis.iter().map(flatten).collect();
    let target = flatten(x);
    let entries: std::collections::BTreeSet<usize> =
        cols.iter().flat_map(|c| c.keys().copied()).chain(target.keys().copied()).collect();
    let mut ech = Echelon::new();
    for e in entries {
        let mut row = SparseRow::new();
        for (b, col) in cols.iter().enumerate() {
            if let Some(v) = col.get(&e) {
                row.insert(b, v.clone());
            }
        }
        if let Some(v) = target.get(&e) {
            row.insert(nb, -v.clone());
        }
        ech.insert(row);
    }
    let ker = ech.kernel(nb + 1);
    let sol = ker.into_iter().find(|v| !v[nb].is_zero())?;
    let scale = sol[nb].clone();
    Some(sol[..nb].iter().map(|c| c / &scale).collect())
}

/// Affine presentation `[x λ y] = [x,y] + κ(x,y) λ` on the given basis,
/// all generators of weight 1.
pub fn affine(
    label: &str,
    lie: &GlSuper,
    basis: &[(String, Mat)],
    form: &dyn Fn(&Mat, &Mat) -> LevelScalar,
) -> PresentationBuilder {
    let mut b = PresentationBuilder::new(label);
    let mats: Vec<Mat> = basis.iter().map(|(_, m)| m.clone()).collect();
    for (name, m) in basis {
        let odd = lie.parity(m).expect("homogeneous basis element");
        b.generator(name, if odd { Parity::Odd } else { Parity::Even }, Weight::from_integer(1));
    }
    for (i, (_, x)) in basis.iter().enumerate() {
        for (j, (_, y)) in basis.iter().enumerate() {
            let mut p = LambdaPoly::zero();
            let br = lie.bracket(x, y);
            let coords = decompose(&mats, &br).expect("basis closes under the bracket");
            let mut c0 = State::zero();
            for (g, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    c0.add_scaled_rat(&State::generator(g), c);
                }
            }
            p.set(0, c0);
            p.set(1, State::scalar(form(x, y)));
            b.set(i, j, p);
        }
    }
    b
}

/// Affine vertex superalgebra of gl_{m|n} at the level family of [`GlSuper::kappa`].
pub fn affine_gl(m: usize, n: usize, label: &str) -> Presentation {
    let lie = GlSuper::new(m, n);
    let basis = lie.elementary_basis();
    let mut b = affine(label, &lie, &basis, &|x, y| lie.kappa(x, y));
    let s = lie.size();
    let idx = |i: usize, j: usize| i * s + j;
    let mut h = State::zero();
    for i in 0..s {
        h += &State::generator(idx(i, i));
    }
    b.alias("h", h);
    if s == 3 {
        let e = |i: usize| State::generator(idx(i, i));
        b.alias("h1", &e(0) - &e(1));
        b.alias("h2", &e(1) + &e(2));
    }
    b.build().expect("affine gl presentation")
}

/// sl_{m|n} with bracket `k κ_V` on the basis {h_i = e_ii - (-1)^{..} e_{i+1,i+1}} ∪ off-diagonals.
pub fn affine_sl(m: usize, n: usize, label: &str) -> Presentation {
    let lie = GlSuper::new(m, n);
    let s = lie.size();
    let mut basis: Vec<(String, Mat)> = Vec::new();
    for i in 0..s - 1 {
        // supertraceless Cartan: e_ii - e_{i+1,i+1} inside a parity block,
        // e_ii + e_{i+1,i+1} across the boundary
        let sign = if lie.p(i) != lie.p(i + 1) { rat(1) } else { rat(-1) };
        let hmat = lie.add(&lie.e(i, i), &lie.e(i + 1, i + 1), &sign);
        let name = if s == 2 && m == 2 { "H".to_string() } else if s == 2 { "h".to_string() } else { format!("h{}", i + 1) };
        basis.push((name, hmat));
    }
    for i in 0..s {
        for j in 0..s {
            if i != j {
                let name = if m == 2 && n == 0 {
                    if i == 0 { "E".to_string() } else { "F".to_string() }
                } else {
                    format!("e{}{}", i + 1, j + 1)
                };
                basis.push((name, lie.e(i, j)));
            }
        }
    }
    let k = LevelScalar::k();
    let b = affine(label, &lie, &basis, &|x, y| &k * &LevelScalar::from_rat(lie.kappa_v(x, y)));
    b.build().expect("affine sl presentation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn killing_form_matches_closed_formula() {
        for (m, n) in [(1, 1), (2, 1), (2, 0)] {
            let lie = GlSuper::new(m, n);
            let basis = lie.elementary_basis();
            for (_, x) in &basis {
                for (_, y) in &basis {
                    let want = rat(2 * (m as i64 - n as i64)) * lie.kappa_v(x, y) - rat(2) * lie.str(x) * lie.str(y);
                    assert_eq!(lie.kappa_g(x, y), want);
                }
            }
        }
    }

    #[test]
    fn critical_form_gl11_and_gl21() {
        let g = GlSuper::new(1, 1);
        assert_eq!(g.kappa_c(&g.e(0, 0), &g.e(0, 0)), rat(1));
        assert_eq!(g.kappa_c(&g.e(0, 1), &g.e(1, 0)), rat(0));
        let g = GlSuper::new(2, 1);
        let mut h = g.zero();
        for i in 0..3 {
            h[i][i] = rat(1);
        }
        for (_, x) in g.elementary_basis() {
            assert_eq!(g.kappa_c(&x, &h), rat(0));
        }
    }

    #[test]
    fn forms_are_supersymmetric_and_invariant() {
        let g = GlSuper::new(2, 1);
        let basis = g.elementary_basis();
        for (_, u) in &basis {
            for (_, v) in &basis {
                let (pu, pv) = (g.parity(u).unwrap(), g.parity(v).unwrap());
                let sign = if pu && pv { rat(-1) } else { rat(1) };
                assert_eq!(g.kappa_g(u, v), sign * g.kappa_g(v, u));
                for (_, w) in &basis {
                    assert_eq!(g.kappa_g(&g.bracket(u, v), w), g.kappa_g(u, &g.bracket(v, w)));
                }
            }
        }
    }
}
