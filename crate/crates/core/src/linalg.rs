//! Exact sparse Gaussian elimination over a field.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::scalars::{LevelScalar, Rat};

pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `o` is nonzero.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for LevelScalar {
    fn zero() -> Self {
        LevelScalar::zero()
    }
    fn one() -> Self {
        LevelScalar::one()
    }
    fn is_zero(&self) -> bool {
        LevelScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self.checked_div(o).expect("division by a nonzero pivot")
    }
    fn neg(&self) -> Self {
        -self
    }
}

pub type SparseRow<F> = BTreeMap<usize, F>;

/// Row echelon form built incrementally. Pivot rows are normalized to a
/// leading coefficient of one.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    pivots: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }
}

fn axpy<F: Field>(row: &mut SparseRow<F>, c: &F, other: &SparseRow<F>) {
    for (j, v) in other {
        let t = c.mul(v);
        match row.get_mut(j) {
            Some(x) => {
                let s = x.add(&t);
                if s.is_zero() {
                    row.remove(j);
                } else {
                    *x = s;
                }
            }
            None => {
                if !t.is_zero() {
                    row.insert(*j, t);
                }
            }
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` against the current pivots; the remainder is zero iff
    /// the row lies in the span.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        row.retain(|_, v| !v.is_zero());
        let mut from = 0usize;
        loop {
            let lead = match row.range(from..).find(|(j, _)| self.pivots.contains_key(j)) {
                Some((j, _)) => *j,
                None => return row,
            };
            let c = row[&lead].neg();
            axpy(&mut row, &c, &self.pivots[&lead]);
            from = lead + 1;
        }
    }

    /// Inserts a row; returns whether it was independent of the span so far.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let mut r = self.reduce(row);
        let Some((&lead, lv)) = r.iter().next() else { return false };
        let inv = F::one().div(lv);
        for v in r.values_mut() {
            *v = v.mul(&inv);
        }
        self.pivots.insert(lead, r);
        true
    }

    pub fn contains(&self, row: SparseRow<F>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Reduced row echelon form: every pivot column is zero outside its pivot row.
    pub fn reduced(&self) -> BTreeMap<usize, SparseRow<F>> {
        let mut piv = self.pivots.clone();
        let leads: Vec<usize> = piv.keys().rev().copied().collect();
        for &p in &leads {
            let prow = piv[&p].clone();
            for (_, row) in piv.range_mut(..p) {
                if let Some(c) = row.get(&p).cloned() {
                    axpy(row, &c.neg(), &prow);
                }
            }
        }
        piv
    }

    /// Basis of the null space of the row space inside `F^ncols`, one vector
    /// per free column.
    pub fn kernel(&self, ncols: usize) -> Vec<Vec<F>> {
        let rref = self.reduced();
        let mut out = Vec::new();
        for free in 0..ncols {
            if rref.contains_key(&free) {
                continue;
            }
            let mut x = vec![F::zero(); ncols];
            x[free] = F::one();
            for (&p, row) in &rref {
                if let Some(v) = row.get(&free) {
                    x[p] = v.neg();
                }
            }
            out.push(x);
        }
        out
    }
}

/// Rank of a list of sparse rows.
pub fn rank<F: Field>(rows: impl IntoIterator<Item = SparseRow<F>>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn row(v: &[i64]) -> SparseRow<Rat> {
        v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, rat(*x))).collect()
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let mut e = Echelon::new();
        assert!(e.insert(row(&[1, 2, 3])));
        assert!(!e.insert(row(&[2, 4, 6])));
        let ker = e.kernel(3);
        assert_eq!(ker.len(), 2);
        for x in ker {
            let dot: Rat = x[0].clone() + x[1].clone() * rat(2) + x[2].clone() * rat(3);
            assert!(Zero::is_zero(&dot));
        }
    }

    #[test]
    fn membership() {
        let mut e = Echelon::new();
        e.insert(row(&[0, 1, 1]));
        e.insert(row(&[1, 0, 1]));
        assert!(e.contains(row(&[1, 1, 2])));
        assert!(!e.contains(row(&[1, 1, 1])));
        assert_eq!(rank(vec![row(&[1, 0]), row(&[0, 0]), row(&[3, 0])]), 1);
    }
}
