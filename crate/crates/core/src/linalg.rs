//! Exact rational matrices stored as sparse columns, with rank and linear solves by
//! incremental column echelon reduction.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

fn axpy(target: &mut SparseVec, factor: &Rational, source: &SparseVec) {
    for (k, v) in source {
        let entry = target.entry(*k).or_insert_with(Rational::zero);
        *entry += factor * v;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

/// Column echelon basis; each stored vector is monic at its pivot (its smallest row
/// index) and carries the combination of original columns that produced it.
struct Echelon {
    pivots: BTreeMap<usize, (SparseVec, SparseVec)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon {
            pivots: BTreeMap::new(),
        }
    }

    /// Reduces `v` against the basis, recording the multiples subtracted in `combo`.
    fn reduce(&self, v: &mut SparseVec, combo: &mut SparseVec) {
        let mut cursor = 0;
        loop {
            let hit = v
                .range(cursor..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = hit else { break };
            let (bv, bc) = &self.pivots[&k];
            axpy(v, &-&c, bv);
            axpy(combo, &-&c, bc);
            cursor = k + 1;
        }
    }

    /// Inserts column `index`; returns false if it was dependent.
    fn insert(&mut self, index: usize, col: &SparseVec) -> bool {
        let mut v = col.clone();
        let mut combo = SparseVec::new();
        combo.insert(index, Rational::one());
        self.reduce(&mut v, &mut combo);
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let inv = Rational::one() / lead;
        for x in v.values_mut() {
            *x *= &inv;
        }
        for x in combo.values_mut() {
            *x *= &inv;
        }
        self.pivots.insert(p, (v, combo));
        true
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.keys().all(|&r| r < rows) && c.values().all(|v| !v.is_zero())));
        ExactMatrix { rows, columns }
    }

    pub fn from_dense(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = ExactMatrix::zeros(nrows, ncols);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    m.columns[c].insert(r, v);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c]
            .get(&r)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BTreeMap::is_empty)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        (0..self.cols())
            .filter(|&c| e.insert(c, &self.columns[c]))
            .count()
    }

    pub fn nullity(&self) -> usize {
        self.cols() - self.rank()
    }

    /// Some `x` with `self · x = b`, or `None` if `b` is outside the column space.
    pub fn solve(&self, b: &SparseVec) -> Option<Vec<Rational>> {
        let mut e = Echelon::new();
        for c in 0..self.cols() {
            e.insert(c, &self.columns[c]);
        }
        let mut residual = b.clone();
        let mut combo = SparseVec::new();
        e.reduce(&mut residual, &mut combo);
        if !residual.is_empty() {
            return None;
        }
        // residual = b + Σ combo_j col_j = 0
        let mut x = vec![Rational::zero(); self.cols()];
        for (j, v) in combo {
            x[j] = -v;
        }
        Some(x)
    }

    /// Keeps only the rows for which `keep` is true, renumbering them in order.
    pub fn select_rows(&self, keep: impl Fn(usize) -> bool) -> ExactMatrix {
        let mut map = vec![None; self.rows];
        let mut n = 0;
        for (r, slot) in map.iter_mut().enumerate() {
            if keep(r) {
                *slot = Some(n);
                n += 1;
            }
        }
        let columns = self
            .columns
            .iter()
            .map(|c| {
                c.iter()
                    .filter_map(|(r, v)| map[*r].map(|nr| (nr, v.clone())))
                    .collect()
            })
            .collect();
        ExactMatrix { rows: n, columns }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> SparseVec {
        assert_eq!(x.len(), self.cols());
        let mut out = SparseVec::new();
        for (c, xc) in x.iter().enumerate() {
            if !xc.is_zero() {
                axpy(&mut out, xc, &self.columns[c]);
            }
        }
        out
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols(), rhs.rows());
        let columns = rhs
            .columns
            .iter()
            .map(|rc| {
                let mut out = SparseVec::new();
                for (k, v) in rc {
                    axpy(&mut out, v, &self.columns[*k]);
                }
                out
            })
            .collect();
        ExactMatrix {
            rows: self.rows,
            columns,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn dense(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_dense(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(dense(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(), 2);
        assert_eq!(dense(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(dense(&[&[2, 0, 1], &[0, 3, 1], &[1, 1, 0]]).rank(), 3);
        assert_eq!(dense(&[&[1, 2, 3], &[4, 5, 6]]).nullity(), 1);
    }

    #[test]
    fn solve_and_check() {
        let m = dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let b: SparseVec = [(0, rat(1)), (1, rat(1)), (2, rat(1))]
            .into_iter()
            .collect();
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let b: SparseVec = [(0, rat(1))].into_iter().collect();
        assert!(m.solve(&b).is_none());
    }

    #[test]
    fn solve_with_fractions() {
        let m = dense(&[&[3, 0], &[0, 7]]);
        let b: SparseVec = [(0, rat(1)), (1, rat(2))].into_iter().collect();
        assert_eq!(m.solve(&b).unwrap(), vec![ratio(1, 3), ratio(2, 7)]);
    }

    #[test]
    fn product_and_row_selection() {
        let a = dense(&[&[1, 1], &[0, 1], &[1, 0]]);
        let b = dense(&[&[1, -1], &[-1, 1]]);
        assert_eq!(a.mul(&b), dense(&[&[0, 0], &[-1, 1], &[1, -1]]));
        assert_eq!(a.select_rows(|r| r != 1), dense(&[&[1, 1], &[1, 0]]));
    }
}
