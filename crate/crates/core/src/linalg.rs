//! Exact rank of sparse matrices by fraction-free row reduction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// A sparse row: strictly increasing column indices, nonzero entries.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Clears denominators of a rational sparse row.
pub fn integer_row(row: &[(usize, Q)]) -> SparseRow {
    let l = row.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let mut out: SparseRow =
        row.iter().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (*c, x.numer() * (&l / x.denom()))).collect();
    out.sort_by_key(|(c, _)| *c);
    out
}

fn primitive(row: &mut SparseRow) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for (_, x) in row.iter_mut() {
            *x /= &g;
        }
    }
    if row.first().is_some_and(|(_, x)| x.is_negative()) {
        for (_, x) in row.iter_mut() {
            *x = -&*x;
        }
    }
}

/// `a·r − b·s`, dropping zeros.
fn combine(a: &BigInt, r: &SparseRow, b: &BigInt, s: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(r.len() + s.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < s.len() {
        let take_r = j >= s.len() || (i < r.len() && r[i].0 < s[j].0);
        let take_s = i >= r.len() || (j < s.len() && s[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, a * &r[i].1));
            i += 1;
        } else if take_s {
            out.push((s[j].0, -(b * &s[j].1)));
            j += 1;
        } else {
            let v = a * &r[i].1 - b * &s[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form keyed by leading column.
#[derive(Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `row` against the pivots; returns `true` if it was independent.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        primitive(&mut row);
        while let Some((c, lead)) = row.first().cloned() {
            match self.pivots.get(&c) {
                Some(p) => {
                    let g = lead.gcd(&p[0].1);
                    let a = &p[0].1 / &g;
                    let b = &lead / &g;
                    row = combine(&a, &row, &b, p);
                    primitive(&mut row);
                }
                None => {
                    self.pivots.insert(c, row);
                    return true;
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};
    use proptest::prelude::*;

    fn dense_rank(m: &[Vec<i64>]) -> usize {
        // oracle: rational Gaussian elimination on a dense copy
        let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|x| q(*x)).collect()).collect();
        let (rows, cols) = (a.len(), a.first().map_or(0, |r| r.len()));
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = &a[i][c] / &a[r][c];
                    for j in 0..cols {
                        let t = &f * &a[r][j];
                        a[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    fn sparse(m: &[Vec<i64>]) -> Vec<SparseRow> {
        m.iter()
            .map(|r| r.iter().enumerate().filter(|(_, x)| **x != 0).map(|(c, x)| (c, BigInt::from(*x))).collect())
            .collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(sparse(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(rank(sparse(&[vec![1, 2], vec![2, 5]])), 2);
        assert_eq!(rank(sparse(&[vec![0, 0]])), 0);
        let r = integer_row(&[(0, qf(1, 2)), (3, qf(1, 3))]);
        assert_eq!(r, vec![(0, BigInt::from(3)), (3, BigInt::from(2))]);
    }

    proptest! {
        #[test]
        fn matches_dense_oracle(m in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 6), 1..7)) {
            prop_assert_eq!(rank(sparse(&m)), dense_rank(&m));
        }
    }
}
