//! Smith normal form over the integers.
//!
//! Unit pivots are eliminated sparsely first; whatever remains is reduced densely
//! with big integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::enumerate::SparseMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub rank: usize,
    /// Nonzero elementary divisors in divisibility order.
    pub divisors: Vec<BigInt>,
}

impl SnfResult {
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(m: &SparseMatrix) -> SnfResult {
    // Rows as maps col -> value.
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.n_cols()];
    for (j, col) in m.cols.iter().enumerate() {
        for &(i, v) in col {
            if v != 0 {
                rows[i].insert(j, BigInt::from(v));
                col_rows[j].insert(i);
            }
        }
    }
    let mut rank = 0;
    let mut alive_rows: BTreeSet<usize> = (0..m.rows).filter(|&i| !rows[i].is_empty()).collect();
    loop {
        // Unit pivot with the fewest entries in its column, then in its row.
        let mut best: Option<(usize, usize, usize)> = None;
        for &i in &alive_rows {
            for (&j, v) in &rows[i] {
                if v.abs().is_one() {
                    let cost = (col_rows[j].len() - 1) * (rows[i].len() - 1);
                    if best.is_none_or(|(c, _, _)| cost < c) {
                        best = Some((cost, i, j));
                    }
                }
            }
            if best.is_some_and(|(c, _, _)| c == 0) {
                break;
            }
        }
        let Some((_, pi, pj)) = best else { break };
        rank += 1;
        let prow = rows[pi].clone();
        let pv = prow[&pj].clone();
        let others: Vec<usize> = col_rows[pj].iter().copied().filter(|&r| r != pi).collect();
        for r in others {
            let factor = &rows[r][&pj] * &pv; // pv = ±1, so this is the multiple to subtract
            for (&c, v) in &prow {
                let entry = rows[r].entry(c).or_insert_with(BigInt::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    rows[r].remove(&c);
                    col_rows[c].remove(&r);
                } else {
                    col_rows[c].insert(r);
                }
            }
            if rows[r].is_empty() {
                alive_rows.remove(&r);
            }
        }
        for &c in prow.keys() {
            col_rows[c].remove(&pi);
        }
        rows[pi].clear();
        alive_rows.remove(&pi);
    }
    // Dense remainder.
    let rest_rows: Vec<usize> = alive_rows.iter().copied().collect();
    let mut rest_cols: BTreeSet<usize> = BTreeSet::new();
    for &i in &rest_rows {
        rest_cols.extend(rows[i].keys().copied());
    }
    let rest_cols: Vec<usize> = rest_cols.into_iter().collect();
    let mut dense: Vec<Vec<BigInt>> = rest_rows
        .iter()
        .map(|&i| rest_cols.iter().map(|c| rows[i].get(c).cloned().unwrap_or_default()).collect())
        .collect();
    let mut divisors = vec![BigInt::one(); rank];
    let extra = dense_snf(&mut dense);
    divisors.extend(extra);
    SnfResult { rank: divisors.len(), divisors: normalize_divisors(divisors) }
}

/// Diagonalizes in place and returns the nonzero diagonal entries (absolute values).
pub fn dense_snf(a: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let m = if n == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < n.min(m) {
        // Smallest nonzero entry in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..m {
                if !a[i][j].is_zero() && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..n {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..m {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                    if !a[i][t].is_zero() {
                        done = false;
                        if a[i][t].abs() < a[t][t].abs() {
                            a.swap(t, i);
                        }
                    }
                }
            }
            for j in t + 1..m {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                    if !a[t][j].is_zero() {
                        done = false;
                        if a[t][j].abs() < a[t][t].abs() {
                            for row in a.iter_mut() {
                                row.swap(t, j);
                            }
                        }
                    }
                }
            }
            if done {
                break;
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Replaces a diagonal by the divisibility chain with the same cokernel.
fn normalize_divisors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Rank by the naive dense route, for cross-checks.
pub fn dense_divisors(m: &SparseMatrix) -> Vec<BigInt> {
    let mut a = vec![vec![BigInt::zero(); m.n_cols()]; m.rows];
    for (j, c) in m.cols.iter().enumerate() {
        for &(i, v) in c {
            a[i][j] = BigInt::from(v);
        }
    }
    normalize_divisors(dense_snf(&mut a))
}

const RANK_PRIME: i64 = 2_147_483_647;

fn inv_mod(a: i64) -> i64 {
    let (mut r, mut e, mut b) = (1i64, RANK_PRIME - 2, a.rem_euclid(RANK_PRIME));
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % RANK_PRIME;
        }
        b = b * b % RANK_PRIME;
        e >>= 1;
    }
    r
}

/// Rank modulo the prime `2^31 - 1`: a lower bound for the rank over ℚ that is
/// exact unless the prime divides a nonzero minor.
pub fn rank_mod_prime(m: &SparseMatrix) -> usize {
    let p = RANK_PRIME;
    let mut pivots: BTreeMap<usize, BTreeMap<usize, i64>> = BTreeMap::new();
    for c in &m.cols {
        let mut v: BTreeMap<usize, i64> = c.iter().map(|&(r, x)| (r, x.rem_euclid(p))).filter(|&(_, x)| x != 0).collect();
        while let Some((&lead, &x)) = v.iter().next() {
            let Some(row) = pivots.get(&lead) else {
                let s = inv_mod(x);
                v.values_mut().for_each(|y| *y = *y * s % p);
                pivots.insert(lead, v);
                break;
            };
            for (&r, &w) in row {
                let e = v.entry(r).or_insert(0);
                *e = (*e - x * w % p).rem_euclid(p);
                if *e == 0 {
                    v.remove(&r);
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(a: &[&[i64]]) -> SparseMatrix {
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        SparseMatrix {
            rows,
            cols: (0..cols).map(|j| (0..rows).filter(|&i| a[i][j] != 0).map(|i| (i, a[i][j])).collect()).collect(),
        }
    }

    #[test]
    fn single_two() {
        let r = smith_normal_form(&from_dense(&[&[2]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.divisors, vec![BigInt::from(2)]);
    }

    #[test]
    fn identity_divisors() {
        let r = smith_normal_form(&from_dense(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(r.divisors, vec![BigInt::one(); 3]);
    }

    #[test]
    fn mixed_block() {
        // diag(2, 3) has divisors (1, 6).
        let r = smith_normal_form(&from_dense(&[&[2, 0], &[0, 3]]));
        assert_eq!(r.divisors, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rank_deficient() {
        let r = smith_normal_form(&from_dense(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn modular_rank_matches_snf() {
        let a = from_dense(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, -1], &[5, 0, 2]]);
        assert_eq!(rank_mod_prime(&a), smith_normal_form(&a).rank);
        assert_eq!(rank_mod_prime(&from_dense(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_mod_prime(&from_dense(&[&[2, 0], &[0, -3]])), 2);
    }
}
