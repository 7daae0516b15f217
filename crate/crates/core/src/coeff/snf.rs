use super::SparseMatrix;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{HashMap, HashSet};

pub const DEFAULT_SNF_COLUMN_BOUND: usize = 2000;

/// Invariant factors d_1 | d_2 | … of an integer matrix (nonzero ones only).
pub fn smith_normal_form(m: &SparseMatrix) -> Result<Vec<BigInt>> {
    smith_normal_form_bounded(m, DEFAULT_SNF_COLUMN_BOUND)
}

/// As [`smith_normal_form`]. Unit pivots are eliminated sparsely first; the
/// remaining core is reduced densely and must have at most `max_cols` columns.
pub fn smith_normal_form_bounded(m: &SparseMatrix, max_cols: usize) -> Result<Vec<BigInt>> {
    let mut columns: Vec<HashMap<usize, BigInt>> = Vec::with_capacity(m.cols());
    for col in m.columns() {
        let mut c = HashMap::with_capacity(col.len());
        for (r, v) in col {
            if !v.is_integer() {
                return Err(Error::Ring("Smith normal form needs integer entries".into()));
            }
            c.insert(*r, v.numer().clone());
        }
        columns.push(c);
    }
    let mut row_cols: Vec<HashSet<usize>> = vec![HashSet::new(); m.rows()];
    for (j, col) in columns.iter().enumerate() {
        for r in col.keys() {
            row_cols[*r].insert(j);
        }
    }

    let mut units = 0usize;
    loop {
        // Sparsest column holding a unit, then the sparsest unit row in it.
        let mut best: Option<((usize, usize), usize, usize)> = None;
        for (j, col) in columns.iter().enumerate() {
            if col.is_empty() || best.is_some_and(|b| col.len() > b.0 .0) {
                continue;
            }
            for (r, v) in col {
                let key = (col.len(), row_cols[*r].len());
                if v.abs().is_one() && best.map_or(true, |b| key < b.0) {
                    best = Some((key, j, *r));
                }
            }
        }
        let Some((_, j, pr)) = best else { break };
        let pivot_col = std::mem::take(&mut columns[j]);
        for r in pivot_col.keys() {
            row_cols[*r].remove(&j);
        }
        let pv = pivot_col[&pr].clone();
        let mut targets: Vec<usize> = row_cols[pr].iter().copied().collect();
        targets.sort_unstable();
        for k in targets {
            // pv = ±1, so the factor is exact.
            let f = &columns[k][&pr] * &pv;
            for (r, v) in &pivot_col {
                let cur = columns[k].get(r).cloned().unwrap_or_else(BigInt::zero);
                let new = cur - &f * v;
                if new.is_zero() {
                    if columns[k].remove(r).is_some() {
                        row_cols[*r].remove(&k);
                    }
                } else if columns[k].insert(*r, new).is_none() {
                    row_cols[*r].insert(k);
                }
            }
        }
        units += 1;
    }

    let core_cols: Vec<usize> = (0..columns.len()).filter(|j| !columns[*j].is_empty()).collect();
    if core_cols.len() > max_cols {
        return Err(Error::Resource(format!(
            "Smith normal form core has {} columns (bound {max_cols})",
            core_cols.len()
        )));
    }
    let mut core_rows: Vec<usize> = core_cols.iter().flat_map(|j| columns[*j].keys().copied()).collect();
    core_rows.sort_unstable();
    core_rows.dedup();
    let row_pos: HashMap<usize, usize> = core_rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let mut dense = vec![vec![BigInt::zero(); core_cols.len()]; core_rows.len()];
    for (c, j) in core_cols.iter().enumerate() {
        for (r, v) in &columns[*j] {
            dense[row_pos[r]][c] = v.clone();
        }
    }
    let mut factors = vec![BigInt::one(); units];
    factors.extend(dense_smith(dense));
    Ok(factors)
}

/// Dense Smith normal form; returns the nonzero diagonal as a divisibility chain.
pub(crate) fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let sub = &q * &a[t][j];
                        a[i][j] -= sub;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..rows {
                        let sub = &q * &a[i][t];
                        a[i][j] -= sub;
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // Move the smallest remainder in row/column t to the pivot.
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.1 == t {
                    a.swap(t, best.0);
                } else {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
                continue;
            }
            let p = a[t][t].clone();
            let bad = (t + 1..rows).find(|i| (t + 1..cols).any(|j| !a[*i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;

    fn snf(entries: Vec<(usize, usize, i64)>, r: usize, c: usize) -> Vec<i64> {
        let m = SparseMatrix::from_triplets(r, c, entries.into_iter().map(|(a, b, v)| (a, b, int(v))));
        smith_normal_form(&m).unwrap().iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(snf(vec![(0, 0, 1), (1, 1, 1)], 2, 2), vec![1, 1]);
        assert!(snf(vec![], 3, 3).is_empty());
        assert_eq!(snf(vec![(0, 0, 2), (1, 1, 3)], 2, 2), vec![1, 6]);
        assert_eq!(snf(vec![(0, 0, 2), (0, 1, 4), (1, 0, 6), (1, 1, 8)], 2, 2), vec![2, 4]);
    }

    #[test]
    fn bound_is_enforced() {
        let m = SparseMatrix::from_triplets(2, 2, vec![(0, 0, int(2)), (1, 1, int(3))]);
        assert!(matches!(smith_normal_form_bounded(&m, 1), Err(Error::Resource(_))));
    }
}
