use super::{CoefficientRing, Scalar, SparseMatrix};
use crate::error::{Error, Result};
use num_traits::Zero;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

trait Field {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    /// `x - f * y`
    fn sub_mul(&self, x: &Self::E, f: &Self::E, y: &Self::E) -> Self::E;
    fn div(&self, x: &Self::E, y: &Self::E) -> Self::E;
}

struct Fp(u64);

impl Field for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn sub_mul(&self, x: &u64, f: &u64, y: &u64) -> u64 {
        (x + self.0 - f * y % self.0) % self.0
    }
    fn div(&self, x: &u64, y: &u64) -> u64 {
        x * inv_mod(*y, self.0) % self.0
    }
}

struct Q;

impl Field for Q {
    type E = Scalar;
    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn is_zero(&self, x: &Scalar) -> bool {
        x.is_zero()
    }
    fn sub_mul(&self, x: &Scalar, f: &Scalar, y: &Scalar) -> Scalar {
        x - f * y
    }
    fn div(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x / y
    }
}

/// Rank by sparse elimination. Pivots are chosen Markowitz-style: the
/// sparsest remaining column, and within it the sparsest row.
fn sparse_rank<F: Field>(field: &F, rows: usize, cols: Vec<Vec<(usize, F::E)>>) -> usize {
    let mut columns: Vec<HashMap<usize, F::E>> =
        cols.into_iter().map(|c| c.into_iter().collect()).collect();
    let mut row_cols: Vec<HashSet<usize>> = vec![HashSet::new(); rows];
    let mut heap = BinaryHeap::new();
    for (j, col) in columns.iter().enumerate() {
        for r in col.keys() {
            row_cols[*r].insert(j);
        }
        if !col.is_empty() {
            heap.push(Reverse((col.len(), j)));
        }
    }
    let mut rank = 0;
    while let Some(Reverse((len, j))) = heap.pop() {
        if columns[j].len() != len || len == 0 {
            continue;
        }
        let pivot_row = *columns[j]
            .keys()
            .min_by_key(|r| (row_cols[**r].len(), **r))
            .expect("nonempty column");
        let pivot_col = std::mem::take(&mut columns[j]);
        for r in pivot_col.keys() {
            row_cols[*r].remove(&j);
        }
        let pv = pivot_col[&pivot_row].clone();
        let mut targets: Vec<usize> = row_cols[pivot_row].iter().copied().collect();
        targets.sort_unstable();
        for k in targets {
            let f = field.div(&columns[k][&pivot_row], &pv);
            for (r, v) in &pivot_col {
                let cur = columns[k].get(r).cloned().unwrap_or_else(|| field.zero());
                let new = field.sub_mul(&cur, &f, v);
                if field.is_zero(&new) {
                    if columns[k].remove(r).is_some() {
                        row_cols[*r].remove(&k);
                    }
                } else {
                    if columns[k].insert(*r, new).is_none() {
                        row_cols[*r].insert(k);
                    }
                }
            }
            if !columns[k].is_empty() {
                heap.push(Reverse((columns[k].len(), k)));
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over a field.
pub fn rank(m: &SparseMatrix, ring: CoefficientRing) -> Result<usize> {
    // Elimination runs on the shorter side.
    let work = if m.cols() > m.rows() { m.transpose() } else { m.clone() };
    match ring {
        CoefficientRing::Rationals => {
            let cols = work.columns().to_vec();
            Ok(sparse_rank(&Q, work.rows(), cols))
        }
        CoefficientRing::PrimeField(p) => {
            let mut cols = Vec::with_capacity(work.cols());
            for col in work.columns() {
                let mut out = Vec::with_capacity(col.len());
                for (r, v) in col {
                    let x = CoefficientRing::residue(p, v).ok_or_else(|| {
                        Error::Ring(format!("matrix entry has a denominator divisible by {p}"))
                    })?;
                    if x != 0 {
                        out.push((*r, x));
                    }
                }
                cols.push(out);
            }
            Ok(sparse_rank(&Fp(p as u64), work.rows(), cols))
        }
        CoefficientRing::Integers => Err(Error::Ring(
            "rank over the integers is not a field rank; use smith_normal_form".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;

    #[test]
    fn small_ranks() {
        let q = CoefficientRing::Rationals;
        let f2 = CoefficientRing::PrimeField(2);
        assert_eq!(rank(&SparseMatrix::identity(3), q).unwrap(), 3);
        assert_eq!(rank(&SparseMatrix::zeros(4, 5), q).unwrap(), 0);
        let m = SparseMatrix::from_triplets(
            2,
            3,
            vec![(0, 0, int(1)), (0, 1, int(1)), (1, 0, int(1)), (1, 1, int(1))],
        );
        assert_eq!(rank(&m, f2).unwrap(), 1);
        let m2 = SparseMatrix::from_triplets(2, 2, vec![(0, 0, int(1)), (0, 1, int(1)), (1, 0, int(1)), (1, 1, int(-1))]);
        assert_eq!(rank(&m2, q).unwrap(), 2);
        assert_eq!(rank(&m2, f2).unwrap(), 1);
        assert!(rank(&m2, CoefficientRing::Integers).is_err());
    }
}
