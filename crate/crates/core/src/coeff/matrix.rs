use super::{CoefficientRing, Scalar};
use crate::error::Result;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Column-major sparse matrix with exact entries.
///
/// Each column is sorted by row index and never stores a zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            columns: (0..n).map(|i| vec![(i, Scalar::from_integer(1.into()))]).collect(),
        }
    }

    /// Build from arbitrary per-column entry lists; duplicates are summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Scalar)>>) -> Self {
        let columns = columns
            .into_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (r, v) in col {
                    assert!(r < rows, "row index {r} out of range {rows}");
                    *acc.entry(r).or_insert_with(Scalar::zero) += v;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix { rows, columns }
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            columns[c].push((r, v));
        }
        Self::from_columns(rows, columns)
    }

    pub fn from_dense(dense: &[Vec<Scalar>], cols: usize) -> Self {
        let entries = dense
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone())));
        Self::from_triplets(dense.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, Scalar)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, Scalar)>] {
        &self.columns
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.columns[c].binary_search_by_key(&r, |e| e.0) {
            Ok(i) => self.columns[c][i].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.rows];
        for (r, c, v) in self.entries() {
            columns[r].push((c, v.clone()));
        }
        SparseMatrix { rows: self.cols(), columns }
    }

    /// Product `self · rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch in product");
        let columns = rhs
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (k, v) in col {
                    for (r, w) in &self.columns[*k] {
                        *acc.entry(*r).or_insert_with(Scalar::zero) += v * w;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, columns }
    }

    /// Same matrix with every entry replaced by its canonical representative in `ring`.
    pub fn reduce(&self, ring: CoefficientRing) -> Result<SparseMatrix> {
        let mut columns = Vec::with_capacity(self.cols());
        for col in &self.columns {
            let mut out = Vec::with_capacity(col.len());
            for (r, v) in col {
                let w = ring.reduce(v)?;
                if !w.is_zero() {
                    out.push((*r, w));
                }
            }
            columns.push(out);
        }
        Ok(SparseMatrix { rows: self.rows, columns })
    }

    pub fn is_zero_in(&self, ring: CoefficientRing) -> bool {
        self.entries().all(|(_, _, v)| ring.is_zero(v))
    }

    /// First entry that is nonzero in `ring`, as (row, col, value).
    pub fn first_nonzero_in(&self, ring: CoefficientRing) -> Option<(usize, usize, Scalar)> {
        self.entries().find(|(_, _, v)| !ring.is_zero(v)).map(|(r, c, v)| (r, c, v.clone()))
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![Scalar::zero(); self.cols()]; self.rows];
        for (r, c, v) in self.entries() {
            d[r][c] = v.clone();
        }
        d
    }

    /// Reindex rows and columns: entry (r, c) moves to (row_perm[r], col_perm[c]).
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let entries = self.entries().map(|(r, c, v)| (row_perm[r], col_perm[c], v.clone()));
        SparseMatrix::from_triplets(self.rows, self.cols(), entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_triplets(2, 2, vec![(0, 0, int(1)), (0, 1, int(2)), (1, 1, int(3))]);
        let b = a.mul(&a);
        assert_eq!(b.get(0, 1), int(8));
        assert_eq!(b.get(1, 1), int(9));
        assert_eq!(a.transpose().get(1, 0), int(2));
        let dup = SparseMatrix::from_triplets(1, 1, vec![(0, 0, int(1)), (0, 0, int(-1))]);
        assert_eq!(dup.nnz(), 0);
    }
}
