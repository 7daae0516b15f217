//! The iterated bar complex Σ⁻ⁿBⁿ(A): bases by total degree and the
//! untwisted differential.
//!
//! Elements are stored in the separated form S^E ⊗ a_0 ⊗ … ⊗ a_r (all
//! suspensions in front of the labels). The differential is computed on the
//! nested expression, where suspensions and labels interleave, and carried
//! over by the sign (−1)^ε with ε = Σ_i |a_i|(E − s_i).

mod nested;

pub use nested::{nested_differential, shuffle, Nested};

use crate::algdata::AlgebraPresentation;
use crate::coeff::{sign, CoefficientRing, Lin, Scalar, SparseMatrix};
use crate::error::{Error, Result};
use crate::treecomb::{enumerate_trees, LevelTree};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

/// Default bound on the size of any single basis.
pub const DEFAULT_MAX_BASIS: usize = 200_000;

/// The active basis-size bound: `ENH_MAX_BASIS` if set, else the default.
pub fn max_basis() -> usize {
    std::env::var("ENH_MAX_BASIS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_BASIS)
}

pub(crate) fn check_bound(size: usize, what: &str) -> Result<()> {
    let bound = max_basis();
    if size > bound {
        Err(Error::Resource(format!("{what} has {size} elements, above the bound {bound} (set ENH_MAX_BASIS)")))
    } else {
        Ok(())
    }
}

/// Graded labels with a product and a differential, as needed by the bar
/// differential.
pub trait LabelAlgebra {
    type Label: Clone + Ord + Hash + std::fmt::Debug;
    fn degree(&self, l: &Self::Label) -> i64;
    fn multiply(&self, a: &Self::Label, b: &Self::Label) -> Vec<(Self::Label, Scalar)>;
    fn differentiate(&self, a: &Self::Label) -> Vec<(Self::Label, Scalar)>;
}

impl LabelAlgebra for AlgebraPresentation {
    type Label = usize;

    fn degree(&self, l: &usize) -> i64 {
        AlgebraPresentation::degree(self, *l)
    }

    fn multiply(&self, a: &usize, b: &usize) -> Vec<(usize, Scalar)> {
        self.product(*a, *b).iter().map(|(k, v)| (*k, v.clone())).collect()
    }

    fn differentiate(&self, a: &usize) -> Vec<(usize, Scalar)> {
        self.differential(*a).iter().map(|(k, v)| (*k, v.clone())).collect()
    }
}

/// A level tree with one label per leaf, in leaf order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BarElement<L> {
    pub tree: LevelTree,
    pub labels: Vec<L>,
}

/// Basis element of Bⁿ(A) for a presented algebra.
pub type LabeledBarElement = BarElement<usize>;

impl<L: Clone> BarElement<L> {
    pub fn new(tree: LevelTree, labels: Vec<L>) -> Result<Self> {
        if tree.leaves() != labels.len() {
            return Err(Error::Invalid(format!(
                "tree has {} leaves but {} labels were given",
                tree.leaves(),
                labels.len()
            )));
        }
        Ok(BarElement { tree, labels })
    }

    pub fn levels(&self) -> usize {
        self.tree.levels()
    }

    /// Σ|a_i| + (edge count) − n.
    pub fn degree<A: LabelAlgebra<Label = L>>(&self, alg: &A) -> i64 {
        self.labels.iter().map(|l| alg.degree(l)).sum::<i64>() + self.tree.edge_count() as i64
            - self.tree.levels() as i64
    }

    pub fn nested(&self) -> Nested<L> {
        Nested::from_tree(&self.tree, &self.labels)
    }

    pub fn from_nested(x: &Nested<L>) -> Self {
        let (tree, labels) = x.to_tree();
        BarElement { tree, labels }
    }

    /// Parity of Σ_i |a_i|(E − s_i).
    pub fn epsilon<A: LabelAlgebra<Label = L>>(&self, alg: &A) -> bool {
        let e = self.tree.edge_count() as i64;
        let s = self.tree.dfs_edge_indices();
        self.labels
            .iter()
            .zip(s)
            .map(|(l, si)| alg.degree(l) * (e - si as i64))
            .sum::<i64>()
            % 2
            != 0
    }
}

impl LabeledBarElement {
    pub fn show(&self, alg: &AlgebraPresentation) -> String {
        let names: Vec<&str> = self.labels.iter().map(|l| alg.basis().name(*l)).collect();
        format!("{}({})", self.tree, names.join(","))
    }
}

/// The untwisted differential of a basis element, in the separated form.
pub fn bar_terms<A: LabelAlgebra>(alg: &A, x: &BarElement<A::Label>) -> Vec<(BarElement<A::Label>, Scalar)>
where
    A::Label: Clone,
{
    let eps = x.epsilon(alg);
    nested_differential(alg, &x.nested(), x.levels())
        .into_vec()
        .into_iter()
        .map(|(y, c)| {
            let y = BarElement::from_nested(&y);
            let s = sign(eps ^ y.epsilon(alg));
            (y, c * s)
        })
        .collect()
}

/// Label words of length r with total degree `total`, lexicographic in the
/// basis order.
fn label_words(degrees: &[i64], r: usize, total: i64) -> Vec<Vec<usize>> {
    let min = degrees.iter().copied().min().unwrap_or(0);
    let max = degrees.iter().copied().max().unwrap_or(0);
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(r);
    fn rec(
        degrees: &[i64],
        r: usize,
        left: i64,
        min: i64,
        max: i64,
        word: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let remaining = (r - word.len()) as i64;
        if left < remaining * min || left > remaining * max {
            return;
        }
        if remaining == 0 {
            out.push(word.clone());
            return;
        }
        for (i, d) in degrees.iter().enumerate() {
            word.push(i);
            rec(degrees, r, left - d, min, max, word, out);
            word.pop();
        }
    }
    rec(degrees, r, total, min, max, &mut word, &mut out);
    out
}

/// All basis elements of Σ⁻ⁿBⁿ(A) in total degree d, ordered by leaf count,
/// then tree, then labels.
pub fn enumerate_basis(alg: &AlgebraPresentation, n: usize, d: i64) -> Result<Vec<LabeledBarElement>> {
    if n == 0 {
        return Err(Error::Invalid("the bar construction needs n ≥ 1".into()));
    }
    let mut out = Vec::new();
    if d < 0 {
        return Ok(out);
    }
    let degrees = alg.basis().degrees();
    // Every leaf adds at least one edge, so r ≤ d + 1.
    for r in 1..=(d as usize + 1) {
        let mut words_by_total: HashMap<i64, Vec<Vec<usize>>> = HashMap::new();
        for tree in enumerate_trees(n, r)? {
            let total = d + n as i64 - tree.edge_count() as i64;
            if total < 0 {
                continue;
            }
            let words = words_by_total.entry(total).or_insert_with(|| label_words(degrees, r, total));
            check_bound(out.len() + words.len(), &format!("bar basis in degree {d}"))?;
            out.extend(words.iter().map(|w| BarElement { tree: tree.clone(), labels: w.clone() }));
        }
    }
    Ok(out)
}

/// Position lookup for a basis list.
pub fn index_of<K: Clone + Eq + Hash>(basis: &[K]) -> HashMap<K, usize> {
    basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect()
}

/// Lazily built bases and differentials of Σ⁻ⁿBⁿ(A), cached per degree.
pub struct BarComplex<'a> {
    alg: &'a AlgebraPresentation,
    n: usize,
    bases: RwLock<HashMap<i64, Arc<Vec<LabeledBarElement>>>>,
}

impl<'a> BarComplex<'a> {
    pub fn new(alg: &'a AlgebraPresentation, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("the bar construction needs n ≥ 1".into()));
        }
        Ok(BarComplex { alg, n, bases: RwLock::new(HashMap::new()) })
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        self.alg
    }

    pub fn levels(&self) -> usize {
        self.n
    }

    pub fn basis(&self, d: i64) -> Result<Arc<Vec<LabeledBarElement>>> {
        if let Some(b) = self.bases.read().expect("lock").get(&d) {
            return Ok(b.clone());
        }
        let b = Arc::new(enumerate_basis(self.alg, self.n, d)?);
        let mut w = self.bases.write().expect("lock");
        Ok(w.entry(d).or_insert(b).clone())
    }

    /// Matrix of the differential from degree d to degree d − 1, reduced into `ring`.
    pub fn differential(&self, d: i64, ring: CoefficientRing) -> Result<SparseMatrix> {
        let src = self.basis(d)?;
        let tgt = self.basis(d - 1)?;
        let index = index_of(&tgt);
        let mut columns = Vec::with_capacity(src.len());
        for x in src.iter() {
            let mut col = Vec::new();
            for (y, c) in bar_terms(self.alg, x) {
                let row = *index.get(&y).ok_or_else(|| {
                    Error::Invariant(format!("differential of {} left degree {}", x.show(self.alg), d - 1))
                })?;
                col.push((row, ring.reduce(&c)?));
            }
            columns.push(col);
        }
        Ok(SparseMatrix::from_columns(tgt.len(), columns))
    }
}

/// Matrix of the untwisted differential Σ⁻ⁿBⁿ(A)_d → Σ⁻ⁿBⁿ(A)_{d−1}.
pub fn bar_differential(
    alg: &AlgebraPresentation,
    n: usize,
    d: i64,
    ring: CoefficientRing,
) -> Result<SparseMatrix> {
    BarComplex::new(alg, n)?.differential(d, ring)
}

/// Linear combination of bar elements, merged and without zeros.
pub type SignedCombination<K> = Lin<K>;
