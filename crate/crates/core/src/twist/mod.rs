//! The coefficient twist ∂_θ and the twisted complexes (M ⊗ Σ⁻ⁿBⁿ(A), ∂_θ)
//! and Hom_{A_+}((A_+ ⊗ Σ⁻ⁿBⁿ(A), ∂_θ), M).

mod golden;

pub use golden::{golden_example, GoldenDegrees, GoldenReport, GoldenTerm, GOLDEN_VARIANTS};

use crate::algdata::builtin::unital_extension;
use crate::algdata::{AlgebraPresentation, BimodulePresentation};
use crate::barcplx::{bar_terms, check_bound, index_of, BarComplex, LabeledBarElement};
use crate::coeff::{sign, CoefficientRing, Lin, Scalar, SparseMatrix};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Homology or cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Homology,
    Cohomology,
}

/// m ⊗ x in M ⊗ Σ⁻ⁿBⁿ(A); in cohomology mode the dual basis vector ξ_(x,m).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TwistedElement {
    pub module: usize,
    pub bar: LabeledBarElement,
}

impl TwistedElement {
    pub fn new(module: usize, bar: LabeledBarElement) -> Self {
        TwistedElement { module, bar }
    }

    pub fn show(&self, alg: &AlgebraPresentation, m: &BimodulePresentation) -> String {
        format!("{} ⊗ {}", m.basis().name(self.module), self.bar.show(alg))
    }
}

/// ∂_θ(m ⊗ x). Every level-n fiber with at least two leaves contributes two
/// terms: its least leaf x moves into the coefficient on the right with sign
/// (−1)^{s_x − 1 + |a_x|(|a_0|+…+|a_{x−1}|)}, its greatest leaf y on the left
/// with sign (−1)^{s_y + |a_y|(|m| + |a_0|+…+|a_{y−1}|)}.
pub fn theta_on_basis(
    m: usize,
    x: &LabeledBarElement,
    alg: &AlgebraPresentation,
    module: &BimodulePresentation,
) -> Lin<TwistedElement> {
    let mut out = Lin::new();
    let s = x.tree.dfs_edge_indices();
    let deg: Vec<i64> = x.labels.iter().map(|l| alg.degree(*l)).collect();
    let dm = module.degree(m);
    let before = |i: usize| deg[..i].iter().sum::<i64>();
    for fiber in x.tree.top_fibers() {
        if fiber.len() < 2 {
            continue;
        }
        let (lo, hi) = (fiber.start, fiber.end - 1);
        for (leaf, exponent, coeff) in [
            (lo, s[lo] as i64 - 1 + deg[lo] * before(lo), module.right(m, x.labels[lo], alg)),
            (hi, s[hi] as i64 + deg[hi] * (dm + before(hi)), module.left(x.labels[hi], m).clone()),
        ] {
            if coeff.is_zero() {
                continue;
            }
            let tree = x.tree.delete_leaf(leaf).expect("fiber has two leaves");
            let mut labels = x.labels.clone();
            labels.remove(leaf);
            let bar = LabeledBarElement { tree, labels };
            let sg = sign(exponent % 2 != 0);
            for (m2, c) in coeff.iter() {
                out.add(TwistedElement::new(*m2, bar.clone()), c * &sg);
            }
        }
    }
    out
}

/// Full differential of m ⊗ x: (−1)^E d_M(m) ⊗ x, the bar differential with
/// (−1)^{|m|} on terms that keep the tree and no sign on merges, and ∂_θ.
pub fn twisted_terms(
    m: usize,
    x: &LabeledBarElement,
    alg: &AlgebraPresentation,
    module: &BimodulePresentation,
) -> Lin<TwistedElement> {
    let mut out = theta_on_basis(m, x, alg, module);
    let e = x.tree.edge_count() as i64;
    let dm = module.degree(m);
    let s = sign(e % 2 != 0);
    for (m2, c) in module.differential(m).iter() {
        out.add(TwistedElement::new(*m2, x.clone()), c * &s);
    }
    for (y, c) in bar_terms(alg, x) {
        let odd = dm * (1 + e + y.tree.edge_count() as i64) % 2 != 0;
        out.add(TwistedElement::new(m, y), c * sign(odd));
    }
    out
}

/// Per-degree bases and differentials of a twisted complex.
///
/// `steps[i]` connects degrees lo+i and lo+i+1: it maps lo+i+1 to lo+i in
/// homology mode and lo+i to lo+i+1 in cohomology mode.
#[derive(Clone, Debug)]
pub struct TwistedComplex {
    pub ring: CoefficientRing,
    pub mode: Mode,
    pub n: usize,
    pub lo: i64,
    pub hi: i64,
    bases: Vec<Vec<TwistedElement>>,
    steps: Vec<SparseMatrix>,
}

impl TwistedComplex {
    pub fn from_parts(
        ring: CoefficientRing,
        mode: Mode,
        n: usize,
        lo: i64,
        bases: Vec<Vec<TwistedElement>>,
        steps: Vec<SparseMatrix>,
    ) -> Result<Self> {
        if bases.is_empty() || steps.len() + 1 != bases.len() {
            return Err(Error::Invalid("need one matrix between each pair of consecutive degrees".into()));
        }
        for (i, s) in steps.iter().enumerate() {
            let (src, tgt) = match mode {
                Mode::Homology => (bases[i + 1].len(), bases[i].len()),
                Mode::Cohomology => (bases[i].len(), bases[i + 1].len()),
            };
            if s.cols() != src || s.rows() != tgt {
                return Err(Error::Invalid(format!("matrix {i} has the wrong shape")));
            }
        }
        let hi = lo + bases.len() as i64 - 1;
        Ok(TwistedComplex { ring, mode, n, lo, hi, bases, steps })
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn basis(&self, d: i64) -> &[TwistedElement] {
        if d < self.lo || d > self.hi {
            return &[];
        }
        &self.bases[(d - self.lo) as usize]
    }

    pub fn dim(&self, d: i64) -> usize {
        self.basis(d).len()
    }

    pub fn steps(&self) -> &[SparseMatrix] {
        &self.steps
    }

    /// Matrix out of degree d (towards d−1 in homology, d+1 in cohomology).
    /// `None` where the target degree lies outside the assembled range.
    pub fn outgoing(&self, d: i64) -> Option<SparseMatrix> {
        let i = (d - self.lo) as usize;
        match self.mode {
            Mode::Homology if d == self.lo => Some(SparseMatrix::zeros(0, self.dim(d))),
            Mode::Homology => Some(self.steps[i - 1].clone()),
            Mode::Cohomology if d == self.hi => None,
            Mode::Cohomology => Some(self.steps[i].clone()),
        }
    }

    /// Matrix into degree d. `None` where the source lies outside the range.
    pub fn incoming(&self, d: i64) -> Option<SparseMatrix> {
        let i = (d - self.lo) as usize;
        match self.mode {
            Mode::Homology if d == self.hi => None,
            Mode::Homology => Some(self.steps[i].clone()),
            Mode::Cohomology if d == self.lo => Some(SparseMatrix::zeros(self.dim(d), 0)),
            Mode::Cohomology => Some(self.steps[i - 1].clone()),
        }
    }

    /// Whether degree d lacks one of its adjacent matrices.
    pub fn is_edge(&self, d: i64) -> bool {
        self.incoming(d).is_none() || self.outgoing(d).is_none()
    }

    /// First nonzero entry of a composite of consecutive differentials, as
    /// (source degree, row, column, value).
    pub fn first_square_defect(&self) -> Option<(i64, usize, usize, Scalar)> {
        (0..self.steps.len().saturating_sub(1)).find_map(|i| {
            let (first, second, d) = match self.mode {
                Mode::Homology => (&self.steps[i + 1], &self.steps[i], self.lo + i as i64 + 2),
                Mode::Cohomology => (&self.steps[i], &self.steps[i + 1], self.lo + i as i64),
            };
            second.mul(first).first_nonzero_in(self.ring).map(|(r, c, v)| (d, r, c, v))
        })
    }
}

fn twisted_basis(
    bar: &BarComplex,
    module: &BimodulePresentation,
    d: i64,
    mode: Mode,
) -> Result<Vec<TwistedElement>> {
    let mut out = Vec::new();
    for m in 0..module.dim() {
        let bd = match mode {
            Mode::Homology => d - module.degree(m),
            Mode::Cohomology => d + module.degree(m),
        };
        for x in bar.basis(bd)?.iter() {
            out.push(TwistedElement::new(m, x.clone()));
        }
        check_bound(out.len(), &format!("twisted basis in degree {d}"))?;
    }
    Ok(out)
}

fn check_inputs(n: usize, max_degree: i64) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    if max_degree < 0 {
        return Err(Error::Invalid("the maximal degree must be nonnegative".into()));
    }
    Ok(())
}

fn finish(c: TwistedComplex) -> Result<TwistedComplex> {
    match c.first_square_defect() {
        None => Ok(c),
        Some((d, r, col, v)) => Err(Error::Invariant(format!(
            "d² ≠ 0 from degree {d}: entry ({r}, {col}) is {v}"
        ))),
    }
}

/// (M ⊗ Σ⁻ⁿBⁿ(A), ∂_θ) in degrees min(0, min|m|) ..= max_degree.
pub fn assemble_homology_complex(
    alg: &AlgebraPresentation,
    module: &BimodulePresentation,
    n: usize,
    max_degree: i64,
    ring: CoefficientRing,
) -> Result<TwistedComplex> {
    check_inputs(n, max_degree)?;
    let lo = (0..module.dim()).map(|m| module.degree(m)).min().unwrap_or(0).min(0);
    let bar = BarComplex::new(alg, n)?;
    let bases = (lo..=max_degree)
        .into_par_iter()
        .map(|d| twisted_basis(&bar, module, d, Mode::Homology))
        .collect::<Result<Vec<_>>>()?;
    let steps = (0..bases.len().saturating_sub(1))
        .into_par_iter()
        .map(|i| {
            let index = index_of(&bases[i]);
            let columns = bases[i + 1]
                .iter()
                .map(|el| {
                    twisted_terms(el.module, &el.bar, alg, module)
                        .into_vec()
                        .into_iter()
                        .map(|(t, c)| {
                            let row = *index.get(&t).ok_or_else(|| {
                                Error::Invariant(format!("term {} outside the target basis", t.show(alg, module)))
                            })?;
                            Ok((row, ring.reduce(&c)?))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SparseMatrix::from_columns(bases[i].len(), columns))
        })
        .collect::<Result<Vec<_>>>()?;
    finish(TwistedComplex::from_parts(ring, Mode::Homology, n, lo, bases, steps)?)
}

/// Hom_{A_+}((A_+ ⊗ Σ⁻ⁿBⁿ(A), ∂_θ), M) ≅ Hom_k(Σ⁻ⁿBⁿ(A), M), with ξ_(x,m)
/// of cochain degree deg(x) − |m|, in degrees min(0, −max|m|) ..= max_degree.
///
/// For f = ξ_(y,m) of map degree |f| = |m| − deg(y) and A_+ ⊗ Bⁿ
/// differential D(1 ⊗ x) = Σ c_k u_k ⊗ x_k:
/// (δf)(1 ⊗ x) = [x = y] d_M m − (−1)^{|f|} Σ_{x_k = y} c_k (−1)^{|u_k| E(y) + |f||u_k|} u_k m.
pub fn assemble_cohomology_complex(
    alg: &AlgebraPresentation,
    module: &BimodulePresentation,
    n: usize,
    max_degree: i64,
    ring: CoefficientRing,
) -> Result<TwistedComplex> {
    check_inputs(n, max_degree)?;
    if !ring.is_field() {
        return Err(Error::Ring("cohomology is only computed over fields".into()));
    }
    let lo = (0..module.dim()).map(|m| -module.degree(m)).min().unwrap_or(0).min(0);
    let bar = BarComplex::new(alg, n)?;
    let unital = unital_extension(alg);
    // u·m for u in the basis {1} ∪ A of A_+.
    let act = |u: usize, m: usize| -> Lin<usize> {
        if u == 0 {
            crate::algdata::single(m)
        } else {
            module.left(u - 1, m).clone()
        }
    };
    let bases = (lo..=max_degree)
        .into_par_iter()
        .map(|d| twisted_basis(&bar, module, d, Mode::Cohomology))
        .collect::<Result<Vec<_>>>()?;
    let steps = (0..bases.len().saturating_sub(1))
        .into_par_iter()
        .map(|i| {
            let index = index_of(&bases[i]);
            let mut cache: HashMap<&LabeledBarElement, Vec<(TwistedElement, Scalar)>> = HashMap::new();
            let mut rows = Vec::with_capacity(bases[i + 1].len());
            for target in &bases[i + 1] {
                let x = &target.bar;
                let terms = cache
                    .entry(x)
                    .or_insert_with(|| twisted_terms(0, x, alg, &unital).into_vec());
                let mut row: Lin<usize> = Lin::new();
                // [x = y] d_M m
                for m in 0..module.dim() {
                    let c = module.differential(m).get(&target.module);
                    if let Some(col) = index.get(&TwistedElement::new(m, x.clone())) {
                        row.add(*col, c);
                    }
                }
                for (t, c) in terms.iter() {
                    let u = t.module;
                    let du = unital.degree(u);
                    let e = t.bar.tree.edge_count() as i64;
                    for m in 0..module.dim() {
                        let v = act(u, m).get(&target.module);
                        if v == Scalar::from_integer(0.into()) {
                            continue;
                        }
                        let f = module.degree(m) - t.bar.degree(alg);
                        let odd = (1 + f + du * e + f * du) % 2 != 0;
                        let col = index.get(&TwistedElement::new(m, t.bar.clone())).ok_or_else(|| {
                            Error::Invariant("cochain term outside the source basis".into())
                        })?;
                        row.add(*col, v * c * sign(odd));
                    }
                }
                rows.push(row);
            }
            let mut columns = vec![Vec::new(); bases[i].len()];
            for (r, row) in rows.into_iter().enumerate() {
                for (col, v) in row.into_vec() {
                    columns[col].push((r, ring.reduce(&v)?));
                }
            }
            Ok(SparseMatrix::from_columns(bases[i + 1].len(), columns))
        })
        .collect::<Result<Vec<_>>>()?;
    finish(TwistedComplex::from_parts(ring, Mode::Cohomology, n, lo, bases, steps)?)
}
