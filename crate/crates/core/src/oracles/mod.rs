//! Independent reference computations: the normalized Hochschild complex of
//! A_+ with coefficients in M, and dense elimination.
//!
//! Nothing here uses the bases or signs of the bar and twist modules.

mod dense;
mod hochschild;

pub use dense::{dense_homology_oracle, dense_rank, dense_smith, DENSE_BOUND};
pub use hochschild::{hochschild_basis, hochschild_boundary, hochschild_complex, HochschildChain};

use crate::algdata::{AlgebraPresentation, BimodulePresentation};
use crate::coeff::{rank, smith_normal_form, CoefficientRing, SparseMatrix};
use crate::error::{Error, Result};
use crate::homcalc::{DegreeRow, HomologyTable, TableMeta};
use crate::twist::Mode;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Betti numbers (and torsion over ℤ) of the normalized Hochschild complex
/// in degrees 0..=max_degree; the top degree is an edge row.
pub fn hochschild_homology(
    alg: &AlgebraPresentation,
    module: &BimodulePresentation,
    max_degree: i64,
    ring: CoefficientRing,
    meta: TableMeta,
) -> Result<HomologyTable> {
    let (bases, maps) = hochschild_complex(alg, module, max_degree, ring)?;
    let field = if ring.is_field() { ring } else { CoefficientRing::Rationals };
    let ranks: Vec<usize> = maps.iter().map(|m| rank(m, field)).collect::<Result<_>>()?;
    let mut torsion = Vec::new();
    for m in &maps {
        torsion.push(if ring.is_field() {
            Vec::new()
        } else {
            smith_normal_form(m)?.into_iter().filter(|f| !f.is_one()).map(|f| f.to_string()).collect()
        });
    }
    let rows = (0..bases.len())
        .map(|i| {
            let dim = bases[i].len();
            let out = if i == 0 { 0 } else { ranks[i - 1] };
            let boundaries = ranks.get(i).copied().unwrap_or(0);
            DegreeRow {
                degree: i as i64,
                dim,
                cycles: dim - out,
                boundaries,
                betti: dim - out - boundaries,
                torsion: torsion.get(i).cloned().unwrap_or_default(),
                edge: i + 1 == bases.len(),
            }
        })
        .collect();
    Ok(HomologyTable { meta: TableMeta { mode: Mode::Homology, ..meta }, rows })
}

/// (betti, torsion) of (M, d_M) in degrees 0..=max_degree, all exact.
pub fn module_homology(
    module: &BimodulePresentation,
    max_degree: i64,
    ring: CoefficientRing,
) -> Result<Vec<(usize, Vec<BigInt>)>> {
    if max_degree < 0 {
        return Err(Error::Invalid("the maximal degree must be nonnegative".into()));
    }
    let by_degree: Vec<Vec<usize>> =
        (0..=max_degree + 1).map(|d| (0..module.dim()).filter(|m| module.degree(*m) == d).collect()).collect();
    let mut maps = Vec::new();
    for d in 1..by_degree.len() {
        let target = &by_degree[d - 1];
        let columns = by_degree[d]
            .iter()
            .map(|m| {
                module
                    .differential(*m)
                    .iter()
                    .map(|(t, c)| {
                        let row = target
                            .iter()
                            .position(|x| x == t)
                            .ok_or_else(|| Error::Invalid("module differential leaves its degree".into()))?;
                        Ok((row, ring.reduce(c)?))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        maps.push(SparseMatrix::from_columns(target.len(), columns));
    }
    let field = if ring.is_field() { ring } else { CoefficientRing::Rationals };
    let ranks: Vec<usize> = maps.iter().map(|m| rank(m, field)).collect::<Result<_>>()?;
    (0..=max_degree as usize)
        .map(|d| {
            let out = if d == 0 { 0 } else { ranks[d - 1] };
            let torsion = if ring.is_field() {
                Vec::new()
            } else {
                smith_normal_form(&maps[d])?.into_iter().filter(|f| !f.is_one()).collect()
            };
            Ok((by_degree[d].len() - out - ranks[d], torsion))
        })
        .collect()
}

/// Prime-power decomposition of a list of invariant factors, sorted.
fn elementary_divisors(factors: &[BigInt]) -> Vec<BigInt> {
    let mut out = Vec::new();
    for f in factors {
        let mut n = f.abs();
        let mut p = BigInt::from(2);
        while &p * &p <= n {
            let mut q = BigInt::one();
            while (&n % &p).is_zero() {
                n /= &p;
                q *= &p;
            }
            if !q.is_one() {
                out.push(q);
            }
            p += 1;
        }
        if !n.is_one() {
            out.push(n);
        }
    }
    out.sort();
    out
}

fn parse_torsion(t: &[String]) -> Result<Vec<BigInt>> {
    t.iter().map(|s| s.parse().map_err(|_| Error::Invalid(format!("bad torsion entry `{s}`")))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftRow {
    pub degree: i64,
    pub bar_betti: usize,
    pub bar_torsion: Vec<String>,
    /// H_{degree+1}(M).
    pub module_betti: usize,
    pub module_torsion: Vec<String>,
    /// HH_{degree+1}(A_+; M).
    pub hochschild_betti: usize,
    pub hochschild_torsion: Vec<String>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftComparison {
    pub max_degree: i64,
    pub rows: Vec<ShiftRow>,
    pub passed: bool,
}

/// Compares the n = 1 table against HH_{d+1}(A_+; M) = H_d ⊕ H_{d+1}(M).
///
/// The normalized Hochschild complex splits as M (no bar letters) plus a
/// desuspended copy of the one-fold bar complex, because the boundary from
/// one letter to none vanishes on a symmetric bimodule. `bar` must hold
/// exact rows for degrees 0..=max_degree.
pub fn shift_comparison(
    bar: &HomologyTable,
    alg: &AlgebraPresentation,
    module: &BimodulePresentation,
    ring: CoefficientRing,
    max_degree: i64,
) -> Result<ShiftComparison> {
    if bar.meta.n != 1 || bar.meta.mode != Mode::Homology {
        return Err(Error::Invalid("the shift comparison needs an n = 1 homology table".into()));
    }
    let hh = hochschild_homology(alg, module, max_degree + 2, ring, bar.meta.clone())?;
    let hm = module_homology(module, max_degree + 1, ring)?;
    let mut rows = Vec::new();
    for d in 0..=max_degree {
        let b = bar
            .row(d)
            .filter(|r| !r.edge)
            .ok_or_else(|| Error::Invalid(format!("bar table has no exact row in degree {d}")))?;
        let h = hh.row(d + 1).ok_or_else(|| Error::Invariant(format!("Hochschild degree {} missing", d + 1)))?;
        let (module_betti, module_torsion) = hm[d as usize + 1].clone();
        let mut sum = parse_torsion(&b.torsion)?;
        sum.extend(module_torsion.iter().cloned());
        let agree = b.betti + module_betti == h.betti
            && elementary_divisors(&sum) == elementary_divisors(&parse_torsion(&h.torsion)?);
        rows.push(ShiftRow {
            degree: d,
            bar_betti: b.betti,
            bar_torsion: b.torsion.clone(),
            module_betti,
            module_torsion: module_torsion.iter().map(|t| t.to_string()).collect(),
            hochschild_betti: h.betti,
            hochschild_torsion: h.torsion.clone(),
            agree,
        });
    }
    let passed = rows.iter().all(|r| r.agree);
    Ok(ShiftComparison { max_degree, rows, passed })
}
