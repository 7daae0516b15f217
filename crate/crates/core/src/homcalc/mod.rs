//! Homology and cohomology tables, d² audits and the finite-n stability scan.

use crate::algdata::{AlgebraPresentation, BimodulePresentation};
use crate::coeff::{format_scalar, rank, smith_normal_form, CoefficientRing, SparseMatrix};
use crate::error::Result;
use crate::twist::{assemble_homology_complex, Mode, TwistedComplex, TwistedElement};
use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// One degree of a homology table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub degree: i64,
    pub dim: usize,
    pub cycles: usize,
    pub boundaries: usize,
    pub betti: usize,
    /// Invariant factors other than 1 (integral mode only), as decimal strings.
    pub torsion: Vec<String>,
    /// One of the adjacent matrices lies outside the assembled range, so the
    /// row only bounds the true value.
    pub edge: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMeta {
    pub algebra: String,
    pub module: String,
    pub n: usize,
    pub ring: String,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub meta: TableMeta,
    pub rows: Vec<DegreeRow>,
}

impl HomologyTable {
    pub fn row(&self, degree: i64) -> Option<&DegreeRow> {
        self.rows.iter().find(|r| r.degree == degree)
    }

    pub fn betti(&self, degree: i64) -> Option<usize> {
        self.row(degree).map(|r| r.betti)
    }

    /// (degree, betti) for rows that are not at the edge of the range.
    pub fn exact_betti(&self) -> Vec<(i64, usize)> {
        self.rows.iter().filter(|r| !r.edge).map(|r| (r.degree, r.betti)).collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("degree\tdim\tcycles\tboundaries\tbetti\ttorsion\tedge\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.degree,
                r.dim,
                r.cycles,
                r.boundaries,
                r.betti,
                r.torsion.join(","),
                r.edge
            ));
        }
        s
    }
}

fn nontrivial_factors(m: &SparseMatrix) -> Result<(usize, Vec<String>)> {
    let f = smith_normal_form(m)?;
    let torsion = f.iter().filter(|x| !x.is_one()).map(BigInt::to_string).collect();
    Ok((f.len(), torsion))
}

/// Ranks, cycles, boundaries and Betti numbers in every assembled degree.
/// Integral mode adds the torsion of each degree from the Smith form of the
/// incoming matrix.
pub fn homology_table(c: &TwistedComplex, meta: TableMeta) -> Result<HomologyTable> {
    let rank_ring = match c.ring {
        CoefficientRing::Integers => CoefficientRing::Rationals,
        r => r,
    };
    let ranks: Vec<usize> = c.steps().par_iter().map(|m| rank(m, rank_ring)).collect::<Result<_>>()?;
    let torsion: Vec<Vec<String>> = if c.ring == CoefficientRing::Integers {
        c.steps()
            .par_iter()
            .map(|m| nontrivial_factors(m).map(|(_, t)| t))
            .collect::<Result<_>>()?
    } else {
        vec![Vec::new(); c.steps().len()]
    };
    let lo = c.lo;
    let step = |d: i64| -> Option<usize> {
        // index of the step joining degrees d and d+1
        if d < lo || d >= c.hi {
            None
        } else {
            Some((d - lo) as usize)
        }
    };
    let rows = c
        .degrees()
        .map(|d| {
            let dim = c.dim(d);
            let (out_step, in_step) = match c.mode {
                Mode::Homology => (step(d - 1), step(d)),
                Mode::Cohomology => (step(d), step(d - 1)),
            };
            let out_rank = out_step.map(|i| ranks[i]).unwrap_or(0);
            let boundaries = in_step.map(|i| ranks[i]).unwrap_or(0);
            let cycles = dim - out_rank;
            DegreeRow {
                degree: d,
                dim,
                cycles,
                boundaries,
                betti: cycles - boundaries,
                torsion: in_step.map(|i| torsion[i].clone()).unwrap_or_default(),
                edge: c.is_edge(d),
            }
        })
        .collect();
    Ok(HomologyTable { meta, rows })
}

/// Outcome of checking every consecutive composite of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareReport {
    pub clean: bool,
    pub composites_checked: usize,
    pub defect: Option<SquareDefect>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDefect {
    /// Degree of the source of the composite.
    pub degree: i64,
    pub row: TwistedElement,
    pub column: TwistedElement,
    pub value: String,
}

pub fn d_squared_check(c: &TwistedComplex) -> SquareReport {
    let composites_checked = c.steps().len().saturating_sub(1);
    match c.first_square_defect() {
        None => SquareReport { clean: true, composites_checked, defect: None },
        Some((d, r, col, v)) => {
            let tgt = match c.mode {
                Mode::Homology => d - 2,
                Mode::Cohomology => d + 2,
            };
            SquareReport {
                clean: false,
                composites_checked,
                defect: Some(SquareDefect {
                    degree: d,
                    row: c.basis(tgt)[r].clone(),
                    column: c.basis(d)[col].clone(),
                    value: format_scalar(&v),
                }),
            }
        }
    }
}

/// Betti numbers at a fixed degree for n = 1..=n_max.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityScan {
    pub degree: i64,
    pub values: Vec<(usize, usize)>,
    /// Largest n whose value differs from the value at n − 1.
    pub last_change: Option<usize>,
    /// The last two values agree. Observed only; nothing is certified about n = ∞.
    pub stable_observed: bool,
}

pub fn stability_scan(
    alg: &AlgebraPresentation,
    module: &BimodulePresentation,
    degree: i64,
    n_max: usize,
    ring: CoefficientRing,
) -> Result<StabilityScan> {
    if n_max == 0 {
        return Err(crate::Error::Invalid("n_max must be at least 1".into()));
    }
    if degree < 0 {
        return Err(crate::Error::Invalid("degree must be nonnegative".into()));
    }
    let values = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let c = assemble_homology_complex(alg, module, n, degree + 1, ring)?;
            let meta = TableMeta {
                algebra: String::new(),
                module: String::new(),
                n,
                ring: ring.label(),
                mode: Mode::Homology,
            };
            let t = homology_table(&c, meta)?;
            Ok((n, t.betti(degree).unwrap_or(0)))
        })
        .collect::<Result<Vec<_>>>()?;
    let last_change = values.windows(2).filter(|w| w[0].1 != w[1].1).map(|w| w[1].0).last();
    let stable_observed = values.len() < 2 || values[values.len() - 2].1 == values[values.len() - 1].1;
    Ok(StabilityScan { degree, values, last_change, stable_observed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algdata::builtin::{trivial_algebra, trivial_coefficients};

    fn meta(n: usize) -> TableMeta {
        TableMeta { algebra: "a".into(), module: "m".into(), n, ring: "q".into(), mode: Mode::Homology }
    }

    #[test]
    fn dual_numbers_line() {
        let a = trivial_algebra(1, &[0]).unwrap();
        let m = trivial_coefficients(&a);
        let c = assemble_homology_complex(&a, &m, 1, 6, CoefficientRing::Rationals).unwrap();
        let t = homology_table(&c, meta(1)).unwrap();
        for d in 0..6 {
            assert_eq!(t.betti(d), Some(1));
            assert!(!t.row(d).unwrap().edge);
        }
        assert!(t.row(6).unwrap().edge);
        assert!(d_squared_check(&c).clean);
    }
}
