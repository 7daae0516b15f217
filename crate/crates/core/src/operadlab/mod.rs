//! Small-scale checks of the operadic side conditions: Barratt–Eccles cells,
//! the retract onto Com, complete-graph membership and the lifting of the
//! twisting cochain.
//!
//! Verification only; nothing in the homology pipeline depends on it.

mod be;
mod cells;
mod lift;
mod retract;

pub use be::{
    be_differential, compose_many, is_degenerate, nondegenerate_tuples, partial_compose, tuple_degree,
    tuple_to_string, BarrattEcclesChain, BeTuple, Permutation,
};
pub use cells::{e_kappa_membership, en_membership, kn_colimit_membership, kn_graphs, variations_count};
pub use lift::{
    beta_generic, derivation_com, derivation_e, gamma_generator, internal_d, iota_tilde, lift_report,
    lift_twisting_cochain, nu_tilde, psi_tilde, theta_generator, GeneratorMap, InputSet, Lift, LiftBounds,
    LiftReport, ModuleTerm, OperadLabel, TruncatedModuleElement,
};
pub use retract::{iota, nu, psi, retract_check, IdentityCheck, RetractReport};

use crate::error::{Error, Result};
use crate::treecomb::{enumerate_trees, minimal_complete_graph, tree_kappa_membership, Labeling};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaRestrictionReport {
    pub max_levels: usize,
    pub max_leaves: usize,
    /// Labeled tree generators examined.
    pub generators: usize,
    /// θ terms whose membership was tested.
    pub terms: usize,
    pub check: IdentityCheck,
    pub passed: bool,
}

/// For every n ≤ max_levels, every tree with ≤ max_leaves leaves and every
/// labeling: each θ term μ^U_{e} ⊗ t∖x lies in the cell of κ restricted to
/// the remaining labels, κ being the minimal complete graph of the input.
pub fn theta_restriction_check(max_levels: usize, max_leaves: usize) -> Result<ThetaRestrictionReport> {
    if max_levels == 0 || max_leaves == 0 {
        return Err(Error::Invalid("bounds must be positive".into()));
    }
    let mut cases = Vec::new();
    for n in 1..=max_levels {
        for r in 1..=max_leaves {
            for t in enumerate_trees(n, r)? {
                for p in Permutation::all(&(0..r).collect::<Vec<_>>()) {
                    cases.push((n, t.clone(), Labeling::new(p.order().to_vec())?));
                }
            }
        }
    }
    let parts: Vec<(usize, IdentityCheck)> = cases
        .par_iter()
        .map(|(n, t, lab)| -> Result<(usize, IdentityCheck)> {
            let mut check = IdentityCheck::new("theta lands in the restricted cell");
            let k = minimal_complete_graph(t, lab, *n)?;
            let mut terms = 0;
            for (y, _) in theta_generator(t).iter() {
                let x = y.unit.elements()[0];
                let removed = lab.at_leaf()[x];
                let lab2 = lab.relabel(x)?;
                let k2 = k.restrict(&lab2.label_set())?;
                terms += 1;
                let ok = tree_kappa_membership(&y.tree, &lab2, &k2)?;
                check.record(ok, || format!("n={n}, tree {t}, labels {:?}, removed {removed}", lab.at_leaf()));
            }
            Ok((terms, check))
        })
        .collect::<Result<_>>()?;
    let mut check = IdentityCheck::new("theta lands in the restricted cell");
    let mut terms = 0;
    for (n, c) in parts {
        terms += n;
        check.merge(c);
    }
    let passed = check.passed();
    Ok(ThetaRestrictionReport { max_levels, max_leaves, generators: cases.len(), terms, check, passed })
}

/// Variation counting against the K_n colimit, exhaustively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub max_arity: usize,
    pub max_degree: usize,
    pub check: IdentityCheck,
    pub passed: bool,
}

pub fn en_colimit_check(max_arity: usize, max_degree: usize) -> Result<CellReport> {
    let mut check = IdentityCheck::new("variation count agrees with the K_n colimit");
    for r in 1..=max_arity {
        let inputs: Vec<usize> = (0..r).collect();
        for l in 0..=max_degree {
            let part = nondegenerate_tuples(&inputs, l)
                .par_iter()
                .map(|t| -> Result<IdentityCheck> {
                    let mut c = IdentityCheck::new("");
                    for n in 1..=l + 2 {
                        let ok = en_membership(t, n) == kn_colimit_membership(t, n)?;
                        c.record(ok, || format!("n={n}, {}", tuple_to_string(t)));
                    }
                    // every degree-l tuple sits in the cell with all weights l
                    let g = crate::treecomb::CompleteGraph::from_order(t[l].order(), |_, _| l as u32)?;
                    c.record(e_kappa_membership(t, &g)?, || format!("all weights {l}, {}", tuple_to_string(t)));
                    Ok(c)
                })
                .collect::<Result<Vec<_>>>()?;
            for c in part {
                check.merge(c);
            }
        }
    }
    let passed = check.passed();
    Ok(CellReport { max_arity, max_degree, check, passed })
}

/// Everything `operad-verify` runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperadReport {
    pub retract: RetractReport,
    pub cells: CellReport,
    pub theta_restriction: ThetaRestrictionReport,
    pub lifts: Vec<LiftReport>,
    pub passed: bool,
}

/// Retract identities at (arity, max_degree), cells at arity ≤ min(arity, 3),
/// the θ restriction lemma and the lift for each n in `levels`.
pub fn operad_verify(
    arity: usize,
    max_degree: usize,
    theta_levels: usize,
    theta_leaves: usize,
    levels: &[usize],
    bounds: LiftBounds,
) -> Result<OperadReport> {
    let retract = retract_check(arity, max_degree);
    let cells = en_colimit_check(arity.min(3), max_degree)?;
    let theta_restriction = theta_restriction_check(theta_levels, theta_leaves)?;
    let lifts = levels.iter().map(|n| lift_report(*n, bounds)).collect::<Result<Vec<_>>>()?;
    let passed = retract.passed && cells.passed && theta_restriction.passed && lifts.iter().all(|l| l.passed);
    Ok(OperadReport { retract, cells, theta_restriction, lifts, passed })
}
