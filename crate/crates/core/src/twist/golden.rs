//! The worked ∂_θ example: u ⊗ t(a_0, …, a_4) for the 2-level tree with
//! fibers (3, 2).

use super::theta_on_basis;
use crate::algdata::builtin::trivial_algebra;
use crate::algdata::{BimodulePresentation, Comb, GradedBasis};
use crate::barcplx::LabeledBarElement;
use crate::coeff::{format_scalar, int, sign, Scalar};
use crate::error::Result;
use crate::treecomb::LevelTree;
use serde::{Deserialize, Serialize};

/// Degrees of u and a_0..a_4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenDegrees {
    pub u: i64,
    pub a: [i64; 5],
}

/// The even specialization and one odd variant per Koszul exponent.
pub const GOLDEN_VARIANTS: [GoldenDegrees; 4] = [
    GoldenDegrees { u: 0, a: [0, 0, 0, 0, 0] },
    GoldenDegrees { u: 0, a: [1, 0, 0, 1, 0] },
    GoldenDegrees { u: 1, a: [0, 0, 1, 0, 0] },
    GoldenDegrees { u: 1, a: [0, 0, 0, 0, 1] },
];

/// ± (u a_i) ⊗ tree(labels), coefficients written in the basis u·a_i.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GoldenTerm {
    pub coefficient: String,
    pub module: String,
    pub tree: String,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenReport {
    pub degrees: GoldenDegrees,
    pub computed: Vec<GoldenTerm>,
    pub expected: Vec<GoldenTerm>,
    pub matches: bool,
}

/// M with basis u and ua_0..ua_4, where a_i·u = (−1)^{|a_i||u|} ua_i, so
/// that u·a_i = ua_i.
fn golden_module(d: &GoldenDegrees) -> BimodulePresentation {
    let mut entries = vec![("u".to_string(), d.u)];
    entries.extend((0..5).map(|i| (format!("ua{i}"), d.u + d.a[i])));
    let basis = GradedBasis::new(entries).expect("distinct names");
    let mut action = vec![vec![Comb::new(); 6]; 5];
    for (i, row) in action.iter_mut().enumerate() {
        row[0].add(i + 1, sign(d.a[i] * d.u % 2 != 0));
    }
    BimodulePresentation::from_parts(basis, action, vec![Comb::new(); 6])
}

fn term(c: Scalar, module: usize, tree: &str, labels: &[usize]) -> GoldenTerm {
    let names = ["u", "ua0", "ua1", "ua2", "ua3", "ua4"];
    GoldenTerm {
        coefficient: format_scalar(&c),
        module: names[module].to_string(),
        tree: tree.to_string(),
        labels: labels.iter().map(|i| format!("a{i}")).collect(),
    }
}

/// The displayed image, with a_y u rewritten as (−1)^{|a_y||u|} u a_y.
fn expected(d: &GoldenDegrees) -> Vec<GoldenTerm> {
    let a = d.a;
    let pm = |e: i64| sign(e % 2 != 0);
    let swap = |y: usize| pm(a[y] * d.u);
    let mut v = vec![
        term(int(-1), 1, "[2];[2,2]", &[1, 2, 3, 4]),
        term(-pm(a[3] * (a[0] + a[1] + a[2])), 4, "[2];[3,1]", &[0, 1, 2, 4]),
        term(pm(a[2] * (d.u + a[0] + a[1])) * swap(2), 3, "[2];[2,2]", &[0, 1, 3, 4]),
        term(-pm(a[4] * (d.u + a[0] + a[1] + a[2] + a[3])) * swap(4), 5, "[2];[3,1]", &[0, 1, 2, 3]),
    ];
    v.sort();
    v
}

pub fn golden_example(d: GoldenDegrees) -> Result<GoldenReport> {
    let alg = trivial_algebra(5, &d.a)?;
    let module = golden_module(&d);
    module.validate(&alg, crate::coeff::CoefficientRing::Rationals)?;
    let tree: LevelTree = "[2];[3,2]".parse()?;
    let x = LabeledBarElement::new(tree, (0..5).collect())?;
    let mut computed: Vec<GoldenTerm> = theta_on_basis(0, &x, &alg, &module)
        .into_vec()
        .into_iter()
        .map(|(t, c)| term(c, t.module, &t.bar.tree.to_string(), &t.bar.labels))
        .collect();
    computed.sort();
    let expected = expected(&d);
    let matches = computed == expected;
    Ok(GoldenReport { degrees: d, computed, expected, matches })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_variants() {
        for d in GOLDEN_VARIANTS {
            let r = golden_example(d).unwrap();
            assert!(r.matches, "{r:#?}");
        }
    }
}
