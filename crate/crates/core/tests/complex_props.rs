mod common;

use common::*;
use enh::algdata::builtin::{dual_bimodule, trivial_coefficients, unital_extension};
use enh::algdata::{
    algebra_to_document, bimodule_to_document, load_and_validate_algebra, load_and_validate_bimodule,
    AlgebraPresentation, BimodulePresentation, Comb,
};
use enh::barcplx::{bar_differential, bar_terms, enumerate_basis, BarComplex};
use enh::homcalc::{homology_table, HomologyTable, TableMeta};
use enh::oracles::shift_comparison;
use enh::treecomb::enumerate_trees;
use enh::twist::{assemble_homology_complex, theta_on_basis, twisted_terms, Mode, TwistedComplex};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebra(seed: u64) -> AlgebraPresentation {
    random_algebra(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn meta(n: usize, mode: Mode) -> TableMeta {
    TableMeta { algebra: "a".into(), module: "m".into(), n, ring: "q".into(), mode }
}

fn right_on(module: &BimodulePresentation, alg: &AlgebraPresentation, m: &Comb, a: usize) -> Comb {
    let mut out = Comb::new();
    for (k, v) in m.iter() {
        out.add_scaled(&module.right(*k, a, alg), v);
    }
    out
}

/// Words of length r in the basis degrees with the given degree sum.
fn word_count(degrees: &[i64], r: usize, total: i64) -> usize {
    let mut ways = std::collections::HashMap::from([(0i64, 1usize)]);
    for _ in 0..r {
        let mut next = std::collections::HashMap::new();
        for (s, c) in &ways {
            for d in degrees {
                *next.entry(s + d).or_insert(0) += c;
            }
        }
        ways = next;
    }
    ways.get(&total).copied().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn documents_round_trip(seed: u64) {
        let a = algebra(seed);
        let back = load_and_validate_algebra(&algebra_to_document(&a), Q).unwrap();
        prop_assert_eq!(&back, &a);
        let m = unital_extension(&a);
        let mb = load_and_validate_bimodule(&bimodule_to_document(&m, &a), &a, Q).unwrap();
        prop_assert_eq!(mb, m);
    }

    #[test]
    fn right_action_is_associative(seed: u64) {
        let a = algebra(seed);
        for module in [unital_extension(&a), dual_bimodule(&unital_extension(&a), &a)] {
            for m in 0..module.dim() {
                let single: Comb = [(m, enh::coeff::int(1))].into_iter().collect();
                for x in 0..a.dim() {
                    for y in 0..a.dim() {
                        let mut lhs = Comb::new();
                        for (k, v) in a.product(x, y).iter() {
                            lhs.add_scaled(&module.right(m, *k, &a), v);
                        }
                        let rhs = right_on(&module, &a, &right_on(&module, &a, &single, x), y);
                        prop_assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn unital_extension_restricts_to_the_product(seed: u64) {
        let a = algebra(seed);
        let m = unital_extension(&a);
        prop_assert_eq!(m.dim(), a.dim() + 1);
        for x in 0..a.dim() {
            prop_assert_eq!(m.degree(x + 1), a.degree(x));
            for y in 0..a.dim() {
                let shifted: Comb = m.left(x, y + 1).iter().map(|(k, v)| (k - 1, v.clone())).collect();
                prop_assert_eq!(&shifted, a.product(x, y));
            }
        }
    }

    #[test]
    fn bar_differential_squares_to_zero(seed: u64, n in 1usize..=3) {
        let a = algebra(seed);
        let top = degree_cap(&a, n, 4, 300);
        for d in 2..=top {
            let hi = bar_differential(&a, n, d, Q).unwrap();
            let lo = bar_differential(&a, n, d - 1, Q).unwrap();
            prop_assert!(lo.mul(&hi).is_zero_in(Q));
        }
    }

    #[test]
    fn bar_terms_lower_degree_by_one(seed: u64, n in 1usize..=3, d in 0i64..=4) {
        let a = algebra(seed);
        let basis = enumerate_basis(&a, n, d).unwrap();
        for x in basis.iter().take(200) {
            prop_assert_eq!(x.degree(&a), d);
            prop_assert_eq!(x.levels(), n);
            for (y, _) in bar_terms(&a, x) {
                prop_assert_eq!(y.degree(&a), d - 1);
                prop_assert_eq!(y.levels(), n);
            }
        }
    }

    #[test]
    fn basis_sizes_match_word_counts(seed: u64, n in 1usize..=3, d in 0i64..=4) {
        let a = algebra(seed);
        let mut expected = 0;
        for r in 1..=(d as usize + 1) {
            for t in enumerate_trees(n, r).unwrap() {
                expected += word_count(a.basis().degrees(), r, d + n as i64 - t.edge_count() as i64);
            }
        }
        prop_assert_eq!(enumerate_basis(&a, n, d).unwrap().len(), expected);
    }

    #[test]
    fn theta_drops_one_leaf(seed: u64, n in 1usize..=3, d in 0i64..=3) {
        let a = algebra(seed);
        let module = unital_extension(&a);
        let bar = BarComplex::new(&a, n).unwrap();
        for x in bar.basis(d).unwrap().iter().take(100) {
            for m in 0..module.dim() {
                let total = x.degree(&a) + module.degree(m);
                for (t, _) in theta_on_basis(m, x, &a, &module).iter() {
                    prop_assert_eq!(t.bar.levels(), n);
                    prop_assert_eq!(t.bar.tree.leaves() + 1, x.tree.leaves());
                    prop_assert_eq!(t.bar.degree(&a) + module.degree(t.module), total - 1);
                }
                for (t, _) in twisted_terms(m, x, &a, &module).iter() {
                    prop_assert_eq!(t.bar.degree(&a) + module.degree(t.module), total - 1);
                }
            }
        }
    }

    #[test]
    fn euler_characteristic_is_conserved(seed: u64, n in 1usize..=2, unital: bool) {
        let a = algebra(seed);
        let module = if unital { unital_extension(&a) } else { trivial_coefficients(&a) };
        let top = degree_cap(&a, n, 4, 200);
        let c = assemble_homology_complex(&a, &module, n, top, Q).unwrap();
        let t = homology_table(&c, meta(n, Mode::Homology)).unwrap();
        let sign = |d: i64| if d % 2 == 0 { 1i64 } else { -1 };
        let chi_dims: i64 = t.rows.iter().map(|r| sign(r.degree) * r.dim as i64).sum();
        let chi_betti: i64 = t.rows.iter().map(|r| sign(r.degree) * r.betti as i64).sum();
        prop_assert_eq!(chi_dims, chi_betti);
    }

    #[test]
    fn homology_ignores_basis_order(seed: u64, n in 1usize..=2, ring in prop_oneof![Just(Q), Just(Z), Just(F2), Just(F3)]) {
        let a = algebra(seed);
        let module = unital_extension(&a);
        let top = degree_cap(&a, n, 4, 200);
        let c = assemble_homology_complex(&a, &module, n, top, ring).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let perms: Vec<Vec<usize>> = c
            .degrees()
            .map(|d| {
                let mut p: Vec<usize> = (0..c.dim(d)).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let bases = c
            .degrees()
            .zip(&perms)
            .map(|(d, p)| {
                let old = c.basis(d);
                let mut new = old.to_vec();
                for (i, x) in old.iter().enumerate() {
                    new[p[i]] = x.clone();
                }
                new
            })
            .collect();
        let steps = c.steps().iter().enumerate().map(|(i, s)| s.permuted(&perms[i], &perms[i + 1])).collect();
        let shuffled = TwistedComplex::from_parts(ring, Mode::Homology, n, c.lo, bases, steps).unwrap();
        let strip = |t: HomologyTable| t.rows;
        prop_assert_eq!(
            strip(homology_table(&c, meta(n, Mode::Homology)).unwrap()),
            strip(homology_table(&shuffled, meta(n, Mode::Homology)).unwrap())
        );
    }

    #[test]
    fn one_level_homology_matches_hochschild(seed: u64, unital: bool) {
        let a = algebra(seed);
        let module = if unital { unital_extension(&a) } else { trivial_coefficients(&a) };
        let top = degree_cap(&a, 1, 3, 200);
        let c = assemble_homology_complex(&a, &module, 1, top + 1, Q).unwrap();
        let t = homology_table(&c, meta(1, Mode::Homology)).unwrap();
        let cmp = shift_comparison(&t, &a, &module, Q, top).unwrap();
        prop_assert!(cmp.passed, "{:?}", cmp.rows);
    }
}
