mod common;

use common::*;
use enh::coeff::{homology_dims, int, rank, smith_normal_form, CoefficientRing, Scalar, SparseMatrix};
use enh::oracles::{dense_homology_oracle, dense_rank, dense_smith};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn matrix(rows: usize, cols: usize, density: f64, range: i64, rng: &mut ChaCha8Rng) -> SparseMatrix {
    let mut t = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(density) {
                t.push((r, c, int(rng.gen_range(-range..=range))));
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, t)
}

fn ring_strategy() -> impl Strategy<Value = CoefficientRing> {
    prop_oneof![Just(Q), Just(F2), Just(F3), Just(CoefficientRing::PrimeField(7))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_of_transpose(seed: u64, rows in 0usize..15, cols in 0usize..15, ring in ring_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = matrix(rows, cols, 0.3, 3, &mut rng);
        prop_assert_eq!(rank(&m, ring).unwrap(), rank(&m.transpose(), ring).unwrap());
    }

    #[test]
    fn sparse_rank_matches_dense(seed: u64, rows in 1usize..=40, cols in 1usize..=40, p in prop_oneof![Just(2u32), Just(3), Just(5), Just(101)]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = CoefficientRing::PrimeField(p);
        let m = matrix(rows, cols, 0.15, 5, &mut rng);
        prop_assert_eq!(rank(&m, ring).unwrap(), dense_rank(&m, ring).unwrap());
    }

    #[test]
    fn snf_invariant_under_unimodular_changes(seed: u64, rows in 1usize..8, cols in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = matrix(rows, cols, 0.5, 4, &mut rng);
        let mut d = m.to_dense();
        for _ in 0..10 {
            // row op or column op with an integer multiplier
            let c = int(rng.gen_range(-3..=3));
            if rng.gen_bool(0.5) && rows > 1 {
                let (i, j) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
                if i != j {
                    for k in 0..cols {
                        let t = &d[j][k] * &c;
                        d[i][k] += t;
                    }
                }
            } else if cols > 1 {
                let (i, j) = (rng.gen_range(0..cols), rng.gen_range(0..cols));
                if i != j {
                    for row in d.iter_mut() {
                        let t = &row[j] * &c;
                        row[i] += t;
                    }
                }
            }
        }
        let changed = SparseMatrix::from_dense(&d, cols);
        let a = smith_normal_form(&m).unwrap();
        prop_assert_eq!(&a, &smith_normal_form(&changed).unwrap());
        let mut dense = dense_smith(&m.to_dense()).unwrap();
        dense.retain(|x| !x.is_zero());
        prop_assert_eq!(a, dense);
    }

    #[test]
    fn homology_of_known_complexes(seed: u64, ring in prop_oneof![Just(Q), Just(Z), Just(F2), Just(F3)]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = random_complex(&mut rng, ring);
        let dense = dense_homology_oracle(&k.dims, &k.maps, ring).unwrap();
        for d in 0..k.dims.len() {
            let none_in = SparseMatrix::zeros(k.dims[d], 0);
            let none_out = SparseMatrix::zeros(0, k.dims[d]);
            let d_in = k.maps.get(d).unwrap_or(&none_in);
            let d_out = if d == 0 { &none_out } else { &k.maps[d - 1] };
            let (free, torsion) = homology_dims(d_in, d_out, ring).unwrap();
            prop_assert_eq!(free, k.expected[d].0);
            prop_assert_eq!(free, dense[d].0);
            let t: Vec<i64> = torsion.iter().map(|x| x.try_into().unwrap()).collect();
            prop_assert_eq!(elementary_divisors(&t), elementary_divisors(&k.expected[d].1));
        }
    }
}

#[test]
fn reduction_into_prime_fields() {
    let half: Scalar = int(1) / int(2);
    assert_eq!(F3.reduce(&half).unwrap(), int(2));
    assert!(F2.reduce(&half).is_err());
    assert!(F3.is_zero(&int(6)));
}
