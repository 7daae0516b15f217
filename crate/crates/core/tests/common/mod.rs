#![allow(dead_code)]

use enh::algdata::builtin::{
    exterior_generator, koszul_dg_example, monomial_algebra, trivial_algebra, truncated_polynomial,
    truncated_polynomial_in_degree,
};
use enh::algdata::{AlgebraPresentation, Comb, GradedBasis};
use enh::barcplx::enumerate_basis;
use enh::coeff::{int, CoefficientRing, Scalar, SparseMatrix};
use num_traits::{One, Zero};
use rand::Rng;

pub const Q: CoefficientRing = CoefficientRing::Rationals;
pub const Z: CoefficientRing = CoefficientRing::Integers;
pub const F2: CoefficientRing = CoefficientRing::PrimeField(2);
pub const F3: CoefficientRing = CoefficientRing::PrimeField(3);

pub fn builtin_algebras() -> Vec<(String, AlgebraPresentation)> {
    vec![
        ("trivial_algebra(1,[0])".into(), trivial_algebra(1, &[0]).unwrap()),
        ("trivial_algebra(2,[0,1])".into(), trivial_algebra(2, &[0, 1]).unwrap()),
        ("trivial_algebra(2,[1,2])".into(), trivial_algebra(2, &[1, 2]).unwrap()),
        ("truncated_polynomial(3)".into(), truncated_polynomial(3).unwrap()),
        ("truncated_polynomial(4)".into(), truncated_polynomial(4).unwrap()),
        ("truncated_polynomial(3) in degree 2".into(), truncated_polynomial_in_degree(3, 2).unwrap()),
        ("exterior_generator(1)".into(), exterior_generator(1).unwrap()),
        ("exterior_generator(2)".into(), exterior_generator(2).unwrap()),
        ("monomial_algebra([1,1],[1,1])".into(), monomial_algebra(&[1, 1], &[1, 1]).unwrap()),
        ("monomial_algebra([0,2],[1,1])".into(), monomial_algebra(&[0, 2], &[1, 1]).unwrap()),
        ("koszul_dg_example".into(), koszul_dg_example()),
    ]
}

fn invert(p: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = p.len();
    let mut a: Vec<Vec<Scalar>> = p.to_vec();
    let mut inv: Vec<Vec<Scalar>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect();
    for c in 0..n {
        let r = (c..n).find(|r| !a[*r][c].is_zero()).expect("invertible");
        a.swap(c, r);
        inv.swap(c, r);
        let f = a[c][c].clone();
        for j in 0..n {
            a[c][j] = &a[c][j] / &f;
            inv[c][j] = &inv[c][j] / &f;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let g = a[i][c].clone();
                for j in 0..n {
                    let (x, y) = (&a[c][j] * &g, &inv[c][j] * &g);
                    a[i][j] -= x;
                    inv[i][j] -= y;
                }
            }
        }
    }
    inv
}

/// A monomial algebra (at most three generators of degree ≤ 2, dimension
/// ≤ 6) in a random unitriangular basis within each degree.
pub fn random_algebra<R: Rng>(rng: &mut R) -> AlgebraPresentation {
    let a = loop {
        let g = rng.gen_range(1..=3);
        let degrees: Vec<i64> = (0..g).map(|_| rng.gen_range(0..=2)).collect();
        let bounds: Vec<u32> = (0..g).map(|_| rng.gen_range(1..=3)).collect();
        let a = monomial_algebra(&degrees, &bounds).unwrap();
        if a.dim() <= 6 {
            break a;
        }
    };
    let n = a.dim();
    // p[row][col]: column i holds the old coordinates of the new e_i.
    let mut p = vec![vec![Scalar::zero(); n]; n];
    for i in 0..n {
        p[i][i] = Scalar::one();
        for j in i + 1..n {
            if a.degree(i) == a.degree(j) {
                p[j][i] = int(rng.gen_range(-2..=2));
            }
        }
    }
    let pinv = invert(&p);
    let column = |c: &Comb| -> Comb {
        let mut out = Comb::new();
        for (k, v) in c.iter() {
            for r in 0..n {
                if !pinv[r][*k].is_zero() {
                    out.add(r, &pinv[r][*k] * v);
                }
            }
        }
        out
    };
    let mut product = vec![vec![Comb::new(); n]; n];
    for x in 0..n {
        for y in 0..n {
            let mut old = Comb::new();
            for k in 0..n {
                for l in 0..n {
                    if !p[k][x].is_zero() && !p[l][y].is_zero() {
                        old.add_scaled(a.product(k, l), &(&p[k][x] * &p[l][y]));
                    }
                }
            }
            product[x][y] = column(&old);
        }
    }
    let names: Vec<(String, i64)> = (0..n).map(|i| (format!("e{i}"), a.degree(i))).collect();
    AlgebraPresentation::from_parts(GradedBasis::new(names).unwrap(), product, vec![Comb::new(); n])
}

/// Largest D ≤ cap with every bar basis in degrees ≤ D at most `limit` long.
pub fn degree_cap(alg: &AlgebraPresentation, n: usize, cap: i64, limit: usize) -> i64 {
    let mut top = 0;
    for d in 0..=cap {
        match enumerate_basis(alg, n, d) {
            Ok(b) if b.len() <= limit => top = d,
            _ => break,
        }
    }
    top
}

/// A chain complex assembled from elementary pieces and hidden by random
/// unimodular changes of basis. `maps[i]` goes from degree i+1 to degree i.
pub struct KnownComplex {
    pub dims: Vec<usize>,
    pub maps: Vec<SparseMatrix>,
    /// (free rank, torsion) per degree for the given ring.
    pub expected: Vec<(usize, Vec<i64>)>,
}

#[derive(Clone, Copy)]
enum Piece {
    Free(usize),
    /// Multiplication by m from degree i+1 to degree i.
    Map(usize, i64),
}

fn dense_to_sparse(m: &[Vec<Scalar>], rows: usize, cols: usize) -> SparseMatrix {
    let columns = (0..cols)
        .map(|j| (0..rows).filter(|i| !m[*i][j].is_zero()).map(|i| (i, m[i][j].clone())).collect())
        .collect();
    SparseMatrix::from_columns(rows, columns)
}

/// Random unimodular integer matrix and its inverse.
fn unimodular<R: Rng>(n: usize, rng: &mut R) -> (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>) {
    let id = |n: usize| -> Vec<Vec<Scalar>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
    };
    let (mut u, mut v) = (id(n), id(n));
    if n < 2 {
        return (u, v);
    }
    for _ in 0..2 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = int(rng.gen_range(-2..=2));
        // u ← (I + c E_ij) u, v ← v (I − c E_ij)
        for k in 0..n {
            let t = &u[j][k] * &c;
            u[i][k] += t;
        }
        for k in 0..n {
            let t = &v[k][i] * &c;
            v[k][j] -= t;
        }
    }
    (u, v)
}

fn mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>], inner: usize, rows: usize, cols: usize) -> Vec<Vec<Scalar>> {
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (0..inner).fold(Scalar::zero(), |s, k| s + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn random_complex<R: Rng>(rng: &mut R, ring: CoefficientRing) -> KnownComplex {
    let degrees = rng.gen_range(1..=5usize);
    let mut pieces = Vec::new();
    for _ in 0..rng.gen_range(0..=8) {
        let i = rng.gen_range(0..degrees);
        if i + 1 < degrees && rng.gen_bool(0.6) {
            let m = [1, 1, 2, 3, 4, 6, -1, 5][rng.gen_range(0..8)];
            pieces.push(Piece::Map(i, m));
        } else {
            pieces.push(Piece::Free(i));
        }
    }
    // basis positions per degree
    let mut dims = vec![0usize; degrees];
    let mut slots = Vec::new();
    for p in &pieces {
        match *p {
            Piece::Free(i) => {
                slots.push((i, dims[i], 0));
                dims[i] += 1;
            }
            Piece::Map(i, _) => {
                slots.push((i, dims[i], dims[i + 1]));
                dims[i] += 1;
                dims[i + 1] += 1;
            }
        }
    }
    let mut raw: Vec<Vec<Vec<Scalar>>> =
        (0..degrees.saturating_sub(1)).map(|i| vec![vec![Scalar::zero(); dims[i + 1]]; dims[i]]).collect();
    for (p, (i, lo, hi)) in pieces.iter().zip(&slots) {
        if let Piece::Map(_, m) = p {
            raw[*i][*lo][*hi] = int(*m);
        }
    }
    let changes: Vec<_> = dims.iter().map(|d| unimodular(*d, rng)).collect();
    let maps = (0..degrees.saturating_sub(1))
        .map(|i| {
            // U_i · d · U_{i+1}^{-1}
            let left = mul(&changes[i].0, &raw[i], dims[i], dims[i], dims[i + 1]);
            let m = mul(&left, &changes[i + 1].1, dims[i + 1], dims[i], dims[i + 1]);
            dense_to_sparse(&m, dims[i], dims[i + 1])
        })
        .collect();
    let mut expected = vec![(0usize, Vec::new()); degrees];
    for p in &pieces {
        match *p {
            Piece::Free(i) => expected[i].0 += 1,
            Piece::Map(i, m) => {
                let m = m.abs();
                match ring {
                    CoefficientRing::Rationals => {}
                    CoefficientRing::Integers => {
                        if m != 1 {
                            expected[i].1.push(m);
                        }
                    }
                    CoefficientRing::PrimeField(q) => {
                        if m % q as i64 == 0 {
                            expected[i].0 += 1;
                            expected[i + 1].0 += 1;
                        }
                    }
                }
            }
        }
    }
    KnownComplex { dims, maps, expected }
}

/// Prime-power parts of a list of invariant factors, sorted.
pub fn elementary_divisors(factors: &[i64]) -> Vec<i64> {
    let mut out = Vec::new();
    for f in factors {
        let mut n = f.abs();
        let mut p = 2;
        while p * p <= n {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            if q > 1 {
                out.push(q);
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
    }
    out.sort();
    out
}
