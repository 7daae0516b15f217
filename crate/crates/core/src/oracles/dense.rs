use crate::coeff::{CoefficientRing, Scalar, SparseMatrix};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Size bound of the dense oracle, per degree.
pub const DENSE_BOUND: usize = 500;

fn rank_rational(mut a: Vec<Vec<Scalar>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|i| !a[*i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for j in c..cols {
                let v = &a[r][j] * &f;
                a[i][j] -= v;
            }
        }
        r += 1;
    }
    r
}

fn rank_mod(a: &[Vec<Scalar>], p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let num = x.numer().mod_floor(&pb).to_u64().unwrap();
                    let den = x.denom().mod_floor(&pb).to_u64().unwrap();
                    num * pow_mod(den, p - 2, p) % p
                })
                .collect()
        })
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|i| m[*i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = pow_mod(m[r][c], p - 2, p);
        for i in r + 1..rows {
            let f = m[i][c] * inv % p;
            if f == 0 {
                continue;
            }
            for j in c..cols {
                m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
            }
        }
        r += 1;
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Nonzero diagonal entries of the Smith form, by repeated smallest-pivot
/// elimination on a dense integer matrix.
pub fn dense_smith(a: &[Vec<Scalar>]) -> Result<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.numer().clone())
                    } else {
                        Err(Error::Ring("Smith form needs integer entries".into()))
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &m[t][j] * &q;
                        m[i][j] -= v;
                    }
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_floor(&m[t][t]);
                if !q.is_zero() {
                    for row in m.iter_mut().skip(t) {
                        let v = &row[t] * &q;
                        row[j] -= v;
                    }
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility: fold in any entry not divisible by the pivot
                let bad = (t + 1..rows).find(|i| (t + 1..cols).any(|j| !(&m[*i][j] % &m[t][t]).is_zero()));
                match bad {
                    Some(i) => {
                        for j in t..cols {
                            let v = m[i][j].clone();
                            m[t][j] += v;
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest entry of row/column t onto the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    Ok(diag)
}

/// Rank by dense elimination over a field.
pub fn dense_rank(m: &SparseMatrix, ring: CoefficientRing) -> Result<usize> {
    let a = m.to_dense();
    match ring {
        CoefficientRing::Rationals => Ok(rank_rational(a)),
        CoefficientRing::PrimeField(p) => Ok(rank_mod(&a, p as u64)),
        CoefficientRing::Integers => Err(Error::Ring("rank over the integers; use the Smith form".into())),
    }
}

/// (betti, torsion) per degree of a chain complex given by its dimensions
/// `dims[i]` (degree lo+i) and boundary matrices `maps[i]` from degree lo+i+1
/// to degree lo+i. The top degree has no incoming matrix and is reported as
/// cycles only.
pub fn dense_homology_oracle(
    dims: &[usize],
    maps: &[SparseMatrix],
    ring: CoefficientRing,
) -> Result<Vec<(usize, Vec<BigInt>)>> {
    if maps.len() + 1 != dims.len() && !(dims.is_empty() && maps.is_empty()) {
        return Err(Error::Invalid("need one matrix between consecutive degrees".into()));
    }
    if let Some(d) = dims.iter().find(|d| **d > DENSE_BOUND) {
        return Err(Error::Resource(format!("dense oracle limited to {DENSE_BOUND} per degree, got {d}")));
    }
    let mut ranks = Vec::new();
    let mut factors = Vec::new();
    for m in maps {
        match ring {
            CoefficientRing::Integers => {
                let f = dense_smith(&m.to_dense())?;
                ranks.push(f.len());
                factors.push(f.into_iter().filter(|x| !x.is_one()).collect());
            }
            field => {
                ranks.push(dense_rank(m, field)?);
                factors.push(Vec::new());
            }
        }
    }
    Ok((0..dims.len())
        .map(|i| {
            let out = if i == 0 { 0 } else { ranks[i - 1] };
            let inc = ranks.get(i).copied().unwrap_or(0);
            (dims[i] - out - inc, factors.get(i).cloned().unwrap_or_default())
        })
        .collect())
}
