use crate::algdata::{AlgebraPresentation, BimodulePresentation};
use crate::coeff::{int, CoefficientRing, Lin, Scalar, SparseMatrix};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// m ⊗ s a_1 ⊗ … ⊗ s a_l
pub type HochschildChain = (usize, Vec<usize>);

fn pm(odd: i64) -> Scalar {
    if odd.rem_euclid(2) == 1 {
        int(-1)
    } else {
        int(1)
    }
}

/// Normalized Hochschild chains of A_+ with coefficients in M in degree
/// |m| + Σ|a_i| + l, ordered by module element, word length, then word.
pub fn hochschild_basis(
    alg: &AlgebraPresentation,
    module: &BimodulePresentation,
    degree: i64,
) -> Vec<HochschildChain> {
    let mut out = Vec::new();
    let letters: Vec<i64> = (0..alg.dim()).map(|a| alg.degree(a)).collect();
    for m in 0..module.dim() {
        let budget = degree - module.degree(m);
        if budget < 0 {
            continue;
        }
        for l in 0..=budget as usize {
            let mut words: Vec<(Vec<usize>, i64)> = vec![(Vec::new(), 0)];
            for _ in 0..l {
                let mut next = Vec::new();
                for (w, s) in &words {
                    for (a, da) in letters.iter().enumerate() {
                        if s + da + 1 <= budget {
                            let mut w2 = w.clone();
                            w2.push(a);
                            next.push((w2, s + da + 1));
                        }
                    }
                }
                words = next;
            }
            out.extend(words.into_iter().filter(|(_, s)| *s == budget).map(|(w, _)| (m, w)));
        }
    }
    out
}

/// The Hochschild boundary of m ⊗ s a_1 … s a_l, with the symmetric right
/// action m·a = (−1)^{|a||m|} a·m.
pub fn hochschild_boundary(
    alg: &AlgebraPresentation,
    module: &BimodulePresentation,
    chain: &HochschildChain,
) -> Lin<HochschildChain> {
    let (m, w) = chain;
    let dm = module.degree(*m);
    let da = |a: usize| alg.degree(a);
    let mut out = Lin::new();
    for (m2, c) in module.differential(*m).iter() {
        out.add((*m2, w.clone()), c.clone());
    }
    let mut prefix = dm;
    for (i, a) in w.iter().enumerate() {
        for (a2, c) in alg.differential(*a).iter() {
            let mut w2 = w.clone();
            w2[i] = *a2;
            out.add((*m, w2), c * pm(prefix + 1));
        }
        prefix += da(*a) + 1;
    }
    let l = w.len();
    if l == 0 {
        return out;
    }
    let first = w[0];
    for (m2, c) in module.left(first, *m).iter() {
        out.add((*m2, w[1..].to_vec()), c * pm(dm + da(first) * dm));
    }
    let mut prefix = dm;
    for i in 0..l - 1 {
        prefix += da(w[i]) + 1;
        for (p, c) in alg.product(w[i], w[i + 1]).iter() {
            let mut w2 = w[..i].to_vec();
            w2.push(*p);
            w2.extend_from_slice(&w[i + 2..]);
            out.add((*m, w2), c * pm(prefix));
        }
    }
    let last = w[l - 1];
    let rest = dm + w[..l - 1].iter().map(|a| da(*a) + 1).sum::<i64>();
    for (m2, c) in module.left(last, *m).iter() {
        out.add((*m2, w[..l - 1].to_vec()), c * pm((da(last) + 1) * rest + 1));
    }
    out
}

/// Bases in degrees 0..=max_degree and the boundary matrices between them
/// (matrix i maps degree i+1 to degree i).
pub fn hochschild_complex(
    alg: &AlgebraPresentation,
    module: &BimodulePresentation,
    max_degree: i64,
    ring: CoefficientRing,
) -> Result<(Vec<Vec<HochschildChain>>, Vec<SparseMatrix>)> {
    if (0..module.dim()).any(|m| module.degree(m) < 0) {
        return Err(Error::Invalid("the Hochschild oracle needs nonnegatively graded coefficients".into()));
    }
    let bound = crate::barcplx::max_basis();
    let mut bases = Vec::new();
    for d in 0..=max_degree {
        let b = hochschild_basis(alg, module, d);
        if b.len() > bound {
            return Err(Error::Resource(format!("Hochschild basis in degree {d} has {} elements", b.len())));
        }
        bases.push(b);
    }
    let mut maps = Vec::new();
    for d in 1..bases.len() {
        let index: HashMap<&HochschildChain, usize> = bases[d - 1].iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut columns = Vec::new();
        for chain in &bases[d] {
            let mut col = Vec::new();
            for (t, c) in hochschild_boundary(alg, module, chain).into_vec() {
                let r = *index
                    .get(&t)
                    .ok_or_else(|| Error::Invariant("Hochschild boundary left its degree".into()))?;
                col.push((r, ring.reduce(&c)?));
            }
            columns.push(col);
        }
        maps.push(SparseMatrix::from_columns(bases[d - 1].len(), columns));
    }
    Ok((bases, maps))
}
