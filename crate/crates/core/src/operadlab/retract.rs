//! The retract ψ: E ⇄ Com: ι with homotopy ν.

use super::be::{
    add_faces, be_differential, nondegenerate_tuples, tuple_degree, tuple_to_string, BarrattEcclesChain, BeTuple,
    Permutation,
};
use crate::coeff::{int, sign, Lin, Scalar};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// ψ: the coefficient of the Com generator (Com(e) is one-dimensional).
pub fn psi(c: &BarrattEcclesChain) -> Scalar {
    c.iter().filter(|(t, _)| t.len() == 1).fold(Scalar::zero(), |a, (_, v)| a + v)
}

/// ι(μ_e) = (τ_e).
pub fn iota(inputs: &[usize]) -> BeTuple {
    vec![Permutation::identity_on(inputs)]
}

/// ν(ω_0, …, ω_l) = (−1)^{l+1} (ω_0, …, ω_l, τ), zero when ω_l = τ.
///
/// With this sign dν + νd = id − ιψ.
pub fn nu(c: &BarrattEcclesChain) -> BarrattEcclesChain {
    let mut out = Lin::new();
    for (t, v) in c.iter() {
        let tau = Permutation::identity_on(&t[0].inputs());
        if t.last() == Some(&tau) {
            continue;
        }
        let mut u = t.clone();
        u.push(tau);
        out.add(u, v * sign(tuple_degree(t) % 2 == 0));
    }
    out
}

/// One checked identity and its first counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl IdentityCheck {
    pub fn new(name: &str) -> Self {
        IdentityCheck { name: name.into(), checked: 0, failures: 0, counterexample: None }
    }

    pub fn record(&mut self, ok: bool, at: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(at());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub(crate) fn merge(&mut self, other: IdentityCheck) {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractReport {
    pub arity: usize,
    pub max_degree: usize,
    pub tuples: usize,
    pub identities: Vec<IdentityCheck>,
    pub passed: bool,
}

fn single(t: BeTuple) -> BarrattEcclesChain {
    let mut c = Lin::new();
    c.add(t, int(1));
    c
}

fn check_tuple(t: &BeTuple, checks: &mut [IdentityCheck; 5]) {
    let x = single(t.clone());
    let show = || tuple_to_string(t);
    let l = tuple_degree(t);
    let dx = be_differential(&x);

    let mut ddx = Lin::new();
    for (u, v) in dx.iter() {
        add_faces(u, v, &mut ddx);
    }
    checks[0].record(ddx.is_zero(), show);

    // dν + νd = id − ιψ
    let mut lhs = be_differential(&nu(&x));
    for (u, v) in nu(&dx).into_iter() {
        lhs.add(u, v);
    }
    let mut rhs = x.clone();
    let p = psi(&x);
    rhs.add(iota(&t[0].inputs()), -p);
    checks[1].record(lhs == rhs, show);

    checks[2].record(psi(&nu(&x)).is_zero(), show);
    if l > 0 {
        checks[3].record(psi(&dx).is_zero(), show);
    }
    // ι is a chain map: dι = 0 and ψι = id
    if l == 0 && t[0].is_identity() {
        let i = single(iota(&t[0].inputs()));
        checks[4].record(psi(&i) == int(1) && be_differential(&i).is_zero(), show);
    }
}

/// Exhaustive check of the retract identities on every normalized tuple of
/// arity r and simplicial degree ≤ l_max.
pub fn retract_check(r: usize, l_max: usize) -> RetractReport {
    let inputs: Vec<usize> = (0..r).collect();
    let names = ["d^2 = 0", "d nu + nu d = id - iota psi", "psi nu = 0", "psi d = 0 (positive degrees)", "psi iota = id"];
    let fresh = || names.map(IdentityCheck::new);
    let mut tuples = 0;
    let mut total = fresh();
    for l in 0..=l_max {
        let ts = nondegenerate_tuples(&inputs, l);
        tuples += ts.len();
        let part = ts
            .par_iter()
            .fold(fresh, |mut acc, t| {
                check_tuple(t, &mut acc);
                acc
            })
            .reduce(fresh, |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    x.merge(y);
                }
                a
            });
        for (x, y) in total.iter_mut().zip(part) {
            x.merge(y);
        }
    }
    let identities = total.to_vec();
    let passed = identities.iter().all(IdentityCheck::passed);
    RetractReport { arity: r, max_degree: l_max, tuples, identities, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_on_tau_ending_is_zero() {
        let t = vec![Permutation::new(vec![1, 0]).unwrap(), Permutation::identity_on(&[0, 1])];
        assert!(nu(&single(t)).is_zero());
    }

    #[test]
    fn arity_two() {
        let rep = retract_check(2, 2);
        assert!(rep.passed, "{rep:?}");
        assert!(rep.identities.iter().all(|c| c.checked > 0));
    }
}
