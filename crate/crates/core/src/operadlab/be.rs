use crate::coeff::{int, sign, Lin, Scalar};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A bijection ω from a finite input set onto {1..r}, stored as the inputs
/// listed in ω-order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut s = order.clone();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("a permutation lists each input once".into()));
        }
        Ok(Permutation(order))
    }

    /// τ_e: the inputs in increasing order.
    pub fn identity_on(inputs: &[usize]) -> Self {
        let mut v = inputs.to_vec();
        v.sort_unstable();
        Permutation(v)
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn position(&self, e: usize) -> Option<usize> {
        self.0.iter().position(|x| *x == e)
    }

    /// Sorted inputs.
    pub fn inputs(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }

    pub fn is_identity(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// Whether e comes before f.
    pub fn before(&self, e: usize, f: usize) -> bool {
        self.position(e) < self.position(f)
    }

    /// ω ∘_k ω': the input k replaced by the listing of ω'.
    pub fn substitute(&self, k: usize, inner: &Permutation) -> Permutation {
        let mut out = Vec::with_capacity(self.0.len() + inner.0.len() - 1);
        for x in &self.0 {
            if *x == k {
                out.extend_from_slice(&inner.0);
            } else {
                out.push(*x);
            }
        }
        Permutation(out)
    }

    /// All permutations of the given inputs, lexicographic.
    pub fn all(inputs: &[usize]) -> Vec<Permutation> {
        let mut v = inputs.to_vec();
        v.sort_unstable();
        let mut out = Vec::new();
        permute(&mut v, 0, &mut out);
        out.sort();
        out
    }
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == v.len() {
        out.push(Permutation(v.clone()));
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(""))
    }
}

/// (ω_0, …, ω_l): a basis element of E in simplicial degree l.
pub type BeTuple = Vec<Permutation>;

/// A k-linear combination of tuples, normalized (no tuple repeats an entry
/// consecutively).
pub type BarrattEcclesChain = Lin<BeTuple>;

pub fn is_degenerate(t: &[Permutation]) -> bool {
    t.windows(2).any(|w| w[0] == w[1])
}

pub fn tuple_degree(t: &[Permutation]) -> i64 {
    t.len() as i64 - 1
}

pub fn tuple_to_string(t: &[Permutation]) -> String {
    let s: Vec<String> = t.iter().map(|p| p.to_string()).collect();
    format!("({})", s.join(","))
}

/// Σ_i (−1)^i (ω_0, …, ω̂_i, …, ω_l), degenerate faces dropped.
pub fn be_differential(c: &BarrattEcclesChain) -> BarrattEcclesChain {
    let mut out = Lin::new();
    for (t, v) in c.iter() {
        add_faces(t, v, &mut out);
    }
    out
}

pub(crate) fn add_faces(t: &[Permutation], v: &Scalar, out: &mut BarrattEcclesChain) {
    if t.len() < 2 {
        return;
    }
    for i in 0..t.len() {
        let mut f = t.to_vec();
        f.remove(i);
        if !is_degenerate(&f) {
            out.add(f, v * sign(i % 2 == 1));
        }
    }
}

/// x ∘_k y by the Eilenberg–Zilber shuffle: the sum over lattice paths from
/// (0,0) to (p,q), each signed by the parity of (vertical step, later
/// horizontal step) pairs.
pub fn partial_compose(x: &[Permutation], k: usize, y: &[Permutation]) -> Vec<(BeTuple, bool)> {
    let (p, q) = (x.len() - 1, y.len() - 1);
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(p + q + 1);
    path.push(x[0].substitute(k, &y[0]));
    paths(x, k, y, 0, 0, 0, false, &mut path, &mut out);
    debug_assert!(out.iter().all(|(t, _)| t.len() == p + q + 1));
    out
}

#[allow(clippy::too_many_arguments)]
fn paths(
    x: &[Permutation],
    k: usize,
    y: &[Permutation],
    i: usize,
    j: usize,
    verticals: usize,
    odd: bool,
    path: &mut Vec<Permutation>,
    out: &mut Vec<(BeTuple, bool)>,
) {
    if i + 1 == x.len() && j + 1 == y.len() {
        if !is_degenerate(path) {
            out.push((path.clone(), odd));
        }
        return;
    }
    if i + 1 < x.len() {
        path.push(x[i + 1].substitute(k, &y[j]));
        paths(x, k, y, i + 1, j, verticals, odd ^ (verticals % 2 == 1), path, out);
        path.pop();
    }
    if j + 1 < y.len() {
        path.push(x[i].substitute(k, &y[j + 1]));
        paths(x, k, y, i, j + 1, verticals + 1, odd, path, out);
        path.pop();
    }
}

/// γ(x; y_1, …, y_m) with y_a substituted for input `slots[a]`, composed in
/// the listed order.
pub fn compose_many(x: &[Permutation], slots: &[usize], ys: &[&[Permutation]]) -> BarrattEcclesChain {
    let mut acc: BarrattEcclesChain = Lin::new();
    acc.add(x.to_vec(), int(1));
    for (k, y) in slots.iter().zip(ys) {
        let mut next = Lin::new();
        for (t, v) in acc.iter() {
            for (u, odd) in partial_compose(t, *k, y) {
                next.add(u, v * sign(odd));
            }
        }
        acc = next;
    }
    acc
}

/// All nondegenerate tuples of length l+1 over the given inputs.
pub fn nondegenerate_tuples(inputs: &[usize], l: usize) -> Vec<BeTuple> {
    let perms = Permutation::all(inputs);
    let mut out: Vec<BeTuple> = perms.iter().map(|p| vec![p.clone()]).collect();
    for _ in 0..l {
        let mut next = Vec::with_capacity(out.len() * perms.len().saturating_sub(1));
        for t in &out {
            for p in &perms {
                if t.last() != Some(p) {
                    let mut u = t.clone();
                    u.push(p.clone());
                    next.push(u);
                }
            }
        }
        out = next;
    }
    out
}
