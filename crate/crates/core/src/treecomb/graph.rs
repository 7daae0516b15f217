use super::tree::LevelTree;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Bijection σ from a label set onto the leaf positions, stored as the
/// label sitting at each leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Labeling {
    at_leaf: Vec<usize>,
}

impl Labeling {
    pub fn new(at_leaf: Vec<usize>) -> Result<Self> {
        let set: BTreeSet<_> = at_leaf.iter().collect();
        if set.len() != at_leaf.len() {
            return Err(Error::Invalid("labels must be distinct".into()));
        }
        Ok(Labeling { at_leaf })
    }

    /// Labels 0..r in leaf order.
    pub fn canonical(r: usize) -> Self {
        Labeling { at_leaf: (0..r).collect() }
    }

    pub fn at_leaf(&self) -> &[usize] {
        &self.at_leaf
    }

    pub fn len(&self) -> usize {
        self.at_leaf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.at_leaf.is_empty()
    }

    /// σ(e): the leaf position of label e.
    pub fn position(&self, e: usize) -> Option<usize> {
        self.at_leaf.iter().position(|x| *x == e)
    }

    pub fn label_set(&self) -> BTreeSet<usize> {
        self.at_leaf.iter().copied().collect()
    }

    /// σ' after deleting leaf s: positions above s shift down by one.
    pub fn relabel(&self, s: usize) -> Result<Labeling> {
        if s >= self.at_leaf.len() {
            return Err(Error::Invalid(format!("leaf {s} out of range")));
        }
        let mut at_leaf = self.at_leaf.clone();
        at_leaf.remove(s);
        Ok(Labeling { at_leaf })
    }
}

/// A complete graph κ = (σ, μ) on a finite vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompleteGraph {
    /// Sorted vertex names.
    vertices: Vec<usize>,
    /// rank[i] ∈ 0..r is σ of vertices[i], 0-based.
    rank: Vec<usize>,
    /// Symmetric weights indexed like `vertices`.
    weights: Vec<Vec<u32>>,
}

impl CompleteGraph {
    /// `order` lists the vertices from first to last; `weight` gives μ_ef.
    pub fn from_order(order: &[usize], weight: impl Fn(usize, usize) -> u32) -> Result<Self> {
        let mut vertices = order.to_vec();
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("repeated vertex in ordering".into()));
        }
        let rank = vertices
            .iter()
            .map(|v| order.iter().position(|x| x == v).unwrap())
            .collect();
        let r = vertices.len();
        let mut weights = vec![vec![0; r]; r];
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    weights[i][j] = weight(vertices[i], vertices[j]);
                }
            }
        }
        for i in 0..r {
            for j in 0..i {
                if weights[i][j] != weights[j][i] {
                    return Err(Error::Invalid("weights must be symmetric".into()));
                }
            }
        }
        Ok(CompleteGraph { vertices, rank, weights })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn index(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Vertices listed in σ order.
    pub fn order(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (i, r) in self.rank.iter().enumerate() {
            out[*r] = self.vertices[i];
        }
        out
    }

    pub fn weight(&self, e: usize, f: usize) -> u32 {
        self.weights[self.index(e).unwrap()][self.index(f).unwrap()]
    }

    /// True when σ_ef is the identity, that is σ(e) < σ(f).
    pub fn before(&self, e: usize, f: usize) -> bool {
        self.rank[self.index(e).unwrap()] < self.rank[self.index(f).unwrap()]
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().flatten().copied().max().unwrap_or(0)
    }

    /// κ restricted to a subset of its vertices.
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> Result<Self> {
        if keep.iter().any(|v| self.index(*v).is_none()) {
            return Err(Error::Invalid("restriction to a non-subset".into()));
        }
        let order: Vec<usize> = self.order().into_iter().filter(|v| keep.contains(v)).collect();
        Self::from_order(&order, |e, f| self.weight(e, f))
    }

    /// Relabel the vertices through `f` (which must be injective).
    pub fn rename(&self, f: impl Fn(usize) -> usize) -> Result<Self> {
        let order: Vec<usize> = self.order().into_iter().map(&f).collect();
        let back: std::collections::HashMap<usize, usize> =
            self.vertices.iter().map(|v| (f(*v), *v)).collect();
        Self::from_order(&order, |a, b| self.weight(back[&a], back[&b]))
    }
}

/// κ ≤ κ': for all pairs, μ < μ' or (equal weight and equal orientation).
pub fn graph_leq(a: &CompleteGraph, b: &CompleteGraph) -> Result<bool> {
    if a.vertices != b.vertices {
        return Err(Error::Invalid("complete graphs on different vertex sets".into()));
    }
    for (i, &e) in a.vertices.iter().enumerate() {
        for &f in &a.vertices[i + 1..] {
            let (wa, wb) = (a.weight(e, f), b.weight(e, f));
            if !(wa < wb || (wa == wb && a.before(e, f) == b.before(e, f))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Substitute `b` for the vertex `v` of `a`.
pub fn graph_compose(a: &CompleteGraph, v: usize, b: &CompleteGraph) -> Result<CompleteGraph> {
    if a.index(v).is_none() {
        return Err(Error::Invalid(format!("vertex {v} is not in the graph")));
    }
    if b.vertices.iter().any(|x| *x != v && a.index(*x).is_some()) {
        return Err(Error::Invalid("vertex sets overlap".into()));
    }
    let inner: BTreeSet<usize> = b.vertices.iter().copied().collect();
    let mut order = Vec::with_capacity(a.len() + b.len() - 1);
    for x in a.order() {
        if x == v {
            order.extend(b.order());
        } else {
            order.push(x);
        }
    }
    CompleteGraph::from_order(&order, |e, f| match (inner.contains(&e), inner.contains(&f)) {
        (true, true) => b.weight(e, f),
        (true, false) => a.weight(v, f),
        (false, true) => a.weight(e, v),
        (false, false) => a.weight(e, f),
    })
}

/// Membership in K_n: every weight is at most n − 1.
pub fn in_kn(k: &CompleteGraph, n: usize) -> bool {
    n >= 1 && k.max_weight() as usize <= n - 1
}

/// The ≤-least κ whose cell contains the labeled tree.
pub fn minimal_complete_graph(t: &LevelTree, lab: &Labeling, n: usize) -> Result<CompleteGraph> {
    if t.levels() != n {
        return Err(Error::Invalid(format!("tree has {} levels, expected {n}", t.levels())));
    }
    if lab.len() != t.leaves() {
        return Err(Error::Invalid("labeling size differs from leaf count".into()));
    }
    let anc = t.leaf_ancestors();
    let meet = |i: usize, j: usize| (0..=n).rev().find(|l| anc[*l][i] == anc[*l][j]).unwrap_or(0);
    CompleteGraph::from_order(lab.at_leaf(), |e, f| {
        let (i, j) = (lab.position(e).unwrap(), lab.position(f).unwrap());
        (n - 1 - meet(i, j)) as u32
    })
}

/// Whether the labeled tree lies in the cell Tⁿ_κ.
///
/// Pairs split at level 1 need weight ≥ n−1, with orientation matching σ
/// when the weight is exactly n−1; level-1 subtrees are checked recursively
/// against the restricted graph. For n = 1 this says: pairs of weight 0 are
/// in σ order.
pub fn tree_kappa_membership(t: &LevelTree, lab: &Labeling, k: &CompleteGraph) -> Result<bool> {
    if lab.label_set().into_iter().collect::<Vec<_>>() != k.vertices {
        return Err(Error::Invalid("labels differ from the graph's vertices".into()));
    }
    if lab.len() != t.leaves() {
        return Err(Error::Invalid("labeling size differs from leaf count".into()));
    }
    Ok(member(t, lab.at_leaf(), k))
}

fn member(t: &LevelTree, labels: &[usize], k: &CompleteGraph) -> bool {
    let n = t.levels();
    let top = (n - 1) as u32;
    let groups: Vec<usize> = if n == 1 {
        (0..labels.len()).collect()
    } else {
        let anc = t.leaf_ancestors();
        anc[1].clone()
    };
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let w = k.weight(labels[i], labels[j]);
            if groups[i] == groups[j] {
                continue;
            }
            if w < top || (w == top && !k.before(labels[i], labels[j])) {
                return false;
            }
        }
    }
    if n == 1 {
        return true;
    }
    t.subtrees().into_iter().all(|(sub, range)| {
        let part = &labels[range];
        let keep: BTreeSet<usize> = part.iter().copied().collect();
        let kr = k.restrict(&keep).expect("subset");
        member(&sub, part, &kr)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kappa(order: &[usize], w: u32) -> CompleteGraph {
        CompleteGraph::from_order(order, |_, _| w).unwrap()
    }

    #[test]
    fn order_examples() {
        let a = kappa(&[0, 1, 2], 1);
        assert!(graph_leq(&a, &a).unwrap());
        assert!(graph_leq(&kappa(&[2, 1, 0], 0), &a).unwrap());
        assert!(!graph_leq(&kappa(&[1, 0, 2], 1), &a).unwrap());
        assert!(graph_leq(&a, &kappa(&[0, 1], 1)).is_err());
    }

    #[test]
    fn composition() {
        let a = kappa(&[0, 1], 3);
        let b = kappa(&[5, 6], 1);
        let c = graph_compose(&a, 1, &b).unwrap();
        assert_eq!(c.order(), vec![0, 5, 6]);
        assert_eq!((c.weight(0, 5), c.weight(0, 6), c.weight(5, 6)), (3, 3, 1));
        let unit = kappa(&[9], 0);
        let d = graph_compose(&a, 1, &unit).unwrap();
        assert_eq!(d.order(), vec![0, 9]);
        assert!(graph_compose(&a, 7, &b).is_err());
    }

    #[test]
    fn minimal_graph_weights() {
        let t: LevelTree = "[2];[3,2]".parse().unwrap();
        let k = minimal_complete_graph(&t, &Labeling::canonical(5), 2).unwrap();
        assert_eq!(k.weight(0, 4), 1);
        assert_eq!(k.weight(0, 1), 0);
        let c = minimal_complete_graph(&LevelTree::corolla(3), &Labeling::canonical(3), 1).unwrap();
        assert_eq!(c.max_weight(), 0);
    }

    #[test]
    fn membership_examples() {
        let t = LevelTree::corolla(2);
        let lab = Labeling::canonical(2);
        assert!(!tree_kappa_membership(&t, &lab, &kappa(&[1, 0], 0)).unwrap());
        assert!(tree_kappa_membership(&t, &lab, &kappa(&[0, 1], 0)).unwrap());
        assert!(tree_kappa_membership(&t, &lab, &kappa(&[1, 0], 1)).unwrap());
    }
}
