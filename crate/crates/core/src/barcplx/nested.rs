use super::LabelAlgebra;
use crate::coeff::{sign, Lin, Scalar};
use crate::treecomb::LevelTree;

/// A bar element written as a nested expression: a leaf is a label, an inner
/// vertex is the word of its children. The root of an n-level tree sits at
/// height n, leaves at height 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nested<L> {
    Leaf(L),
    Node(Vec<Nested<L>>),
}

impl<L: Clone> Nested<L> {
    pub fn from_tree(tree: &LevelTree, labels: &[L]) -> Self {
        assert_eq!(tree.leaves(), labels.len(), "one label per leaf");
        let mut level: Vec<Nested<L>> = labels.iter().cloned().map(Nested::Leaf).collect();
        for fibers in tree.fibers().iter().rev() {
            let mut it = level.into_iter();
            level = fibers
                .iter()
                .map(|s| Nested::Node(it.by_ref().take(*s as usize).collect()))
                .collect();
        }
        level.pop().expect("single root")
    }

    pub fn to_tree(&self) -> (LevelTree, Vec<L>) {
        let mut fibers = Vec::new();
        let mut labels = Vec::new();
        self.collect(0, &mut fibers, &mut labels);
        (LevelTree::new(fibers).expect("nested expressions are fully grown"), labels)
    }

    fn collect(&self, depth: usize, fibers: &mut Vec<Vec<u32>>, labels: &mut Vec<L>) {
        match self {
            Nested::Leaf(l) => labels.push(l.clone()),
            Nested::Node(children) => {
                if fibers.len() <= depth {
                    fibers.push(Vec::new());
                }
                fibers[depth].push(children.len() as u32);
                for c in children {
                    c.collect(depth + 1, fibers, labels);
                }
            }
        }
    }

    /// Internal degree plus one per edge below this vertex.
    pub fn degree<A: LabelAlgebra<Label = L>>(&self, alg: &A) -> i64 {
        match self {
            Nested::Leaf(l) => alg.degree(l),
            Nested::Node(children) => children.iter().map(|c| c.degree(alg) + 1).sum(),
        }
    }
}

/// Shuffle product of two words of suspended factors. `degree` gives the
/// unsuspended degree of a factor; each inversion of r past r' contributes
/// (|r|+1)(|r'|+1) to the sign.
pub fn shuffle<T: Clone>(u: &[T], v: &[T], degree: impl Fn(&T) -> i64) -> Vec<(Vec<T>, bool)> {
    let du: Vec<i64> = u.iter().map(|x| degree(x) + 1).collect();
    let dv: Vec<i64> = v.iter().map(|x| degree(x) + 1).collect();
    // suffix[i] = suspended degree of u[i..]
    let mut suffix = vec![0i64; u.len() + 1];
    for i in (0..u.len()).rev() {
        suffix[i] = suffix[i + 1] + du[i];
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(u.len() + v.len());
    shuffle_rec(u, v, &dv, &suffix, 0, 0, false, &mut word, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn shuffle_rec<T: Clone>(
    u: &[T],
    v: &[T],
    dv: &[i64],
    suffix: &[i64],
    i: usize,
    j: usize,
    odd: bool,
    word: &mut Vec<T>,
    out: &mut Vec<(Vec<T>, bool)>,
) {
    if i == u.len() && j == v.len() {
        out.push((word.clone(), odd));
        return;
    }
    if i < u.len() {
        word.push(u[i].clone());
        shuffle_rec(u, v, dv, suffix, i + 1, j, odd, word, out);
        word.pop();
    }
    if j < v.len() {
        word.push(v[j].clone());
        let flip = (dv[j] * suffix[i]) % 2 != 0;
        shuffle_rec(u, v, dv, suffix, i, j + 1, odd ^ flip, word, out);
        word.pop();
    }
}

/// The untwisted differential of a nested bar element of the given height.
///
/// A child at position i of a height-k vertex, with p the suspended degree
/// of the children before it, contributes −(−1)^p d(child) and, merged with
/// its right neighbour, (−1)^{p+|child|+1} times their product: the algebra
/// product at height 1, the shuffle of the two child words above.
pub fn nested_differential<A: LabelAlgebra>(
    alg: &A,
    x: &Nested<A::Label>,
    height: usize,
) -> Lin<Nested<A::Label>> {
    let mut out = Lin::new();
    match x {
        Nested::Leaf(l) => {
            for (l2, c) in alg.differentiate(l) {
                out.add(Nested::Leaf(l2), c);
            }
        }
        Nested::Node(children) => {
            let mut pre = 0i64;
            for (i, c) in children.iter().enumerate() {
                let dc = c.degree(alg);
                let internal = sign((pre + 1) % 2 != 0);
                for (c2, v) in nested_differential(alg, c, height - 1).into_vec() {
                    let mut w = children.clone();
                    w[i] = c2;
                    out.add(Nested::Node(w), v * &internal);
                }
                if let Some(next) = children.get(i + 1) {
                    let s = sign((pre + dc + 1) % 2 != 0);
                    for (merged, v) in merge(alg, c, next, height) {
                        let mut w: Vec<_> = children[..i].to_vec();
                        w.push(merged);
                        w.extend_from_slice(&children[i + 2..]);
                        out.add(Nested::Node(w), v * &s);
                    }
                }
                pre += dc + 1;
            }
        }
    }
    out
}

fn merge<A: LabelAlgebra>(
    alg: &A,
    a: &Nested<A::Label>,
    b: &Nested<A::Label>,
    height: usize,
) -> Vec<(Nested<A::Label>, Scalar)> {
    match (a, b) {
        (Nested::Leaf(x), Nested::Leaf(y)) => {
            debug_assert_eq!(height, 1);
            alg.multiply(x, y).into_iter().map(|(l, c)| (Nested::Leaf(l), c)).collect()
        }
        (Nested::Node(u), Nested::Node(v)) => shuffle(u, v, |c| c.degree(alg))
            .into_iter()
            .map(|(w, odd)| (Nested::Node(w), sign(odd)))
            .collect(),
        _ => unreachable!("siblings sit at the same height"),
    }
}
