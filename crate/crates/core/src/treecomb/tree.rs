use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A planar fully grown n-level tree, stored as fiber sizes per level.
///
/// `fibers[i]` lists the fiber sizes of the surjection from level i+1 onto
/// level i; level 0 is the root, so `fibers[0]` always has one entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LevelTree {
    fibers: Vec<Vec<u32>>,
}

impl LevelTree {
    pub fn new(fibers: Vec<Vec<u32>>) -> Result<Self> {
        if fibers.is_empty() {
            return Err(Error::Invalid("a tree needs at least one level".into()));
        }
        let mut vertices = 1usize;
        for (i, level) in fibers.iter().enumerate() {
            if level.len() != vertices {
                return Err(Error::Invalid(format!(
                    "level {} has {} fibers but level {} has {} vertices",
                    i + 1,
                    level.len(),
                    i,
                    vertices
                )));
            }
            if level.iter().any(|s| *s == 0) {
                return Err(Error::Invalid(format!("level {} has an empty fiber", i + 1)));
            }
            vertices = level.iter().map(|s| *s as usize).sum();
        }
        Ok(LevelTree { fibers })
    }

    /// The 1-level tree with `r` leaves.
    pub fn corolla(r: usize) -> Self {
        LevelTree { fibers: vec![vec![r as u32]] }
    }

    /// The n-level tree with a single leaf.
    pub fn trunk(n: usize) -> Self {
        LevelTree { fibers: vec![vec![1]; n] }
    }

    /// Root with the given (n−1)-level subtrees as level-1 children.
    pub fn graft(subtrees: &[LevelTree]) -> Self {
        let n = subtrees[0].levels() + 1;
        let mut fibers = vec![vec![subtrees.len() as u32]];
        for lvl in 0..n - 1 {
            fibers.push(subtrees.iter().flat_map(|t| t.fibers[lvl].iter().copied()).collect());
        }
        LevelTree { fibers }
    }

    pub fn levels(&self) -> usize {
        self.fibers.len()
    }

    pub fn fibers(&self) -> &[Vec<u32>] {
        &self.fibers
    }

    /// Number of vertices at level `i` (level 0 is the root).
    pub fn vertex_count(&self, i: usize) -> usize {
        if i == 0 {
            1
        } else {
            self.fibers[i - 1].iter().map(|s| *s as usize).sum()
        }
    }

    pub fn leaves(&self) -> usize {
        self.vertex_count(self.levels())
    }

    pub fn edge_count(&self) -> usize {
        (1..=self.levels()).map(|i| self.vertex_count(i)).sum()
    }

    /// Level-1 subtrees with the leaf ranges they cover. Needs n ≥ 2.
    pub fn subtrees(&self) -> Vec<(LevelTree, std::ops::Range<usize>)> {
        assert!(self.levels() >= 2, "subtrees of a 1-level tree are leaves");
        let k = self.fibers[0][0] as usize;
        let mut offsets = vec![0usize; self.levels()];
        let mut leaf_start = 0;
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            // Each level-1 vertex owns one fiber at level 2, and so on down.
            let mut fibers = vec![vec![self.fibers[1][offsets[1]]]];
            let mut count = self.fibers[1][offsets[1]] as usize;
            offsets[1] += 1;
            for lvl in 2..self.levels() {
                let slice = &self.fibers[lvl][offsets[lvl]..offsets[lvl] + count];
                offsets[lvl] += count;
                count = slice.iter().map(|s| *s as usize).sum();
                fibers.push(slice.to_vec());
            }
            out.push((LevelTree { fibers }, leaf_start..leaf_start + count));
            leaf_start += count;
        }
        out
    }

    /// For every vertex at level `i` (1-based), the index of its parent at level i−1.
    fn parents(&self, i: usize) -> Vec<usize> {
        self.fibers[i - 1]
            .iter()
            .enumerate()
            .flat_map(|(p, s)| std::iter::repeat(p).take(*s as usize))
            .collect()
    }

    /// Ancestors of every leaf: `anc[l][i]` is the level-l ancestor of leaf i.
    pub fn leaf_ancestors(&self) -> Vec<Vec<usize>> {
        let n = self.levels();
        let mut anc = vec![Vec::new(); n + 1];
        anc[n] = (0..self.leaves()).collect();
        for l in (0..n).rev() {
            let par = self.parents(l + 1);
            anc[l] = anc[l + 1].iter().map(|v| par[*v]).collect();
        }
        anc
    }

    /// Level of the vertex where the root paths of leaves i and j meet.
    pub fn meeting_level(&self, i: usize, j: usize) -> usize {
        let anc = self.leaf_ancestors();
        (0..=self.levels()).rev().find(|l| anc[*l][i] == anc[*l][j]).unwrap_or(0)
    }

    /// s_{n,i} for all leaves: 1-based positions of the leaf edges in the
    /// pre-order depth-first enumeration of all edges.
    pub fn dfs_edge_indices(&self) -> Vec<usize> {
        let n = self.levels();
        // children[l][v] = range of level-(l+1) vertices below vertex v at level l
        let mut children = Vec::with_capacity(n);
        for lvl in 0..n {
            let mut start = 0usize;
            children.push(
                self.fibers[lvl]
                    .iter()
                    .map(|s| {
                        let r = start..start + *s as usize;
                        start += *s as usize;
                        r
                    })
                    .collect::<Vec<_>>(),
            );
        }
        let mut out = vec![0; self.leaves()];
        let mut counter = 0;
        let mut stack = vec![(0usize, 0usize)];
        while let Some((lvl, v)) = stack.pop() {
            if lvl > 0 {
                counter += 1;
                if lvl == n {
                    out[v] = counter;
                    continue;
                }
            }
            for c in children[lvl][v].clone().rev() {
                stack.push((lvl + 1, c));
            }
        }
        out
    }

    pub fn dfs_edge_index(&self, leaf: usize) -> Result<usize> {
        if leaf >= self.leaves() {
            return Err(Error::Invalid(format!("leaf {leaf} out of range")));
        }
        Ok(self.dfs_edge_indices()[leaf])
    }

    /// Index of the level-n fiber containing `leaf`, and the fiber's leaf range.
    pub fn leaf_fiber(&self, leaf: usize) -> (usize, std::ops::Range<usize>) {
        let mut start = 0;
        for (k, s) in self.fibers[self.levels() - 1].iter().enumerate() {
            let end = start + *s as usize;
            if leaf < end {
                return (k, start..end);
            }
            start = end;
        }
        panic!("leaf {leaf} out of range");
    }

    /// Leaf ranges of all level-n fibers.
    pub fn top_fibers(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.fibers[self.levels() - 1]
            .iter()
            .map(|s| {
                let r = start..start + *s as usize;
                start = r.end;
                r
            })
            .collect()
    }

    /// t∖s: remove leaf `s` from its level-n fiber.
    pub fn delete_leaf(&self, s: usize) -> Result<LevelTree> {
        if s >= self.leaves() {
            return Err(Error::Invalid(format!("leaf {s} out of range")));
        }
        let (k, range) = self.leaf_fiber(s);
        if range.len() == 1 {
            return Err(Error::Invalid(format!("leaf {s} is alone in its fiber")));
        }
        let mut fibers = self.fibers.clone();
        let n = fibers.len();
        fibers[n - 1][k] -= 1;
        Ok(LevelTree { fibers })
    }
}

impl fmt::Display for LevelTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, level) in self.fibers.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            f.write_str("[")?;
            for (j, s) in level.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{s}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl FromStr for LevelTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut fibers = Vec::new();
        for part in s.split(';') {
            let inner = part
                .trim()
                .strip_prefix('[')
                .and_then(|p| p.strip_suffix(']'))
                .ok_or_else(|| Error::Schema(format!("malformed tree level `{part}`")))?;
            let sizes = inner
                .split(',')
                .map(|x| x.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Schema(format!("malformed fiber sizes `{inner}`")))?;
            fibers.push(sizes);
        }
        LevelTree::new(fibers)
    }
}

/// Compositions of `r` into `k` positive parts, largest first part first.
pub(crate) fn compositions(r: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![r]];
    }
    let mut out = Vec::new();
    for first in (1..=r + 1 - k).rev() {
        for mut rest in compositions(r - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All n-level trees with `leaves` leaves in canonical order: by the number
/// of level-1 vertices, then by the composition of the leaves among them
/// (largest first block first), then recursively by the subtrees.
pub fn enumerate_trees(n: usize, leaves: usize) -> Result<Vec<LevelTree>> {
    if n == 0 || leaves == 0 {
        return Err(Error::Invalid("trees need n ≥ 1 and at least one leaf".into()));
    }
    Ok(trees_rec(n, leaves))
}

fn trees_rec(n: usize, leaves: usize) -> Vec<LevelTree> {
    if n == 1 {
        return vec![LevelTree::corolla(leaves)];
    }
    let mut out = Vec::new();
    for k in 1..=leaves {
        for comp in compositions(leaves, k) {
            let choices: Vec<Vec<LevelTree>> = comp.iter().map(|r| trees_rec(n - 1, *r)).collect();
            for subs in cartesian(&choices) {
                out.push(LevelTree::graft(&subs));
            }
        }
    }
    out
}

/// Cartesian product, last factor varying fastest.
pub(crate) fn cartesian<T: Clone>(factors: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for f in factors {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                f.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_tree() -> LevelTree {
        "[2];[3,2]".parse().unwrap()
    }

    #[test]
    fn counts_and_order() {
        assert_eq!(enumerate_trees(1, 4).unwrap().len(), 1);
        let t = enumerate_trees(2, 3).unwrap();
        let s: Vec<String> = t.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, vec!["[1];[3]", "[2];[2,1]", "[2];[1,2]", "[3];[1,1,1]"]);
        assert_eq!(enumerate_trees(3, 2).unwrap().len(), 3);
        assert!(enumerate_trees(0, 2).is_err());
        assert!(enumerate_trees(2, 0).is_err());
    }

    #[test]
    fn edge_indices() {
        assert_eq!(paper_tree().dfs_edge_indices(), vec![2, 3, 4, 6, 7]);
        assert_eq!(LevelTree::trunk(4).dfs_edge_indices(), vec![4]);
        assert_eq!(LevelTree::corolla(4).dfs_edge_indices(), vec![1, 2, 3, 4]);
        assert_eq!(paper_tree().edge_count(), 7);
    }

    #[test]
    fn deletion() {
        let t = paper_tree();
        assert_eq!(t.delete_leaf(0).unwrap().to_string(), "[2];[2,2]");
        assert_eq!(t.delete_leaf(4).unwrap().to_string(), "[2];[3,1]");
        assert!(LevelTree::trunk(3).delete_leaf(0).is_err());
    }

    #[test]
    fn subtrees_and_meeting() {
        let t: LevelTree = "[2];[2,1];[1,2,3]".parse().unwrap();
        let subs = t.subtrees();
        assert_eq!(subs[0].0.to_string(), "[2];[1,2]");
        assert_eq!(subs[0].1, 0..3);
        assert_eq!(subs[1].0.to_string(), "[1];[3]");
        assert_eq!(LevelTree::graft(&[subs[0].0.clone(), subs[1].0.clone()]), t);
        assert_eq!(t.meeting_level(1, 2), 2);
        assert_eq!(t.meeting_level(0, 1), 1);
        assert_eq!(t.meeting_level(0, 5), 0);
    }

    #[test]
    fn text_form_round_trip() {
        assert!("[2];[3]".parse::<LevelTree>().is_err());
        assert!("[1];[0]".parse::<LevelTree>().is_err());
        let t = paper_tree();
        assert_eq!(t.to_string().parse::<LevelTree>().unwrap(), t);
    }
}
