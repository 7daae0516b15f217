use enh::treecomb::{enumerate_trees, graph_leq, tree_kappa_membership, CompleteGraph, Labeling, LevelTree};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn tree_strategy() -> impl Strategy<Value = LevelTree> {
    (1usize..=4, 1usize..=5, any::<prop::sample::Index>()).prop_map(|(n, r, i)| {
        let all = enumerate_trees(n, r).unwrap();
        all[i.index(all.len())].clone()
    })
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every complete graph on `r` vertices with weights at most `w`.
fn all_graphs(r: usize, w: u32) -> Vec<CompleteGraph> {
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    let choices = (w as usize + 1).pow(pairs.len() as u32);
    let mut out = Vec::new();
    for order in permutations(&(0..r).collect::<Vec<_>>()) {
        for mut c in 0..choices {
            let mut weights = vec![vec![0u32; r]; r];
            for (i, j) in &pairs {
                let x = (c % (w as usize + 1)) as u32;
                c /= w as usize + 1;
                weights[*i][*j] = x;
                weights[*j][*i] = x;
            }
            out.push(CompleteGraph::from_order(&order, |e, f| weights[e][f]).unwrap());
        }
    }
    out
}

proptest! {
    #[test]
    fn edges_count_all_nonroot_vertices(t in tree_strategy()) {
        let sum: usize = (1..=t.levels()).map(|i| t.vertex_count(i)).sum();
        prop_assert_eq!(t.edge_count(), sum);
    }

    #[test]
    fn dfs_indices_are_distinct_edges(t in tree_strategy()) {
        let s = t.dfs_edge_indices();
        prop_assert_eq!(s.len(), t.leaves());
        let set: BTreeSet<usize> = s.iter().copied().collect();
        prop_assert_eq!(set.len(), s.len());
        prop_assert!(s.iter().all(|x| (1..=t.edge_count()).contains(x)));
        // leaves come in planar order
        prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(*s.last().unwrap(), t.edge_count());
    }

    #[test]
    fn deleting_a_leaf_stays_in_range(t in tree_strategy(), pick: prop::sample::Index) {
        let s = pick.index(t.leaves());
        let (_, fiber) = t.leaf_fiber(s);
        match t.delete_leaf(s) {
            Ok(d) => {
                prop_assert!(fiber.len() > 1);
                prop_assert_eq!(d.levels(), t.levels());
                prop_assert_eq!(d.leaves(), t.leaves() - 1);
                prop_assert!(enumerate_trees(t.levels(), t.leaves() - 1).unwrap().contains(&d));
            }
            Err(_) => prop_assert_eq!(fiber.len(), 1),
        }
    }

    #[test]
    fn display_round_trips(t in tree_strategy()) {
        let back: LevelTree = t.to_string().parse().unwrap();
        prop_assert_eq!(back, t);
    }
}

#[test]
fn graph_order_is_partial_order() {
    for r in 1..=3 {
        let graphs = all_graphs(r, 2);
        let leq: Vec<Vec<bool>> =
            graphs.iter().map(|a| graphs.iter().map(|b| graph_leq(a, b).unwrap()).collect()).collect();
        let m = graphs.len();
        for i in 0..m {
            assert!(leq[i][i]);
            for j in 0..m {
                if i != j && leq[i][j] {
                    assert!(!leq[j][i], "{:?} {:?}", graphs[i], graphs[j]);
                    for k in 0..m {
                        if leq[j][k] {
                            assert!(leq[i][k]);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn cells_grow_with_the_graph() {
    for r in 1..=3 {
        let graphs = all_graphs(r, 2);
        for n in 1..=2 {
            for t in enumerate_trees(n, r).unwrap() {
                for p in permutations(&(0..r).collect::<Vec<_>>()) {
                    let lab = Labeling::new(p).unwrap();
                    let inside: Vec<bool> =
                        graphs.iter().map(|k| tree_kappa_membership(&t, &lab, k).unwrap()).collect();
                    for (a, ka) in graphs.iter().enumerate() {
                        if !inside[a] {
                            continue;
                        }
                        for (b, kb) in graphs.iter().enumerate() {
                            if graph_leq(ka, kb).unwrap() {
                                assert!(inside[b], "{t} {lab:?} {ka:?} {kb:?}");
                            }
                        }
                    }
                }
            }
        }
    }
}
