//! Planar level trees, labelings and complete graphs.

mod graph;
mod tree;

pub use graph::{
    graph_compose, graph_leq, in_kn, minimal_complete_graph, tree_kappa_membership, CompleteGraph,
    Labeling,
};
pub use tree::{enumerate_trees, LevelTree};
