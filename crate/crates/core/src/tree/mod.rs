//! Growing trees inside the complete `d`-ary tree.

pub mod dimension;
pub mod growth;
pub mod identities;
pub mod kernels;
pub mod labels;
pub mod model;
pub mod prefix;
pub mod series;

pub use dimension::increasing_tree_dimension;
pub use growth::{grow_tree, subtree_fractions, weighted_fraction_cdf, ArenaTree, FractionSample, GrowthRule};
pub use identities::{
    comb2_residual, comb2_residual_via_diagram, comb3_residual, comb4_expanded_n3, comb4_residual,
    comb4_sides, enumerate_dary_trees,
};
pub use kernels::{
    bst_kernel, bst_slot_probability, idla_annealed_kernel, idla_log_phi, idla_transition,
    weighted_bst_merw, weighted_bst_transition, BstHarmonic, IdlaHarmonic, WeightedBstHarmonic,
};
pub use labels::{label_harmonic, LabelField, LabelHarmonic};
pub use model::{DaryTreeModel, PreferentialWeights};
pub use prefix::{show_node, Node, PrefixTree};
pub use series::{asymptotic_ratios, subtree_dimension_generating_check, u_star, SeriesT};
