//! Modules, strong modules, quotients, and decomposition trees of
//! hypergraphs and tournaments.

pub mod modules;
pub mod partition;
pub mod tree;

pub use modules::{
    components, enumerate_modules, enumerate_usual_modules, is_module, is_prime, is_strong_module, is_tournament_module,
    is_usual_module, maximal_proper_strong_modules, module_violation, quotient, strong_components,
    strong_modules, tournament_quotient, HyperLabel, Limits, ModularStructure, TournamentLabel,
    DEFAULT_BRUTE_FORCE_BOUND,
};
pub use partition::ModularPartition;
pub use tree::{
    decomposition_tree, node_quotient, smallest_strong_module_containing,
    tournament_decomposition_tree, DecompositionTree, LabelText, NodeId, TreeNode,
};
