//! Planar binary rooted trees and the tree expansion of the N-sequence.

mod expansion;
mod pbtree;

pub use expansion::{
    factorial_identity_check, gf_identity_check, gf_identity_holds, invert_tree, tree_expansion_nm,
    TreeExpansion,
};
pub use pbtree::{catalan, enumerate_pbtrees, enumerate_up_to, PBTree, RootedTree};
