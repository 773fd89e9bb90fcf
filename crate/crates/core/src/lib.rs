//! Exact computations with symmetric, alternating and small linear groups:
//! character tables, class-product counts, cycle statistics, derangement
//! constructions, fixed-space strata and symbol combinatorics.

pub mod characters;
pub mod class_products;
pub mod cycle_stats;
pub mod derangements;
pub mod group;
pub mod linear;
pub mod partition;
pub mod perm;
pub mod surd;
pub mod symbols;

pub use partition::Partition;
pub use perm::{GroupKind, Permutation};
