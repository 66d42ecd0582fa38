//! Toolkit for `k`-cross-free set families.
//!
//! Two subsets of a ground set *cross* when all four Venn regions are nonempty,
//! and *weakly cross* when the three regions inside their union are. This crate
//! classifies pairs, finds pairwise-crossing witnesses, computes exact maximum
//! cross-free subfamilies by branch and bound, and runs the chain and
//! cross-support-tree machinery used to bound such families.

pub mod bitset;
pub mod constructions;
pub mod crossing;
pub mod dilworth;
pub mod error;
pub mod family;
pub mod graph;
pub mod proof;
pub mod search;

pub use crossing::{find_pairwise_crossing_witness, CrossingGraph, Witness};
pub use dilworth::{dilworth_partition, ChainDecomposition};
pub use error::{Error, Result};
pub use family::{classify_pair, Family, GroundSet, Mode, PairRelation, SubsetMask};
