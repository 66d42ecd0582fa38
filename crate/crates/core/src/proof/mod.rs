//! Executable forms of the chain and cross-support-tree arguments: weak
//! reduction, successor graphs, chain extraction, the C1–C4 selection, and tree
//! validation, extraction and construction.

pub mod build;
pub mod chains;
pub mod fixtures;
pub mod ordering;
pub mod selection;
pub mod successor;
pub mod synth;
pub mod tree;
pub mod weak;

pub use build::{build_tree, BuildOptions, BuildOutcome};
pub use chains::{extract_disjoint_chains, parse_chains, serialize_chains, Chain, ChainCollection};
pub use ordering::{parse_ordering, serialize_ordering, Ordering};
pub use selection::{check_conditions, select_conditioned_chains, ConditionReport, Selection, SelectionTrace};
pub use successor::{successor_graph, SuccessorGraph};
pub use synth::{synth_tree, SynthParams, SynthTree};
pub use tree::{extract_k_crossing_from_tree, prune_root_children, validate_tree, Axiom, CrossSupportTree, TreeReport};
pub use weak::weak_reduce;
