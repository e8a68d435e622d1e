//! Hazard-free and k-bit-hazard-free circuit synthesis: prime implicants,
//! the two-level prime-implicant construction, hazard-free multiplexer
//! trees, speculative evaluation over fixed position sets, and the shared
//! majority-tree construction for subset collections.

mod collection;
mod mux;
mod primes;

pub use collection::{
    k_hazard_free, k_hazard_free_collection, majority_nodes_built, subproblem_census,
    SubsetCollection, MAX_BASE_UNION, MAX_SUBSETS,
};
pub use mux::{hazard_free_mux, majority3_hazard_free, speculative_fixed_set, MAX_MUX_SELECTORS};
pub use primes::{huffman_hazard_free, prime_implicants, Cube, MAX_SYNTH_VARS};

pub(crate) use primes::balanced_tree;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthError {
    #[error("{0} variables exceed the synthesis guard of {1}")]
    TooManyVars(usize, usize),
    #[error("selector count {0} outside 1..={1}")]
    SelectorCountOutOfRange(usize, usize),
    #[error("operation needs a single-output circuit, got {0} outputs")]
    MultiOutput(usize),
    #[error("position {0} outside 1..={1}")]
    PositionOutOfRange(usize, usize),
    #[error("base-case union of {0} positions exceeds the guard of {1}")]
    BaseUnionTooLarge(usize, usize),
    #[error("subset collection is empty")]
    EmptyCollection,
    #[error("subset of size {0} exceeds the collection bound k = {1}")]
    SetLargerThanK(usize, usize),
    #[error("k = {0} exceeds the input count {1}")]
    KTooLarge(usize, usize),
    #[error("{0} subsets exceed the enumeration guard of {1}")]
    TooManySubsets(u128, u128),
}
