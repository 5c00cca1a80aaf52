//! Incremental construction of bounded-length antidictionaries.
//!
//! Given documents `y1, ..., yk` over a small alphabet, this crate computes
//! the sets of minimal absent words (MAWs) of length at most `ell` of every
//! prefix concatenation `y1 # y2 # ... # yN`, one step at a time. A word is
//! a MAW if it does not occur in the text but every proper factor of it
//! does. The driver in [`pipeline`] never indexes the whole concatenation:
//! each step holds only the current block, the current output set, and
//! per-pair scratch structures, re-reading earlier blocks from their source
//! one at a time.
//!
//! The interesting work happens in [`merge`]: MAWs of the extended
//! concatenation either already belong to one of the two input sets
//! (decided by mutual superword marking) or arise as MAWs of a pairwise
//! concatenation `yi # yN` that stitch a reduced-set prefix from one side
//! to a reduced-set suffix from the other.
//!
//! [`oracle`] contains a brute-force reference implementation used
//! throughout the test suites.

pub mod error;
pub mod maw_single;
pub mod merge;
pub mod oracle;
pub mod pipeline;
pub mod queries;
pub mod suffix_tree;
pub mod text;

mod automaton;

pub use error::AntidictError;
pub use maw_single::{absent_letters, compute_maws, SingleMawOutput};
pub use merge::{merge_step, Case1Result, MergeOutcome, PairMaw, ReducedSets};
pub use pipeline::{
    run, run_with_source, BlockSource, InMemorySource, PipelineState, SpaceMeter, StepReport,
};
pub use suffix_tree::{Locus, NodeAggregates, SuffixTree};
pub use text::{Alphabet, Block, Corpus, MawSet, MawTupleRef, MawWord};
