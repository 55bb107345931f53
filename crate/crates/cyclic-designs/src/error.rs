//! Error types shared across the crate.

use thiserror::Error;

/// A block could not be built from the given residues.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("group order v must be positive")]
    ZeroOrder,
    #[error("group order {v} exceeds the supported maximum {max}")]
    OrderTooLarge { v: u64, max: u64 },
    #[error("a block needs at least two elements, got {len}")]
    TooSmall { len: usize },
    #[error("duplicate element {element} in block (after reduction mod v)")]
    DuplicateElement { element: u64 },
}

/// A difference family could not be assembled.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error("block size {got} does not match the declared k = {expected}")]
    MixedBlockSize { expected: usize, got: usize },
    #[error("k = {k} is not a valid block size (need k >= 2)")]
    BadK { k: usize },
    #[error("kind {kind} is inadmissible for v = {v}, k = {k}: {reason}")]
    Inadmissible {
        v: u64,
        k: usize,
        kind: &'static str,
        reason: String,
    },
}

/// Why a requested order has no family of the requested kind.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    /// The order fails the necessary congruence condition.
    #[error("v = {v} is inadmissible: {reason}")]
    Inadmissible { v: u64, reason: String },
    /// The order is admissible but the family provably does not exist.
    #[error("no family of this kind exists for v = {v}")]
    NonExistent { v: u64 },
    /// The order should come from the small-order database but is missing.
    #[error("v = {v} is not in the small-order database (incomplete build?)")]
    DatabaseMiss { v: u64 },
    /// A constructor argument is outside its domain.
    #[error("constructor domain error: {0}")]
    Domain(String),
    /// A constructed family failed its own verification; this indicates a
    /// transcription bug in the embedded tables and is never expected.
    #[error("self-check failed for v = {v}: {reason}")]
    SelfCheck { v: u64, reason: String },
}
