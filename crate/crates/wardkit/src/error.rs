//! Crate-wide error type.

use crate::pattern::Refutation;
use thiserror::Error;

/// Errors produced by constructors, verifiers and completion routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric or structural parameter is out of range (odd dihedral order,
    /// zero block size, index that does not divide the order, ...).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A supplied table fails a structural requirement (not a group, not a
    /// quasigroup, blocks not circulant, ...).
    #[error("structural check failed: {0}")]
    Structure(String),

    /// A supplied system of coset representatives is not a transversal of the
    /// chosen subgroup.
    #[error("invalid transversal: {0}")]
    Transversal(String),

    /// An operation was called on data that does not satisfy its
    /// precondition (wrong index, pattern not an involution, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A completion problem has no solution.  Each refutation records one
    /// exhausted branch together with the contradiction that killed it.
    #[error("no completion exists ({} branch(es) refuted)", refutations.len())]
    Infeasible { refutations: Vec<Refutation> },

    /// A completion problem admits more than one solution, so the requested
    /// unique reconstruction is not determined.
    #[error("completion is not unique: {count} solutions found")]
    Ambiguous { count: usize },

    /// Input text or JSON could not be parsed.
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
