use thiserror::Error;

use crate::perm::BandedPermutation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A permutation backend failed validation. `invariant` names the rule,
    /// `index` is the first offending position (row, or residue for periodic data).
    #[error("invalid permutation: {invariant} (at index {index})")]
    InvalidPermutation { invariant: &'static str, index: i64 },

    #[error("cannot compose a non-constant periodic permutation with a non-trivial eventual shift")]
    IncompatibleBackends,

    #[error("permutation is not centered (plus-index {kappa})")]
    NotCentered { kappa: i64 },

    #[error("layer factorization used {layers} layers, bandwidth {w} allows at most {}", 2 * w - 1)]
    BoundViolation {
        layers: usize,
        w: i64,
        instance: Box<BandedPermutation>,
    },

    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("schema violation: {0}")]
    Schema(String),
}
