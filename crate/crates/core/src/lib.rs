//! Exact computations with Niemeier lattices, their isometries, and the cyclic
//! orbifold invariants of the associated lattice vertex operator algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: big-integer and rational matrices, Smith/Hermite forms, solvers.
//! * [`lattice`]: lattices, sublattices, duals, fixed lattices and projections.
//! * [`enumeration`]: short-vector and closest-vector enumeration.
//! * [`catalog`]: the 24 Niemeier lattices, Schellekens' list and golden tables.
//! * [`isometry`]: Frame shapes, order doubling, simple-root stabilisers.
//! * [`lift`]: cocycles, standard lifts and the action on weight-one spaces.
//! * [`orbifold`]: conformal weights, type, dimension formula, certificates.
//! * [`search`]: enumeration and filtering of short automorphisms.

pub mod catalog;
pub mod enumeration;
pub mod exact;
pub mod isometry;
pub mod json;
pub mod lattice;
pub mod lift;
pub mod orbifold;
pub mod search;

pub use exact::{Int, IntMatrix, QMatrix, Rational};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid isometry: {0}")]
    InvalidIsometry(String),
    #[error("h not fixed by the isometry")]
    HNotFixed,
    #[error("vector not in the span of the sublattice")]
    NotInSpan,
    #[error("sublattice not contained in lattice: {0}")]
    NotContained(String),
    #[error("unknown catalog key: {0}")]
    UnknownKey(String),
    #[error("invalid data: {0}")]
    Data(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
