//! Symm, Witt generators and big Witt vectors.

use thiserror::Error;

use crate::ring::{Ring, RingError};

pub mod symm;
pub mod vectors;

pub use symm::{SymmElement, SymmTensor};
pub use vectors::{LambdaSeries, WittRing, WittVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {p} divides n = {n}")]
    DividesIndex { p: u64, n: usize },
    #[error("{0} is not integral")]
    NotIntegral(String),
    #[error("this operation needs rational coefficients, got {0}")]
    NotRational(Ring),
    #[error("ghost components need a torsion-free ring, got {0}")]
    NotTorsionFree(Ring),
    #[error("truncations differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error(transparent)]
    Ring(#[from] RingError),
}
