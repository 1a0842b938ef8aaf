//! Seeds of a Laurent phenomenon algebra and their mutation.
//!
//! A [`Seed`] stores, per slot, the current cluster symbol, its expression
//! in the initial variables `X1..Xn` (the ambient representation) and the
//! exchange polynomial written in the seed's own symbols. Mutation follows
//! the usual pipeline: hat polynomial, substitution, removal of common
//! factors, then clearing denominators.

mod canonical;
mod hat;
mod json;
mod mutate;
mod seed;
mod validate;

use thiserror::Error;

use crate::poly::PolyError;

pub use canonical::seeds_equivalent;
pub use hat::{check_hat_conditions, compute_hat, HatPolynomial};
pub use json::{SeedJson, SlotJson};
pub use seed::{Seed, SeedSlot};
pub use validate::{validate_seed, Irreducibility, SlotReport, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("Laurent phenomenon violated in slot {slot}: ambient value not Laurent ({witness})")]
    LaurentViolated { slot: usize, witness: String },
    #[error("slot {slot} out of range for rank {rank}")]
    SlotOutOfRange { slot: usize, rank: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error(
        "hat polynomial of slot {i} has a pole at slot {j} while exchange {j} involves slot {i}"
    )]
    IllDefinedSubstitution { i: usize, j: usize },
    #[error("invalid seed: {0}")]
    Invalid(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
