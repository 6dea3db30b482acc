//! Mahler measures and Weil heights of algebraic numbers built from Galois
//! conjugates, together with the exact combinatorial machinery needed to
//! verify the inequalities relating them.
//!
//! The crate is organised around a small pipeline:
//!
//! * [`poly`] — exact integer polynomial arithmetic (discriminants,
//!   resultants, norms, irreducibility evidence),
//! * [`roots`] — certified complex root enclosures of an [`poly::IntPoly`],
//! * [`heights`] — Mahler measures and heights of multiplicative/additive
//!   combinations of conjugates, by orbit enumeration,
//! * [`perms`] — enumeration of the alternating/symmetric groups and exact
//!   permutation counts (derangements, fixed-point-free-and-2-cycle-free
//!   permutations, transpositions),
//! * [`snfun`] — the averaged absolute pairing `s_n` on the zero-sum
//!   hyperplane, its closed forms and the constant `c_n`, in exact rational
//!   arithmetic,
//! * [`families`] — concrete input families (truncated exponentials),
//! * [`bounds`] — certified pass/fail reports for every inequality the
//!   pipeline can check,
//! * [`cli`] — the command line front end.

pub mod ball;
pub mod bounds;
pub mod cli;
pub mod families;
pub mod heights;
pub mod perms;
pub mod poly;
pub mod roots;
pub mod snfun;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition of an operation was violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// The adaptive precision ladder reached its hard cap without certifying.
    #[error("precision exhausted at {bits} bits: {context}")]
    PrecisionExhausted { bits: usize, context: String },
    /// Malformed user input (CLI or JSON).
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
