//! An interpreter for answer set programming with sets and aggregates.
//!
//! Programs are parsed ([`parser`]), grounded over a finite domain
//! ([`ground`]) and then solved under one of two semantics:
//!
//! * [`alog`]: the strong vicious-circle reading, where a set may only
//!   support a belief if none of its members depend on it;
//! * [`slogp`]: the weak reading, where a set atom may support a belief
//!   whenever some minimal support of the atom witnesses its truth
//!   independently of that belief.
//!
//! Both semantics reduce a candidate interpretation to a classical
//! disjunctive program checked by [`basic`]. [`solver`] enumerates
//! candidates and hosts the property auditors.

pub mod alog;
pub mod audit;
pub mod basic;
pub mod eval;
pub mod gen;
pub mod ground;
pub mod model;
pub mod parser;
pub mod slogp;
pub mod solver;

pub use model::*;
pub use parser::{parse_literals, parse_program, pretty_print, ParseError, ParseErrorKind};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("scope error: {0}")]
    Scope(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("integer overflow in {0}")]
    Overflow(String),
    #[error("domain too large: {what} needs {needed}, limit is {limit}")]
    DomainTooLarge { what: &'static str, needed: u128, limit: u128 },
    #[error("universe too large: {what} has size {size}, limit is {limit}")]
    UniverseTooLarge { what: &'static str, size: u128, limit: u128 },
    #[error("not a splitting set: {0}")]
    NotASplittingSet(String),
    #[error("{0} is not ground")]
    NotGround(String),
    #[error("set-introduction rule left in a program that must be free of them: {0}")]
    UnexpectedSetIntro(String),
}

impl Error {
    /// Whether the error comes from one of the configured size caps.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::DomainTooLarge { .. } | Error::UniverseTooLarge { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Size caps for the brute-force parts of the engine. Exceeding one is an
/// error, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Candidate universe size for answer-set enumeration (2^n subsets).
    pub max_candidates: usize,
    /// Literals of one interpretation searched for smaller models.
    pub max_minimality: usize,
    /// Total bits of a support-vector search space.
    pub max_support_pool: usize,
    /// Weak set reducts tried for one interpretation.
    pub max_reducts: u128,
    /// Ground instances produced by the grounder.
    pub max_instances: u128,
    /// Integers in the grounding range.
    pub max_int_range: u128,
    /// Herbrand literals.
    pub max_herbrand: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_candidates: 20,
            max_minimality: 24,
            max_support_pool: 20,
            max_reducts: 1_000_000,
            max_instances: 1_000_000,
            max_int_range: 100_000,
            max_herbrand: 1_000_000,
        }
    }
}
