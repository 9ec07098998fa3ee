//! Certified verification of a sharp bound on σ(n)/n over the odd integers.
//!
//! The toolkit combines four ingredients:
//!
//! * exact big-rational arithmetic over prime factorizations ([`arith`]),
//! * certified real enclosures with directed rounding ([`real`]),
//! * odd colossally abundant number generation ([`ca`]),
//! * and range-covering inequality checkers ([`robin`], [`scan`]).
//!
//! Everything feeds the pipeline in [`report`], exposed by the `oddrobin`
//! binary. A verdict is only ever `Holds` or `Fails` when interval endpoints
//! certify it; otherwise the precision ladder escalates and, past 512 bits,
//! the verdict is reported as `Undecided` rather than guessed.

pub mod arith;
pub mod ca;
pub mod primes;
pub mod real;
pub mod report;
pub mod robin;
pub mod scan;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller violated a documented precondition.
    #[error("usage error: {0}")]
    Usage(String),
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Generated data contradicts a structural expectation.
    #[error("structural error: {0}")]
    Structural(String),
    /// The precision ladder was exhausted without a certified answer.
    #[error("precision ladder exhausted: {0}")]
    Exhausted(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
