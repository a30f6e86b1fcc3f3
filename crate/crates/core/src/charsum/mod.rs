//! Exact arithmetic in Z[ζ_{p^m}] and brute-force exponential sums over tori.

mod cyclo;
mod sums;

pub use cyclo::{CycloRat, CyclotomicInt};
pub use sums::{chunk_ranges, domain_size, exp_sum, SignConvention, SumOptions, SumResult};

use crate::ffield::FieldError;
use crate::wittring::WittError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharsumError {
    #[error("sum needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("support has a negative exponent in coordinate {0} of J")]
    NegativeExponentInJ(usize),
    #[error("coordinate subset {0:?} is not contained in 1..={1}")]
    InvalidSubset(Vec<usize>, usize),
    #[error("the alternating sign convention applies to the full torus only")]
    ConventionMismatch,
    #[error("twist {twist} is not coprime to p = {p}")]
    TwistNotCoprime { twist: u64, p: u64 },
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Witt(#[from] WittError),
}
