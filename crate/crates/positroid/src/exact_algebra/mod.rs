//! Exact arithmetic: Laurent polynomials over Q, fractions of them and
//! small dense matrices with determinant and minor helpers.

mod fraction;
mod laurent;
mod matrix;

use std::sync::OnceLock;

use thiserror::Error;

pub use fraction::FractionPair;
pub use laurent::{rat, rat_pow, Family, LaurentPoly, Monomial, Var};
pub use matrix::{integer_rank, rational_rank, same_grassmann_point, subsets, Matrix, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible in the Laurent ring")]
    NotDivisible,
    #[error("term budget exceeded ({terms} terms)")]
    BudgetExceeded { terms: usize },
    #[error("substituted value is not a unit")]
    NotAUnit,
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub const DEFAULT_TERM_BUDGET: usize = 200_000;

/// Term budget for divisions, read once from `POSITROID_BUDGET`.
pub fn term_budget() -> usize {
    static BUDGET: OnceLock<usize> = OnceLock::new();
    *BUDGET.get_or_init(|| {
        std::env::var("POSITROID_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_TERM_BUDGET)
    })
}
