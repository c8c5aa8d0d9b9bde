//! Exact rational arithmetic, univariate polynomials and piecewise
//! polynomials over the rationals.

pub mod piecewise;
pub mod poly;
pub mod rational;

pub use piecewise::{PiecewisePolynomial, SupportSup};
pub use poly::Polynomial;
pub use rational::Rational;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("breakpoints must be strictly increasing")]
    BreakpointsNotIncreasing,
    #[error("{breakpoints} breakpoints need {} pieces, got {pieces}", .breakpoints.saturating_sub(1))]
    PieceCount { breakpoints: usize, pieces: usize },
    #[error("without breakpoints the two tails must coincide")]
    TailsDisagree,
    #[error("integration bounds are reversed")]
    ReversedBounds,
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}
