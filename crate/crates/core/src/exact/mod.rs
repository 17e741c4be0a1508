//! Exact arithmetic substrate: rationals, sparse polynomials over ℚ, and
//! fraction-free linear algebra.

mod coeff;
pub mod degree;
pub mod linalg;
pub mod poly;
pub mod rational;

pub use coeff::Coefficient;
pub use degree::{Degree, ElemDegree};
pub use linalg::{linear_solve, rank, EchelonBasis, Inconsistent, Matrix};
pub use poly::{vars, Monomial, MultiPoly, Vars};
pub use rational::{format_rational, int, parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("exponent vector has length {found}, expected {expected}")]
    ExponentLength { expected: usize, found: usize },
    #[error("substitution supplies {found} images for {expected} variables")]
    AssignmentLength { expected: usize, found: usize },
    #[error("variable `{0}` missing from substitution")]
    MissingVariable(String),
    #[error("substitution has no images to fix the target variables")]
    EmptyAssignment,
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}
