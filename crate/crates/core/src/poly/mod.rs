//! Dense univariate and sparse multivariate polynomials over any [`Field`],
//! with resultants, discriminants and finite-field factorization.
//!
//! [`Field`]: crate::fields::Field

mod multivariate;
mod resultant;
mod univariate;

use thiserror::Error;

pub use multivariate::{MPoly, Monomial, Var, NVARS};
pub use resultant::{bareiss_det, discriminant, gcd, resultant};
pub use univariate::UPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("leading coefficient is not a unit constant")]
    NonUnitLeadingCoefficient,
    #[error("input is not univariate")]
    MultivariateInput,
    #[error("input is constant in the elimination variable")]
    ConstantInput,
    #[error("division by zero polynomial")]
    DivisionByZero,
}
