//! Exact arithmetic substrate: rationals, polynomials in the parameter `n`,
//! dense matrices, exact linear algebra and small prime fields.
//!
//! Nothing in the crate uses floating point.

mod linalg;
mod matrix;
mod poly;
mod prime;
mod rat;

pub use linalg::{
    dot, eval_vec, inverse, inverse_poly, kernel_basis, rank, rref, sample_points, solve_linear,
    solve_linear_poly, to_poly_vec,
};
pub use matrix::{matrix_product_is_identity, Matrix, PolyMatrix, RatMatrix, Scalar};
pub use poly::{binomial, poly_identity_check, ParamPoly, DEGREE_CAP};
pub use prime::PrimeFieldConfig;
pub use rat::Rat;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial degree {degree} exceeds the cap of {cap}", cap = DEGREE_CAP)]
    DegreeCap { degree: u32 },
    #[error("polynomial of degree {degree} exceeds the stated bound {bound}")]
    DegreeBoundExceeded { degree: u32, bound: u32 },
    #[error("cross-validation failure: {0}")]
    CrossValidation(String),
    #[error("interpolation failure: {0}")]
    Interpolation(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("no solution")]
    NoSolution,
    #[error("underdetermined: kernel of dimension {}", kernel.len())]
    Underdetermined { kernel: Vec<Vec<Rat>> },
    #[error("matrix is singular")]
    Singular,
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
}
