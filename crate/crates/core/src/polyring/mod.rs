//! Sparse multivariate polynomials, homogeneous forms, the action of the
//! operator ring `S = K[X_0..X_n]` on forms, parsing and printing.

mod form;
mod monomial;
mod parse;
mod poly;

pub use form::{apply_operator, operator_vars, vars, Action, Form, OperatorPoly, RationalImage, Vars};
pub use monomial::{count_of_degree, monomials_of_degree, Monomial};
pub use parse::parse_form;
pub use poly::Poly;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("not homogeneous: terms of degree {first} and {second}")]
    NotHomogeneous { first: u32, second: u32 },
    #[error("variable lists differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error("substitution does not give a polynomial: {0}")]
    NonPolynomialResult(String),
}
