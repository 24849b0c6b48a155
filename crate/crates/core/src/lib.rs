//! Exact computations on the Artinian Gorenstein algebra `S/Ann(f)` of a
//! homogeneous form `f`: Hilbert vectors, higher Hessians, Lefschetz
//! properties, catalecticants and Waring decompositions of binary forms,
//! Perazzo 3-folds and Gordan–Noether self-vanishing systems.
//!
//! All algebra is done over the rationals (Gaussian rationals where a
//! decomposition needs `i`).

pub mod artinian;
pub mod binaryforms;
pub mod exactmath;
pub mod gordannoether;
pub mod hessians;
pub mod lefschetz;
pub mod perazzo;
pub mod polyring;

pub use exactmath::{GaussianRational, Matrix, Rational};
pub use polyring::{Form, Monomial, OperatorPoly, Poly};
