//! Multiplicity matrices of polynomial derivatives.
//!
//! For a polynomial `f` of degree `n` and distinct points `Lambda = (l_1, ..., l_m)`,
//! the multiplicity matrix `M_f(Lambda)` records in entry `(i, j)` the multiplicity
//! of `l_i` as a zero of the `j`-th derivative of `f`. This crate computes these
//! matrices exactly over `Q` and `Q(sqrt(d))`, decides whether an abstract matrix
//! is realized by some polynomial, solves the minimal-degree extension problem,
//! and enumerates matrices for small census work.

pub mod budan;
pub mod census;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod format;
pub mod linalg;
pub mod multiplicity;
pub mod poly;
pub mod realize;
pub mod transforms;

pub use error::{Error, Result};
pub use field::{FieldContext, FieldElement, Rational};
pub use multiplicity::{LambdaSequence, MultiplicityMatrix, MultiplicityVector};
pub use poly::Polynomial;
