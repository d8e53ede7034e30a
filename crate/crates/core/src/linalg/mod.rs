//! Exact linear algebra over `Q` and `F_p`.

mod matrix;
mod quotient;
mod scalar;
pub mod sparse;

pub use matrix::Matrix;
pub use quotient::{apply, quotient_by, QuotientSpace};
pub use scalar::{Field, Rational, Scalar};
pub use sparse::{RowReducer, SparseVec};
