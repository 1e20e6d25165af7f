// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod error;
pub mod experiment;
pub mod jarzynski;
pub mod linalg;
pub mod noise;
pub mod units;
pub mod work;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HermitianOperator, QuantumState, QubitRole};
pub use num_complex::Complex64;
