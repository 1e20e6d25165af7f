//! Dense complex linear algebra for registers of at most eight qubits.

mod hermitian;
mod matrix;
pub mod ops;
pub mod random;
mod state;

pub use hermitian::{eigh, matrix_exp_unitary, Eigen, HermitianOperator};
pub use matrix::{tensor_product, ComplexMatrix};
pub use state::{expectation, partial_trace, QuantumState, QubitRole};
