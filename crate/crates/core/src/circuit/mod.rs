//! Gate-level construction and density-matrix execution of interferometric
//! circuits.

mod exec;
mod gate;
mod interferometer;
pub mod qasm;
mod spec;

pub use exec::{
    correct_readout, execute, measure_expectation, point_seed, sample_expectation, Confusion,
};
pub use gate::{Basis, Gate, GateKind};
pub use interferometer::build_interferometric_circuit;
pub use spec::CircuitSpec;
