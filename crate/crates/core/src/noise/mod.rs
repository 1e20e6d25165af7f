//! Kraus channels, calibration-style noise models and synthetic baths.

mod bath;
mod channel;
mod model;

pub use bath::{build_bath_hamiltonian, qubit_hamiltonian, time_averaged_state, BathSpec};
pub use channel::{
    apply_channel, depolarizing_channel, depolarizing_from_fidelity, thermal_relaxation_channel,
    verify_cptp, CptpReport, KrausChannel,
};
pub use model::{GateDurations, NoiseModel, QubitNoise};

pub(crate) use bath::spectator_hamiltonian;
