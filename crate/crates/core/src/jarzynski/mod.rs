//! Thermal states, effective temperatures of mixed preparations, the
//! Jarzynski integral and bath thermometry from `J(T) = 1`.

mod integral;
mod mixing;
mod solve;
mod temperature;

pub use integral::{
    jarzynski_integral, jarzynski_integral_detailed, JarzynskiValue, CLIP_EXPONENT,
};
pub use mixing::{mix_pdfs, mixed_temperature, mixing_builder, MixedPdfSpec, MixingCurve};
pub use solve::{solve_bath_temperature, JCurve, SolveOptions, ThermometryResult};
pub use temperature::{excited_population, population_ratio, thermal_state, Temperature};
