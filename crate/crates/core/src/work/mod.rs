//! Work statistics: two-point-measurement PDFs, quasi-probabilities,
//! characteristic-function sweeps and their half-inverse Fourier
//! reconstruction.

mod csvio;
mod distribution;
mod fourier;
mod peaks;
mod sweep;
mod tpm;

pub use csvio::{
    read_char_fn_csv, read_delta_comb_csv, read_grid_density_csv, write_char_fn_csv,
    write_delta_comb_csv, write_grid_density_csv,
};
pub use distribution::{
    default_work_grid, linspace, DeltaComb, GridDensity, WorkDistribution, MERGE_TOL,
};
pub use fourier::{half_inverse_fourier, Window};
pub use peaks::{
    detect_coherence_signature, extract_peaks, CoherenceReport, PeakWeight,
    DEFAULT_COHERENCE_THRESHOLD,
};
pub use sweep::{sweep_char_fn, CharFnSamples, Interferometer, SampleMode, UGrid};
pub use tpm::{char_fn_direct, quasiprob, tpm_work_pdf, QuasiProbMatrix};
