//! Random operators and states for property tests and benchmarks.

use rand::Rng;

use super::{ComplexMatrix, HermitianOperator, QuantumState, QubitRole};
use crate::linalg::ops::c;

// Box–Muller
fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Matrix with i.i.d. complex Gaussian entries.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |_, _| {
        c(standard_normal(rng), standard_normal(rng))
    })
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> HermitianOperator {
    HermitianOperator::new(random_matrix(rng, dim).hermitian_part())
        .expect("hermitian part is hermitian")
}

/// Haar-ish unitary from the exponential of a random Hermitian generator.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let h = random_hermitian(rng, dim);
    h.evolution(1.0)
        .expect("eigendecomposition of small hermitian")
}

/// Full-rank random density matrix `G G† / Tr(G G†)`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, n_qubits: usize) -> QuantumState {
    let g = random_matrix(rng, 1 << n_qubits);
    let gg = &g * &g.dagger();
    let tr = gg.trace().re;
    QuantumState::new(gg.scale_real(1.0 / tr), vec![QubitRole::System; n_qubits])
        .expect("Ginibre state is valid")
}

/// Random density matrix diagonal in the computational basis.
pub fn random_diagonal_density<R: Rng + ?Sized>(rng: &mut R, n_qubits: usize) -> QuantumState {
    let mut p: Vec<f64> = (0..1 << n_qubits).map(|_| rng.random::<f64>()).collect();
    let s: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= s);
    QuantumState::new(
        ComplexMatrix::from_real_diagonal(&p),
        vec![QubitRole::System; n_qubits],
    )
    .expect("diagonal state is valid")
}
