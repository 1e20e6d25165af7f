use nalgebra::DMatrix;
use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::linalg::ops::c;

const HERMITIAN_TOL: f64 = 1e-12;

/// A Hermitian operator (an energy observable in μeV, or a dimensionless
/// observable such as a Pauli matrix).
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

/// Eigendecomposition of a Hermitian operator with ascending eigenvalues; the
/// k-th column of `vectors` belongs to `values[k]`.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianOperator {
    /// Wraps a matrix that is Hermitian within 1e-12 elementwise. The stored
    /// matrix is the exact Hermitian part of the input.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::arg("hermitian operator must be square"));
        }
        if !matrix.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::arg(format!(
                "matrix is not hermitian (max deviation {:e})",
                matrix.max_abs_diff(&matrix.dagger())
            )));
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eigh(&self) -> Result<Eigen> {
        eigh(self)
    }

    /// `e^{-i·self·t}`.
    pub fn evolution(&self, t: f64) -> Result<ComplexMatrix> {
        matrix_exp_unitary(self, t)
    }

    /// `f(self)` evaluated through the spectral decomposition.
    pub fn spectral_map(&self, f: impl Fn(f64) -> Complex64) -> Result<ComplexMatrix> {
        Ok(self.eigh()?.reassemble(f))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            matrix: self.matrix.scale_real(factor),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::arg("hermitian operators of different dimension"));
        }
        Ok(Self {
            matrix: &self.matrix + &other.matrix,
        })
    }
}

impl Eigen {
    /// `V · diag(f(λ)) · V†`.
    pub fn reassemble(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.values.len();
        let fv: Vec<Complex64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fv[k] * v[(j, k)].conj()).sum()
        })
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }
}

/// Eigen-decomposition of a Hermitian operator, eigenvalues ascending.
pub fn eigh(h: &HermitianOperator) -> Result<Eigen> {
    let n = h.dim();
    let m = h.matrix();
    // Diagonal inputs are common (bare Hamiltonians, thermal states) and are
    // returned exactly.
    let off_diag = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .any(|(i, j)| i != j && m[(i, j)] != c(0.0, 0.0));
    let (values, vectors) = if off_diag {
        let dm = DMatrix::from_fn(n, n, |i, j| m[(i, j)]);
        let eig = dm
            .try_symmetric_eigen(1e-15, 10_000)
            .ok_or_else(|| Error::numerical("hermitian eigendecomposition did not converge"))?;
        let values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let vecs = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, j)]);
        (values, vecs)
    } else {
        (
            (0..n).map(|i| m[(i, i)].re).collect(),
            ComplexMatrix::identity(n),
        )
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let sorted_values = order.iter().map(|&k| values[k]).collect();
    let sorted_vectors = ComplexMatrix::from_fn(n, n, |i, j| vectors[(i, order[j])]);
    Ok(Eigen {
        values: sorted_values,
        vectors: sorted_vectors,
    })
}

/// `e^{-i h t}` with ħ = 1 (h in μeV, t in μeV⁻¹).
pub fn matrix_exp_unitary(h: &HermitianOperator, t: f64) -> Result<ComplexMatrix> {
    if t == 0.0 {
        return Ok(ComplexMatrix::identity(h.dim()));
    }
    h.spectral_map(|l| Complex64::from_polar(1.0, -l * t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ops::{pauli_x, pauli_z};
    use crate::linalg::random::random_hermitian;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn pauli_z_spectrum() {
        let e = eigh(&HermitianOperator::new(pauli_z()).unwrap()).unwrap();
        assert_eq!(e.values, vec![-1.0, 1.0]);
    }

    #[test]
    fn pauli_x_spectrum_and_vectors() {
        let e = eigh(&HermitianOperator::new(pauli_x()).unwrap()).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-12 && (e.values[1] - 1.0).abs() < 1e-12);
        // (|0⟩ − |1⟩)/√2 for −1 and (|0⟩ + |1⟩)/√2 for +1, up to a phase.
        let minus = e.vector(0);
        let plus = e.vector(1);
        let overlap_minus = (minus[0] * FRAC_1_SQRT_2 - minus[1] * FRAC_1_SQRT_2).norm();
        let overlap_plus = (plus[0] * FRAC_1_SQRT_2 + plus[1] * FRAC_1_SQRT_2).norm();
        assert!((overlap_minus - 1.0).abs() < 1e-10);
        assert!((overlap_plus - 1.0).abs() < 1e-10);
    }

    #[test]
    fn reconstruction_of_random_8x8() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let h = random_hermitian(&mut rng, 8);
            let e = h.eigh().unwrap();
            let back = e.reassemble(|l| c(l, 0.0));
            assert!(back.max_abs_diff(h.matrix()) < 1e-10);
            // h v = λ v and orthonormality
            let vv = &e.vectors.dagger() * &e.vectors;
            assert!(vv.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-10);
            let hv = h.matrix() * &e.vectors;
            for k in 0..8 {
                for i in 0..8 {
                    assert!((hv[(i, k)] - e.vectors[(i, k)] * e.values[k]).norm() < 1e-10);
                }
            }
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn zero_time_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_hermitian(&mut rng, 4);
        assert_eq!(
            matrix_exp_unitary(&h, 0.0).unwrap(),
            ComplexMatrix::identity(4)
        );
    }

    #[test]
    fn full_period_of_qubit_is_minus_identity() {
        let omega = 20.04;
        let h = HermitianOperator::new(pauli_z().scale_real(omega / 2.0)).unwrap();
        let u = matrix_exp_unitary(&h, 2.0 * PI / omega).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(2).scale_real(-1.0)) < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = pauli_x();
        m[(0, 1)] = c(2.0, 0.0);
        assert!(HermitianOperator::new(m).is_err());
    }

    proptest! {
        #[test]
        fn evolution_composes_and_is_unitary(seed in 0u64..1000, dim_pow in 1usize..5, t1 in -3.0f64..3.0, t2 in -3.0f64..3.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = random_hermitian(&mut rng, 1 << dim_pow);
            let u1 = h.evolution(t1).unwrap();
            let u2 = h.evolution(t2).unwrap();
            let u12 = h.evolution(t1 + t2).unwrap();
            prop_assert!((&u1 * &u2).max_abs_diff(&u12) < 1e-10);
            prop_assert!(u1.is_unitary(1e-10));
        }
    }
}
