//! Standard single-qubit operators and register embedding.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::ComplexMatrix;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[1.0, -1.0])
}

pub fn hadamard() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::from_rows(&[[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]])
}

/// √X = ½[[1+i, 1−i], [1−i, 1+i]].
pub fn sqrt_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[c(0.5, 0.5), c(0.5, -0.5)], [c(0.5, -0.5), c(0.5, 0.5)]])
}

/// S† = diag(1, −i).
pub fn phase_dagger() -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(0.0, -1.0)])
}

/// σ₊ = |0⟩⟨1|, raising toward the `+1` eigenstate of σz (the ground state of −ω/2·σz).
pub fn sigma_plus() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]])
}

/// σ₋ = |1⟩⟨0|.
pub fn sigma_minus() -> ComplexMatrix {
    sigma_plus().dagger()
}

/// |k⟩⟨k| in dimension `dim`.
pub fn projector(dim: usize, k: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    m[(k, k)] = c(1.0, 0.0);
    m
}

/// Bit of `qubit` inside a basis index of an `n`-qubit register (qubit 0 is the
/// most significant bit).
#[inline]
pub fn qubit_bit(index: usize, qubit: usize, n: usize) -> usize {
    (index >> (n - 1 - qubit)) & 1
}

/// Index into a sub-register formed by `qubits` (in the given order, first most
/// significant) from a full-register basis index.
#[inline]
pub(crate) fn sub_index(index: usize, qubits: &[usize], n: usize) -> usize {
    qubits
        .iter()
        .fold(0, |acc, &q| (acc << 1) | qubit_bit(index, q, n))
}

/// Embeds `op` acting on `targets` (first target most significant) into an
/// `n`-qubit register. With `control = Some((q, v))` the operator acts only on
/// the subspace where qubit `q` equals `v`, and as the identity elsewhere.
///
/// Callers guarantee that targets are distinct, in range, exclude the control,
/// and that `op` has dimension `2^targets.len()`.
pub fn embed_operator(
    op: &ComplexMatrix,
    targets: &[usize],
    control: Option<(usize, u8)>,
    n: usize,
) -> ComplexMatrix {
    let dim = 1usize << n;
    let mut mask = 0usize;
    for &t in targets {
        mask |= 1 << (n - 1 - t);
    }
    let mut out = ComplexMatrix::zeros(dim, dim);
    for r in 0..dim {
        let active = control.map_or(true, |(q, v)| qubit_bit(r, q, n) == v as usize);
        if !active {
            out[(r, r)] = c(1.0, 0.0);
            continue;
        }
        let rs = sub_index(r, targets, n);
        let rest = r & !mask;
        for cs in 0..(1usize << targets.len()) {
            let v = op[(rs, cs)];
            if v == c(0.0, 0.0) {
                continue;
            }
            // Scatter the sub-index bits of `cs` back onto the target positions.
            let mut col = rest;
            for (k, &t) in targets.iter().enumerate() {
                let bit = (cs >> (targets.len() - 1 - k)) & 1;
                col |= bit << (n - 1 - t);
            }
            out[(r, col)] = v;
        }
    }
    out
}
