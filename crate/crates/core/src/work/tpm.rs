use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator, QuantumState};

use super::distribution::{DeltaComb, MERGE_TOL};

/// Quasi-probabilities `q_mn` (final level `m`, initial level `n`) of a drive
/// between the eigenlevels of `h0`. Degenerate levels are merged into one.
#[derive(Clone, Debug)]
pub struct QuasiProbMatrix {
    entries: ComplexMatrix,
    energies: Vec<f64>,
}

impl QuasiProbMatrix {
    pub fn entries(&self) -> &ComplexMatrix {
        &self.entries
    }

    /// Level energies in μeV, ascending; shared by rows and columns.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.entries[(m, n)]
    }

    pub fn total(&self) -> Complex64 {
        self.entries.as_slice().iter().sum()
    }

    /// `Σ_n q_mn` for every final level `m`.
    pub fn final_marginal(&self) -> Vec<Complex64> {
        (0..self.energies.len())
            .map(|m| self.entries.row(m).iter().sum())
            .collect()
    }

    /// `Σ_m q_mn` for every initial level `n`.
    pub fn initial_marginal(&self) -> Vec<Complex64> {
        (0..self.energies.len())
            .map(|n| self.entries.column(n).iter().sum())
            .collect()
    }

    pub fn max_imag(&self) -> f64 {
        self.entries
            .as_slice()
            .iter()
            .map(|z| z.im.abs())
            .fold(0.0, f64::max)
    }

    /// `Σ_mn e^{iu(E_m − E_n)} q_mn`.
    pub fn characteristic(&self, u: f64) -> Complex64 {
        let k = self.energies.len();
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..k {
            for n in 0..k {
                let phase = Complex64::from_polar(1.0, u * (self.energies[m] - self.energies[n]));
                acc += phase * self.entries[(m, n)];
            }
        }
        acc
    }

    /// The comb `Σ_mn q_mn δ(w − E_m + E_n)`, keeping only real parts.
    pub fn real_comb(&self) -> Result<DeltaComb> {
        let k = self.energies.len();
        let mut peaks = Vec::with_capacity(k * k);
        for m in 0..k {
            for n in 0..k {
                peaks.push((self.energies[m] - self.energies[n], self.entries[(m, n)].re));
            }
        }
        DeltaComb::new(peaks)
    }
}

/// Eigen-decomposition of `h0` with eigenvalues grouped into levels.
struct Levels {
    energies: Vec<f64>,
    members: Vec<Vec<usize>>,
    vectors: ComplexMatrix,
}

fn levels(h0: &HermitianOperator) -> Result<Levels> {
    let eig = h0.eigh()?;
    let mut energies: Vec<f64> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (k, &e) in eig.values.iter().enumerate() {
        match (energies.last_mut(), members.last_mut()) {
            (Some(last), Some(group)) if (e - *last).abs() <= MERGE_TOL => {
                group.push(k);
                *last = (*last * (group.len() - 1) as f64 + e) / group.len() as f64;
            }
            _ => {
                energies.push(e);
                members.push(vec![k]);
            }
        }
    }
    Ok(Levels {
        energies,
        members,
        vectors: eig.vectors,
    })
}

fn check_dims(rho: &QuantumState, h0: &HermitianOperator, u_drive: &ComplexMatrix) -> Result<()> {
    let d = h0.dim();
    if rho.dim() != d || !u_drive.is_square() || u_drive.rows() != d {
        return Err(Error::arg(format!(
            "dimension mismatch: state {}, h0 {d}, drive {}x{}",
            rho.dim(),
            u_drive.rows(),
            u_drive.cols()
        )));
    }
    Ok(())
}

/// Drive and state expressed in the eigenbasis of `h0`.
fn rotated(
    rho: &QuantumState,
    u_drive: &ComplexMatrix,
    lv: &Levels,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let vd = lv.vectors.dagger();
    let u = vd.matmul(u_drive)?.matmul(&lv.vectors)?;
    let r = vd.matmul(rho.matrix())?.matmul(&lv.vectors)?;
    Ok((u, r))
}

/// Two-point-measurement work distribution of the drive `u_drive` applied to
/// `rho`, with energies measured by `h0` before and after.
///
/// Each level `n` is found with probability `Tr(P_n ρ)`, the post-measurement
/// state `P_n ρ P_n` is driven, and level `m` is found after the drive, giving
/// work `E_m − E_n`. Zero-weight transitions are kept as zero-weight peaks.
pub fn tpm_work_pdf(
    rho: &QuantumState,
    h0: &HermitianOperator,
    u_drive: &ComplexMatrix,
) -> Result<DeltaComb> {
    check_dims(rho, h0, u_drive)?;
    let lv = levels(h0)?;
    let (u, r) = rotated(rho, u_drive, &lv)?;
    let mut peaks = Vec::new();
    for (m, fin) in lv.members.iter().enumerate() {
        for (n, init) in lv.members.iter().enumerate() {
            // Σ_{a∈m} Σ_{b,b'∈n} U_ab ρ_bb' conj(U_ab')
            let mut p = 0.0;
            for &a in fin {
                let mut acc = Complex64::new(0.0, 0.0);
                for &b in init {
                    for &b2 in init {
                        acc += u[(a, b)] * r[(b, b2)] * u[(a, b2)].conj();
                    }
                }
                p += acc.re;
            }
            peaks.push((lv.energies[m] - lv.energies[n], p));
        }
    }
    DeltaComb::new(peaks)
}

/// Quasi-probabilities `q_mn = Tr(P_m U P_n ρ U†)`.
pub fn quasiprob(
    rho: &QuantumState,
    h0: &HermitianOperator,
    u_drive: &ComplexMatrix,
) -> Result<QuasiProbMatrix> {
    check_dims(rho, h0, u_drive)?;
    let lv = levels(h0)?;
    let (u, r) = rotated(rho, u_drive, &lv)?;
    let r_ud = r.matmul(&u.dagger())?;
    let k = lv.energies.len();
    let entries = ComplexMatrix::from_fn(k, k, |m, n| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &a in &lv.members[m] {
            for &b in &lv.members[n] {
                acc += u[(a, b)] * r_ud[(b, a)];
            }
        }
        acc
    });
    Ok(QuasiProbMatrix {
        entries,
        energies: lv.energies,
    })
}

/// `Tr[U† e^{iu·h0} U e^{−iu·h0} ρ]`, evaluated directly.
pub fn char_fn_direct(
    rho: &QuantumState,
    h0: &HermitianOperator,
    u_drive: &ComplexMatrix,
    u: f64,
) -> Result<Complex64> {
    check_dims(rho, h0, u_drive)?;
    let fwd = h0.evolution(u)?;
    let back = fwd.dagger();
    let prod = u_drive
        .dagger()
        .matmul(&back)?
        .matmul(u_drive)?
        .matmul(&fwd)?
        .matmul(rho.matrix())?;
    Ok(prod.trace())
}
