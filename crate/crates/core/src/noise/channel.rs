use crate::error::{Error, Result};
use crate::linalg::ops::{c, embed_operator, pauli_x, pauli_y, pauli_z};
use crate::linalg::{ComplexMatrix, HermitianOperator, QuantumState};

/// A quantum channel in Kraus form.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    operators: Vec<ComplexMatrix>,
    label: String,
}

/// Outcome of [`verify_cptp`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CptpReport {
    pub trace_preserving: bool,
    pub completely_positive: bool,
    /// Worst of `‖Σ K†K − I‖_max` and the most negative Choi eigenvalue.
    pub max_violation: f64,
}

impl CptpReport {
    pub fn is_cptp(&self) -> bool {
        self.trace_preserving && self.completely_positive
    }
}

const CPTP_TOL: f64 = 1e-10;

impl KrausChannel {
    /// Collects Kraus operators of one common power-of-two dimension. No CPTP
    /// check happens here; see [`verify_cptp`].
    pub fn new(operators: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        let first = operators
            .first()
            .ok_or_else(|| Error::arg("a channel needs at least one Kraus operator"))?;
        let d = first.rows();
        if first.qubit_count().is_none() {
            return Err(Error::arg(
                "Kraus operators must be square with power-of-two dimension",
            ));
        }
        if operators.iter().any(|k| k.rows() != d || k.cols() != d) {
            return Err(Error::arg("Kraus operators have mixed dimensions"));
        }
        Ok(Self {
            operators,
            label: label.into(),
        })
    }

    pub fn identity(num_qubits: usize) -> Self {
        Self {
            operators: vec![ComplexMatrix::identity(1 << num_qubits)],
            label: "identity".into(),
        }
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.operators[0].rows()
    }

    pub fn num_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    /// `ρ ↦ Σ K ρ K†` on a matrix of the channel's own dimension.
    pub fn map_matrix(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim(), self.dim());
        for k in &self.operators {
            out = &out + &(&(k * rho) * &k.dagger());
        }
        out
    }

    /// Sequential composition: `other` applied after `self`.
    pub fn then(&self, other: &KrausChannel) -> Result<KrausChannel> {
        if self.dim() != other.dim() {
            return Err(Error::arg("cannot compose channels of different dimension"));
        }
        let ops = other
            .operators
            .iter()
            .flat_map(|b| self.operators.iter().map(move |a| b * a))
            .filter(|k| k.max_abs() > 0.0)
            .collect();
        KrausChannel::new(ops, format!("{} ∘ {}", other.label, self.label))
    }

    /// Choi matrix `Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`, built from the channel action.
    pub fn choi(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut choi = ComplexMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                let mut eij = ComplexMatrix::zeros(d, d);
                eij[(i, j)] = c(1.0, 0.0);
                let img = self.map_matrix(&eij);
                for a in 0..d {
                    for b in 0..d {
                        choi[(i * d + a, j * d + b)] = img[(a, b)];
                    }
                }
            }
        }
        choi
    }
}

/// Checks `Σ K†K = I` and positivity of the Choi matrix.
pub fn verify_cptp(channel: &KrausChannel) -> CptpReport {
    let d = channel.dim();
    let mut sum = ComplexMatrix::zeros(d, d);
    for k in channel.operators() {
        sum = &sum + &(&k.dagger() * k);
    }
    let tp_violation = sum.max_abs_diff(&ComplexMatrix::identity(d));

    let choi = channel.choi();
    let cp_violation = HermitianOperator::new(choi.hermitian_part())
        .and_then(|h| h.eigh())
        .map(|e| (-e.values[0]).max(0.0))
        .unwrap_or(f64::INFINITY);

    CptpReport {
        trace_preserving: tp_violation <= CPTP_TOL,
        completely_positive: cp_violation <= CPTP_TOL,
        max_violation: tp_violation.max(cp_violation),
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::arg(format!("{name} = {p} is not a probability")));
    }
    Ok(())
}

/// Depolarizing channel `ρ ↦ (1 − p)ρ + p·I/d` on one or two qubits, written
/// with the identity weight `1 − p(4ⁿ−1)/4ⁿ` and weight `p/4ⁿ` on every
/// non-identity Pauli string.
pub fn depolarizing_channel(p: f64, num_qubits: usize) -> Result<KrausChannel> {
    check_probability("depolarizing probability", p)?;
    if !(1..=2).contains(&num_qubits) {
        return Err(Error::arg(
            "depolarizing channel is defined for 1 or 2 qubits",
        ));
    }
    let d = 1usize << num_qubits;
    if p == 0.0 {
        return KrausChannel::new(vec![ComplexMatrix::identity(d)], "depolarizing(0)");
    }
    let singles = [ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()];
    let strings: Vec<ComplexMatrix> = if num_qubits == 1 {
        singles.to_vec()
    } else {
        singles
            .iter()
            .flat_map(|a| singles.iter().map(move |b| a.kron(b)))
            .collect()
    };
    let n_strings = (d * d) as f64;
    let id_weight = (1.0 - p * (n_strings - 1.0) / n_strings).sqrt();
    let pauli_weight = (p / n_strings).sqrt();
    let ops = strings
        .into_iter()
        .enumerate()
        .map(|(k, s)| s.scale_real(if k == 0 { id_weight } else { pauli_weight }))
        .collect();
    KrausChannel::new(ops, format!("depolarizing({p})"))
}

/// Depolarizing probability for an n-qubit gate of process fidelity `f`:
/// `p = 4ⁿ/(4ⁿ−1)·(1 − f)`.
pub fn depolarizing_from_fidelity(fidelity: f64, num_qubits: usize) -> Result<f64> {
    check_probability("gate fidelity", fidelity)?;
    let n = 4f64.powi(num_qubits as i32);
    let p = n / (n - 1.0) * (1.0 - fidelity);
    check_probability("depolarizing probability implied by fidelity", p)?;
    Ok(p)
}

/// Single-qubit thermal relaxation over `duration` (all times in μs).
///
/// Generalized amplitude damping with `γ = 1 − e^{−t/T1}` toward the
/// equilibrium excited population `p_exc`, followed by pure dephasing with
/// coherence factor `λ = e^{−t/T2} / e^{−t/(2T1)}`, so that off-diagonal
/// elements decay as `e^{−t/T2}` overall:
///
/// ```text
/// K0 = √(1−p)·[[1, 0], [0, √(1−γ)]]   K1 = √(1−p)·[[0, √γ], [0, 0]]
/// K2 = √p·[[√(1−γ), 0], [0, 1]]       K3 = √p·[[0, 0], [√γ, 0]]
/// D0 = √((1+λ)/2)·I                   D1 = √((1−λ)/2)·σz
/// ```
pub fn thermal_relaxation_channel(
    t1: f64,
    t2: f64,
    duration: f64,
    p_exc: f64,
) -> Result<KrausChannel> {
    if !(t1 > 0.0) || !(t2 > 0.0) {
        return Err(Error::arg(format!(
            "T1 = {t1} and T2 = {t2} must be positive"
        )));
    }
    if t2 > 2.0 * t1 {
        return Err(Error::arg(format!("T2 = {t2} exceeds 2·T1 = {}", 2.0 * t1)));
    }
    if !(duration >= 0.0) {
        return Err(Error::arg(format!(
            "duration {duration} must be non-negative"
        )));
    }
    check_probability("equilibrium excited population", p_exc)?;

    let gamma = 1.0 - (-duration / t1).exp();
    let lambda = (-duration * (1.0 / t2 - 0.5 / t1)).exp().min(1.0);
    let (sg, sk) = (gamma.sqrt(), (1.0 - gamma).sqrt());
    let (a, b) = ((1.0 - p_exc).sqrt(), p_exc.sqrt());
    let z = c(0.0, 0.0);
    let r = |x: f64| c(x, 0.0);
    let damping = [
        ComplexMatrix::from_rows(&[[r(a), z], [z, r(a * sk)]]),
        ComplexMatrix::from_rows(&[[z, r(a * sg)], [z, z]]),
        ComplexMatrix::from_rows(&[[r(b * sk), z], [z, r(b)]]),
        ComplexMatrix::from_rows(&[[z, z], [r(b * sg), z]]),
    ];
    let dephasing = [
        ComplexMatrix::identity(2).scale_real(((1.0 + lambda) / 2.0).sqrt()),
        pauli_z().scale_real(((1.0 - lambda) / 2.0).sqrt()),
    ];
    let ops: Vec<ComplexMatrix> = dephasing
        .iter()
        .flat_map(|d| damping.iter().map(move |k| d * k))
        .filter(|k| k.max_abs() > 0.0)
        .collect();
    KrausChannel::new(
        ops,
        format!("thermal_relaxation(T1={t1}, T2={t2}, t={duration}, p_exc={p_exc})"),
    )
}

/// Applies `channel` to the qubits `targets` of `state`.
pub fn apply_channel(
    state: &QuantumState,
    channel: &KrausChannel,
    targets: &[usize],
) -> Result<QuantumState> {
    let n = state.num_qubits();
    if channel.num_qubits() != targets.len() {
        return Err(Error::arg(format!(
            "{}-qubit channel applied to {} targets",
            channel.num_qubits(),
            targets.len()
        )));
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= n || targets[..i].contains(&t) {
            return Err(Error::arg(format!("invalid channel target {t}")));
        }
    }
    let rho = state.matrix();
    let mut out = ComplexMatrix::zeros(state.dim(), state.dim());
    for k in channel.operators() {
        let full = embed_operator(k, targets, None, n);
        out = &out + &full.conjugate(rho)?;
    }
    QuantumState::from_parts(out, state.roles().to_vec())
}
