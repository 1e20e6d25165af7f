//! OpenQASM 3 rendering of a [`CircuitSpec`].
//!
//! Fixed gates map onto `stdgates.inc` names. Every unitary or delay-evolution
//! gate, controlled or not, becomes an explicit gate declaration over all the
//! qubits it touches (control first), preceded by a
//! `pragma qworkstat.unitary <name> <dim> <re> <im> ...` line carrying the
//! full row-major matrix, so the file is self-describing.

use std::fmt::Write;

use crate::linalg::ops::embed_operator;

use super::{Basis, CircuitSpec, Gate, GateKind};

pub fn to_openqasm3(circuit: &CircuitSpec, comment: &str) -> String {
    let n = circuit.num_qubits();
    let mut out = String::new();
    out.push_str("OPENQASM 3.0;\ninclude \"stdgates.inc\";\n");
    for line in comment.lines() {
        let _ = writeln!(out, "// {line}");
    }
    let roles: Vec<String> = circuit
        .roles()
        .iter()
        .enumerate()
        .map(|(i, r)| format!("q[{i}]={r:?}").to_lowercase())
        .collect();
    let _ = writeln!(out, "// roles: {}", roles.join(" "));

    let mut decls = String::new();
    let mut body = String::new();
    for (k, gate) in circuit.gates().iter().enumerate() {
        match gate.kind() {
            GateKind::Hadamard | GateKind::PauliX | GateKind::SqrtX => {
                let prefix = match gate.control() {
                    Some((_, 1)) => "ctrl @ ",
                    Some(_) => "negctrl @ ",
                    None => "",
                };
                let _ = writeln!(body, "{prefix}{} {};", gate.name(), operands(gate));
            }
            GateKind::Unitary(_) | GateKind::DelayEvolution { .. } => {
                let name = declared_name(k, gate);
                write_declaration(&mut decls, &name, gate);
                let _ = writeln!(body, "{name} {};", operands(gate));
            }
        }
    }

    let _ = writeln!(out, "qubit[{n}] q;");
    let _ = writeln!(out, "bit[{}] c;", circuit.measurements().len().max(1));
    out.push_str(&decls);
    out.push_str(&body);
    for (i, (q, basis)) in circuit.measurements().iter().enumerate() {
        if *basis == Basis::Y {
            let _ = writeln!(out, "sdg q[{q}];\nh q[{q}];");
        }
        let _ = writeln!(out, "c[{i}] = measure q[{q}]; // basis {basis}");
    }
    out
}

fn declared_name(index: usize, gate: &Gate) -> String {
    let base = if gate.is_delay() {
        "delay_evolution"
    } else {
        "drive"
    };
    match gate.control() {
        Some((_, v)) => format!("g{index}_c{v}_{base}"),
        None => format!("g{index}_{base}"),
    }
}

fn operands(gate: &Gate) -> String {
    let mut qs: Vec<usize> = gate.control().map(|(c, _)| c).into_iter().collect();
    qs.extend_from_slice(gate.targets());
    qs.iter()
        .map(|q| format!("q[{q}]"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_declaration(out: &mut String, name: &str, gate: &Gate) {
    let local = gate.local_matrix();
    let t = gate.targets().len();
    let (full, width) = match gate.control() {
        Some((_, v)) => {
            let shifted: Vec<usize> = (1..=t).collect();
            (embed_operator(&local, &shifted, Some((0, v)), t + 1), t + 1)
        }
        None => (local, t),
    };
    if let GateKind::DelayEvolution { duration, .. } = gate.kind() {
        let _ = writeln!(
            out,
            "// {name}: free evolution over u = {duration:.6} 1/ueV"
        );
    }
    let _ = write!(out, "pragma qworkstat.unitary {name} {}", full.rows());
    for z in full.as_slice() {
        let _ = write!(out, " {:.16e} {:.16e}", z.re, z.im);
    }
    out.push('\n');
    let args: Vec<String> = (0..width).map(|i| format!("a{i}")).collect();
    let _ = writeln!(out, "gate {name} {} {{ }}", args.join(", "));
}
