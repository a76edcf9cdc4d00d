//! Canonical text form of a circuit. `parse_program(pretty_print(c)) == c`
//! for every circuit the generators produce, and floating-point angles are
//! printed with shortest round-trip precision so the cycle is bit-exact.

use super::{Circuit, Instruction};
use std::fmt::Write;

fn angle(buf: &mut String, v: f64) {
    // `{}` on f64 is the shortest representation that parses back exactly.
    write!(buf, " {v}").unwrap();
}

/// Render a circuit in the instruction-language format, one statement per
/// line.
pub fn pretty_print(circuit: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "QUBITS {}", circuit.n_qubits).unwrap();
    if !circuit.bit_assignment.is_identity() {
        out.push_str("BIT ASSIGNMENT");
        for p in circuit.bit_assignment.as_slice() {
            write!(out, " {p}").unwrap();
        }
        out.push('\n');
    }
    if let Some(noise) = &circuit.noise {
        writeln!(
            out,
            "DEPOLARIZING CHANNEL P_X = {} , P_Y = {} , P_Z = {} , SEED = {}",
            noise.p_x, noise.p_y, noise.p_z, noise.seed
        )
        .unwrap();
    }
    for instr in &circuit.instructions {
        use Instruction::*;
        out.push_str(instr.mnemonic());
        match *instr {
            Identity(q) | Hadamard(q) | PauliX(q) | PauliY(q) | PauliZ(q) | SGate(q)
            | SDag(q) | TGate(q) | TDag(q) | PlusX(q) | MinusX(q) | PlusY(q) | MinusY(q)
            | Measure(q) | Clear(q) | Set(q) => {
                write!(out, " {q}").unwrap();
            }
            U1(q, l) => {
                write!(out, " {q}").unwrap();
                angle(&mut out, l);
            }
            U2(q, p, l) => {
                write!(out, " {q}").unwrap();
                angle(&mut out, p);
                angle(&mut out, l);
            }
            U3(q, t, p, l) => {
                write!(out, " {q}").unwrap();
                angle(&mut out, t);
                angle(&mut out, p);
                angle(&mut out, l);
            }
            PhaseShift { qubit, k } => write!(out, " {qubit} {k}").unwrap(),
            Cnot { control, target } => write!(out, " {control} {target}").unwrap(),
            CPhase { control, target, k } => {
                write!(out, " {control} {target} {k}").unwrap()
            }
            Toffoli { control1, control2, target } => {
                write!(out, " {control1} {control2} {target}").unwrap()
            }
            GenerateEvents { count, seed } => write!(out, " {count} {seed}").unwrap(),
            Shorbox(p) => write!(out, " {} {} {}", p.n_x, p.g, p.y).unwrap(),
            BeginMeasurement | Exit => {}
        }
        out.push('\n');
    }
    out
}
