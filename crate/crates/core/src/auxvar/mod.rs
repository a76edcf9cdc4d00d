//! Memory-frugal amplitude evaluator.
//!
//! Any circuit of single-qubit gates, controlled phase shifts and CNOTs
//! acting on |0…0⟩ can be written as a sum over two-valued auxiliary
//! variables of products of single-qubit chains: each controlled phase
//! U(a) = diag(1,1,1,e^{ia}) splits, via the discrete Hubbard-Stratonovich
//! identity with cos 2x = e^{ia/2}, into a sum over s = ±1 of the
//! one-qubit factors diag(e^{i(xs-a/4)}, e^{-i(xs-a/4)}) on both
//! participating qubits, and every CNOT is H·U(π)·H on the target.
//! Evaluating M requested amplitudes then costs O(N·M·2^P) time and
//! O(N+M) memory, P being the number of entangling gates.

mod eval;

pub use eval::{amplitudes, amplitudes_over_configs, ConfigRange};

use crate::circuit::{gate_matrix, matrices::shift_angle, Circuit, GateMatrix, Instruction};
use crate::exec::ExecError;
use crate::C64;

/// Solution of cos 2x = e^{ia/2} on the principal branch. `x` is complex
/// in general: the per-configuration factors are not unitary, only their
/// sum over configurations is.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HsParameter {
    pub angle: f64,
    pub x: C64,
}

/// x = arccos(e^{ia/2}) / 2.
pub fn solve_hs(angle: f64) -> HsParameter {
    let target = C64::new(0.0, angle / 2.0).exp();
    HsParameter { angle, x: target.acos() * 0.5 }
}

impl HsParameter {
    /// |cos 2x − e^{ia/2}|, zero for a valid solution.
    pub fn defect(&self) -> f64 {
        ((self.x * 2.0).cos() - C64::new(0.0, self.angle / 2.0).exp()).norm()
    }

    /// Diagonal single-qubit factor for configuration `s`:
    /// diag(e^{i(xs-a/4)}, e^{-i(xs-a/4)}).
    pub fn factor_diag(&self, s: i8) -> [C64; 2] {
        let w = self.x * f64::from(s) - self.angle / 4.0;
        let top = (C64::new(0.0, 1.0) * w).exp();
        let bottom = (C64::new(0.0, -1.0) * w).exp();
        [top, bottom]
    }
}

/// One entangling gate after rewriting: a controlled-phase factor
/// attached to two qubit timelines.
#[derive(Clone, Debug)]
pub struct Factor {
    pub qubit_a: usize,
    pub qubit_b: usize,
    pub angle: f64,
    pub hs: HsParameter,
    /// factor_diag(+1) and factor_diag(-1), precomputed.
    pub diag_plus: [C64; 2],
    pub diag_minus: [C64; 2],
}

/// One step of a qubit timeline.
#[derive(Clone, Debug)]
pub enum Step {
    Matrix([[C64; 2]; 2]),
    /// Attachment point of factor `p`.
    Factor(usize),
}

/// A compiled circuit: per-qubit chains of single-qubit operations with
/// factor attachment points, plus the factor table. The global weight is
/// 1/2^P.
#[derive(Clone, Debug)]
pub struct PathProgram {
    n_qubits: usize,
    factors: Vec<Factor>,
    timelines: Vec<Vec<Step>>,
}

impl PathProgram {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Number of auxiliary variables = number of entangling gates.
    pub fn p_count(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn timelines(&self) -> &[Vec<Step>] {
        &self.timelines
    }

    /// Worst-case work for evaluating `m` amplitudes: N·M·2^P.
    pub fn cost_estimate(&self, m: usize) -> f64 {
        (self.n_qubits * m) as f64 * (2.0f64).powi(self.p_count() as i32)
    }
}

fn single_qubit_matrix(instr: &Instruction) -> [[C64; 2]; 2] {
    match gate_matrix(instr).expect("single-qubit gate") {
        GateMatrix::One(m) => m,
        _ => unreachable!(),
    }
}

/// Rewrite a circuit into single-qubit chains plus controlled-phase
/// factors. Supported: all single-qubit gates, CNOT and U(±k), acting on
/// the initial product state |0…0⟩. Anything else is rejected by name.
pub fn compile_to_paths(circuit: &Circuit) -> Result<PathProgram, ExecError> {
    if circuit.noise.as_ref().is_some_and(|n| n.is_active()) {
        return Err(ExecError::Unsupported {
            engine: "auxvar",
            mnemonic: "DEPOLARIZING CHANNEL".into(),
        });
    }
    let n = circuit.n_qubits;
    let mut program =
        PathProgram { n_qubits: n, factors: Vec::new(), timelines: vec![Vec::new(); n] };

    let push_factor = |program: &mut PathProgram, a: usize, b: usize, angle: f64| {
        let hs = solve_hs(angle);
        let p = program.factors.len();
        program.factors.push(Factor {
            qubit_a: a,
            qubit_b: b,
            angle,
            hs,
            diag_plus: hs.factor_diag(1),
            diag_minus: hs.factor_diag(-1),
        });
        program.timelines[a].push(Step::Factor(p));
        program.timelines[b].push(Step::Factor(p));
    };

    for instr in &circuit.instructions {
        use Instruction::*;
        match instr {
            Identity(_) => {}
            Hadamard(q) | PauliX(q) | PauliY(q) | PauliZ(q) | SGate(q) | SDag(q) | TGate(q)
            | TDag(q) | U1(q, _) | U2(q, ..) | U3(q, ..) | PlusX(q) | MinusX(q) | PlusY(q)
            | MinusY(q) | PhaseShift { qubit: q, .. } => {
                program.timelines[q.0].push(Step::Matrix(single_qubit_matrix(instr)));
            }
            Cnot { control, target } => {
                // H on the target, the a = π controlled phase, H again.
                let h = single_qubit_matrix(&Hadamard(*target));
                program.timelines[target.0].push(Step::Matrix(h));
                push_factor(&mut program, control.0, target.0, std::f64::consts::PI);
                program.timelines[target.0].push(Step::Matrix(h));
            }
            CPhase { control, target, k } => {
                push_factor(&mut program, control.0, target.0, shift_angle(*k));
            }
            // Non-destructive or terminal directives carry no amplitude
            // content; the evaluator answers queries instead.
            BeginMeasurement | GenerateEvents { .. } | Exit => {}
            other => {
                return Err(ExecError::Unsupported {
                    engine: "auxvar",
                    mnemonic: other.mnemonic().to_string(),
                })
            }
        }
    }
    Ok(program)
}
