//! Defining matrices of the gate instructions.

use super::Instruction;
use crate::C64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use thiserror::Error;

/// Dense matrix of a 1-, 2- or 3-qubit gate.
///
/// Two-qubit matrices are written in the computational basis
/// |control,target⟩ (index = 2·control + target), three-qubit matrices in
/// |control1,control2,target⟩.
#[derive(Clone, Debug, PartialEq)]
pub enum GateMatrix {
    One([[C64; 2]; 2]),
    Two([[C64; 4]; 4]),
    Three([[C64; 8]; 8]),
}

impl GateMatrix {
    pub fn dim(&self) -> usize {
        match self {
            GateMatrix::One(_) => 2,
            GateMatrix::Two(_) => 4,
            GateMatrix::Three(_) => 8,
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> C64 {
        match self {
            GateMatrix::One(m) => m[r][c],
            GateMatrix::Two(m) => m[r][c],
            GateMatrix::Three(m) => m[r][c],
        }
    }

    /// Largest entry of |U†U − I|, zero for an exactly unitary matrix.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..d {
                    acc += self.entry(k, r).conj() * self.entry(k, c);
                }
                let expect = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((acc - expect).norm());
            }
        }
        worst
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("{0} is not a unitary gate instruction")]
    NotAGate(&'static str),
}

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

fn phase(theta: f64) -> C64 {
    C64::new(theta.cos(), theta.sin())
}

/// Phase angle of the R(k)/U(k) family: 2π/2^k, with negative k selecting
/// the dagger form (angle -2π/2^|k|).
pub(crate) fn shift_angle(k: i32) -> f64 {
    let sign = if k < 0 { -1.0 } else { 1.0 };
    sign * 2.0 * PI / (2.0f64).powi(k.abs())
}

fn diag2(top: C64, bottom: C64) -> GateMatrix {
    GateMatrix::One([[top, ZERO], [ZERO, bottom]])
}

/// The defining matrix of a unitary gate instruction. For R/U with
/// negative k the dagger form is returned.
pub fn gate_matrix(instr: &Instruction) -> Result<GateMatrix, MatrixError> {
    use Instruction::*;
    let s = FRAC_1_SQRT_2;
    let i = C64::new(0.0, 1.0);
    let m = match *instr {
        Identity(_) => GateMatrix::One([[ONE, ZERO], [ZERO, ONE]]),
        Hadamard(_) => GateMatrix::One([
            [C64::new(s, 0.0), C64::new(s, 0.0)],
            [C64::new(s, 0.0), C64::new(-s, 0.0)],
        ]),
        PauliX(_) => GateMatrix::One([[ZERO, ONE], [ONE, ZERO]]),
        PauliY(_) => GateMatrix::One([[ZERO, -i], [i, ZERO]]),
        PauliZ(_) => diag2(ONE, -ONE),
        SGate(_) => diag2(ONE, i),
        SDag(_) => diag2(ONE, -i),
        TGate(_) => diag2(ONE, C64::new(s, s)),
        TDag(_) => diag2(ONE, C64::new(s, -s)),
        U1(_, lambda) => diag2(ONE, phase(lambda)),
        U2(_, phi, lambda) => GateMatrix::One([
            [C64::new(s, 0.0), -phase(lambda) * s],
            [phase(phi) * s, phase(phi + lambda) * s],
        ]),
        U3(_, theta, phi, lambda) => {
            let (c, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            GateMatrix::One([
                [C64::new(c, 0.0), -phase(lambda) * sn],
                [phase(phi) * sn, phase(phi + lambda) * c],
            ])
        }
        PlusX(_) => GateMatrix::One([[C64::new(s, 0.0), i * s], [i * s, C64::new(s, 0.0)]]),
        MinusX(_) => GateMatrix::One([[C64::new(s, 0.0), -i * s], [-i * s, C64::new(s, 0.0)]]),
        PlusY(_) => GateMatrix::One([
            [C64::new(s, 0.0), C64::new(s, 0.0)],
            [C64::new(-s, 0.0), C64::new(s, 0.0)],
        ]),
        MinusY(_) => GateMatrix::One([
            [C64::new(s, 0.0), C64::new(-s, 0.0)],
            [C64::new(s, 0.0), C64::new(s, 0.0)],
        ]),
        PhaseShift { k, .. } => diag2(ONE, phase(shift_angle(k))),
        Cnot { .. } => {
            let mut m = [[ZERO; 4]; 4];
            m[0][0] = ONE;
            m[1][1] = ONE;
            m[2][3] = ONE;
            m[3][2] = ONE;
            GateMatrix::Two(m)
        }
        CPhase { k, .. } => {
            let mut m = [[ZERO; 4]; 4];
            m[0][0] = ONE;
            m[1][1] = ONE;
            m[2][2] = ONE;
            m[3][3] = phase(shift_angle(k));
            GateMatrix::Two(m)
        }
        Toffoli { .. } => {
            let mut m = [[ZERO; 8]; 8];
            for d in 0..6 {
                m[d][d] = ONE;
            }
            m[6][7] = ONE;
            m[7][6] = ONE;
            GateMatrix::Three(m)
        }
        BeginMeasurement | GenerateEvents { .. } | Measure(_) | Clear(_) | Set(_)
        | Shorbox(_) | Exit => return Err(MatrixError::NotAGate(instr.mnemonic())),
    };
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Qubit;

    const Q: Qubit = Qubit(0);

    fn mat2(m: &GateMatrix) -> [[C64; 2]; 2] {
        match m {
            GateMatrix::One(m) => *m,
            _ => panic!("not 2x2"),
        }
    }

    fn mul2(a: [[C64; 2]; 2], b: [[C64; 2]; 2]) -> [[C64; 2]; 2] {
        let mut out = [[ZERO; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                for k in 0..2 {
                    out[r][c] += a[r][k] * b[k][c];
                }
            }
        }
        out
    }

    fn close2(a: [[C64; 2]; 2], b: [[C64; 2]; 2], tol: f64) -> bool {
        (0..2).all(|r| (0..2).all(|c| (a[r][c] - b[r][c]).norm() <= tol))
    }

    #[test]
    fn hadamard_matches_definition() {
        let h = mat2(&gate_matrix(&Instruction::Hadamard(Q)).unwrap());
        let s = FRAC_1_SQRT_2;
        assert_eq!(h[0][0], C64::new(s, 0.0));
        assert_eq!(h[0][1], C64::new(s, 0.0));
        assert_eq!(h[1][0], C64::new(s, 0.0));
        assert_eq!(h[1][1], C64::new(-s, 0.0));
    }

    #[test]
    fn u1_zero_angle_is_identity() {
        let m = mat2(&gate_matrix(&Instruction::U1(Q, 0.0)).unwrap());
        let id = mat2(&gate_matrix(&Instruction::Identity(Q)).unwrap());
        assert!(close2(m, id, 0.0));
    }

    #[test]
    fn cphase_k1_is_controlled_z() {
        // Oracle: Z ⊗ |1⟩⟨1| + I ⊗ |0⟩⟨0| acting on the target, i.e.
        // diag(1,1,1,-1) in |control,target⟩.
        let m = gate_matrix(&Instruction::CPhase { control: Qubit(0), target: Qubit(1), k: 1 })
            .unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let want = if r != c {
                    ZERO
                } else if r == 3 {
                    phase(PI)
                } else {
                    ONE
                };
                assert!((m.entry(r, c) - want).norm() < 1e-15);
            }
        }
        assert!((m.entry(3, 3) - C64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn negative_k_is_dagger() {
        let plus = gate_matrix(&Instruction::PhaseShift { qubit: Q, k: 3 }).unwrap();
        let minus = gate_matrix(&Instruction::PhaseShift { qubit: Q, k: -3 }).unwrap();
        let prod = mul2(mat2(&plus), mat2(&minus));
        let id = mat2(&gate_matrix(&Instruction::Identity(Q)).unwrap());
        assert!(close2(prod, id, 1e-15));
    }

    #[test]
    fn algebraic_identities() {
        let m = |i: Instruction| mat2(&gate_matrix(&i).unwrap());
        use Instruction::*;
        let id = m(Identity(Q));
        assert!(close2(mul2(m(Hadamard(Q)), m(Hadamard(Q))), id, 1e-15));
        assert!(close2(mul2(m(PauliX(Q)), m(PauliX(Q))), id, 0.0));
        assert!(close2(mul2(m(SGate(Q)), m(SGate(Q))), m(PauliZ(Q)), 0.0));
        assert!(close2(mul2(m(TGate(Q)), m(TGate(Q))), m(SGate(Q)), 1e-15));
        assert!(close2(mul2(m(SDag(Q)), m(SGate(Q))), id, 0.0));
        assert!(close2(mul2(m(TDag(Q)), m(TGate(Q))), id, 1e-15));
    }

    #[test]
    fn h_conjugated_cphase_pi_is_cnot() {
        // (I⊗H) · U(k=1) · (I⊗H) = CNOT in the |control,target⟩ basis.
        let u = gate_matrix(&Instruction::CPhase { control: Qubit(0), target: Qubit(1), k: 1 })
            .unwrap();
        let h = mat2(&gate_matrix(&Instruction::Hadamard(Q)).unwrap());
        let mut ih = [[ZERO; 4]; 4]; // I ⊗ H on the target bit
        for ctrl in 0..2 {
            for r in 0..2 {
                for c in 0..2 {
                    ih[2 * ctrl + r][2 * ctrl + c] = h[r][c];
                }
            }
        }
        let mut tmp = [[ZERO; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                for k in 0..4 {
                    tmp[r][c] += u.entry(r, k) * ih[k][c];
                }
            }
        }
        let mut out = [[ZERO; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                for k in 0..4 {
                    out[r][c] += ih[r][k] * tmp[k][c];
                }
            }
        }
        let cnot =
            gate_matrix(&Instruction::Cnot { control: Qubit(0), target: Qubit(1) }).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert!((out[r][c] - cnot.entry(r, c)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn every_gate_is_unitary() {
        use Instruction::*;
        let q = Qubit(0);
        let q1 = Qubit(1);
        let q2 = Qubit(2);
        let gates = vec![
            Identity(q),
            Hadamard(q),
            PauliX(q),
            PauliY(q),
            PauliZ(q),
            SGate(q),
            SDag(q),
            TGate(q),
            TDag(q),
            U1(q, 0.7),
            U2(q, 0.3, -1.1),
            U3(q, 2.2, 0.4, -0.9),
            PlusX(q),
            MinusX(q),
            PlusY(q),
            MinusY(q),
            PhaseShift { qubit: q, k: 5 },
            PhaseShift { qubit: q, k: -7 },
            Cnot { control: q, target: q1 },
            CPhase { control: q, target: q1, k: 2 },
            Toffoli { control1: q, control2: q1, target: q2 },
        ];
        for g in gates {
            let m = gate_matrix(&g).unwrap();
            assert!(
                m.unitarity_defect() <= 1e-12,
                "{} defect {}",
                g.mnemonic(),
                m.unitarity_defect()
            );
        }
    }

    #[test]
    fn directives_are_not_gates() {
        assert_eq!(
            gate_matrix(&Instruction::BeginMeasurement),
            Err(MatrixError::NotAGate("BEGIN MEASUREMENT"))
        );
        assert!(gate_matrix(&Instruction::Measure(Q)).is_err());
    }
}
