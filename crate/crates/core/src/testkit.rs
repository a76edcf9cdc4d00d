//! Test support: a dense matrix-multiplication oracle independent of the
//! gate kernels, and seeded random-circuit generation. Not part of the
//! public API surface.

use crate::circuit::{gate_matrix, BitPermutation, Circuit, Instruction, Qubit};
use crate::rng::{Purpose, Stream};
use crate::C64;

/// Apply one gate instruction to a full 2^N vector by building the dense
/// 2^N x 2^N operator from Kronecker-product reasoning: for every basis
/// index, the operator matrix element is the gate entry selected by the
/// operand bits, diagonal elsewhere. Brute force, O(4^N) — for N ≤ 6.
pub fn dense_apply(
    n: usize,
    amps: &[C64],
    instr: &Instruction,
    assignment: &BitPermutation,
) -> Vec<C64> {
    let m = gate_matrix(instr).expect("gate instruction");
    let positions: Vec<usize> =
        instr.qubits().iter().map(|&q| assignment.position_of(q)).collect();
    let dim = 1usize << n;
    let mut out = vec![C64::new(0.0, 0.0); dim];
    let sub = |idx: usize| -> usize {
        // Matrix index: positions[0] is the most significant matrix bit.
        positions
            .iter()
            .fold(0, |acc, &p| (acc << 1) | ((idx >> p) & 1))
    };
    let free_mask: usize = !positions.iter().map(|&p| 1usize << p).sum::<usize>();
    for row in 0..dim {
        let r = sub(row);
        let mut acc = C64::new(0.0, 0.0);
        for col in 0..dim {
            if (row & free_mask) != (col & free_mask) {
                continue;
            }
            let e = m.entry(r, sub(col));
            acc += e * amps[col];
        }
        out[row] = acc;
    }
    out
}

/// Run a circuit's unitary gates through the dense oracle, starting from
/// |0…0⟩. Directives other than gates are ignored.
pub fn dense_run(circuit: &Circuit) -> Vec<C64> {
    let dim = 1usize << circuit.n_qubits;
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    amps[0] = C64::new(1.0, 0.0);
    for instr in &circuit.instructions {
        if instr.is_unitary_gate() {
            amps = dense_apply(circuit.n_qubits, &amps, instr, &circuit.bit_assignment);
        }
    }
    amps
}

/// Gate families for random-circuit generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GatePool {
    /// Single-qubit gates, CNOT and U(k): everything the path-sum engine
    /// supports.
    PathSum,
    /// The full unitary gate set including TOFFOLI.
    Full,
}

/// A seeded random circuit with `gates` unitary gate instructions.
pub fn random_circuit(seed: u64, n: usize, gates: usize, pool: GatePool) -> Circuit {
    let mut s = Stream::new(seed, Purpose::Events);
    let mut c = Circuit::new(n);
    let mut pick = |m: usize| -> usize { (s.uniform() * m as f64) as usize % m };
    for _ in 0..gates {
        let q = Qubit(pick(n));
        let mut q2 = Qubit(pick(n));
        while q2 == q {
            q2 = Qubit(pick(n));
        }
        let angle = (pick(6283) as f64) / 1000.0 - 3.141;
        let kinds = match pool {
            GatePool::PathSum => 15,
            GatePool::Full if n >= 3 => 16,
            GatePool::Full => 15,
        };
        let instr = match pick(kinds) {
            0 => Instruction::Hadamard(q),
            1 => Instruction::PauliX(q),
            2 => Instruction::PauliY(q),
            3 => Instruction::PauliZ(q),
            4 => Instruction::SGate(q),
            5 => Instruction::TGate(q),
            6 => Instruction::SDag(q),
            7 => Instruction::TDag(q),
            8 => Instruction::U1(q, angle),
            9 => Instruction::PlusX(q),
            10 => Instruction::MinusY(q),
            11 => Instruction::PhaseShift { qubit: q, k: 1 + pick(6) as i32 },
            12 => Instruction::Cnot { control: q, target: q2 },
            13 => Instruction::CPhase {
                control: q,
                target: q2,
                k: (1 + pick(6) as i32) * if pick(2) == 0 { 1 } else { -1 },
            },
            14 => Instruction::U3(q, angle, angle * 0.7, -angle * 0.3),
            _ => {
                let mut q3 = Qubit(pick(n));
                while q3 == q || q3 == q2 {
                    q3 = Qubit(pick(n));
                }
                Instruction::Toffoli { control1: q, control2: q2, target: q3 }
            }
        };
        c.instructions.push(instr);
    }
    c
}

/// Count entangling factors (CNOT + controlled phase) of a circuit.
pub fn entangling_count(c: &Circuit) -> usize {
    c.instructions
        .iter()
        .filter(|i| matches!(i, Instruction::Cnot { .. } | Instruction::CPhase { .. }))
        .count()
}

/// Largest per-amplitude deviation between two state vectors.
pub fn max_amp_diff(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Brute-force multiplicative order of y mod g (smallest r with y^r ≡ 1).
pub fn multiplicative_order(y: u64, g: u64) -> u64 {
    assert!(g > 1 && crate::circuit::gcd(y, g) == 1);
    let mut v = y % g;
    let mut r = 1;
    while v != 1 {
        v = (v as u128 * y as u128 % g as u128) as u64;
        r += 1;
    }
    r
}

/// Closed-form ⟨Qz⟩ profile of the x-register after SHORBOX followed by
/// the Fourier transform of the x-register: the transform of each residue
/// class of f(x) = y^x mod G is a geometric sum, evaluated directly.
/// Independent of every gate kernel.
pub fn shor_xregister_qz(n_x: usize, g: u64, y: u64) -> Vec<f64> {
    let m = 1u64 << n_x;
    let r = multiplicative_order(y, g);
    let mut qz = vec![0.0f64; n_x];
    let tau = 2.0 * std::f64::consts::PI / m as f64;
    for c in 0..m {
        let mut p_c = 0.0;
        for j in 0..r {
            // T_j = #{x < M : x ≡ j mod r}
            let t_j = (m - j + r - 1) / r;
            let rc = (r as u128 * c as u128 % m as u128) as u64;
            let mag_sq = if rc == 0 {
                (t_j * t_j) as f64
            } else {
                // |Σ_{t<T} e^{iθt}|² = sin²(Tθ/2)/sin²(θ/2), θ = 2π·rc/M
                let theta = tau * rc as f64;
                let num = (theta * t_j as f64 / 2.0).sin();
                let den = (theta / 2.0).sin();
                (num / den).powi(2)
            };
            p_c += mag_sq;
        }
        p_c /= (m as f64) * (m as f64);
        for (bit, q) in qz.iter_mut().enumerate() {
            if (c >> bit) & 1 == 1 {
                *q += p_c;
            }
        }
    }
    qz
}
