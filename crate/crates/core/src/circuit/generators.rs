//! Built-in circuit generators: Hadamard wall, GHZ chain, quantum Fourier
//! transform, transform-based adder, and the order-finding circuit.

use super::{BitPermutation, Circuit, Instruction, Qubit, ShorParams};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("qubit count {0} outside supported range 2..=63")]
    BadQubitCount(usize),
    #[error("duplicate target qubits in transform")]
    DuplicateTargets,
    #[error("empty target list")]
    EmptyTargets,
    #[error("register overflow: {0}")]
    RegisterOverflow(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

fn check_n(n: usize) -> Result<(), GenError> {
    if !(2..=63).contains(&n) {
        return Err(GenError::BadQubitCount(n));
    }
    Ok(())
}

/// A Hadamard on each of the `n` qubits, followed by a measurement of all
/// expectation values. Produces the uniform superposition.
pub fn gen_hadamard_wall(n: usize) -> Result<Circuit, GenError> {
    check_n(n)?;
    let mut c = Circuit::new(n);
    for j in 0..n {
        c.instructions.push(Instruction::Hadamard(Qubit(j)));
    }
    c.instructions.push(Instruction::BeginMeasurement);
    Ok(c)
}

/// (H 0), (CNOT 0 1), …, (CNOT n-2 n-1): puts the machine in the maximally
/// entangled state (|0…0⟩ + |1…1⟩)/√2.
pub fn gen_ghz_chain(n: usize) -> Result<Circuit, GenError> {
    check_n(n)?;
    let mut c = Circuit::new(n);
    c.instructions.push(Instruction::Hadamard(Qubit(0)));
    for j in 0..n - 1 {
        c.instructions.push(Instruction::Cnot { control: Qubit(j), target: Qubit(j + 1) });
    }
    c.instructions.push(Instruction::BeginMeasurement);
    Ok(c)
}

fn swap_network(a: Qubit, b: Qubit) -> [Instruction; 3] {
    [
        Instruction::Cnot { control: a, target: b },
        Instruction::Cnot { control: b, target: a },
        Instruction::Cnot { control: a, target: b },
    ]
}

/// Quantum Fourier transform fragment on the given wires.
///
/// `targets[m]` is the wire carrying bit m (significance order); the
/// output index is delivered in the same significance order, i.e. the
/// final qubit-order reversal is part of the fragment, realized as swap
/// networks of 3 CNOTs each since the instruction set has no SWAP.
/// With `inverse` set, the adjoint transform is produced.
pub fn gen_qft(targets: &[Qubit], inverse: bool) -> Result<Vec<Instruction>, GenError> {
    if targets.is_empty() {
        return Err(GenError::EmptyTargets);
    }
    for a in 0..targets.len() {
        for b in a + 1..targets.len() {
            if targets[a] == targets[b] {
                return Err(GenError::DuplicateTargets);
            }
        }
    }
    let n = targets.len();
    let mut out = Vec::new();
    for j in (0..n).rev() {
        out.push(Instruction::Hadamard(targets[j]));
        for i in (0..j).rev() {
            out.push(Instruction::CPhase {
                control: targets[i],
                target: targets[j],
                k: (j - i + 1) as i32,
            });
        }
    }
    for i in 0..n / 2 {
        out.extend(swap_network(targets[i], targets[n - 1 - i]));
    }
    if inverse {
        out.reverse();
        for instr in &mut out {
            match instr {
                Instruction::CPhase { k, .. } => *k = -*k,
                Instruction::Hadamard(_) | Instruction::Cnot { .. } => {}
                _ => unreachable!(),
            }
        }
    }
    Ok(out)
}

/// Transform adder on 2·`k_bits` qubits, computing (a+b) mod 2^k.
///
/// Register 1 (the accumulator) is loaded with `a` and transformed;
/// controlled phases conditioned on register 2 (loaded with `b`) add `b`
/// in the transform basis; the inverse transform brings the sum back.
/// A qubit renumbering interchanges the two registers so that the sum is
/// reported in qubits 0..k-1, bit m of the sum at qubit m; it also keeps
/// the transform-heavy register on low bit positions, which reduces
/// inter-rank traffic under distributed execution.
pub fn gen_adder(k_bits: usize, a: u64, b: u64) -> Result<Circuit, GenError> {
    if k_bits == 0 || 2 * k_bits > 63 {
        return Err(GenError::BadParams(format!("k_bits = {k_bits} outside 1..=31")));
    }
    let n = 2 * k_bits;
    for (name, v) in [("a", a), ("b", b)] {
        if v >> k_bits != 0 {
            return Err(GenError::RegisterOverflow(format!(
                "{name} = {v} does not fit in {k_bits} bits"
            )));
        }
    }
    // Accumulator bit m on logical qubit 2k-1-m, control bit i on logical
    // qubit i; the reversal below maps accumulator bit m to physical bit m.
    let acc: Vec<Qubit> = (0..k_bits).map(|m| Qubit(n - 1 - m)).collect();
    let ctl: Vec<Qubit> = (0..k_bits).map(Qubit).collect();

    let mut c = Circuit::new(n);
    c.bit_assignment = BitPermutation::new((0..n).rev().collect()).expect("reversal");

    for i in 0..k_bits {
        if (b >> i) & 1 == 1 {
            c.instructions.push(Instruction::PauliX(ctl[i]));
        }
    }
    for m in 0..k_bits {
        if (a >> m) & 1 == 1 {
            c.instructions.push(Instruction::PauliX(acc[m]));
        }
    }
    c.instructions.extend(gen_qft(&acc, false)?);
    // Phase on accumulator wire m: e^{2πi b / 2^{k-m}}, built from b's bits.
    for m in 0..k_bits {
        for i in 0..k_bits - m {
            c.instructions.push(Instruction::CPhase {
                control: ctl[i],
                target: acc[m],
                k: (k_bits - m - i) as i32,
            });
        }
    }
    c.instructions.extend(gen_qft(&acc, true)?);
    c.instructions.push(Instruction::BeginMeasurement);
    Ok(c)
}

/// Order-finding circuit: SHORBOX preparation, Fourier transform of the
/// x-register (qubits 0..n_x-1), measurement, and event generation for
/// the classical period extraction.
pub fn gen_shor(n: usize, params: ShorParams) -> Result<Circuit, GenError> {
    check_n(n)?;
    params.check().map_err(GenError::BadParams)?;
    if params.n_x >= n {
        return Err(GenError::BadParams(format!(
            "n_x = {} must be smaller than N = {n}",
            params.n_x
        )));
    }
    let f_bits = n - params.n_x;
    if f_bits < params.f_register_bits_needed() {
        return Err(GenError::RegisterOverflow(format!(
            "f-register ({f_bits} qubits) cannot hold residues mod {}",
            params.g
        )));
    }
    let mut c = Circuit::new(n);
    c.instructions.push(Instruction::Shorbox(params));
    let x_reg: Vec<Qubit> = (0..params.n_x).map(Qubit).collect();
    c.instructions.extend(gen_qft(&x_reg, false)?);
    c.instructions.push(Instruction::BeginMeasurement);
    c.instructions.push(Instruction::GenerateEvents { count: 64, seed: 0 });
    Ok(c)
}
