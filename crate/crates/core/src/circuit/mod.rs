//! Circuit representation: instruction set, parsing, validation,
//! gate matrices, pretty-printing and circuit generators.

mod generators;
pub(crate) mod matrices;
mod parse;
mod pretty;
mod validate;

pub use generators::{gen_adder, gen_ghz_chain, gen_hadamard_wall, gen_qft, gen_shor};
pub use matrices::{gate_matrix, GateMatrix, MatrixError};
pub use parse::{parse_program, ParseError};
pub use pretty::pretty_print;
pub use validate::{validate, Severity, ValidationIssue, ValidationReport};

use serde::{Deserialize, Serialize};

/// Index of a qubit; qubit 0 is the rightmost bit of a basis-state label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Qubit(pub usize);

impl std::fmt::Display for Qubit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// A single executable statement of the instruction language.
///
/// `QUBITS`, `BIT ASSIGNMENT` and `DEPOLARIZING CHANNEL` are configuration
/// statements and live on [`Circuit`] directly; everything else is an
/// `Instruction` in program order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Instruction {
    /// `I n` — no operation.
    Identity(Qubit),
    /// `H n` — Hadamard.
    Hadamard(Qubit),
    /// `X n` — bit flip.
    PauliX(Qubit),
    /// `Y n` — bit and phase flip.
    PauliY(Qubit),
    /// `Z n` — phase flip.
    PauliZ(Qubit),
    /// `S n` — phase gate diag(1, i).
    SGate(Qubit),
    /// `S+ n` — inverse phase gate diag(1, -i).
    SDag(Qubit),
    /// `T n` — diag(1, e^{iπ/4}).
    TGate(Qubit),
    /// `T+ n` — diag(1, e^{-iπ/4}).
    TDag(Qubit),
    /// `U1 n λ` — diag(1, e^{iλ}).
    U1(Qubit, f64),
    /// `U2 n φ λ`.
    U2(Qubit, f64, f64),
    /// `U3 n θ φ λ`.
    U3(Qubit, f64, f64, f64),
    /// `+X n` — rotation by -π/2 about the x axis.
    PlusX(Qubit),
    /// `-X n` — rotation by +π/2 about the x axis.
    MinusX(Qubit),
    /// `+Y n` — rotation by -π/2 about the y axis.
    PlusY(Qubit),
    /// `-Y n` — rotation by +π/2 about the y axis.
    MinusY(Qubit),
    /// `R n k` — phase shift by 2π/2^k; negative k selects the dagger form.
    PhaseShift { qubit: Qubit, k: i32 },
    /// `CNOT control target`.
    Cnot { control: Qubit, target: Qubit },
    /// `U control target k` — controlled phase shift by 2π/2^k
    /// (negative k selects the dagger form).
    CPhase { control: Qubit, target: Qubit, k: i32 },
    /// `TOFFOLI c1 c2 target`.
    Toffoli { control1: Qubit, control2: Qubit, target: Qubit },
    /// `BEGIN MEASUREMENT` — print expectation values of all qubits,
    /// without changing the state.
    BeginMeasurement,
    /// `GENERATE EVENTS events seed` — sample basis states from the final
    /// distribution and terminate the run.
    GenerateEvents { count: u64, seed: i64 },
    /// `M n` — projective measurement of one qubit.
    Measure(Qubit),
    /// `CLEAR n` — project qubit n onto |0⟩.
    Clear(Qubit),
    /// `SET n` — project qubit n onto |1⟩.
    Set(Qubit),
    /// `SHORBOX n_x G y` — prepare 2^{-n_x/2} Σ_x |x⟩|y^x mod G⟩ directly.
    Shorbox(ShorParams),
    /// `EXIT` — measure all qubits and terminate.
    Exit,
}

impl Instruction {
    /// Qubit operands in mnemonic order.
    pub fn qubits(&self) -> Vec<Qubit> {
        use Instruction::*;
        match *self {
            Identity(q) | Hadamard(q) | PauliX(q) | PauliY(q) | PauliZ(q) | SGate(q)
            | SDag(q) | TGate(q) | TDag(q) | U1(q, _) | U2(q, _, _) | U3(q, _, _, _)
            | PlusX(q) | MinusX(q) | PlusY(q) | MinusY(q) | Measure(q) | Clear(q) | Set(q) => {
                vec![q]
            }
            PhaseShift { qubit, .. } => vec![qubit],
            Cnot { control, target } | CPhase { control, target, .. } => vec![control, target],
            Toffoli { control1, control2, target } => vec![control1, control2, target],
            BeginMeasurement | GenerateEvents { .. } | Shorbox(_) | Exit => vec![],
        }
    }

    /// True for instructions that apply a unitary gate to the state.
    pub fn is_unitary_gate(&self) -> bool {
        use Instruction::*;
        !matches!(
            self,
            BeginMeasurement | GenerateEvents { .. } | Measure(_) | Clear(_) | Set(_)
                | Shorbox(_) | Exit
        )
    }

    /// True for instructions that end the run (`EXIT`, `GENERATE EVENTS`).
    pub fn is_terminal(&self) -> bool {
        matches!(self, Instruction::Exit | Instruction::GenerateEvents { .. })
    }

    /// Canonical mnemonic, as written in a program line.
    pub fn mnemonic(&self) -> &'static str {
        use Instruction::*;
        match self {
            Identity(_) => "I",
            Hadamard(_) => "H",
            PauliX(_) => "X",
            PauliY(_) => "Y",
            PauliZ(_) => "Z",
            SGate(_) => "S",
            SDag(_) => "S+",
            TGate(_) => "T",
            TDag(_) => "T+",
            U1(..) => "U1",
            U2(..) => "U2",
            U3(..) => "U3",
            PlusX(_) => "+X",
            MinusX(_) => "-X",
            PlusY(_) => "+Y",
            MinusY(_) => "-Y",
            PhaseShift { .. } => "R",
            Cnot { .. } => "CNOT",
            CPhase { .. } => "U",
            Toffoli { .. } => "TOFFOLI",
            BeginMeasurement => "BEGIN MEASUREMENT",
            GenerateEvents { .. } => "GENERATE EVENTS",
            Measure(_) => "M",
            Clear(_) => "CLEAR",
            Set(_) => "SET",
            Shorbox(_) => "SHORBOX",
            Exit => "EXIT",
        }
    }
}

/// A bijection on qubit indices; `perm[q]` is the physical bit position
/// assigned to logical qubit `q`. Identity unless the program carries a
/// `BIT ASSIGNMENT` statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitPermutation {
    perm: Vec<usize>,
}

impl BitPermutation {
    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect() }
    }

    /// Build from an explicit image list; fails unless it is a bijection
    /// on {0, …, n-1}.
    pub fn new(perm: Vec<usize>) -> Result<Self, String> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n {
                return Err(format!("entry {p} out of range 0..{n}"));
            }
            if seen[p] {
                return Err(format!("entry {p} repeated"));
            }
            seen[p] = true;
        }
        Ok(Self { perm })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Physical bit position of logical qubit `q`.
    pub fn position_of(&self, q: Qubit) -> usize {
        self.perm[q.0]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Self { perm: inv }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.perm.len(), other.perm.len());
        Self { perm: other.perm.iter().map(|&p| self.perm[p]).collect() }
    }

    /// Scatter the bits of `index` (bit q of `index` becomes bit `perm[q]`).
    pub fn scatter_bits(&self, index: u64) -> u64 {
        let mut out = 0u64;
        for (q, &p) in self.perm.iter().enumerate() {
            out |= ((index >> q) & 1) << p;
        }
        out
    }

    /// Inverse of [`Self::scatter_bits`]: bit `perm[q]` of `index` becomes bit q.
    pub fn gather_bits(&self, index: u64) -> u64 {
        let mut out = 0u64;
        for (q, &p) in self.perm.iter().enumerate() {
            out |= ((index >> p) & 1) << q;
        }
        out
    }
}

/// Depolarizing-channel configuration: after each gate instruction an X, Y
/// or Z error is inserted on each qubit with the given probabilities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    pub p_x: f64,
    pub p_y: f64,
    pub p_z: f64,
    pub seed: i64,
}

impl NoiseConfig {
    pub fn is_active(&self) -> bool {
        self.p_x + self.p_y + self.p_z > 0.0
    }
}

/// Parameters of the `SHORBOX` preparation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShorParams {
    /// Number of qubits of the x-register (qubits 0 .. n_x-1).
    pub n_x: usize,
    /// Composite integer to factor.
    pub g: u64,
    /// Base, 1 < y < G, coprime to G.
    pub y: u64,
}

impl ShorParams {
    /// Check the arithmetic constraints (coprimality, ranges). Register
    /// width checks against a concrete N are done by `validate`.
    pub fn check(&self) -> Result<(), String> {
        if self.g < 2 {
            return Err(format!("G = {} must be at least 2", self.g));
        }
        if self.g >= 1 << 32 {
            return Err(format!("G = {} too large; G < 2^32 required", self.g));
        }
        if self.y <= 1 || self.y >= self.g {
            return Err(format!("y = {} must satisfy 1 < y < G = {}", self.y, self.g));
        }
        let d = gcd(self.y, self.g);
        if d != 1 {
            return Err(format!("y = {} and G = {} share the factor {}", self.y, self.g, d));
        }
        Ok(())
    }

    /// Qubits needed by the f-register to hold values 0..G-1.
    pub fn f_register_bits_needed(&self) -> usize {
        let mut bits = 0;
        while (1u64 << bits) < self.g {
            bits += 1;
        }
        bits
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Positions of configuration statements relative to the first gate; kept
/// so `validate` can flag ordering violations without the parser rejecting
/// the program outright.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingFlags {
    pub bit_assignment_after_gate: bool,
    pub noise_after_gate: bool,
}

/// A parsed program: qubit count, instruction list and the configuration
/// statements. Immutable after parsing and freely shareable across threads.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub n_qubits: usize,
    pub instructions: Vec<Instruction>,
    pub bit_assignment: BitPermutation,
    pub noise: Option<NoiseConfig>,
    pub ordering: OrderingFlags,
}

impl Circuit {
    /// An empty circuit on `n` qubits with identity bit assignment.
    pub fn new(n: usize) -> Self {
        Self {
            n_qubits: n,
            instructions: Vec::new(),
            bit_assignment: BitPermutation::identity(n),
            noise: None,
            ordering: OrderingFlags::default(),
        }
    }

    /// First SHORBOX instruction, if any.
    pub fn shor_params(&self) -> Option<&ShorParams> {
        self.instructions.iter().find_map(|i| match i {
            Instruction::Shorbox(p) => Some(p),
            _ => None,
        })
    }

    /// Number of unitary gate instructions.
    pub fn gate_count(&self) -> usize {
        self.instructions.iter().filter(|i| i.is_unitary_gate()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_round_trip() {
        let p = BitPermutation::new(vec![2, 3, 1, 0]).unwrap();
        assert_eq!(p.position_of(Qubit(0)), 2);
        let inv = p.inverse();
        assert!(p.compose(&inv).is_identity());
        assert!(inv.compose(&p).is_identity());
        for i in 0..16u64 {
            assert_eq!(p.gather_bits(p.scatter_bits(i)), i);
        }
    }

    #[test]
    fn permutation_rejects_non_bijections() {
        assert!(BitPermutation::new(vec![0, 0, 1]).is_err());
        assert!(BitPermutation::new(vec![0, 3]).is_err());
    }

    #[test]
    fn shor_params_constraints() {
        assert!(ShorParams { n_x: 8, g: 15, y: 7 }.check().is_ok());
        assert!(ShorParams { n_x: 8, g: 15, y: 5 }.check().is_err()); // gcd 5
        assert!(ShorParams { n_x: 8, g: 15, y: 1 }.check().is_err());
        assert_eq!(ShorParams { n_x: 20, g: 1007, y: 529 }.f_register_bits_needed(), 10);
        assert_eq!(ShorParams { n_x: 8, g: 16, y: 3 }.f_register_bits_needed(), 4);
    }
}
