//! Engine abstraction and the instruction dispatcher shared by all
//! engines.

pub mod format;
pub mod reduce;
mod result;

pub use result::{
    EventList, InstructionTraffic, MeasuredBit, MeasurementRecord, RunDiagnostics, RunResult,
    SwapTrace, TransportStats,
};

use crate::circuit::{Circuit, Instruction, Qubit, ShorParams};
use crate::rng::{resolve_seed, Purpose, SeedConfig, SeedsUsed, Stream};
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExecError {
    #[error("cannot allocate state vector: {required_bytes} bytes required")]
    Allocation { required_bytes: u128 },
    #[error("{mnemonic} on qubit {qubit} failed: projection results in a state with amplitude zero")]
    ProjectionZero { mnemonic: &'static str, qubit: usize },
    #[error("SHORBOX requires the all-zero state: {0}")]
    ShorboxPrecondition(String),
    #[error("engine '{engine}' does not support {mnemonic}")]
    Unsupported { engine: &'static str, mnemonic: String },
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("transport failure: {0}")]
    Transport(String),
}

/// A circuit execution backend. Gate operands are logical qubits; each
/// engine maps them through its qubit assignment, and reports expectation
/// rows per physical bit position while event labels use logical order.
pub trait Engine {
    fn name(&self) -> &'static str;
    fn n_qubits(&self) -> usize;

    /// Apply one unitary gate instruction.
    fn apply_gate(&mut self, instr: &Instruction) -> Result<(), ExecError>;

    /// All 3N expectation values; does not change the state.
    fn expectations(&mut self) -> Result<MeasurementRecord, ExecError>;

    /// Probability of reading logical qubit `q` as 1.
    fn prob_one(&mut self, q: Qubit) -> Result<f64, ExecError>;

    /// Project logical qubit `q` onto `outcome` and renormalize; fails if
    /// the surviving branch has (squared) norm below 1e-14.
    fn collapse(&mut self, q: Qubit, outcome: u8, mnemonic: &'static str)
        -> Result<(), ExecError>;

    /// Prepare 2^{-n_x/2} Σ_x |x⟩|y^x mod G⟩ by direct assignment.
    fn shorbox(&mut self, params: &ShorParams) -> Result<(), ExecError>;

    /// Sample `count` basis-state labels (logical bit order) from |a(i)|².
    fn sample_events(&mut self, count: u64, stream: &mut Stream) -> Result<Vec<u64>, ExecError>;

    fn norm_sq(&mut self) -> f64;

    /// Merge engine-specific diagnostics into the run record.
    fn collect_diagnostics(&mut self, _diag: &mut RunDiagnostics) {}
}

/// Execute a circuit on an engine. Instructions run in program order;
/// `EXIT` measures all qubits and stops; `GENERATE EVENTS` samples and
/// stops. When a depolarizing channel is configured, each unitary gate
/// instruction is followed by one noise draw per qubit.
pub fn run_circuit<E: Engine + ?Sized>(
    engine: &mut E,
    circuit: &Circuit,
    seeds: SeedConfig,
) -> Result<RunResult, ExecError> {
    let n = circuit.n_qubits;
    assert_eq!(n, engine.n_qubits(), "engine sized for a different circuit");

    let mut seeds_used = SeedsUsed::default();
    let mut noise_stream = match &circuit.noise {
        Some(cfg) if cfg.is_active() => {
            let seed = resolve_seed(cfg.seed, seeds.master);
            seeds_used.noise = Some(seed);
            Some((Stream::new(seed, Purpose::Noise), *cfg))
        }
        _ => None,
    };
    let mut measure_stream: Option<Stream> = None;

    let mut records = Vec::new();
    let mut measurements = Vec::new();
    let mut events = None;
    let mut diag = RunDiagnostics::default();

    for instr in &circuit.instructions {
        match instr {
            gate if gate.is_unitary_gate() => {
                let t0 = Instant::now();
                engine.apply_gate(gate)?;
                diag.gate_seconds += t0.elapsed().as_secs_f64();
                diag.gates_applied += 1;
                if let Some((stream, cfg)) = &mut noise_stream {
                    for q in 0..n {
                        let u = stream.uniform();
                        let error = if u < cfg.p_x {
                            Some(Instruction::PauliX(Qubit(q)))
                        } else if u < cfg.p_x + cfg.p_y {
                            Some(Instruction::PauliY(Qubit(q)))
                        } else if u < cfg.p_x + cfg.p_y + cfg.p_z {
                            Some(Instruction::PauliZ(Qubit(q)))
                        } else {
                            None
                        };
                        if let Some(error) = error {
                            let t0 = Instant::now();
                            engine.apply_gate(&error)?;
                            diag.gate_seconds += t0.elapsed().as_secs_f64();
                            diag.gates_applied += 1;
                        }
                    }
                }
            }
            Instruction::BeginMeasurement => records.push(engine.expectations()?),
            Instruction::Measure(q) => {
                let stream = measure_stream.get_or_insert_with(|| {
                    let seed = resolve_seed(0, seeds.master);
                    seeds_used.measure = Some(seed);
                    Stream::new(seed, Purpose::Measure)
                });
                let p1 = engine.prob_one(*q)?;
                let outcome = u8::from(stream.uniform() >= 1.0 - p1);
                engine.collapse(*q, outcome, "M")?;
                measurements.push(MeasuredBit { qubit: q.0, outcome });
            }
            Instruction::Clear(q) => engine.collapse(*q, 0, "CLEAR")?,
            Instruction::Set(q) => engine.collapse(*q, 1, "SET")?,
            Instruction::Shorbox(params) => engine.shorbox(params)?,
            Instruction::GenerateEvents { count, seed } => {
                let seed = resolve_seed(*seed, seeds.master);
                seeds_used.events = Some(seed);
                let mut stream = Stream::new(seed, Purpose::Events);
                let sampled = engine.sample_events(*count, &mut stream)?;
                events = Some(EventList { seed, events: sampled });
                break;
            }
            Instruction::Exit => {
                records.push(engine.expectations()?);
                break;
            }
            other => {
                return Err(ExecError::Unsupported {
                    engine: engine.name(),
                    mnemonic: other.mnemonic().to_string(),
                })
            }
        }
    }

    engine.collect_diagnostics(&mut diag);
    Ok(RunResult {
        engine: engine.name().to_string(),
        n_qubits: n,
        records,
        measurements,
        events,
        seeds: seeds_used,
        diagnostics: diag,
    })
}
