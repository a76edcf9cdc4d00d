//! Run outputs: expectation-value records, event lists, diagnostics.

use crate::rng::SeedsUsed;
use serde::{Deserialize, Serialize};

/// Expectation values ⟨Qx⟩, ⟨Qy⟩, ⟨Qz⟩ = ⟨Ψ|(1−σ)|Ψ⟩/2 for every qubit,
/// one row per reported qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    /// `values[q] = [⟨Qx⟩, ⟨Qy⟩, ⟨Qz⟩]`.
    pub values: Vec<[f64; 3]>,
}

impl MeasurementRecord {
    pub fn n_qubits(&self) -> usize {
        self.values.len()
    }

    /// Largest absolute difference against another record.
    pub fn max_deviation(&self, other: &MeasurementRecord) -> f64 {
        assert_eq!(self.values.len(), other.values.len());
        let mut worst = 0.0f64;
        for (a, b) in self.values.iter().zip(&other.values) {
            for c in 0..3 {
                worst = worst.max((a[c] - b[c]).abs());
            }
        }
        worst
    }
}

/// Basis-state labels sampled from |a(i)|², plus the seed that produced
/// them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventList {
    pub seed: u64,
    pub events: Vec<u64>,
}

/// Outcome of a projective `M` instruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasuredBit {
    pub qubit: usize,
    pub outcome: u8,
}

/// One inter-rank qubit swap performed by the distributed engine.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwapTrace {
    /// Physical bit position ≥ N_l that was localized.
    pub global_position: usize,
    /// Local bit position it was exchanged with.
    pub local_position: usize,
    /// Amplitudes sent by each participating rank (K_l / 2).
    pub amplitudes_sent_per_rank: u64,
}

/// Transport traffic attributed to one instruction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstructionTraffic {
    pub instruction: usize,
    pub mnemonic: String,
    pub bytes_sent: u64,
    pub swaps: Vec<SwapTrace>,
}

/// Distributed-execution diagnostics: communication volume and balance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TransportStats {
    pub ranks: usize,
    pub total_bytes_sent: u64,
    pub per_instruction: Vec<InstructionTraffic>,
    /// Amplitude updates performed locally by each rank.
    pub per_rank_local_updates: Vec<u64>,
    /// Wall time each rank spent in local gate kernels; excluded from
    /// serialization, like all wall-clock diagnostics.
    #[serde(skip)]
    pub per_rank_local_seconds: Vec<f64>,
    /// Traffic spent localizing CNOT/TOFFOLI operands; a gate-aware
    /// dispatch could have avoided these bytes entirely.
    pub permutation_gate_bytes: u64,
}

/// Engine-specific run diagnostics.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunDiagnostics {
    /// Unitary gate instructions executed (noise insertions included).
    pub gates_applied: u64,
    /// Wall time spent inside gate application; excluded from the JSON
    /// document so that identical (circuit, seed) runs serialize to
    /// identical bytes.
    #[serde(skip)]
    pub gate_seconds: f64,
    /// History of the (r0, r1) magnitude bounds of the byte-encoded
    /// engine, one entry per adjustment.
    pub bounds_history: Vec<(f64, f64)>,
    pub transport: Option<TransportStats>,
}

/// Everything a run produces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub engine: String,
    pub n_qubits: usize,
    /// One record per BEGIN MEASUREMENT (and one for EXIT, which measures
    /// all qubits before terminating).
    pub records: Vec<MeasurementRecord>,
    pub measurements: Vec<MeasuredBit>,
    pub events: Option<EventList>,
    pub seeds: SeedsUsed,
    pub diagnostics: RunDiagnostics,
}

impl RunResult {
    /// Machine-readable document with full-precision values.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("run result serializes")
    }
}
