//! Scaling harness: per-gate elapsed time for the generator circuits
//! across qubit counts, engines and rank counts, normalized to the
//! smallest qubit count of each series, with the distributed engine's
//! communication volume alongside. Emits CSV and JSON; no plotting.

use crate::{build_engine, EngineKind};
use qusim_core::circuit::{gen_ghz_chain, gen_hadamard_wall, Circuit};
use qusim_core::exec::run_circuit;
use qusim_core::rng::SeedConfig;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BenchCircuit {
    HadamardWall,
    GhzChain,
}

impl BenchCircuit {
    pub fn name(self) -> &'static str {
        match self {
            BenchCircuit::HadamardWall => "hwall",
            BenchCircuit::GhzChain => "ghz",
        }
    }

    fn generate(self, n: usize) -> Circuit {
        match self {
            BenchCircuit::HadamardWall => gen_hadamard_wall(n).expect("bench size"),
            BenchCircuit::GhzChain => gen_ghz_chain(n).expect("bench size"),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchPoint {
    pub engine: String,
    pub circuit: String,
    pub n_qubits: usize,
    pub ranks: usize,
    pub gates: u64,
    pub elapsed_seconds: f64,
    pub per_gate_seconds: f64,
    /// per_gate_seconds divided by the series value at the base N.
    pub normalized: f64,
    pub transport_bytes: u64,
    /// Per-rank amplitude updates performed locally (distributed runs).
    pub per_rank_local_updates: Vec<u64>,
    pub status: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct BenchReport {
    pub points: Vec<BenchPoint>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "engine,circuit,n_qubits,ranks,gates,elapsed_seconds,per_gate_seconds,normalized,transport_bytes,status\n",
        );
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{},{:.9},{:.9},{:.6},{},{}\n",
                p.engine,
                p.circuit,
                p.n_qubits,
                p.ranks,
                p.gates,
                p.elapsed_seconds,
                p.per_gate_seconds,
                p.normalized,
                p.transport_bytes,
                p.status
            ));
        }
        out
    }
}

/// Free memory in bytes, best effort (/proc/meminfo MemAvailable).
pub fn available_memory_bytes() -> Option<u64> {
    let text = std::fs::read_to_string("/proc/meminfo").ok()?;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("MemAvailable:") {
            let kb: u64 = rest.trim().trim_end_matches("kB").trim().parse().ok()?;
            return Some(kb * 1024);
        }
    }
    None
}

fn state_bytes(kind: EngineKind, n: usize) -> u128 {
    match kind {
        EngineKind::Encoded => 1u128 << (n + 1),
        // exact and dist slices total the same 2^{N+4}
        _ => 1u128 << (n + 4),
    }
}

/// Run one benchmark point; out-of-memory is reported in the row, not
/// fatal to the sweep.
fn run_point(kind: EngineKind, circuit: BenchCircuit, n: usize, ranks: usize) -> BenchPoint {
    let mut point = BenchPoint {
        engine: kind.name().to_string(),
        circuit: circuit.name().to_string(),
        n_qubits: n,
        ranks,
        gates: 0,
        elapsed_seconds: 0.0,
        per_gate_seconds: 0.0,
        normalized: 0.0,
        transport_bytes: 0,
        per_rank_local_updates: Vec::new(),
        status: "ok".into(),
    };
    let needed = state_bytes(kind, n) + state_bytes(kind, n) / 4;
    if let Some(avail) = available_memory_bytes() {
        if needed > avail as u128 {
            point.status = format!("skipped: needs {needed} bytes");
            return point;
        }
    }
    let c = circuit.generate(n);
    let result = (|| {
        let mut engine = build_engine(&c, kind, ranks)?;
        run_circuit(engine.as_mut(), &c, SeedConfig { master: Some(1) })
    })();
    match result {
        Ok(r) => {
            point.gates = r.diagnostics.gates_applied;
            point.elapsed_seconds = r.diagnostics.gate_seconds;
            point.per_gate_seconds =
                r.diagnostics.gate_seconds / r.diagnostics.gates_applied.max(1) as f64;
            if let Some(t) = &r.diagnostics.transport {
                point.transport_bytes = t.total_bytes_sent;
                point.per_rank_local_updates = t.per_rank_local_updates.clone();
            }
        }
        Err(e) => point.status = format!("failed: {e}"),
    }
    point
}

/// The sweep: every (engine, circuit, ranks, N) combination, normalized
/// per series so the base N sits at 1.0.
pub fn bench_scaling(
    engines: &[EngineKind],
    circuits: &[BenchCircuit],
    n_range: std::ops::RangeInclusive<usize>,
    ranks_list: &[usize],
) -> BenchReport {
    let mut report = BenchReport::default();
    for &kind in engines {
        for &circuit in circuits {
            for &ranks in ranks_list {
                if ranks > 1 && kind != EngineKind::Dist {
                    continue;
                }
                let mut base: Option<f64> = None;
                for n in n_range.clone() {
                    if ranks >= 1 << n {
                        continue;
                    }
                    let mut point = run_point(kind, circuit, n, ranks);
                    if point.status == "ok" {
                        let b = *base.get_or_insert(point.per_gate_seconds);
                        point.normalized = point.per_gate_seconds / b;
                    }
                    report.points.push(point);
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_produces_normalized_series() {
        let report = bench_scaling(
            &[EngineKind::Exact],
            &[BenchCircuit::HadamardWall],
            8..=10,
            &[1],
        );
        assert_eq!(report.points.len(), 3);
        assert_eq!(report.points[0].normalized, 1.0);
        for p in &report.points {
            assert_eq!(p.status, "ok");
            assert!(p.per_gate_seconds > 0.0);
        }
        let csv = report.to_csv();
        assert!(csv.starts_with("engine,circuit,n_qubits"));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn distributed_rows_carry_traffic() {
        let report = bench_scaling(
            &[EngineKind::Dist],
            &[BenchCircuit::GhzChain],
            8..=8,
            &[2, 4],
        );
        assert_eq!(report.points.len(), 2);
        for p in &report.points {
            assert_eq!(p.status, "ok");
            assert_eq!(p.per_rank_local_updates.len(), p.ranks);
        }
    }
}
