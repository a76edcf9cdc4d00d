//! Text output in the tabular layout: one line per qubit, three decimal
//! places, locale-independent.

use super::result::{EventList, MeasurementRecord, RunResult};

/// Format with exactly `decimals` digits, rounding half away from zero
/// (`{:.3}` would round half to even).
pub fn round_half_away(value: f64, decimals: u32) -> String {
    let scale = 10f64.powi(decimals as i32);
    let scaled = (value * scale).round(); // f64::round ties away from zero
    let neg = scaled < 0.0;
    let i = scaled.abs() as u64;
    let (whole, frac) = (i / scale as u64, i % scale as u64);
    let sign = if neg { "-" } else { "" };
    format!("{sign}{whole}.{frac:0width$}", width = decimals as usize)
}

/// One line per qubit: `qubit ⟨Qx⟩ ⟨Qy⟩ ⟨Qz⟩` at three decimals.
pub fn format_expectations(record: &MeasurementRecord) -> String {
    let mut out = String::from("qubit <Qx> <Qy> <Qz>\n");
    for (q, v) in record.values.iter().enumerate() {
        out.push_str(&format!(
            "{:5} {} {} {}\n",
            q,
            round_half_away(v[0], 3),
            round_half_away(v[1], 3),
            round_half_away(v[2], 3),
        ));
    }
    out
}

/// Events as bitstrings, one per line, qubit N-1 leftmost.
pub fn format_events(events: &EventList, n_qubits: usize) -> String {
    let mut out = String::new();
    for &e in &events.events {
        for bit in (0..n_qubits).rev() {
            out.push(if (e >> bit) & 1 == 1 { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Complete tabular run report.
pub fn format_run_result(result: &RunResult) -> String {
    let mut out = String::new();
    for (idx, record) in result.records.iter().enumerate() {
        out.push_str(&format!("measurement {}\n", idx + 1));
        out.push_str(&format_expectations(record));
    }
    for m in &result.measurements {
        out.push_str(&format!("M qubit {} -> {}\n", m.qubit, m.outcome));
    }
    if let Some(events) = &result.events {
        out.push_str(&format!(
            "events {} seed {}\n",
            events.events.len(),
            events.seed
        ));
        out.push_str(&format_events(events, result.n_qubits));
    }
    out
}
