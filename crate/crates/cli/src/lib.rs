//! Library half of the command-line front end: engine selection, the
//! run pipeline (parse → validate → execute → format), classical
//! order-finding post-processing, and the benchmark harness.

pub mod bench;
pub mod shor;

use qusim_core::auxvar;
use qusim_core::circuit::{parse_program, validate, Circuit, ParseError, ValidationReport};
use qusim_core::dist::{DistEngine, ExchangeConfig, RankLayout, SliceKind};
use qusim_core::encoded::EncodedEngine;
use qusim_core::exact::ExactEngine;
use qusim_core::exec::format::{format_events, format_run_result};
use qusim_core::exec::{run_circuit, Engine, ExecError, RunResult};
use qusim_core::rng::SeedConfig;
use serde::Serialize;
use shor::{shor_postprocess, ShorOutcome};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineKind {
    Exact,
    Encoded,
    AuxVar,
    Dist,
}

impl EngineKind {
    pub fn name(self) -> &'static str {
        match self {
            EngineKind::Exact => "exact",
            EngineKind::Encoded => "encoded",
            EngineKind::AuxVar => "auxvar",
            EngineKind::Dist => "dist",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
}

/// Everything one invocation needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub program_text: String,
    pub engine: EngineKind,
    /// Rank count for the distributed engine; must be a power of two.
    pub ranks: usize,
    pub seed: Option<u64>,
    pub format: OutputFormat,
    /// Basis-state labels to evaluate (path-sum engine only; required
    /// there, rejected elsewhere).
    pub query: Vec<u64>,
}

/// Process exit classes; the binary maps them to exit codes
/// 0 / 2 / 3 / 4 / 5.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("validation failed:\n{0}")]
    Validation(ValidationReport),
    #[error("{0}")]
    Runtime(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Runtime(_) => 4,
            CliError::Resource(_) => 5,
        }
    }
}

fn exec_error(e: ExecError) -> CliError {
    match e {
        ExecError::Allocation { .. } => CliError::Resource(e.to_string()),
        other => CliError::Runtime(other.to_string()),
    }
}

/// Instantiate the chosen engine for a circuit. `ranks` is only
/// meaningful for the distributed engine.
pub fn build_engine(
    circuit: &Circuit,
    kind: EngineKind,
    ranks: usize,
) -> Result<Box<dyn Engine>, ExecError> {
    Ok(match kind {
        EngineKind::Exact => Box::new(ExactEngine::new(circuit)?),
        EngineKind::Encoded => Box::new(EncodedEngine::new(circuit)?),
        EngineKind::Dist => {
            let n_high = ranks.trailing_zeros() as usize;
            let layout = RankLayout::partition(circuit.n_qubits, n_high)?;
            Box::new(DistEngine::new(
                circuit,
                layout,
                ExchangeConfig::default_for(circuit.n_qubits),
                SliceKind::Exact,
            )?)
        }
        EngineKind::AuxVar => unreachable!("the path-sum engine has no state backend"),
    })
}

/// Output of a full-state run.
#[derive(Debug, Serialize)]
pub struct RunOutput {
    pub result: RunResult,
    pub validation: ValidationReport,
    pub shor: Option<ShorOutcome>,
}

/// Output of a path-sum amplitude query.
#[derive(Debug, Serialize)]
pub struct AmplitudeOutput {
    pub n_qubits: usize,
    pub p_count: usize,
    pub cost_estimate: f64,
    /// (label, re, im, |amp|²) per queried basis state.
    pub amplitudes: Vec<(String, f64, f64, f64)>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum CliOutput {
    Run(Box<RunOutput>),
    Amplitudes(AmplitudeOutput),
}

impl CliOutput {
    /// Human-readable rendering (the `table` format).
    pub fn to_table(&self) -> String {
        match self {
            CliOutput::Run(out) => {
                let mut text = format_run_result(&out.result);
                if let Some(shor) = &out.shor {
                    match (&shor.period, &shor.factors, &shor.failure) {
                        (Some(r), Some((p, q)), _) => {
                            text.push_str(&format!("period {r}\nfactors {p} {q}\n"))
                        }
                        (Some(r), None, Some(why)) => {
                            text.push_str(&format!("period {r}\nno factors: {why}\n"))
                        }
                        (None, _, Some(why)) => text.push_str(&format!("no period: {why}\n")),
                        _ => {}
                    }
                }
                text
            }
            CliOutput::Amplitudes(out) => {
                let mut text = String::from("state amplitude_re amplitude_im probability\n");
                for (label, re, im, p) in &out.amplitudes {
                    text.push_str(&format!("{label} {re:.16e} {im:.16e} {p:.16e}\n"));
                }
                text
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output serializes")
    }

    /// Events block, when the run produced one.
    pub fn events_text(&self) -> Option<String> {
        match self {
            CliOutput::Run(out) => out
                .result
                .events
                .as_ref()
                .map(|e| format_events(e, out.result.n_qubits)),
            CliOutput::Amplitudes(_) => None,
        }
    }
}

/// Parse, validate and execute one program on the configured engine.
pub fn execute(config: &RunConfig) -> Result<CliOutput, CliError> {
    if config.engine == EngineKind::Dist && !config.ranks.is_power_of_two() {
        return Err(CliError::Usage(format!(
            "--ranks must be a power of two, got {}",
            config.ranks
        )));
    }
    if (config.engine == EngineKind::AuxVar) != !config.query.is_empty() {
        return Err(CliError::Usage(
            "--query is required for --engine auxvar and meaningless elsewhere".into(),
        ));
    }

    let circuit = parse_program(&config.program_text)?;
    let report = validate(&circuit);
    if report.has_errors() {
        return Err(CliError::Validation(report));
    }

    if config.engine == EngineKind::AuxVar {
        let program = auxvar::compile_to_paths(&circuit).map_err(exec_error)?;
        for &label in &config.query {
            if label >> circuit.n_qubits != 0 {
                return Err(CliError::Usage(format!(
                    "basis state {label} does not fit in {} qubits",
                    circuit.n_qubits
                )));
            }
        }
        let values = auxvar::amplitudes(&program, &config.query);
        let amplitudes = config
            .query
            .iter()
            .zip(values)
            .map(|(&label, a)| {
                let bits: String = (0..circuit.n_qubits)
                    .rev()
                    .map(|b| if (label >> b) & 1 == 1 { '1' } else { '0' })
                    .collect();
                (bits, a.re, a.im, a.norm_sqr())
            })
            .collect();
        return Ok(CliOutput::Amplitudes(AmplitudeOutput {
            n_qubits: circuit.n_qubits,
            p_count: program.p_count(),
            cost_estimate: program.cost_estimate(config.query.len()),
            amplitudes,
        }));
    }

    let mut engine = build_engine(&circuit, config.engine, config.ranks).map_err(exec_error)?;
    let result = run_circuit(engine.as_mut(), &circuit, SeedConfig { master: config.seed })
        .map_err(exec_error)?;

    // classical tail of the factoring procedure, when applicable
    let shor = match (circuit.shor_params(), &result.events) {
        (Some(params), Some(events)) => {
            let mask = (1u64 << params.n_x) - 1;
            let xs: Vec<u64> = events.events.iter().map(|e| e & mask).collect();
            Some(shor_postprocess(&xs, params))
        }
        _ => None,
    };

    Ok(CliOutput::Run(Box::new(RunOutput { result, validation: report, shor })))
}

/// Parse a basis-state list: comma-separated decimal, 0x…, or 0b… labels.
pub fn parse_query(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let t = t.trim();
            let parsed = if let Some(hex) = t.strip_prefix("0x") {
                u64::from_str_radix(hex, 16)
            } else if let Some(bin) = t.strip_prefix("0b") {
                u64::from_str_radix(bin, 2)
            } else {
                t.parse()
            };
            parsed.map_err(|_| CliError::Usage(format!("bad basis-state label '{t}'")))
        })
        .collect()
}
