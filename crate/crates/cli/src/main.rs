//! `qusim` — run circuit files on a chosen engine, emit expectation-value
//! tables or JSON, post-process order-finding samples, and drive the
//! scaling benchmark.
//!
//! Exit codes: 0 ok, 2 parse/usage, 3 validation, 4 runtime, 5 resource.

use clap::{Parser, ValueEnum};
use qusim_cli::bench::{bench_scaling, BenchCircuit};
use qusim_cli::{execute, parse_query, CliError, CliOutput, EngineKind, OutputFormat, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Exact,
    Encoded,
    Auxvar,
    Dist,
}

impl From<EngineArg> for EngineKind {
    fn from(v: EngineArg) -> Self {
        match v {
            EngineArg::Exact => EngineKind::Exact,
            EngineArg::Encoded => EngineKind::Encoded,
            EngineArg::Auxvar => EngineKind::AuxVar,
            EngineArg::Dist => EngineKind::Dist,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "qusim", about = "Gate-based quantum computer simulator", version)]
struct Args {
    /// Circuit file in the assembler-like instruction language.
    #[arg(long, required_unless_present = "bench")]
    input: Option<PathBuf>,

    /// Execution engine.
    #[arg(long, value_enum, default_value = "exact")]
    engine: EngineArg,

    /// Rank count for the distributed engine (power of two).
    #[arg(long, default_value_t = 1)]
    ranks: usize,

    /// Worker threads for the gate kernels (default: all cores).
    #[arg(long)]
    threads: Option<usize>,

    /// Master seed for noise, measurement and event streams.
    #[arg(long)]
    seed: Option<u64>,

    /// Output format on stdout.
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,

    /// Basis states for the path-sum engine: comma-separated decimal,
    /// 0x… or 0b… labels.
    #[arg(long, default_value = "")]
    query: String,

    /// Directory for output files (events.txt, result.json, bench.csv).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Run the scaling benchmark instead of a circuit.
    #[arg(long)]
    bench: bool,

    /// Benchmark: engines to sweep (comma list of exact,encoded,dist).
    #[arg(long, default_value = "exact")]
    engines: String,

    /// Benchmark: inclusive qubit range, MIN:MAX.
    #[arg(long, default_value = "8:12")]
    n_range: String,

    /// Benchmark: comma list of rank counts (dist engine rows).
    #[arg(long, default_value = "1")]
    ranks_list: String,

    /// Benchmark: comma list of circuits (hwall, ghz).
    #[arg(long, default_value = "hwall,ghz")]
    circuits: String,
}

fn run(args: Args) -> Result<(), CliError> {
    if let Some(threads) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }

    if args.bench {
        return run_bench(&args);
    }

    let input = args.input.as_ref().expect("clap enforces --input");
    let program_text = std::fs::read_to_string(input)
        .map_err(|e| CliError::Resource(format!("cannot read {}: {e}", input.display())))?;
    let config = RunConfig {
        program_text,
        engine: args.engine.into(),
        ranks: args.ranks,
        seed: args.seed,
        format: match args.format {
            FormatArg::Table => OutputFormat::Table,
            FormatArg::Json => OutputFormat::Json,
        },
        query: parse_query(&args.query)?,
    };
    let output = execute(&config)?;

    match config.format {
        OutputFormat::Table => print!("{}", output.to_table()),
        OutputFormat::Json => println!("{}", output.to_json()),
    }

    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Resource(format!("cannot create {}: {e}", dir.display())))?;
        std::fs::write(dir.join("result.json"), output.to_json())
            .map_err(|e| CliError::Resource(e.to_string()))?;
        if let Some(events) = output.events_text() {
            std::fs::write(dir.join("events.txt"), events)
                .map_err(|e| CliError::Resource(e.to_string()))?;
        }
        if let CliOutput::Run(run) = &output {
            if let Some(shor) = &run.shor {
                let doc = serde_json::to_string_pretty(shor).expect("serializes");
                std::fs::write(dir.join("shor.json"), doc)
                    .map_err(|e| CliError::Resource(e.to_string()))?;
            }
        }
    }
    Ok(())
}

fn run_bench(args: &Args) -> Result<(), CliError> {
    let engines: Vec<EngineKind> = args
        .engines
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match t.trim() {
            "exact" => Ok(EngineKind::Exact),
            "encoded" => Ok(EngineKind::Encoded),
            "dist" => Ok(EngineKind::Dist),
            other => Err(CliError::Usage(format!("unknown bench engine '{other}'"))),
        })
        .collect::<Result<_, _>>()?;
    let circuits: Vec<BenchCircuit> = args
        .circuits
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match t.trim() {
            "hwall" => Ok(BenchCircuit::HadamardWall),
            "ghz" => Ok(BenchCircuit::GhzChain),
            other => Err(CliError::Usage(format!("unknown bench circuit '{other}'"))),
        })
        .collect::<Result<_, _>>()?;
    let (lo, hi) = args
        .n_range
        .split_once(':')
        .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
        .ok_or_else(|| CliError::Usage(format!("bad --n-range '{}'", args.n_range)))?;
    let ranks_list: Vec<usize> = args
        .ranks_list
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .ok()
                .filter(|r: &usize| r.is_power_of_two())
                .ok_or_else(|| CliError::Usage(format!("bad rank count '{t}'")))
        })
        .collect::<Result<_, _>>()?;

    let report = bench_scaling(&engines, &circuits, lo..=hi, &ranks_list);
    print!("{}", report.to_csv());
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Resource(format!("cannot create {}: {e}", dir.display())))?;
        std::fs::write(dir.join("bench.csv"), report.to_csv())
            .map_err(|e| CliError::Resource(e.to_string()))?;
        std::fs::write(
            dir.join("bench.json"),
            serde_json::to_string_pretty(&report).expect("serializes"),
        )
        .map_err(|e| CliError::Resource(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
