//! Acceptance suite: one test per criterion, run serially (a shared lock
//! keeps the memory-heavy criteria from overlapping). Each test prints a
//! `[PASS]` line with its measured numbers; run with `--nocapture` to see
//! them.

use qusim_cli::bench::{available_memory_bytes, bench_scaling, BenchCircuit};
use qusim_cli::shor::shor_postprocess;
use qusim_cli::{execute, CliOutput, EngineKind, OutputFormat, RunConfig};
use qusim_core::auxvar;
use qusim_core::circuit::{
    gen_adder, gen_ghz_chain, gen_hadamard_wall, gen_shor, parse_program, pretty_print, Circuit,
    Instruction, Qubit, ShorParams,
};
use qusim_core::dist::{DistEngine, ExchangeConfig, RankLayout, SliceKind};
use qusim_core::encoded::{decode, encode, Bounds, EncodedAmplitude};
use qusim_core::exact::ExactEngine;
use qusim_core::exec::format::format_expectations;
use qusim_core::exec::{run_circuit, RunResult};
use qusim_core::rng::SeedConfig;
use qusim_core::testkit::{multiplicative_order, random_circuit, shor_xregister_qz, GatePool};
use std::alloc::{GlobalAlloc, Layout, System};
use std::sync::atomic::{AtomicBool, AtomicI64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

// ---------------------------------------------------------------------
// allocation accounting for the path-sum memory contract

struct CountingAllocator;

static TRACK: AtomicBool = AtomicBool::new(false);
static CURRENT: AtomicI64 = AtomicI64::new(0);
static PEAK: AtomicI64 = AtomicI64::new(0);

unsafe impl GlobalAlloc for CountingAllocator {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        if TRACK.load(Ordering::Relaxed) {
            let cur = CURRENT.fetch_add(layout.size() as i64, Ordering::Relaxed)
                + layout.size() as i64;
            PEAK.fetch_max(cur, Ordering::Relaxed);
        }
        unsafe { System.alloc(layout) }
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        if TRACK.load(Ordering::Relaxed) {
            CURRENT.fetch_sub(layout.size() as i64, Ordering::Relaxed);
        }
        unsafe { System.dealloc(ptr, layout) }
    }
}

#[global_allocator]
static ALLOCATOR: CountingAllocator = CountingAllocator;

/// Peak newly-allocated bytes while `f` runs.
fn allocation_peak<R>(f: impl FnOnce() -> R) -> (R, i64) {
    CURRENT.store(0, Ordering::SeqCst);
    PEAK.store(0, Ordering::SeqCst);
    TRACK.store(true, Ordering::SeqCst);
    let out = f();
    TRACK.store(false, Ordering::SeqCst);
    (out, PEAK.load(Ordering::SeqCst))
}

// ---------------------------------------------------------------------

static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn run_exact(c: &Circuit, seed: u64) -> (ExactEngine, RunResult) {
    let mut e = ExactEngine::new(c).expect("allocate");
    let r = run_circuit(&mut e, c, SeedConfig { master: Some(seed) }).expect("run");
    (e, r)
}

fn run_encoded(c: &Circuit, seed: u64) -> RunResult {
    let mut e = qusim_core::encoded::EncodedEngine::new(c).expect("allocate");
    run_circuit(&mut e, c, SeedConfig { master: Some(seed) }).expect("run")
}

fn run_dist(c: &Circuit, n_high: usize, seed: u64) -> (DistEngine, RunResult) {
    let layout = RankLayout::partition(c.n_qubits, n_high).expect("layout");
    let mut e = DistEngine::new(c, layout, ExchangeConfig::default_for(c.n_qubits), SliceKind::Exact)
        .expect("spawn");
    let r = run_circuit(&mut e, c, SeedConfig { master: Some(seed) }).expect("run");
    (e, r)
}

#[test]
fn criterion_01_hadamard_wall() {
    let _guard = serial();
    let c = gen_hadamard_wall(24).unwrap();

    let t0 = Instant::now();
    let (_, exact) = run_exact(&c, 1);
    let exact_elapsed = t0.elapsed().as_secs_f64();
    let mut worst = 0.0f64;
    for row in &exact.records[0].values {
        worst = worst.max(row[0].abs()).max((row[1] - 0.5).abs()).max((row[2] - 0.5).abs());
    }
    assert!(worst <= 1e-12, "exact deviation {worst}");
    for line in format_expectations(&exact.records[0]).lines().skip(1) {
        assert!(line.ends_with("0.000 0.500 0.500"), "row {line}");
    }
    assert!(exact_elapsed < 60.0, "exact run took {exact_elapsed}s");

    let encoded = run_encoded(&c, 1);
    let enc_dev = exact.records[0].max_deviation(&encoded.records[0]);
    assert!(enc_dev <= 1e-3, "encoded deviation {enc_dev}");

    println!(
        "[PASS] criterion 1: Hadamard wall N=24 — exact dev {worst:.2e} in {exact_elapsed:.2}s, encoded dev {enc_dev:.2e}"
    );
}

#[test]
fn criterion_02_ghz_chain() {
    let _guard = serial();
    let c = gen_ghz_chain(24).unwrap();
    let (_, exact) = run_exact(&c, 1);
    let mut worst = 0.0f64;
    for row in &exact.records[0].values {
        for v in row {
            worst = worst.max((v - 0.5).abs());
        }
    }
    assert!(worst <= 1e-12, "exact deviation {worst}");

    let exact_table = format_expectations(&exact.records[0]);
    for n_high in [1usize, 2, 3] {
        let (_, dist) = run_dist(&c, n_high, 1);
        let dist_table = format_expectations(&dist.records[0]);
        assert_eq!(exact_table, dist_table, "K_h = {}", 1 << n_high);
    }
    println!(
        "[PASS] criterion 2: GHZ chain N=24 — exact dev {worst:.2e}; identical tables at K_h ∈ {{2,4,8}}"
    );
}

#[test]
fn criterion_03_adder() {
    let _guard = serial();
    // a + b = 4095 = 2^12 - 1: every sum-register qubit reads one.
    let (a, b) = (2018u64, 2077u64);
    let c = gen_adder(12, a, b).unwrap();
    assert_eq!(c.n_qubits, 24);
    let (_, exact) = run_exact(&c, 1);
    for m in 0..12 {
        let qz = exact.records[0].values[m][2];
        assert!((qz - 1.0).abs() <= 1e-10, "sum row {m}: {qz}");
    }
    let encoded = run_encoded(&c, 1);
    let dev = exact.records[0].max_deviation(&encoded.records[0]);
    assert!(dev <= 0.011, "encoded deviation {dev}");
    println!(
        "[PASS] criterion 3: adder 12-bit ({a}+{b}) on 24 qubits — sum register all ones, encoded within {dev:.4}"
    );
}

#[test]
fn criterion_04_shor_paper_scale() {
    let _guard = serial();
    // The 30-qubit instance needs the 2-GiB encoded state plus working
    // memory; fall back to the 21-qubit instance when it will not fit.
    let full_instance_fits =
        available_memory_bytes().map(|b| b >= 3_200_000_000).unwrap_or(false);

    if full_instance_fits {
        let params = ShorParams { n_x: 20, g: 1007, y: 529 };
        let circuit = gen_shor(30, params).unwrap();
        let config = RunConfig {
            program_text: pretty_print(&circuit),
            engine: EngineKind::Encoded,
            ranks: 1,
            seed: Some(777),
            format: OutputFormat::Table,
            query: Vec::new(),
        };
        eprintln!("criterion 4: running the 30-qubit instance (2 GiB state)…");
        let t0 = Instant::now();
        let out = execute(&config).expect("run");
        let elapsed = t0.elapsed().as_secs_f64();
        let CliOutput::Run(run) = out else { panic!("expected run output") };

        let shor = run.shor.as_ref().expect("postprocessed");
        assert_eq!(shor.period, Some(18), "period");
        assert_eq!(shor.factors, Some((19, 53)), "factors");

        // the exact column of the published table
        let mut table5: Vec<f64> = vec![0.500, 0.500, 0.500, 0.445, 0.445, 0.445];
        table5.extend(std::iter::repeat(0.444).take(13));
        table5.push(0.500);
        let record = &run.result.records[0];
        let mut worst_table = 0.0f64;
        for (bit, want) in table5.iter().enumerate() {
            worst_table = worst_table.max((record.values[bit][2] - want).abs());
        }
        assert!(worst_table <= 0.01, "table deviation {worst_table}");

        // and the closed-form profile at full precision
        let oracle = shor_xregister_qz(20, 1007, 529);
        let mut worst_oracle = 0.0f64;
        for (bit, want) in oracle.iter().enumerate() {
            worst_oracle = worst_oracle.max((record.values[bit][2] - want).abs());
            worst_oracle = worst_oracle.max((record.values[bit][0] - 0.5).abs());
            worst_oracle = worst_oracle.max((record.values[bit][1] - 0.5).abs());
        }
        assert!(worst_oracle <= 0.01, "oracle deviation {worst_oracle}");

        println!(
            "[PASS] criterion 4: 30-qubit factoring of 1007 on the encoded engine — r=18, 19×53, \
             table dev {worst_table:.4}, oracle dev {worst_oracle:.4}, {elapsed:.0}s"
        );
    } else {
        // fallback instance: G = 119 = 7×17, y = 3 on 21 qubits
        let params = ShorParams { n_x: 14, g: 119, y: 3 };
        let circuit = gen_shor(21, params).unwrap();
        let config = RunConfig {
            program_text: pretty_print(&circuit),
            engine: EngineKind::Encoded,
            ranks: 1,
            seed: Some(777),
            format: OutputFormat::Table,
            query: Vec::new(),
        };
        let out = execute(&config).expect("run");
        let CliOutput::Run(run) = out else { panic!("expected run output") };
        let shor = run.shor.as_ref().expect("postprocessed");
        let true_order = multiplicative_order(3, 119);
        assert_eq!(shor.period, Some(true_order));
        assert_eq!(shor.factors, Some((7, 17)));
        let oracle = shor_xregister_qz(14, 119, 3);
        let record = &run.result.records[0];
        let mut worst = 0.0f64;
        for (bit, want) in oracle.iter().enumerate() {
            worst = worst.max((record.values[bit][2] - want).abs());
        }
        assert!(worst <= 0.01, "oracle deviation {worst}");
        println!(
            "[PASS] criterion 4 (fallback, <2 GiB free): 21-qubit factoring of 119 — r={true_order}, 7×17, oracle dev {worst:.4}"
        );
    }
}

#[test]
fn criterion_05_shor_small_instance() {
    let _guard = serial();
    let params = ShorParams { n_x: 8, g: 15, y: 7 };
    let circuit = gen_shor(12, params).unwrap();
    let t0 = Instant::now();
    let (_, result) = run_exact(&circuit, 5);
    let events = result.events.as_ref().expect("events");
    let xs: Vec<u64> = events.events.iter().map(|e| e & 0xff).collect();
    let outcome = shor_postprocess(&xs, &params);
    let elapsed = t0.elapsed().as_secs_f64();
    assert_eq!(outcome.period, Some(4));
    assert_eq!(outcome.factors, Some((3, 5)));
    assert!(elapsed < 1.0, "took {elapsed}s");
    println!(
        "[PASS] criterion 5: 12-qubit factoring of 15 on the exact engine — r=4, 3×5 in {elapsed:.3}s"
    );
}

/// Random circuit from the path-sum gate pool with at most 12 entangling
/// gates (extras are dropped).
fn path_sum_circuit(seed: u64, n: usize, gates: usize) -> Circuit {
    let mut c = random_circuit(seed, n, gates, GatePool::PathSum);
    let mut kept = Vec::new();
    let mut entangling = 0;
    for instr in c.instructions.drain(..) {
        let is_factor =
            matches!(instr, Instruction::Cnot { .. } | Instruction::CPhase { .. });
        if is_factor {
            if entangling == 12 {
                continue;
            }
            entangling += 1;
        }
        kept.push(instr);
    }
    c.instructions = kept;
    c
}

/// Dense entangling circuit with exactly `p` factors.
fn dense_factor_circuit(seed: u64, n: usize, p: usize) -> Circuit {
    let mut c = Circuit::new(n);
    let mut state = seed;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as usize
    };
    for i in 0..p {
        let a = next() % n;
        let mut b = next() % n;
        while b == a {
            b = next() % n;
        }
        c.instructions.push(Instruction::Hadamard(Qubit(a)));
        if i % 2 == 0 {
            c.instructions.push(Instruction::Cnot { control: Qubit(a), target: Qubit(b) });
        } else {
            c.instructions.push(Instruction::CPhase {
                control: Qubit(a),
                target: Qubit(b),
                k: 2 + (next() % 4) as i32,
            });
        }
        c.instructions.push(Instruction::TGate(Qubit(b)));
    }
    c
}

#[test]
fn criterion_06_path_sum_equivalence() {
    let _guard = serial();
    let t0 = Instant::now();
    let mut max_dev = 0.0f64;
    let mut max_peak_ratio = 0.0f64;
    let mut high_p_runs = 0;
    for seed in 0..200u64 {
        let circuit = if seed % 20 == 19 {
            // a tenth of the runs at the full P = 12 budget
            dense_factor_circuit(seed, 4 + (seed as usize % 6), 12)
        } else {
            path_sum_circuit(seed, 2 + (seed as usize % 9), 10 + (seed as usize % 14))
        };
        let n = circuit.n_qubits;
        let program = auxvar::compile_to_paths(&circuit).expect("supported");
        let p = program.p_count();
        assert!(p <= 12);
        if p >= 10 {
            high_p_runs += 1;
        }
        let query: Vec<u64> = (0..1u64 << n).collect();
        let m = query.len();
        let (amps, peak) = allocation_peak(|| auxvar::amplitudes(&program, &query));
        // O(N + M) amplitude-sized live values, allocation-accounted
        let budget = 64 * (n + m) as i64 + 1024;
        assert!(peak <= budget, "seed {seed}: peak {peak} bytes > budget {budget}");
        max_peak_ratio = max_peak_ratio.max(peak as f64 / (n + m) as f64);

        let (engine, _) = run_exact(&circuit, 1);
        let exact = engine.state().amplitudes();
        for (i, (g, w)) in amps.iter().zip(exact).enumerate() {
            let d = (g - w).norm();
            assert!(d <= 1e-9, "seed {seed} amplitude {i}: deviation {d}");
            max_dev = max_dev.max(d);
        }
    }
    // a small query against a larger register: memory ∝ M, not 2^N
    let c = dense_factor_circuit(9001, 10, 12);
    let program = auxvar::compile_to_paths(&c).expect("supported");
    let (_, small_peak) = allocation_peak(|| auxvar::amplitudes(&program, &[0, 1, 2]));
    assert!(small_peak <= 64 * (10 + 3) + 1024, "small-query peak {small_peak}");

    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "suite took {elapsed}s");
    println!(
        "[PASS] criterion 6: 200 path-sum circuits — worst amplitude dev {max_dev:.2e}, \
         peak alloc ≤ {max_peak_ratio:.0} bytes/(N+M), {high_p_runs} runs at P ≥ 10, {elapsed:.0}s"
    );
}

#[test]
fn criterion_07_hs_identity() {
    let _guard = serial();
    let mut worst = 0.0f64;
    for i in 0..100 {
        let a = -3.1 + 6.2 * (i as f64) / 99.0;
        let hs = auxvar::solve_hs(a);
        let dp = hs.factor_diag(1);
        let dm = hs.factor_diag(-1);
        for (b0, b1) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
            let got = (dp[b0] * dp[b1] + dm[b0] * dm[b1]) * 0.5;
            let want = if (b0, b1) == (1, 1) {
                qusim_core::C64::new(0.0, a).exp()
            } else {
                qusim_core::C64::new(1.0, 0.0)
            };
            worst = worst.max((got - want).norm());
        }
    }
    assert!(worst <= 1e-12, "identity deviation {worst}");
    println!("[PASS] criterion 7: two-configuration average rebuilds diag(1,1,1,e^{{ia}}) to {worst:.2e}");
}

#[test]
fn criterion_08_encoding_round_trip() {
    let _guard = serial();
    assert_eq!(std::mem::size_of::<EncodedAmplitude>(), 2);
    let bounds = Bounds { r0: 0.05, r1: 0.85 };
    let limit = std::f64::consts::PI / 256.0 + (bounds.r1 - bounds.r0) / 506.0 + 1e-12;
    let mut worst = 0.0f64;
    let mut lcg = 0x243F6A8885A308D3u64;
    let mut uniform = || {
        lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (lcg >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..100_000 {
        let r = bounds.r0 + (bounds.r1 - bounds.r0) * uniform();
        let th = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * uniform();
        let z = qusim_core::C64::new(r * th.cos(), r * th.sin());
        let err = (decode(encode(z, bounds), bounds) - z).norm();
        worst = worst.max(err);
        assert!(err <= limit, "z = {z}: error {err} > {limit}");
    }
    // specials are exact
    for z in [
        qusim_core::C64::new(0.0, 0.0),
        qusim_core::C64::new(1.0, 0.0),
        qusim_core::C64::new(-1.0, 0.0),
        qusim_core::C64::new(0.0, 1.0),
    ] {
        let round = decode(encode(z, bounds), bounds);
        assert!((round - z).norm() <= 1e-15, "special {z} -> {round}");
    }
    // array layout is exactly two bytes per amplitude
    let c = gen_hadamard_wall(10).unwrap();
    let e = qusim_core::encoded::EncodedEngine::new(&c).unwrap();
    assert_eq!(e.state().codes().len() * 2, 2 << 10);
    println!(
        "[PASS] criterion 8: 10^5 round trips within {limit:.3e} (worst {worst:.3e}); specials exact; 2 bytes/amplitude"
    );
}

#[test]
fn criterion_09_distributed_transparency() {
    let _guard = serial();
    let mut worst = 0.0f64;
    for seed in 0..50u64 {
        let n = 8 + (seed as usize % 7); // 8..=14 qubits
        let mut c = random_circuit(7000 + seed, n, 20, GatePool::Full);
        c.instructions.push(Instruction::BeginMeasurement);
        let (_, exact) = run_exact(&c, 2);
        for n_high in [0usize, 1, 2, 3] {
            let (mut engine, dist) = run_dist(&c, n_high, 2);
            let dev = exact.records[0].max_deviation(&dist.records[0]);
            assert!(dev <= 1e-12, "seed {seed} K_h {}: dev {dev}", 1 << n_high);
            worst = worst.max(dev);

            let k_low = engine.layout().k_low() as u64;
            let stats = engine.transport_stats();
            for (instr, traffic) in c.instructions.iter().zip(&stats.per_instruction) {
                if instr.is_unitary_gate() && traffic.swaps.is_empty() {
                    assert_eq!(traffic.bytes_sent, 0, "local {}", instr.mnemonic());
                }
                for s in &traffic.swaps {
                    assert_eq!(s.amplitudes_sent_per_rank, k_low / 2);
                }
            }
        }
    }
    println!(
        "[PASS] criterion 9: 50 random circuits × K_h ∈ {{1,2,4,8}} — worst deviation {worst:.2e}; local gates silent; swaps move K_l/2"
    );
}

fn corpus_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../circuits/error_correction.qc")
}

fn run_corpus_variant(edit: impl Fn(&mut Vec<String>)) -> RunResult {
    let text = std::fs::read_to_string(corpus_path()).expect("corpus file");
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    edit(&mut lines);
    let circuit = parse_program(&lines.join("\n")).expect("parses");
    let (_, result) = run_exact(&circuit, 99);
    result
}

#[test]
fn criterion_10_error_correction_corpus() {
    let _guard = serial();
    // (i) no error: line 13 commented out; (ii) as shipped: X 0 active;
    // (iii) lines 12 and 13 both active: errors on qubits 0 and 1.
    let no_error = run_corpus_variant(|lines| lines[12] = format!("! {}", lines[12]));
    let one_error = run_corpus_variant(|_| {});
    let two_errors = run_corpus_variant(|lines| lines[11] = lines[11].trim_start_matches("! ").to_string());

    assert_eq!(no_error.records.len(), 2);
    let final_no = &no_error.records[1];
    let final_one = &one_error.records[1];
    let final_two = &two_errors.records[1];

    // single error corrected: logical qubits 0-2 match the no-error run
    let mut corrected_dev = 0.0f64;
    for q in 0..3 {
        for c in 0..3 {
            corrected_dev =
                corrected_dev.max((final_no.values[q][c] - final_one.values[q][c]).abs());
        }
    }
    assert!(corrected_dev <= 1e-10, "single error not corrected: {corrected_dev}");

    // double error not corrected: some logical expectation off by > 0.1
    let mut miscorrection = 0.0f64;
    for q in 0..3 {
        for c in 0..3 {
            miscorrection =
                miscorrection.max((final_no.values[q][c] - final_two.values[q][c]).abs());
        }
    }
    assert!(miscorrection > 0.1, "double error unexpectedly matched: {miscorrection}");

    assert_eq!(one_error.events.as_ref().map(|e| e.events.len()), Some(8192));
    println!(
        "[PASS] criterion 10: error-correction corpus — single error corrected ({corrected_dev:.1e}), double error detected apart ({miscorrection:.3})"
    );
}

#[test]
fn criterion_11_event_statistics() {
    let _guard = serial();
    let text = "QUBITS 2\nH 0\nH 1\nGENERATE EVENTS 8192 31";
    let c = parse_program(text).unwrap();
    let (_, first) = run_exact(&c, 4);
    let (_, second) = run_exact(&c, 4);
    assert_eq!(first.events, second.events, "not deterministic");

    let events = first.events.unwrap().events;
    assert_eq!(events.len(), 8192);
    let mut counts = [0i64; 4];
    for e in events {
        counts[e as usize] += 1;
    }
    let sigma = (8192.0f64 * 0.25 * 0.75).sqrt();
    for (label, &count) in counts.iter().enumerate() {
        let dev = (count - 2048).abs() as f64;
        assert!(dev <= 5.0 * sigma, "outcome {label}: count {count} is {dev:.0} from 2048");
    }
    println!(
        "[PASS] criterion 11: 8192 events on the uniform 2-qubit state — counts {counts:?} within 5σ = {:.0} of 2048; repeat identical",
        5.0 * sigma
    );
}

#[test]
fn criterion_12_scaling_properties() {
    let _guard = serial();
    // (a) per-gate time on the exact engine grows by ~2x per added qubit.
    // warm-up pass so allocator and caches settle
    let _ = run_exact(&gen_hadamard_wall(20).unwrap(), 1);
    let per_gate: Vec<f64> = (20..=26)
        .map(|n| {
            let report = bench_scaling(
                &[EngineKind::Exact],
                &[BenchCircuit::HadamardWall],
                n..=n,
                &[1],
            );
            assert_eq!(report.points[0].status, "ok", "N={n}");
            report.points[0].per_gate_seconds
        })
        .collect();
    let factor = (per_gate[6] / per_gate[0]).powf(1.0 / 6.0);
    assert!(
        (1.7..=2.6).contains(&factor),
        "per-qubit growth factor {factor} outside [1.7, 2.6]; series {per_gate:?}"
    );

    // (b) doubling K_h at fixed N halves the local work per rank.
    let c = gen_hadamard_wall(16).unwrap();
    let mut updates = Vec::new();
    let mut seconds = Vec::new();
    for n_high in [1usize, 2, 3] {
        let (mut e, _) = run_dist(&c, n_high, 1);
        let stats = e.transport_stats();
        let per_rank = stats.per_rank_local_updates[0] as f64;
        for &u in &stats.per_rank_local_updates {
            assert_eq!(u as f64, per_rank, "unbalanced ranks");
        }
        updates.push(per_rank);
        seconds.push(stats.per_rank_local_seconds[0]);
    }
    for w in updates.windows(2) {
        let ratio = w[1] / w[0];
        assert!(
            (0.375..=0.625).contains(&ratio),
            "local work ratio {ratio} outside 0.5 ± 25%: {updates:?}"
        );
    }
    println!(
        "[PASS] criterion 12: per-gate growth {factor:.2}x/qubit over N=20..26 {per_gate:?}; \
         per-rank local work halves with K_h {updates:?} (local seconds {seconds:?})"
    );
}
