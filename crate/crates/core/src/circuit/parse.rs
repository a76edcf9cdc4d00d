//! Parser for the assembler-like instruction language: one statement per
//! line, whitespace-separated tokens, case-insensitive mnemonics. A line
//! whose first non-blank character is `!` is a comment.

use super::{
    BitPermutation, Circuit, Instruction, NoiseConfig, OrderingFlags, Qubit, ShorParams,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: unknown mnemonic '{token}'")]
    UnknownMnemonic { line: usize, token: String },
    #[error("line {line}: QUBITS must be the first instruction")]
    QubitsNotFirst { line: usize },
    #[error("line {line}: duplicate QUBITS statement")]
    DuplicateQubits { line: usize },
    #[error("line {line}: QUBITS argument must be an integer larger than 1 and smaller than 64, got '{got}'")]
    BadQubitCount { line: usize, got: String },
    #[error("line {line}: {mnemonic} expects {expected} argument(s), got {got}")]
    BadArity { line: usize, mnemonic: String, expected: usize, got: usize },
    #[error("line {line}: qubit index {index} out of range 0..{n}")]
    QubitOutOfRange { line: usize, index: i64, n: usize },
    #[error("line {line}: {mnemonic} requires pairwise distinct qubits")]
    DuplicateQubit { line: usize, mnemonic: String },
    #[error("line {line}: malformed number '{token}'")]
    BadNumber { line: usize, token: String },
    #[error("line {line}: malformed bit assignment: {reason}")]
    BadPermutation { line: usize, reason: String },
    #[error("line {line}: depolarizing channel: {reason}")]
    BadNoise { line: usize, reason: String },
    #[error("line {line}: SHORBOX: {reason}")]
    BadShorbox { line: usize, reason: String },
    #[error("line {line}: R/U phase exponent must be a non-zero integer")]
    ZeroShiftExponentForbidden { line: usize },
    #[error("line {line}: GENERATE EVENTS count must be positive")]
    BadEventCount { line: usize },
    #[error("program contains no QUBITS statement")]
    Empty,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('!') {
            continue;
        }
        out.push(Line { number: idx + 1, tokens: raw.split_whitespace().collect() });
    }
    out
}

fn parse_int(line: usize, tok: &str) -> Result<i64, ParseError> {
    tok.parse::<i64>().map_err(|_| ParseError::BadNumber { line, token: tok.into() })
}

fn parse_angle(line: usize, tok: &str) -> Result<f64, ParseError> {
    // Angles accept integer or decimal literals.
    tok.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| ParseError::BadNumber { line, token: tok.into() })
}

fn parse_qubit(line: usize, tok: &str, n: usize) -> Result<Qubit, ParseError> {
    let v = parse_int(line, tok)?;
    if v < 0 || v as usize >= n {
        return Err(ParseError::QubitOutOfRange { line, index: v, n });
    }
    Ok(Qubit(v as usize))
}

fn expect_arity(
    line: usize,
    mnemonic: &str,
    args: &[&str],
    expected: usize,
) -> Result<(), ParseError> {
    if args.len() != expected {
        return Err(ParseError::BadArity {
            line,
            mnemonic: mnemonic.to_uppercase(),
            expected,
            got: args.len(),
        });
    }
    Ok(())
}

fn distinct(line: usize, mnemonic: &str, qs: &[Qubit]) -> Result<(), ParseError> {
    for a in 0..qs.len() {
        for b in a + 1..qs.len() {
            if qs[a] == qs[b] {
                return Err(ParseError::DuplicateQubit {
                    line,
                    mnemonic: mnemonic.to_uppercase(),
                });
            }
        }
    }
    Ok(())
}

/// Parse `KEY = VALUE` groups (commas optional, any order) for
/// `DEPOLARIZING CHANNEL`; missing arguments default to zero.
fn parse_noise(line: usize, args: &[&str]) -> Result<NoiseConfig, ParseError> {
    let joined = args.join(" ").replace(',', " ").replace('=', " = ");
    let toks: Vec<&str> = joined.split_whitespace().collect();
    let mut cfg = NoiseConfig { p_x: 0.0, p_y: 0.0, p_z: 0.0, seed: 0 };
    let mut i = 0;
    while i < toks.len() {
        let key = toks[i].to_uppercase();
        if i + 2 >= toks.len() || toks[i + 1] != "=" {
            return Err(ParseError::BadNoise {
                line,
                reason: format!("expected '{key} = value'"),
            });
        }
        let val = toks[i + 2];
        match key.as_str() {
            "P_X" => cfg.p_x = parse_angle(line, val)?,
            "P_Y" => cfg.p_y = parse_angle(line, val)?,
            "P_Z" => cfg.p_z = parse_angle(line, val)?,
            "SEED" => cfg.seed = parse_int(line, val)?,
            other => {
                return Err(ParseError::BadNoise {
                    line,
                    reason: format!("unknown argument '{other}'"),
                })
            }
        }
        i += 3;
    }
    for (name, p) in [("P_X", cfg.p_x), ("P_Y", cfg.p_y), ("P_Z", cfg.p_z)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(ParseError::BadNoise {
                line,
                reason: format!("{name} = {p} outside [0, 1]"),
            });
        }
    }
    let total = cfg.p_x + cfg.p_y + cfg.p_z;
    if total > 1.0 {
        return Err(ParseError::BadNoise {
            line,
            reason: format!("P_X + P_Y + P_Z = {total} exceeds 1"),
        });
    }
    if cfg.seed >= (1 << 31) - 1 {
        return Err(ParseError::BadNoise {
            line,
            reason: format!("SEED = {} must be smaller than 2^31 - 1", cfg.seed),
        });
    }
    Ok(cfg)
}

/// Parse a full program into a validated [`Circuit`].
pub fn parse_program(text: &str) -> Result<Circuit, ParseError> {
    let lines = tokenize(text);
    let mut iter = lines.iter();

    let first = iter.next().ok_or(ParseError::Empty)?;
    let head = first.tokens[0].to_uppercase();
    if head != "QUBITS" {
        return Err(ParseError::QubitsNotFirst { line: first.number });
    }
    expect_arity(first.number, "QUBITS", &first.tokens[1..], 1)?;
    let n = match first.tokens[1].parse::<i64>() {
        Ok(v) if (2..64).contains(&v) => v as usize,
        _ => {
            return Err(ParseError::BadQubitCount {
                line: first.number,
                got: first.tokens[1].into(),
            })
        }
    };

    let mut circuit = Circuit::new(n);
    let mut seen_gate = false;
    let mut ordering = OrderingFlags::default();

    for line in iter {
        let mnemonic = line.tokens[0].to_uppercase();
        let args = &line.tokens[1..];
        let ln = line.number;

        // Two-word statement heads.
        let (mnemonic, args) = match (mnemonic.as_str(), args.first()) {
            ("BEGIN", Some(w)) if w.eq_ignore_ascii_case("MEASUREMENT") => {
                ("BEGIN MEASUREMENT".to_string(), &args[1..])
            }
            ("GENERATE", Some(w)) if w.eq_ignore_ascii_case("EVENTS") => {
                ("GENERATE EVENTS".to_string(), &args[1..])
            }
            ("BIT", Some(w)) if w.eq_ignore_ascii_case("ASSIGNMENT") => {
                ("BIT ASSIGNMENT".to_string(), &args[1..])
            }
            ("DEPOLARIZING", Some(w)) if w.eq_ignore_ascii_case("CHANNEL") => {
                ("DEPOLARIZING CHANNEL".to_string(), &args[1..])
            }
            _ => (mnemonic, args),
        };

        let single = |instr: fn(Qubit) -> Instruction| -> Result<Instruction, ParseError> {
            expect_arity(ln, &mnemonic, args, 1)?;
            Ok(instr(parse_qubit(ln, args[0], n)?))
        };

        let instr = match mnemonic.as_str() {
            "QUBITS" => return Err(ParseError::DuplicateQubits { line: ln }),
            "BIT ASSIGNMENT" => {
                if args.len() != n {
                    return Err(ParseError::BadPermutation {
                        line: ln,
                        reason: format!("expected {n} entries, got {}", args.len()),
                    });
                }
                let mut perm = Vec::with_capacity(n);
                for tok in args {
                    let v = parse_int(ln, tok)?;
                    if v < 0 || v as usize >= n {
                        return Err(ParseError::BadPermutation {
                            line: ln,
                            reason: format!("entry {v} out of range 0..{n}"),
                        });
                    }
                    perm.push(v as usize);
                }
                circuit.bit_assignment = BitPermutation::new(perm)
                    .map_err(|reason| ParseError::BadPermutation { line: ln, reason })?;
                if seen_gate {
                    ordering.bit_assignment_after_gate = true;
                }
                continue;
            }
            "DEPOLARIZING CHANNEL" => {
                circuit.noise = Some(parse_noise(ln, args)?);
                if seen_gate {
                    ordering.noise_after_gate = true;
                }
                continue;
            }
            "I" => single(Instruction::Identity)?,
            "H" => single(Instruction::Hadamard)?,
            "X" => single(Instruction::PauliX)?,
            "Y" => single(Instruction::PauliY)?,
            "Z" => single(Instruction::PauliZ)?,
            "S" => single(Instruction::SGate)?,
            "S+" => single(Instruction::SDag)?,
            "T" => single(Instruction::TGate)?,
            "T+" => single(Instruction::TDag)?,
            "+X" => single(Instruction::PlusX)?,
            "-X" => single(Instruction::MinusX)?,
            "+Y" => single(Instruction::PlusY)?,
            "-Y" => single(Instruction::MinusY)?,
            "M" => single(Instruction::Measure)?,
            "CLEAR" => single(Instruction::Clear)?,
            "SET" => single(Instruction::Set)?,
            "U1" => {
                expect_arity(ln, &mnemonic, args, 2)?;
                Instruction::U1(parse_qubit(ln, args[0], n)?, parse_angle(ln, args[1])?)
            }
            "U2" => {
                expect_arity(ln, &mnemonic, args, 3)?;
                Instruction::U2(
                    parse_qubit(ln, args[0], n)?,
                    parse_angle(ln, args[1])?,
                    parse_angle(ln, args[2])?,
                )
            }
            "U3" => {
                expect_arity(ln, &mnemonic, args, 4)?;
                Instruction::U3(
                    parse_qubit(ln, args[0], n)?,
                    parse_angle(ln, args[1])?,
                    parse_angle(ln, args[2])?,
                    parse_angle(ln, args[3])?,
                )
            }
            "R" => {
                expect_arity(ln, &mnemonic, args, 2)?;
                let qubit = parse_qubit(ln, args[0], n)?;
                let k = parse_int(ln, args[1])?;
                Instruction::PhaseShift { qubit, k: k as i32 }
            }
            "CNOT" => {
                expect_arity(ln, &mnemonic, args, 2)?;
                let control = parse_qubit(ln, args[0], n)?;
                let target = parse_qubit(ln, args[1], n)?;
                distinct(ln, &mnemonic, &[control, target])?;
                Instruction::Cnot { control, target }
            }
            "U" => {
                expect_arity(ln, &mnemonic, args, 3)?;
                let control = parse_qubit(ln, args[0], n)?;
                let target = parse_qubit(ln, args[1], n)?;
                distinct(ln, &mnemonic, &[control, target])?;
                let k = parse_int(ln, args[2])?;
                Instruction::CPhase { control, target, k: k as i32 }
            }
            "TOFFOLI" => {
                expect_arity(ln, &mnemonic, args, 3)?;
                let control1 = parse_qubit(ln, args[0], n)?;
                let control2 = parse_qubit(ln, args[1], n)?;
                let target = parse_qubit(ln, args[2], n)?;
                distinct(ln, &mnemonic, &[control1, control2, target])?;
                Instruction::Toffoli { control1, control2, target }
            }
            "BEGIN MEASUREMENT" => {
                expect_arity(ln, &mnemonic, args, 0)?;
                Instruction::BeginMeasurement
            }
            "GENERATE EVENTS" => {
                // Seed may be omitted; zero means "take one from the OS".
                if args.is_empty() || args.len() > 2 {
                    return Err(ParseError::BadArity {
                        line: ln,
                        mnemonic,
                        expected: 2,
                        got: args.len(),
                    });
                }
                let count = parse_int(ln, args[0])?;
                if count <= 0 {
                    return Err(ParseError::BadEventCount { line: ln });
                }
                let seed = if args.len() == 2 { parse_int(ln, args[1])? } else { 0 };
                Instruction::GenerateEvents { count: count as u64, seed }
            }
            "SHORBOX" => {
                expect_arity(ln, &mnemonic, args, 3)?;
                let n_x = parse_int(ln, args[0])?;
                if n_x <= 0 || n_x as usize >= n {
                    return Err(ParseError::BadShorbox {
                        line: ln,
                        reason: format!("n_x = {n_x} must satisfy 0 < n_x < N = {n}"),
                    });
                }
                let g = parse_int(ln, args[1])?;
                let y = parse_int(ln, args[2])?;
                if g <= 0 || y <= 0 {
                    return Err(ParseError::BadShorbox {
                        line: ln,
                        reason: "G and y must be positive".into(),
                    });
                }
                let params = ShorParams { n_x: n_x as usize, g: g as u64, y: y as u64 };
                params
                    .check()
                    .map_err(|reason| ParseError::BadShorbox { line: ln, reason })?;
                Instruction::Shorbox(params)
            }
            "EXIT" => {
                expect_arity(ln, &mnemonic, args, 0)?;
                Instruction::Exit
            }
            _ => {
                return Err(ParseError::UnknownMnemonic {
                    line: ln,
                    token: line.tokens[0].to_string(),
                })
            }
        };

        if instr.is_unitary_gate() {
            seen_gate = true;
        }
        circuit.instructions.push(instr);
    }

    circuit.ordering = ordering;
    Ok(circuit)
}
