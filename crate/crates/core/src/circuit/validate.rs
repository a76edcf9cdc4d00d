//! Post-parse checks that produce a report instead of failing: statement
//! ordering, SHORBOX register widths, unreachable code, no-op warnings.

use super::{Circuit, Instruction};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationIssue {
    pub severity: Severity,
    /// Index into `circuit.instructions`, when the issue points at one.
    pub instruction: Option<usize>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn has_errors(&self) -> bool {
        self.issues.iter().any(|i| i.severity == Severity::Error)
    }

    fn push(&mut self, severity: Severity, instruction: Option<usize>, message: String) {
        self.issues.push(ValidationIssue { severity, instruction, message });
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for issue in &self.issues {
            let sev = match issue.severity {
                Severity::Warning => "warning",
                Severity::Error => "error",
            };
            match issue.instruction {
                Some(idx) => writeln!(f, "{sev}: instruction {idx}: {}", issue.message)?,
                None => writeln!(f, "{sev}: {}", issue.message)?,
            }
        }
        Ok(())
    }
}

/// Validate a parsed circuit. Never fails; the report carries severities.
pub fn validate(circuit: &Circuit) -> ValidationReport {
    let mut report = ValidationReport::default();

    if circuit.ordering.bit_assignment_after_gate {
        report.push(
            Severity::Error,
            None,
            "BIT ASSIGNMENT must appear before the first gate instruction".into(),
        );
    }
    if circuit.ordering.noise_after_gate {
        report.push(
            Severity::Error,
            None,
            "DEPOLARIZING CHANNEL must appear before the first gate instruction".into(),
        );
    }

    let mut terminated_at: Option<usize> = None;
    for (idx, instr) in circuit.instructions.iter().enumerate() {
        if let Some(t) = terminated_at {
            report.push(
                Severity::Warning,
                Some(idx),
                format!(
                    "unreachable: {} follows the terminating {} at instruction {t}",
                    instr.mnemonic(),
                    circuit.instructions[t].mnemonic()
                ),
            );
            continue;
        }
        match instr {
            Instruction::Exit | Instruction::GenerateEvents { .. } => {
                terminated_at = Some(idx);
            }
            Instruction::Shorbox(p) => {
                let f_bits = circuit.n_qubits - p.n_x;
                // Flag when 2^F <= G: the f-register cannot index G residues.
                if f_bits >= 64 || (1u64 << f_bits) <= p.g {
                    report.push(
                        Severity::Error,
                        Some(idx),
                        format!(
                            "SHORBOX register overflow: f-register ({f_bits} qubits) < \
                             ceil(log2 {}) = {} qubits needed",
                            p.g,
                            p.f_register_bits_needed()
                        ),
                    );
                }
            }
            Instruction::PhaseShift { k: 0, .. } | Instruction::CPhase { k: 0, .. } => {
                report.push(
                    Severity::Warning,
                    Some(idx),
                    format!("{} with k = 0 is a phase of 2π, a no-op", instr.mnemonic()),
                );
            }
            _ => {}
        }
    }

    report
}

#[cfg(test)]
mod tests {
    use super::super::{gen_ghz_chain, parse_program};
    use super::*;

    #[test]
    fn clean_circuit_has_empty_report() {
        let c = gen_ghz_chain(4).unwrap();
        assert!(validate(&c).is_clean());
    }

    #[test]
    fn shorbox_register_overflow_detected() {
        // G = 1007 needs ceil(log2 1007) = 10 qubits; N=28, n_x=20 leaves 8.
        let c = parse_program("QUBITS 28\nSHORBOX 20 1007 529").unwrap();
        let report = validate(&c);
        assert!(report.has_errors());
        assert!(report.issues[0].message.contains("10"));
        // N=30 leaves 10 qubits, which is enough.
        let c = parse_program("QUBITS 30\nSHORBOX 20 1007 529").unwrap();
        assert!(validate(&c).is_clean());
    }

    #[test]
    fn late_bit_assignment_is_ordering_violation() {
        let c = parse_program("QUBITS 2\nH 0\nBIT ASSIGNMENT 1 0").unwrap();
        let report = validate(&c);
        assert!(report.has_errors());
        assert!(report.issues[0].message.contains("BIT ASSIGNMENT"));
    }

    #[test]
    fn instructions_after_exit_flagged_unreachable() {
        let c = parse_program("QUBITS 2\nH 0\nEXIT\nX 1").unwrap();
        let report = validate(&c);
        assert!(!report.has_errors());
        assert_eq!(report.issues.len(), 1);
        assert_eq!(report.issues[0].severity, Severity::Warning);
        assert!(report.issues[0].message.contains("unreachable"));
    }

    #[test]
    fn zero_shift_exponent_warns() {
        let c = parse_program("QUBITS 2\nR 0 0").unwrap();
        let report = validate(&c);
        assert!(!report.has_errors());
        assert!(report.issues[0].message.contains("no-op"));
    }
}
