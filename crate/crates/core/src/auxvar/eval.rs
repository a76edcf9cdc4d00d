//! Path-sum evaluation: enumerate the 2^P auxiliary configurations in
//! Gray-code order (so one configuration step re-evaluates only the two
//! chains touched by the flipped factor), form the product of the per-
//! qubit chain components selected by each queried basis label, and
//! accumulate with compensated summation so rounding stays bounded at
//! large P. Peak live memory is O(N + M) amplitude-sized values.

use super::{PathProgram, Step};
use crate::C64;

/// Half-open range of configuration ordinals in [0, 2^P); disjoint ranges
/// partition the sum and their partial results add up to the full one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConfigRange {
    pub start: u64,
    pub end: u64,
}

/// W_j(s)|0⟩ for qubit `j` under the sign assignment `s_mask`
/// (bit p set ⇔ s_p = -1).
fn eval_chain(program: &PathProgram, j: usize, s_mask: u64) -> [C64; 2] {
    let mut v = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    for step in &program.timelines()[j] {
        match step {
            Step::Matrix(m) => {
                let (a, b) = (v[0], v[1]);
                v[0] = m[0][0] * a + m[0][1] * b;
                v[1] = m[1][0] * a + m[1][1] * b;
            }
            Step::Factor(p) => {
                let f = &program.factors()[*p];
                let d = if (s_mask >> p) & 1 == 0 { f.diag_plus } else { f.diag_minus };
                v[0] *= d[0];
                v[1] *= d[1];
            }
        }
    }
    v
}

struct Kahan {
    sum: C64,
    comp: C64,
}

impl Kahan {
    fn new() -> Self {
        Self { sum: C64::new(0.0, 0.0), comp: C64::new(0.0, 0.0) }
    }

    #[inline]
    fn add(&mut self, term: C64) {
        let y = term - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Sum of the per-configuration product-state contributions over the
/// given configuration range, weighted by 1/2^P.
///
/// Runtime O(N·M·|range|); live memory: N chain vectors, M accumulator
/// pairs, and the M results.
pub fn amplitudes_over_configs(
    program: &PathProgram,
    basis_states: &[u64],
    range: ConfigRange,
) -> Vec<C64> {
    let n = program.n_qubits();
    let p = program.p_count();
    let total = 1u64 << p;
    assert!(range.start <= range.end && range.end <= total, "bad range");
    let mut acc: Vec<Kahan> = basis_states.iter().map(|_| Kahan::new()).collect();

    // Gray-code ordinal t ↦ configuration t ^ (t >> 1); consecutive
    // ordinals differ in the single factor bit trailing_zeros(t).
    let mut s_mask = range.start ^ (range.start >> 1);
    let mut chains: Vec<[C64; 2]> = (0..n).map(|j| eval_chain(program, j, s_mask)).collect();

    for t in range.start..range.end {
        if t != range.start {
            let flipped = t.trailing_zeros() as usize;
            s_mask ^= 1 << flipped;
            let f = &program.factors()[flipped];
            chains[f.qubit_a] = eval_chain(program, f.qubit_a, s_mask);
            chains[f.qubit_b] = eval_chain(program, f.qubit_b, s_mask);
        }
        for (slot, &label) in acc.iter_mut().zip(basis_states) {
            let mut term = C64::new(1.0, 0.0);
            for (j, chain) in chains.iter().enumerate() {
                term *= chain[((label >> j) & 1) as usize];
            }
            slot.add(term);
        }
    }

    let weight = (0.5f64).powi(p as i32);
    acc.into_iter().map(|k| k.sum * weight).collect()
}

/// The requested amplitudes ⟨basis|ψ⟩, summing all 2^P configurations.
pub fn amplitudes(program: &PathProgram, basis_states: &[u64]) -> Vec<C64> {
    let total = 1u64 << program.p_count();
    amplitudes_over_configs(program, basis_states, ConfigRange { start: 0, end: total })
}
