//! The full-precision machine state: 2^N complex amplitudes, 16 bytes
//! each, with index bit j holding the state of the qubit at physical bit
//! position j.

use super::kernels::{apply_multi, apply_single, RowProgram};
use crate::circuit::GateMatrix;
use crate::exec::reduce::{chunked_sum, chunked_sum3, MassIndex};
use crate::exec::ExecError;
use crate::rng::Stream;
use crate::C64;
use rayon::prelude::*;

/// Squared-norm threshold below which a projection is treated as landing
/// on a zero-amplitude state.
pub const PROJECTION_EPS: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct StateVector {
    n: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// |0…0⟩ on `n` qubits. The allocation failure path reports the
    /// 2^{N+4} bytes that would have been needed.
    pub fn new(n: usize) -> Result<Self, ExecError> {
        let len = 1usize
            .checked_shl(n as u32)
            .filter(|_| n < 64)
            .ok_or(ExecError::Allocation { required_bytes: (1u128) << (n + 4) })?;
        let mut amps = Vec::new();
        amps.try_reserve_exact(len)
            .map_err(|_| ExecError::Allocation { required_bytes: (len as u128) * 16 })?;
        amps.resize(len, C64::new(0.0, 0.0));
        amps[0] = C64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Wrap an existing amplitude slice (used by the distributed ranks,
    /// whose slices are states on the local bits).
    pub fn from_amplitudes(amps: Vec<C64>) -> Self {
        assert!(amps.len().is_power_of_two());
        let n = amps.len().trailing_zeros() as usize;
        Self { n, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    /// Apply a gate matrix at the given physical bit positions (matrix
    /// basis order: `positions[0]` is the most significant matrix bit,
    /// matching the |control,…,target⟩ convention).
    pub fn apply(&mut self, positions: &[usize], matrix: &GateMatrix) {
        match matrix {
            GateMatrix::One(m) => {
                debug_assert_eq!(positions.len(), 1);
                apply_single(&mut self.amps, positions[0], m);
            }
            GateMatrix::Two(_) | GateMatrix::Three(_) => {
                // Matrix index bit 0 is the last listed qubit.
                let mut by_bit: Vec<usize> = positions.to_vec();
                by_bit.reverse();
                let program = RowProgram::new(matrix.dim(), |r, c| matrix.entry(r, c));
                apply_multi(&mut self.amps, &by_bit, &program);
            }
        }
    }

    pub fn norm_sq(&self) -> f64 {
        chunked_sum(self.amps.len(), |r| {
            self.amps[r].iter().map(|a| a.norm_sqr()).sum()
        })
    }

    /// Raw pair sums over bit `j`: (Σ Re a₀*a₁, Σ Im a₀*a₁, Σ |a₁|²).
    /// Summable across distributed slices before the final 0.5−x step.
    pub fn qubit_pair_sums(&self, j: usize) -> [f64; 3] {
        let stride = 1usize << j;
        let pairs = self.amps.len() >> 1;
        chunked_sum3(pairs, |r| {
            let mut re = 0.0;
            let mut im = 0.0;
            let mut p1 = 0.0;
            for t in r {
                let i0 = ((t >> j) << (j + 1)) | (t & (stride - 1));
                let a0 = self.amps[i0];
                let a1 = self.amps[i0 | stride];
                let cross = a0.conj() * a1;
                re += cross.re;
                im += cross.im;
                p1 += a1.norm_sqr();
            }
            [re, im, p1]
        })
    }

    /// (⟨Qx⟩, ⟨Qy⟩, ⟨Qz⟩) of the qubit at physical bit position `j`,
    /// from one scan over the amplitude pairs.
    pub fn qubit_expectation(&self, j: usize) -> [f64; 3] {
        let [re, im, p1] = self.qubit_pair_sums(j);
        [0.5 - re, 0.5 - im, p1]
    }

    /// Probability that the bit at position `j` reads 1.
    pub fn prob_one_at(&self, j: usize) -> f64 {
        let mask = 1usize << j;
        chunked_sum(self.amps.len(), |r| {
            r.filter(|i| i & mask != 0)
                .map(|i| self.amps[i].norm_sqr())
                .sum()
        })
    }

    /// Project the bit at position `j` onto `outcome`, renormalizing the
    /// surviving branch by 1/√p.
    pub fn collapse_at(
        &mut self,
        j: usize,
        outcome: u8,
        mnemonic: &'static str,
        qubit_label: usize,
    ) -> Result<(), ExecError> {
        let mask = 1usize << j;
        let keep_mass = chunked_sum(self.amps.len(), |r| {
            r.filter(|i| ((i & mask != 0) as u8) == outcome)
                .map(|i| self.amps[i].norm_sqr())
                .sum()
        });
        if keep_mass < PROJECTION_EPS {
            return Err(ExecError::ProjectionZero { mnemonic, qubit: qubit_label });
        }
        let scale = 1.0 / keep_mass.sqrt();
        self.amps.par_iter_mut().enumerate().for_each(|(i, a)| {
            if ((i & mask != 0) as u8) == outcome {
                *a *= scale;
            } else {
                *a = C64::new(0.0, 0.0);
            }
        });
        Ok(())
    }

    /// Zero the discarded branch and multiply survivors by `scale`
    /// (the caller supplies 1/√p from a possibly-global mass).
    pub fn apply_collapse(&mut self, j: usize, outcome: u8, scale: f64) {
        let mask = 1usize << j;
        self.amps.par_iter_mut().enumerate().for_each(|(i, a)| {
            if ((i & mask != 0) as u8) == outcome {
                *a *= scale;
            } else {
                *a = C64::new(0.0, 0.0);
            }
        });
    }

    pub fn scale_all(&mut self, scale: f64) {
        self.amps.par_iter_mut().for_each(|a| *a *= scale);
    }

    pub fn zero_all(&mut self) {
        self.amps.fill(C64::new(0.0, 0.0));
    }

    pub fn is_all_zero_state(&self) -> bool {
        (self.amps[0] - C64::new(1.0, 0.0)).norm() < 1e-12 && (self.norm_sq() - 1.0).abs() < 1e-10
    }

    /// Sample `count` raw physical indices from |a(i)|².
    pub fn sample_indices(&self, count: u64, stream: &mut Stream) -> Vec<u64> {
        let index = MassIndex::build(self.amps.len(), |r| {
            self.amps[r].iter().map(|a| a.norm_sqr()).sum()
        });
        index.sample(count, stream, |i| self.amps[i].norm_sqr())
    }
}
