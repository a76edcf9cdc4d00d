//! State vector over 2-byte encoded amplitudes.
//!
//! Gates that only permute amplitudes (X, CNOT, TOFFOLI) move codes
//! without touching the encoding; diagonal gates add a quantized phase
//! increment directly to the phase byte, which is identical to
//! decode–add–encode because the phase grid is uniform. Arithmetic gates
//! (H, ±X, ±Y, U2, U3) decode, combine in full precision and re-encode;
//! they run in two passes so the magnitude bounds can be retuned *before*
//! any out-of-range value would have to be clamped.

use super::code::{
    encode, is_intermediate, magnitude_of, wrap_phase_code, Bounds, EncodedAmplitude, CODE_ZERO,
    SPECIAL_EPS,
};
use crate::circuit::{gate_matrix, matrices::shift_angle, GateMatrix, Instruction};
use crate::exec::reduce::{chunked_sum, chunked_sum3, MassIndex};
use crate::exec::ExecError;
use crate::rng::Stream;
use crate::C64;
use rayon::prelude::*;
use std::f64::consts::PI;

const PAR_MIN_LEN: usize = 1 << 15;

/// Outcome of a bounds pre-scan: extrema of the intermediate magnitudes
/// the pending write would produce (kept squared until converted, saving
/// a square root per amplitude), and whether any of them falls outside
/// the current bounds by more than one quantization step.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BoundsScan {
    /// (min, max) of the squared intermediate magnitudes.
    pub min_max_sq: Option<(f64, f64)>,
    pub out_of_range: bool,
}

/// Tolerance window of the pre-scan, all in squared-magnitude space.
#[derive(Clone, Copy)]
struct ScanWindow {
    eps_sq: f64,
    one_lo_sq: f64,
    one_hi_sq: f64,
    lo_sq: f64,
    hi_sq: f64,
}

impl ScanWindow {
    fn of(bounds: &Bounds) -> Self {
        let step = bounds.quantization_step();
        let lo = (bounds.r0 - step).max(0.0);
        let hi = bounds.r1 + step;
        Self {
            eps_sq: SPECIAL_EPS * SPECIAL_EPS,
            one_lo_sq: (1.0 - SPECIAL_EPS) * (1.0 - SPECIAL_EPS),
            one_hi_sq: (1.0 + SPECIAL_EPS) * (1.0 + SPECIAL_EPS),
            lo_sq: lo * lo,
            hi_sq: hi * hi,
        }
    }
}

impl BoundsScan {
    #[inline]
    fn observe_sq(&mut self, r_sq: f64, w: &ScanWindow) {
        if r_sq < w.eps_sq || (r_sq > w.one_lo_sq && r_sq < w.one_hi_sq) {
            return; // special value, encoded exactly
        }
        self.min_max_sq = match self.min_max_sq {
            None => Some((r_sq, r_sq)),
            Some((lo, hi)) => Some((lo.min(r_sq), hi.max(r_sq))),
        };
        if r_sq < w.lo_sq || r_sq > w.hi_sq {
            self.out_of_range = true;
        }
    }

    /// Extrema as plain magnitudes.
    pub fn min_max(&self) -> Option<(f64, f64)> {
        self.min_max_sq.map(|(lo, hi)| (lo.sqrt(), hi.sqrt()))
    }

    pub fn merge(self, other: BoundsScan) -> BoundsScan {
        let min_max_sq = match (self.min_max_sq, other.min_max_sq) {
            (None, b) => b,
            (a, None) => a,
            (Some((a0, a1)), Some((b0, b1))) => Some((a0.min(b0), a1.max(b1))),
        };
        BoundsScan { min_max_sq, out_of_range: self.out_of_range || other.out_of_range }
    }
}

struct SharedCodes(*mut EncodedAmplitude);
unsafe impl Sync for SharedCodes {}

impl SharedCodes {
    #[allow(clippy::mut_from_ref)]
    unsafe fn slice(&self, len: usize) -> &mut [EncodedAmplitude] {
        std::slice::from_raw_parts_mut(self.0, len)
    }
}

#[inline]
fn deposit(mut g: usize, positions_ascending: &[usize]) -> usize {
    for &p in positions_ascending {
        let low = g & ((1 << p) - 1);
        g = ((g >> p) << (p + 1)) | low;
    }
    g
}

/// Run `f(codes, group_base)` over every group defined by the operand
/// positions, in parallel over disjoint group ranges.
fn for_each_group<F>(codes: &mut [EncodedAmplitude], positions: &[usize], f: F)
where
    F: Fn(&mut [EncodedAmplitude], usize) + Sync,
{
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    let groups = codes.len() >> sorted.len();
    if codes.len() < PAR_MIN_LEN {
        for g in 0..groups {
            f(codes, deposit(g, &sorted));
        }
        return;
    }
    let shared = SharedCodes(codes.as_mut_ptr());
    let len = codes.len();
    let chunk = (groups / (rayon::current_num_threads() * 8)).max(1 << 10);
    let n_chunks = groups.div_ceil(chunk);
    (0..n_chunks).into_par_iter().for_each(|c| {
        let slice = unsafe { shared.slice(len) };
        for g in c * chunk..((c + 1) * chunk).min(groups) {
            f(slice, deposit(g, &sorted));
        }
    });
}

#[derive(Clone)]
pub struct EncodedState {
    n: usize,
    codes: Vec<EncodedAmplitude>,
    bounds: Bounds,
    /// Magnitude by b0 (index `b0 as u8`); entry for the zero code is 0.0
    /// so decodes are branch-free.
    mag_lut: [f64; 256],
    cos_lut: [f64; 256],
    sin_lut: [f64; 256],
    history: Vec<(f64, f64)>,
}

impl EncodedState {
    pub fn new(n: usize) -> Result<Self, ExecError> {
        let len = 1usize
            .checked_shl(n as u32)
            .filter(|_| n < 64)
            .ok_or(ExecError::Allocation { required_bytes: 1u128 << (n + 1) })?;
        let mut codes = Vec::new();
        codes
            .try_reserve_exact(len)
            .map_err(|_| ExecError::Allocation { required_bytes: (len as u128) * 2 })?;
        codes.resize(len, EncodedAmplitude::ZERO);
        codes[0] = EncodedAmplitude { b0: super::code::CODE_ONE, b1: 0 };
        let mut cos_lut = [0.0; 256];
        let mut sin_lut = [0.0; 256];
        for b1 in -128i32..128 {
            let theta = PI * f64::from(b1) / 128.0;
            cos_lut[(b1 as i8) as u8 as usize] = theta.cos();
            sin_lut[(b1 as i8) as u8 as usize] = theta.sin();
        }
        let mut state = Self {
            n,
            codes,
            bounds: Bounds::SENTINEL,
            mag_lut: [0.0; 256],
            cos_lut,
            sin_lut,
            history: vec![(Bounds::SENTINEL.r0, Bounds::SENTINEL.r1)],
        };
        state.rebuild_mag_lut();
        Ok(state)
    }

    fn rebuild_mag_lut(&mut self) {
        for b0 in -128i32..128 {
            let b0 = b0 as i8;
            self.mag_lut[b0 as u8 as usize] =
                if b0 == CODE_ZERO { 0.0 } else { magnitude_of(b0, self.bounds) };
        }
    }

    fn set_bounds(&mut self, bounds: Bounds) {
        if bounds != self.bounds {
            self.bounds = bounds;
            self.history.push((bounds.r0, bounds.r1));
            self.rebuild_mag_lut();
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn bounds_history(&self) -> &[(f64, f64)] {
        &self.history
    }

    pub fn codes(&self) -> &[EncodedAmplitude] {
        &self.codes
    }

    #[inline]
    pub fn decode_at(&self, i: usize) -> C64 {
        let c = self.codes[i];
        let r = self.mag_lut[c.b0 as u8 as usize];
        C64::new(
            r * self.cos_lut[c.b1 as u8 as usize],
            r * self.sin_lut[c.b1 as u8 as usize],
        )
    }

    #[inline]
    fn prob_at(&self, i: usize) -> f64 {
        let r = self.mag_lut[self.codes[i].b0 as u8 as usize];
        r * r
    }

    /// Full decode, for desk-scale comparisons against the exact engine.
    pub fn decode_all(&self) -> Vec<C64> {
        (0..self.codes.len()).map(|i| self.decode_at(i)).collect()
    }

    #[inline]
    fn shift_phase(code: EncodedAmplitude, delta: f64) -> EncodedAmplitude {
        if code.is_zero() {
            return code; // keep the canonical zero
        }
        let b1 = wrap_phase_code((f64::from(code.b1) + delta).round());
        EncodedAmplitude { b0: code.b0, b1 }
    }

    /// Apply a gate instruction at the given physical positions
    /// (`positions` in mnemonic order, controls first).
    pub fn apply_instr(
        &mut self,
        instr: &Instruction,
        positions: &[usize],
    ) -> Result<(), ExecError> {
        use Instruction::*;
        match instr {
            Identity(_) => {}
            PauliX(_) => {
                let mask = 1usize << positions[0];
                for_each_group(&mut self.codes, positions, |codes, base| {
                    codes.swap(base, base | mask);
                });
            }
            PauliY(_) => {
                // |0⟩ ← -i·a1, |1⟩ ← i·a0: swap plus quarter-turn codes.
                let mask = 1usize << positions[0];
                for_each_group(&mut self.codes, positions, |codes, base| {
                    let lo = codes[base];
                    let hi = codes[base | mask];
                    codes[base] = Self::shift_phase(hi, -64.0);
                    codes[base | mask] = Self::shift_phase(lo, 64.0);
                });
            }
            PauliZ(_) | SGate(_) | SDag(_) | TGate(_) | TDag(_) | U1(..) | PhaseShift { .. } => {
                let delta = match instr {
                    PauliZ(_) => 128.0,
                    SGate(_) => 64.0,
                    SDag(_) => -64.0,
                    TGate(_) => 32.0,
                    TDag(_) => -32.0,
                    U1(_, lambda) => 128.0 * lambda / PI,
                    PhaseShift { k, .. } => 128.0 * shift_angle(*k) / PI,
                    _ => unreachable!(),
                };
                let mask = 1usize << positions[0];
                for_each_group(&mut self.codes, positions, |codes, base| {
                    codes[base | mask] = Self::shift_phase(codes[base | mask], delta);
                });
            }
            Cnot { .. } => {
                let c = 1usize << positions[0];
                let t = 1usize << positions[1];
                for_each_group(&mut self.codes, positions, |codes, base| {
                    codes.swap(base | c, base | c | t);
                });
            }
            CPhase { k, .. } => {
                let delta = 128.0 * shift_angle(*k) / PI;
                let c = 1usize << positions[0];
                let t = 1usize << positions[1];
                for_each_group(&mut self.codes, positions, |codes, base| {
                    let i = base | c | t;
                    codes[i] = Self::shift_phase(codes[i], delta);
                });
            }
            Toffoli { .. } => {
                let c1 = 1usize << positions[0];
                let c2 = 1usize << positions[1];
                let t = 1usize << positions[2];
                for_each_group(&mut self.codes, positions, |codes, base| {
                    codes.swap(base | c1 | c2, base | c1 | c2 | t);
                });
            }
            Hadamard(_) | PlusX(_) | MinusX(_) | PlusY(_) | MinusY(_) | U2(..) | U3(..) => {
                let m = match gate_matrix(instr).expect("unitary gate") {
                    GateMatrix::One(m) => m,
                    _ => unreachable!("single-qubit arithmetic gate"),
                };
                let scan = self.scan_single(positions[0], &m);
                let bounds = self.choose_bounds(scan);
                self.write_single(positions[0], &m, bounds);
            }
            other => {
                return Err(ExecError::Unsupported {
                    engine: "encoded",
                    mnemonic: other.mnemonic().to_string(),
                })
            }
        }
        Ok(())
    }

    /// Bounds for a pending write: keep the current ones unless the scan
    /// saw a magnitude out of range by more than one quantization step.
    pub fn choose_bounds(&self, scan: BoundsScan) -> Bounds {
        if scan.out_of_range {
            Bounds::from_min_max(scan.min_max())
        } else {
            self.bounds
        }
    }

    /// Pass 1 of a single-qubit arithmetic gate: compute the would-be
    /// amplitudes and report their magnitude extrema without writing.
    pub fn scan_single(&self, j: usize, m: &[[C64; 2]; 2]) -> BoundsScan {
        let stride = 1usize << j;
        let block = stride << 1;
        let window = ScanWindow::of(&self.bounds);
        let scan_block = |codes: &[EncodedAmplitude], lut: &Self| {
            let mut s = BoundsScan::default();
            for l in 0..stride {
                let a0 = lut.decode_code(codes[l]);
                let a1 = lut.decode_code(codes[l + stride]);
                let n0 = m[0][0] * a0 + m[0][1] * a1;
                let n1 = m[1][0] * a0 + m[1][1] * a1;
                s.observe_sq(n0.norm_sqr(), &window);
                s.observe_sq(n1.norm_sqr(), &window);
            }
            s
        };
        if self.codes.len() < PAR_MIN_LEN {
            let mut s = BoundsScan::default();
            for b in self.codes.chunks_exact(block) {
                s = s.merge(scan_block(b, self));
            }
            s
        } else {
            self.codes
                .par_chunks_exact(block)
                .map(|b| scan_block(b, self))
                .reduce(BoundsScan::default, BoundsScan::merge)
        }
    }

    #[inline]
    fn decode_code(&self, c: EncodedAmplitude) -> C64 {
        let r = self.mag_lut[c.b0 as u8 as usize];
        C64::new(
            r * self.cos_lut[c.b1 as u8 as usize],
            r * self.sin_lut[c.b1 as u8 as usize],
        )
    }

    /// Pass 2: recompute and re-encode under the agreed bounds (decoding
    /// still happens under the bounds the codes were written with).
    pub fn write_single(&mut self, j: usize, m: &[[C64; 2]; 2], new_bounds: Bounds) {
        let stride = 1usize << j;
        let block = stride << 1;
        let nstates = self.codes.len() >> 1;
        let lut = LutView::of(self);
        let write_block = |codes: &mut [EncodedAmplitude]| {
            for l in 0..stride {
                let a0 = lut.decode(codes[l]);
                let a1 = lut.decode(codes[l + stride]);
                codes[l] = encode(m[0][0] * a0 + m[0][1] * a1, new_bounds);
                codes[l + stride] = encode(m[1][0] * a0 + m[1][1] * a1, new_bounds);
            }
        };
        if self.codes.len() < PAR_MIN_LEN {
            for b in self.codes.chunks_exact_mut(block) {
                write_block(b);
            }
        } else if nstates / (stride + stride) >= stride {
            self.codes.par_chunks_exact_mut(block).for_each(write_block);
        } else {
            for b in self.codes.chunks_exact_mut(block) {
                let (lo, hi) = b.split_at_mut(stride);
                lo.par_iter_mut().zip(hi.par_iter_mut()).for_each(|(c0, c1)| {
                    let a0 = lut.decode(*c0);
                    let a1 = lut.decode(*c1);
                    *c0 = encode(m[0][0] * a0 + m[0][1] * a1, new_bounds);
                    *c1 = encode(m[1][0] * a0 + m[1][1] * a1, new_bounds);
                });
            }
        }
        self.set_bounds(new_bounds);
    }

    /// Extrema of the currently stored intermediate magnitudes.
    pub fn scan_current_bounds(&self) -> Option<(f64, f64)> {
        let fold = |range: std::ops::Range<usize>| {
            let mut mm: Option<(f64, f64)> = None;
            for i in range {
                let r = self.mag_lut[self.codes[i].b0 as u8 as usize];
                if is_intermediate(r) {
                    mm = match mm {
                        None => Some((r, r)),
                        Some((lo, hi)) => Some((lo.min(r), hi.max(r))),
                    };
                }
            }
            mm
        };
        let merge = |a: Option<(f64, f64)>, b: Option<(f64, f64)>| match (a, b) {
            (None, x) => x,
            (x, None) => x,
            (Some((a0, a1)), Some((b0, b1))) => Some((a0.min(b0), a1.max(b1))),
        };
        if self.codes.len() < PAR_MIN_LEN {
            fold(0..self.codes.len())
        } else {
            let chunk = 1 << 14;
            (0..self.codes.len().div_ceil(chunk))
                .into_par_iter()
                .map(|c| fold(c * chunk..((c + 1) * chunk).min(self.codes.len())))
                .reduce(|| None, merge)
        }
    }

    /// Re-encode every amplitude under explicit bounds (decode under the
    /// current ones first).
    pub fn reencode(&mut self, new_bounds: Bounds) {
        let lut = LutView::of(self);
        self.codes.par_iter_mut().for_each(|c| {
            *c = encode(lut.decode(*c), new_bounds);
        });
        self.set_bounds(new_bounds);
    }

    /// Retune (r0, r1) to the exact extrema of the stored intermediate
    /// magnitudes and re-encode everything; a state of pure specials gets
    /// the sentinel bounds and its codes stay untouched.
    pub fn rescale(&mut self) -> Bounds {
        let bounds = Bounds::from_min_max(self.scan_current_bounds());
        self.reencode(bounds);
        self.bounds
    }

    pub fn norm_sq(&self) -> f64 {
        chunked_sum(self.codes.len(), |r| r.map(|i| self.prob_at(i)).sum())
    }

    /// Raw pair sums over bit `j`: (Σ Re a₀*a₁, Σ Im a₀*a₁, Σ |a₁|²).
    pub fn qubit_pair_sums(&self, j: usize) -> [f64; 3] {
        let stride = 1usize << j;
        let pairs = self.codes.len() >> 1;
        chunked_sum3(pairs, |r| {
            let mut acc = [0.0f64; 3];
            for t in r {
                let i0 = ((t >> j) << (j + 1)) | (t & (stride - 1));
                let a0 = self.decode_at(i0);
                let a1 = self.decode_at(i0 | stride);
                let cross = a0.conj() * a1;
                acc[0] += cross.re;
                acc[1] += cross.im;
                acc[2] += a1.norm_sqr();
            }
            acc
        })
    }

    pub fn qubit_expectation(&self, j: usize) -> [f64; 3] {
        let [re, im, p1] = self.qubit_pair_sums(j);
        [0.5 - re, 0.5 - im, p1]
    }

    pub fn prob_one_at(&self, j: usize) -> f64 {
        let mask = 1usize << j;
        chunked_sum(self.codes.len(), |r| {
            r.filter(|i| i & mask != 0).map(|i| self.prob_at(i)).sum()
        })
    }

    /// Mass of the branch that `collapse_at` would keep.
    pub fn branch_mass(&self, j: usize, outcome: u8) -> f64 {
        let mask = 1usize << j;
        chunked_sum(self.codes.len(), |r| {
            r.filter(|i| ((i & mask != 0) as u8) == outcome)
                .map(|i| self.prob_at(i))
                .sum()
        })
    }

    /// Scaled-survivor magnitude extrema for a pending collapse.
    pub fn scan_collapse(&self, j: usize, outcome: u8, scale: f64) -> Option<(f64, f64)> {
        let mask = 1usize << j;
        let fold = |range: std::ops::Range<usize>| {
            let mut mm: Option<(f64, f64)> = None;
            for i in range {
                if ((i & mask != 0) as u8) != outcome {
                    continue;
                }
                let r = self.mag_lut[self.codes[i].b0 as u8 as usize] * scale;
                if is_intermediate(r) {
                    mm = match mm {
                        None => Some((r, r)),
                        Some((lo, hi)) => Some((lo.min(r), hi.max(r))),
                    };
                }
            }
            mm
        };
        // collapse is rare; a sequential scan keeps this simple
        fold(0..self.codes.len())
    }

    /// Zero the discarded branch and rescale the survivors by `scale`,
    /// encoding under `new_bounds`.
    pub fn write_collapse(&mut self, j: usize, outcome: u8, scale: f64, new_bounds: Bounds) {
        let mask = 1usize << j;
        let lut = LutView::of(self);
        self.codes.par_iter_mut().enumerate().for_each(|(i, c)| {
            if ((i & mask != 0) as u8) == outcome {
                *c = encode(lut.decode(*c) * scale, new_bounds);
            } else {
                *c = EncodedAmplitude::ZERO;
            }
        });
        self.set_bounds(new_bounds);
    }

    pub fn collapse_at(
        &mut self,
        j: usize,
        outcome: u8,
        mnemonic: &'static str,
        qubit_label: usize,
    ) -> Result<(), ExecError> {
        let mass = self.branch_mass(j, outcome);
        if mass < crate::exact::PROJECTION_EPS {
            return Err(ExecError::ProjectionZero { mnemonic, qubit: qubit_label });
        }
        let scale = 1.0 / mass.sqrt();
        let bounds = Bounds::from_min_max(self.scan_collapse(j, outcome, scale));
        self.write_collapse(j, outcome, scale, bounds);
        Ok(())
    }

    /// Magnitude extrema of the whole slice after scaling by `scale`.
    pub fn scan_scaled_all(&self, scale: f64) -> Option<(f64, f64)> {
        let mut mm: Option<(f64, f64)> = None;
        for c in &self.codes {
            let r = self.mag_lut[c.b0 as u8 as usize] * scale;
            if is_intermediate(r) {
                mm = match mm {
                    None => Some((r, r)),
                    Some((lo, hi)) => Some((lo.min(r), hi.max(r))),
                };
            }
        }
        mm
    }

    /// Multiply every amplitude by `scale`, re-encoding under `new_bounds`.
    pub fn scale_all(&mut self, scale: f64, new_bounds: Bounds) {
        let lut = LutView::of(self);
        self.codes.par_iter_mut().for_each(|c| {
            *c = encode(lut.decode(*c) * scale, new_bounds);
        });
        self.set_bounds(new_bounds);
    }

    /// Zero every amplitude; bounds are forced to `new_bounds` so that
    /// distributed slices stay in agreement.
    pub fn zero_all(&mut self, new_bounds: Bounds) {
        self.codes.fill(EncodedAmplitude::ZERO);
        self.set_bounds(new_bounds);
    }

    /// Zero every amplitude without touching the bounds (used to turn a
    /// freshly built state into an empty rank slice).
    pub fn clear_all(&mut self) {
        self.codes.fill(EncodedAmplitude::ZERO);
    }

    /// Overwrite one code (rank-local pattern assignment).
    pub fn set_code(&mut self, i: usize, code: EncodedAmplitude) {
        self.codes[i] = code;
    }

    /// Force the bounds (distributed agreement) without re-encoding.
    pub fn force_bounds(&mut self, bounds: Bounds) {
        self.set_bounds(bounds);
    }

    pub fn is_all_zero_state(&self) -> bool {
        self.codes[0] == EncodedAmplitude { b0: super::code::CODE_ONE, b1: 0 }
            && (self.norm_sq() - 1.0).abs() < 1e-10
    }

    /// Overwrite with a sparse uniform pattern: every listed index gets
    /// magnitude `amp` (phase 0), everything else becomes zero. The
    /// bounds collapse to (amp, amp), so the representation is exact.
    pub fn assign_uniform_pattern(&mut self, amp: f64, indices: impl Iterator<Item = u64>) {
        self.codes.fill(EncodedAmplitude::ZERO);
        let bounds =
            if is_intermediate(amp) { Bounds { r0: amp, r1: amp } } else { Bounds::SENTINEL };
        self.set_bounds(bounds);
        let code = encode(C64::new(amp, 0.0), bounds);
        for i in indices {
            self.codes[i as usize] = code;
        }
    }

    pub fn sample_indices(&self, count: u64, stream: &mut Stream) -> Vec<u64> {
        let index = MassIndex::build(self.codes.len(), |r| {
            r.map(|i| self.prob_at(i)).sum()
        });
        index.sample(count, stream, |i| self.prob_at(i))
    }
}

/// Borrow-free decode view used inside parallel writes (the LUTs are
/// read-only while codes are rewritten).
#[derive(Clone, Copy)]
struct LutView {
    mag: [f64; 256],
    cos: [f64; 256],
    sin: [f64; 256],
}

impl LutView {
    fn of(s: &EncodedState) -> Self {
        Self { mag: s.mag_lut, cos: s.cos_lut, sin: s.sin_lut }
    }

    #[inline]
    fn decode(&self, c: EncodedAmplitude) -> C64 {
        let r = self.mag[c.b0 as u8 as usize];
        C64::new(r * self.cos[c.b1 as u8 as usize], r * self.sin[c.b1 as u8 as usize])
    }
}
