//! In-place sparse unitary updates on a state vector.
//!
//! A gate on qubit j selects pairs of amplitudes whose indices differ only
//! in bit j and replaces each pair by its image under the 2x2 matrix; two-
//! and three-qubit gates do the same with groups of four and eight. The
//! update is in place with O(1) auxiliary memory per group, and groups are
//! disjoint, so distributing them over worker threads is bitwise
//! equivalent to sequential execution.

use crate::C64;
use rayon::prelude::*;

/// Below this state length everything runs sequentially; the split logic
/// is pointless next to thread-pool overhead.
const PAR_MIN_LEN: usize = 1 << 15;

#[inline]
fn pair_update(a0: &mut C64, a1: &mut C64, m: &[[C64; 2]; 2]) {
    let (x0, x1) = (*a0, *a1);
    *a0 = m[0][0] * x0 + m[0][1] * x1;
    *a1 = m[1][0] * x0 + m[1][1] * x1;
}

#[inline]
fn single_block(block: &mut [C64], stride: usize, m: &[[C64; 2]; 2]) {
    let (lo, hi) = block.split_at_mut(stride);
    for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
        pair_update(a0, a1, m);
    }
}

/// Apply a 2x2 matrix to qubit at bit position `j`.
///
/// Loop order: outer over the bits above j, inner over the bits below j.
/// The test `nstates/(i+i) >= i` decides whether the outer or the inner
/// loop is distributed over the workers; it is not always the optimal
/// choice, but the difference is marginal and the test is universal.
pub fn apply_single(amps: &mut [C64], j: usize, m: &[[C64; 2]; 2]) {
    let nstates = amps.len() >> 1;
    let i = 1usize << j;
    let block = i << 1;
    debug_assert!(block <= amps.len());
    if amps.len() < PAR_MIN_LEN {
        for b in amps.chunks_exact_mut(block) {
            single_block(b, i, m);
        }
    } else if nstates / (i + i) >= i {
        amps.par_chunks_exact_mut(block)
            .for_each(|b| single_block(b, i, m));
    } else {
        for b in amps.chunks_exact_mut(block) {
            let (lo, hi) = b.split_at_mut(i);
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .for_each(|(a0, a1)| pair_update(a0, a1, m));
        }
    }
}

/// A small dense matrix with the zero entries elided, row by row.
/// CNOT and TOFFOLI rows collapse to bare amplitude moves this way, which
/// keeps their update memory-bound as intended.
#[derive(Clone, Debug)]
pub struct RowProgram {
    dim: usize,
    rows: Vec<Vec<(usize, C64)>>,
}

impl RowProgram {
    pub fn new(dim: usize, entry: impl Fn(usize, usize) -> C64) -> Self {
        let rows = (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| (c, entry(r, c)))
                    .filter(|(_, v)| v.re != 0.0 || v.im != 0.0)
                    .collect()
            })
            .collect();
        Self { dim, rows }
    }

    #[inline]
    fn apply(&self, x: &[C64; 8], y: &mut [C64; 8]) {
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for &(c, v) in row {
                acc += v * x[c];
            }
            y[r] = acc;
        }
    }
}

/// Insert a zero bit at each of the (ascending) positions.
#[inline]
fn deposit(mut g: usize, positions_ascending: &[usize]) -> usize {
    for &p in positions_ascending {
        let low = g & ((1 << p) - 1);
        g = ((g >> p) << (p + 1)) | low;
    }
    g
}

struct SharedAmps(*mut C64);
unsafe impl Sync for SharedAmps {}

impl SharedAmps {
    /// Caller must guarantee the concurrent index sets are disjoint.
    #[allow(clippy::mut_from_ref)]
    unsafe fn slice(&self, len: usize) -> &mut [C64] {
        std::slice::from_raw_parts_mut(self.0, len)
    }
}

/// Apply a gate to the qubits at `positions`, where bit b of a matrix
/// index addresses `positions[b]`. Groups are enumerated in ascending
/// memory order.
pub fn apply_multi(amps: &mut [C64], positions: &[usize], program: &RowProgram) {
    let arity = positions.len();
    debug_assert_eq!(program.dim, 1 << arity);
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    let offsets: Vec<usize> = (0..program.dim)
        .map(|k| {
            (0..arity)
                .filter(|b| (k >> b) & 1 == 1)
                .map(|b| 1usize << positions[b])
                .sum()
        })
        .collect();
    let groups = amps.len() >> arity;

    let kernel = |amps: &mut [C64], g_range: std::ops::Range<usize>| {
        let mut x = [C64::new(0.0, 0.0); 8];
        let mut y = [C64::new(0.0, 0.0); 8];
        for g in g_range {
            let base = deposit(g, &sorted);
            for (k, &off) in offsets.iter().enumerate() {
                x[k] = amps[base + off];
            }
            program.apply(&x, &mut y);
            for (k, &off) in offsets.iter().enumerate() {
                amps[base + off] = y[k];
            }
        }
    };

    if amps.len() < PAR_MIN_LEN {
        kernel(amps, 0..groups);
        return;
    }

    // Distinct group indices expand to disjoint amplitude sets, so chunks
    // of the group range may be processed concurrently in place.
    let shared = SharedAmps(amps.as_mut_ptr());
    let len = amps.len();
    let chunk = (groups / (rayon::current_num_threads() * 8)).max(1 << 10);
    let n_chunks = groups.div_ceil(chunk);
    (0..n_chunks).into_par_iter().for_each(|c| {
        let range = c * chunk..((c + 1) * chunk).min(groups);
        let slice = unsafe { shared.slice(len) };
        kernel(slice, range);
    });
}
