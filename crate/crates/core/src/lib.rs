//! A gate-based universal quantum computer simulator.
//!
//! The simulator executes circuits written in a small assembler-like
//! instruction language (one mnemonic per line, e.g. `H 0`, `CNOT 0 1`)
//! on one of four interchangeable execution engines:
//!
//! - [`exact`] — full-precision state vector, 16 bytes per amplitude,
//!   in-place sparse unitary updates.
//! - [`encoded`] — state vector with each amplitude stored in 2 bytes
//!   via an adaptive polar encoding, an 8x memory reduction traded for
//!   decode/encode CPU time.
//! - [`auxvar`] — memory-frugal amplitude evaluator that rewrites the
//!   circuit as single-qubit chains plus controlled-phase factors and
//!   sums over auxiliary spin configurations; O(N·M·2^P) time,
//!   O(N+M) memory for M requested amplitudes.
//! - [`dist`] — a distributed-memory execution model: amplitudes
//!   partitioned over 2^Nh ranks by high-order index bits, nonlocal
//!   gates realized by swapping global and local qubits through a
//!   pairwise transport, with the live qubit permutation tracked.
//!
//! The [`circuit`] module holds the parser, validator, pretty-printer,
//! gate matrices and circuit generators; [`exec`] holds the engine
//! trait, the instruction dispatcher and result formatting.

pub mod auxvar;
pub mod circuit;
pub mod dist;
pub mod encoded;
pub mod exact;
pub mod exec;
pub mod rng;

#[doc(hidden)]
pub mod testkit;

/// Complex amplitude type used throughout the simulator.
pub type C64 = num_complex::Complex64;
