//! Seedable random-number streams.
//!
//! One counter-based generator per purpose (noise insertion, projective
//! measurement, event generation) so that runs reproduce identical samples
//! regardless of which engine executes the circuit or how many ranks it is
//! partitioned over. Instruction-level seeds (`GENERATE EVENTS`,
//! `DEPOLARIZING CHANNEL`) take precedence; otherwise a master seed is
//! used, and if that is absent too, operating-system entropy is taken and
//! recorded in the run result.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Stream identifiers; each purpose draws from an independent stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Purpose {
    Noise = 1,
    Measure = 2,
    Events = 3,
}

/// Seed configuration for a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SeedConfig {
    /// Master seed; `None` or a non-positive instruction seed falls back
    /// to OS entropy.
    pub master: Option<u64>,
}

/// The seeds actually used, one per purpose, recorded for reproducibility.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SeedsUsed {
    pub noise: Option<u64>,
    pub measure: Option<u64>,
    pub events: Option<u64>,
}

/// Resolve an effective seed: a positive instruction seed wins, then the
/// master seed, then OS entropy.
pub fn resolve_seed(instruction_seed: i64, master: Option<u64>) -> u64 {
    if instruction_seed > 0 {
        instruction_seed as u64
    } else if let Some(m) = master {
        m
    } else {
        rand::rngs::OsRng.next_u64()
    }
}

/// A purpose-bound stream. Identical (seed, purpose) pairs produce
/// identical draw sequences on every platform.
#[derive(Clone, Debug)]
pub struct Stream {
    rng: ChaCha8Rng,
    seed: u64,
}

impl Stream {
    pub fn new(seed: u64, purpose: Purpose) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(purpose as u64);
        Self { rng, seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }
}
