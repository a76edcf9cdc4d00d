//! 2-byte polar encoding of a complex amplitude.
//!
//! One byte encodes the phase, θ = π·b1/128 for -128 ≤ b1 < 128. The
//! other encodes the magnitude: b0 = -128 and b0 = 127 are the special
//! values r = 0 and r = 1, and the remaining codes map linearly,
//! r = (b0+127)(r1-r0)/253 + r0, between adaptive bounds r0 and r1 — the
//! minimum and maximum magnitude strictly between 0 and 1 over the state.

use crate::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Magnitudes below this are classified as the exact special r = 0;
/// magnitudes within it of 1 as the exact special r = 1.
pub const SPECIAL_EPS: f64 = 1e-12;

pub const CODE_ZERO: i8 = -128;
pub const CODE_ONE: i8 = 127;

/// One amplitude: magnitude code `b0`, phase code `b1`. Exactly 2 bytes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodedAmplitude {
    pub b0: i8,
    pub b1: i8,
}

impl EncodedAmplitude {
    pub const ZERO: Self = Self { b0: CODE_ZERO, b1: 0 };

    pub fn is_zero(self) -> bool {
        self.b0 == CODE_ZERO
    }
}

/// Adaptive magnitude bounds. `degenerate` (r0 == r1) arises when every
/// intermediate magnitude in the state is equal; the linear map then
/// collapses and every non-special code decodes to r0. A state of pure
/// specials carries the sentinel bounds (0.5, 0.5).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub r0: f64,
    pub r1: f64,
}

impl Bounds {
    pub const SENTINEL: Bounds = Bounds { r0: 0.5, r1: 0.5 };

    pub fn quantization_step(&self) -> f64 {
        (self.r1 - self.r0) / 253.0
    }

    /// Bounds from the min/max intermediate magnitude, or the sentinel
    /// when the state holds only specials.
    pub fn from_min_max(min_max: Option<(f64, f64)>) -> Bounds {
        match min_max {
            Some((r0, r1)) => Bounds { r0, r1 },
            None => Bounds::SENTINEL,
        }
    }
}

/// True when `r` is an intermediate magnitude, i.e. neither special.
#[inline]
pub fn is_intermediate(r: f64) -> bool {
    r >= SPECIAL_EPS && (r - 1.0).abs() >= SPECIAL_EPS
}

/// Quantize a phase in radians to its code, rounding half away from zero
/// and wrapping into [-128, 128) (the tie θ = π wraps to b1 = -128, the
/// same angle).
#[inline]
pub fn phase_code(theta: f64) -> i8 {
    wrap_phase_code((128.0 * theta / PI).round())
}

/// Wrap an already-rounded phase code into [-128, 128).
#[inline]
pub fn wrap_phase_code(rounded: f64) -> i8 {
    let wrapped = (rounded as i64).rem_euclid(256);
    if wrapped >= 128 {
        (wrapped - 256) as i8
    } else {
        wrapped as i8
    }
}

/// Amplitude magnitude as sqrt(re² + im²); amplitudes are bounded by 1,
/// so the extra care of a hypot is not needed in this hot path.
#[inline]
pub fn magnitude(z: C64) -> f64 {
    (z.re * z.re + z.im * z.im).sqrt()
}

/// Encode `z` under the given bounds. Magnitudes materially above 1 are
/// a caller bug (amplitudes of a unit vector never exceed 1).
pub fn encode(z: C64, bounds: Bounds) -> EncodedAmplitude {
    let r = magnitude(z);
    debug_assert!(r <= 1.0 + 1e-9, "amplitude magnitude {r} above 1");
    if r < SPECIAL_EPS {
        return EncodedAmplitude::ZERO;
    }
    let b1 = phase_code(z.im.atan2(z.re));
    let b0 = if (r - 1.0).abs() < SPECIAL_EPS {
        CODE_ONE
    } else if bounds.r1 == bounds.r0 {
        0
    } else {
        let q = (r - bounds.r0) * 253.0 / (bounds.r1 - bounds.r0) - 127.0;
        (q.round() as i64).clamp(-127, 126) as i8
    };
    EncodedAmplitude { b0, b1 }
}

/// Decode a code under the given bounds.
pub fn decode(code: EncodedAmplitude, bounds: Bounds) -> C64 {
    if code.b0 == CODE_ZERO {
        return C64::new(0.0, 0.0);
    }
    let r = magnitude_of(code.b0, bounds);
    let theta = PI * f64::from(code.b1) / 128.0;
    C64::new(r * theta.cos(), r * theta.sin())
}

/// Magnitude of a non-zero code.
#[inline]
pub fn magnitude_of(b0: i8, bounds: Bounds) -> f64 {
    if b0 == CODE_ONE {
        1.0
    } else if bounds.r1 == bounds.r0 {
        bounds.r0
    } else {
        (f64::from(b0) + 127.0) * (bounds.r1 - bounds.r0) / 253.0 + bounds.r0
    }
}
