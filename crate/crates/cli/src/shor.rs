//! Classical post-processing of order-finding samples: continued-fraction
//! expansion of each measured x-register value, period verification by
//! modular exponentiation, and factor extraction via greatest common
//! divisors.

use qusim_core::circuit::ShorParams;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShorOutcome {
    /// Measured x-register values fed into the expansion.
    pub samples: Vec<u64>,
    /// Verified period r of y^x mod G, when one was found.
    pub period: Option<u64>,
    /// Nontrivial factors with p·q = G.
    pub factors: Option<(u64, u64)>,
    /// Why no factors were produced (odd period, trivial square root, …).
    pub failure: Option<String>,
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Denominators of the convergents of c / 2^{n_x}.
fn convergent_denominators(c: u64, n_x: usize) -> Vec<u64> {
    let mut denoms = Vec::new();
    let (mut num, mut den) = (c, 1u64 << n_x);
    // q_i = a_i·q_{i-1} + q_{i-2}, seeded with q_{-2} = 1, q_{-1} = 0
    let (mut k_prev, mut k) = (1u64, 0u64);
    while den != 0 {
        let a = num / den;
        let next = num % den;
        num = den;
        den = next;
        let k_next = match a.checked_mul(k).and_then(|v| v.checked_add(k_prev)) {
            Some(v) => v,
            None => break,
        };
        k_prev = k;
        k = k_next;
        denoms.push(k);
    }
    denoms
}

/// Shrink a verified multiple of the order down to the order itself.
fn reduce_to_order(mut r: u64, y: u64, g: u64) -> u64 {
    let mut d = 2u64;
    let mut factors = Vec::new();
    let mut m = r;
    while d * d <= m {
        while m % d == 0 {
            factors.push(d);
            m /= d;
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    for p in factors {
        while r % p == 0 && pow_mod(y, r / p, g) == 1 {
            r /= p;
        }
    }
    r
}

/// Smallest verified period suggested by one sample, if any: denominators
/// of the continued-fraction convergents of c/2^{n_x} and small multiples
/// of them, tested by y^{r} mod G = 1.
fn period_from_sample(c: u64, params: &ShorParams) -> Option<u64> {
    if c == 0 {
        return None;
    }
    for den in convergent_denominators(c, params.n_x) {
        if den == 0 || den > params.g {
            continue;
        }
        for multiple in 1..=8u64 {
            let r = den * multiple;
            if r == 0 || r > params.g {
                break;
            }
            if pow_mod(params.y, r, params.g) == 1 {
                return Some(reduce_to_order(r, params.y, params.g));
            }
        }
    }
    None
}

/// Run the classical tail of the factoring procedure over the measured
/// samples. Never panics: exhausted samples yield a failure outcome.
pub fn shor_postprocess(samples: &[u64], params: &ShorParams) -> ShorOutcome {
    let mut outcome = ShorOutcome {
        samples: samples.to_vec(),
        period: None,
        factors: None,
        failure: None,
    };
    let Some(r) = samples.iter().find_map(|&c| period_from_sample(c, params)) else {
        outcome.failure = Some("no valid period found in the samples".into());
        return outcome;
    };
    outcome.period = Some(r);
    if r % 2 == 1 {
        outcome.failure = Some(format!("period r = {r} is odd; retry with another base y"));
        return outcome;
    }
    let half = pow_mod(params.y, r / 2, params.g);
    if half == params.g - 1 {
        outcome.failure =
            Some(format!("y^(r/2) = -1 mod G for r = {r}; retry with another base y"));
        return outcome;
    }
    debug_assert_ne!(half, 1, "r would not be the order");
    let d = gcd(half - 1, params.g);
    let d = if d > 1 && d < params.g { d } else { gcd(half + 1, params.g) };
    if d <= 1 || d >= params.g {
        outcome.failure = Some("square root yielded only trivial divisors".into());
        return outcome;
    }
    let (p, q) = (d.min(params.g / d), d.max(params.g / d));
    outcome.factors = Some((p, q));
    outcome
}
