//! Counter-keyed deterministic randomness.
//!
//! The generator for `(seed, trial, step)` is ChaCha8 with the 32-byte key
//! `seed.to_le_bytes() ‖ trial.to_le_bytes() ‖ [0; 16]`, stream number
//! `step`, word position 0. Draws consume `next_u64`/`next_u32` outputs in
//! order:
//!
//! * F_2 entries: each `next_u64` supplies 64 entries, least significant bit
//!   first; unused high bits of the last word are discarded.
//! * F_q entries (q > 2): one `next_u32` per attempt, accepted when below
//!   `⌊2³²/q⌋·q`, entry `x mod q`.
//! * Integers below `d`: `⌈bits(d)/64⌉` words from `next_u64`, assembled
//!   little-endian, masked to `bits(d)` bits, rejected while `≥ d`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64, trial: u64, step: u64) -> TrialRng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(step);
    rng
}

/// `n` uniform elements of F_q, as integer codes.
pub fn uniform_field_elements(rng: &mut impl RngCore, q: u32, n: usize) -> Vec<u8> {
    if q == 2 {
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let w = rng.next_u64();
            let take = (n - out.len()).min(64);
            out.extend((0..take).map(|b| ((w >> b) & 1) as u8));
        }
        return out;
    }
    let limit = (u32::MAX as u64 + 1) / q as u64 * q as u64;
    (0..n)
        .map(|_| loop {
            let x = rng.next_u32() as u64;
            if x < limit {
                break (x % q as u64) as u8;
            }
        })
        .collect()
}

/// Uniform integer in `[0, d)`.
pub fn uniform_below(rng: &mut impl RngCore, d: &BigUint) -> BigUint {
    assert!(!d.is_zero(), "empty range");
    let bits = d.bits();
    let words = bits.div_ceil(64) as usize;
    let mask = (BigUint::one() << bits) - 1u32;
    loop {
        let digits: Vec<u64> = (0..words).map(|_| rng.next_u64()).collect();
        let x = BigUint::from_slice(
            &digits.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect::<Vec<u32>>(),
        ) & &mask;
        if &x < d {
            return x;
        }
    }
}

/// Index drawn exactly from nonnegative rational weights summing to 1.
pub fn sample_exact(rng: &mut impl RngCore, probs: &[Rational]) -> Result<usize> {
    if probs.iter().any(|p| p.is_negative()) {
        return Err(Error::Internal("negative probability".into()));
    }
    let denom = probs.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.denom()));
    let weights: Vec<BigInt> = probs.iter().map(|p| p.numer() * (&denom / p.denom())).collect();
    let total: BigInt = weights.iter().sum();
    if total != denom {
        return Err(Error::Internal("probabilities do not sum to 1".into()));
    }
    let u = BigInt::from(uniform_below(rng, &denom.to_biguint().expect("positive")));
    let mut acc = BigInt::zero();
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return Ok(i);
        }
    }
    unreachable!("u below total")
}
