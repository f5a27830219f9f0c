//! Per-run seed derivation.
//!
//! Seeds are built by chaining the SplitMix64 finalizer over
//! `(master_seed, function number, algorithm code, run index)`:
//!
//! ```text
//! h = mix(master_seed)
//! h = mix(h ^ function)
//! h = mix(h ^ algorithm)
//! h = mix(h ^ run_index)
//! ```
//!
//! Every step is a bijection of `h`, so two runs of the same cell never
//! share a seed.

use cro_core::{FunctionId, Variant};

/// SplitMix64 output function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn run_seed(master_seed: u64, function: FunctionId, algorithm: Variant, run_index: u64) -> u64 {
    let mut h = splitmix64(master_seed);
    h = splitmix64(h ^ u64::from(function.number()));
    h = splitmix64(h ^ algorithm.code());
    splitmix64(h ^ run_index)
}
