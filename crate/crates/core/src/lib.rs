//! Chemical reaction optimization (CRO) for continuous black-box minimization.
//!
//! The crate holds the pure algorithmic pieces: the reactor state machine,
//! the elementary reaction operators (canonical and adaptive-collision
//! variants), the adaptive collision rate, the shifted/rotated benchmark
//! suite and the statistics used to compare runs. It needs `alloc` but not
//! `std`; file formats and the experiment harness live in `cro-cli`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod adaptive;
pub mod benchmarks;
pub mod config;
pub mod error;
pub mod molecule;
pub mod operators;
pub mod reactor;
pub mod stats;

pub use adaptive::{coll_rate, AdaptiveState};
pub use benchmarks::{BenchmarkSpec, FunctionId, GriewankDivisor, Objective, Rotation};
pub use config::{AlgorithmConfig, BoundaryScheme, Variant};
pub use error::CroError;
pub use molecule::Molecule;
pub use operators::{ReactionKind, ReactionOutcome};
pub use reactor::{run, run_traced, Reactor, ReactorState, RunRecord};
pub use stats::{significance_flag, summarize, t_statistic, SampleSummary};

/// Random generator used for every run. ChaCha keeps streams reproducible
/// across platforms and crate versions.
pub type CroRng = rand_chacha::ChaCha8Rng;

/// Results strictly below this value are reported as exactly zero.
pub const ZERO_THRESHOLD: f64 = 1e-8;

/// Applies the zero-threshold reporting rule.
#[inline]
pub fn report_value(raw: f64) -> f64 {
    if raw < ZERO_THRESHOLD {
        0.0
    } else {
        raw
    }
}
