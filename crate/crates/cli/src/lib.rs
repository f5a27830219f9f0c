//! Experiment harness for `cro-core`: benchmark spec files, run records,
//! collision-rate traces and multi-run suites with result tables.

pub mod error;
pub mod record;
pub mod seeds;
pub mod specfile;
pub mod suite;

pub use error::HarnessError;
