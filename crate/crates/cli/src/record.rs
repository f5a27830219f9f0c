//! Run-record (JSON) and collision-rate trace (CSV) files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use cro_core::{AlgorithmConfig, BenchmarkSpec, RunRecord};
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

/// On-disk form of one run. Wall-clock time is left out so that equal
/// inputs give byte-identical files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunFile {
    pub function: String,
    pub algorithm: String,
    pub dim: usize,
    pub seed: u64,
    pub max_fe: u64,
    pub boundary: String,
    pub best_value: f64,
    pub raw_best_value: f64,
    pub fe_used: u64,
    pub iterations: u64,
    pub final_counter: i64,
    pub final_population: usize,
    /// Attempted/accepted counts for onwall, decomposition, inter, synthesis.
    pub attempted: [u64; 4],
    pub accepted: [u64; 4],
    pub non_finite: u64,
    pub best_structure: Vec<f64>,
    pub best_trajectory: Vec<(u64, f64)>,
}

impl RunFile {
    pub fn new(record: &RunRecord, config: &AlgorithmConfig, spec: &BenchmarkSpec) -> Self {
        RunFile {
            function: spec.id.to_string(),
            algorithm: config.variant.to_string(),
            dim: spec.dim,
            seed: record.seed,
            max_fe: config.max_fe,
            boundary: config.boundary_scheme.to_string(),
            best_value: record.best_value,
            raw_best_value: record.raw_best_value,
            fe_used: record.fe_used,
            iterations: record.iterations,
            final_counter: record.final_counter,
            final_population: record.final_population,
            attempted: record.stats.attempted,
            accepted: record.stats.accepted,
            non_finite: record.stats.non_finite,
            best_structure: record.best_structure.clone(),
            best_trajectory: record.best_trajectory.clone(),
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), HarnessError> {
        let file = File::create(path).map_err(|e| HarnessError::io(path, e))?;
        let mut w = BufWriter::new(file);
        serde_json::to_writer_pretty(&mut w, self).map_err(|source| HarnessError::Json {
            path: path.to_path_buf(),
            cause: source,
        })?;
        w.write_all(b"\n")
            .and_then(|_| w.flush())
            .map_err(|e| HarnessError::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let file = File::open(path).map_err(|e| HarnessError::io(path, e))?;
        serde_json::from_reader(std::io::BufReader::new(file)).map_err(|source| {
            HarnessError::Json {
                path: path.to_path_buf(),
                cause: source,
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: u64,
    pub coll_rate: f64,
}

pub fn save_trace(trace: &[(u64, f64)], path: &Path) -> Result<(), HarnessError> {
    let csv_err = |source| HarnessError::Csv {
        path: path.to_path_buf(),
        cause: source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for &(iteration, coll_rate) in trace {
        w.serialize(TracePoint {
            iteration,
            coll_rate,
        })
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

pub fn load_trace(path: &Path) -> Result<Vec<TracePoint>, HarnessError> {
    let csv_err = |source| HarnessError::Csv {
        path: path.to_path_buf(),
        cause: source,
    };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    r.deserialize().collect::<Result<_, _>>().map_err(csv_err)
}
