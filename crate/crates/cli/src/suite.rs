//! Multi-run experiment suites.
//!
//! Every (function, algorithm) cell is run `runs` times with seeds from
//! [`run_seed`]. Runs are independent and may execute on any number of
//! worker threads; aggregation happens afterwards in a fixed order, so the
//! output does not depend on the degree of parallelism.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use cro_core::benchmarks::generate_spec;
use cro_core::stats::{significance_flag, summarize, t_statistic};
use cro_core::{run, AlgorithmConfig, BenchmarkSpec, BoundaryScheme, FunctionId, Variant};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::seeds::run_seed;
use crate::specfile::{load_spec, spec_path};

pub const RESULTS_CSV: &str = "results.csv";
pub const RESULTS_TABLE: &str = "results.txt";
pub const RUNS_CSV: &str = "runs.csv";

#[derive(Debug, Clone, PartialEq)]
pub enum SpecSource {
    /// Generate every instance from this seed.
    Generate { seed: u64 },
    /// Read `<dir>/f<N>.spec` files written by `gen-data`.
    Load(PathBuf),
}

impl SpecSource {
    pub fn resolve(&self, id: FunctionId, dim: usize) -> Result<BenchmarkSpec, HarnessError> {
        match self {
            SpecSource::Generate { seed } => Ok(generate_spec(id, dim, *seed)),
            SpecSource::Load(dir) => {
                let spec = load_spec(&spec_path(dir, id))?;
                if spec.id != id || spec.dim != dim {
                    return Err(HarnessError::Core(cro_core::CroError::DimensionMismatch {
                        expected: dim,
                        actual: spec.dim,
                    }));
                }
                Ok(spec)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub functions: Vec<FunctionId>,
    /// The first entry is the baseline for the t statistics.
    pub algorithms: Vec<Variant>,
    pub runs: u64,
    pub max_fe: u64,
    pub dim: usize,
    pub master_seed: u64,
    pub output_dir: PathBuf,
    pub spec_source: SpecSource,
    /// Overrides each variant's default boundary scheme.
    pub boundary: Option<BoundaryScheme>,
    pub jobs: usize,
}

impl SuiteConfig {
    pub fn new(output_dir: impl Into<PathBuf>) -> Self {
        SuiteConfig {
            functions: FunctionId::ALL.to_vec(),
            algorithms: vec![
                Variant::CroAc,
                Variant::CroBp,
                Variant::CroBb,
                Variant::CroHp,
            ],
            runs: 51,
            max_fe: 300_000,
            dim: 30,
            master_seed: 0,
            output_dir: output_dir.into(),
            spec_source: SpecSource::Generate { seed: 0 },
            boundary: None,
            jobs: 1,
        }
    }

    pub fn algorithm_config(&self, algorithm: Variant, seed: u64) -> AlgorithmConfig {
        let mut cfg = AlgorithmConfig::new(algorithm)
            .with_seed(seed)
            .with_max_fe(self.max_fe);
        if let Some(b) = self.boundary {
            cfg.boundary_scheme = b;
        }
        cfg
    }
}

/// One run of one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub function: String,
    pub algorithm: String,
    pub run: u64,
    pub seed: u64,
    pub best_value: Option<f64>,
    pub fe_used: Option<u64>,
    pub error: String,
}

/// Aggregate of one (function, algorithm) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub function: String,
    pub algorithm: String,
    pub mean: Option<f64>,
    pub std_dev: Option<f64>,
    /// Pooled t statistic against the baseline algorithm; empty for the
    /// baseline itself. `inf`/`-inf` mark zero-variance dominance.
    pub t_vs_baseline: Option<f64>,
    pub significant: bool,
    pub runs: u64,
    pub max_fe: u64,
    pub failed: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResults {
    pub rows: Vec<ResultRow>,
    pub runs: Vec<RunRow>,
}

struct Task {
    function: FunctionId,
    algorithm: Variant,
    run: u64,
    seed: u64,
}

/// Runs every cell and aggregates. Failures are recorded per run and per
/// cell; the suite itself only fails if the worker pool cannot start.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteResults, HarnessError> {
    let specs: Vec<(FunctionId, Result<BenchmarkSpec, String>)> = cfg
        .functions
        .iter()
        .map(|&f| {
            (
                f,
                cfg.spec_source
                    .resolve(f, cfg.dim)
                    .map_err(|e| e.to_string()),
            )
        })
        .collect();

    let tasks: Vec<Task> = cfg
        .functions
        .iter()
        .flat_map(|&function| {
            cfg.algorithms.iter().flat_map(move |&algorithm| {
                (0..cfg.runs).map(move |run| Task {
                    function,
                    algorithm,
                    run,
                    seed: run_seed(cfg.master_seed, function, algorithm, run),
                })
            })
        })
        .collect();

    let execute = |task: &Task| -> RunRow {
        let spec = &specs
            .iter()
            .find(|(f, _)| *f == task.function)
            .expect("spec resolved for every function")
            .1;
        let outcome = spec.as_ref().map_err(Clone::clone).and_then(|spec| {
            run(&cfg.algorithm_config(task.algorithm, task.seed), spec).map_err(|e| e.to_string())
        });
        let (best_value, fe_used, error) = match outcome {
            Ok(rec) => (Some(rec.best_value), Some(rec.fe_used), String::new()),
            Err(e) => (None, None, e),
        };
        RunRow {
            function: task.function.to_string(),
            algorithm: task.algorithm.to_string(),
            run: task.run,
            seed: task.seed,
            best_value,
            fe_used,
            error,
        }
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| HarnessError::io(&cfg.output_dir, std::io::Error::other(e)))?;
    let runs: Vec<RunRow> = pool.install(|| tasks.par_iter().map(execute).collect());

    Ok(SuiteResults {
        rows: aggregate(cfg, &runs),
        runs,
    })
}

fn aggregate(cfg: &SuiteConfig, runs: &[RunRow]) -> Vec<ResultRow> {
    let mut rows = Vec::new();
    for &f in &cfg.functions {
        let fname = f.to_string();
        let cell = |a: Variant| {
            let aname = a.to_string();
            let members: Vec<&RunRow> = runs
                .iter()
                .filter(|r| r.function == fname && r.algorithm == aname)
                .collect();
            let values: Vec<f64> = members.iter().filter_map(|r| r.best_value).collect();
            let error = members
                .iter()
                .find(|r| !r.error.is_empty())
                .map(|r| r.error.clone())
                .unwrap_or_default();
            (members.len() - values.len(), summarize(&values), error)
        };
        let (_, baseline, _) = cell(cfg.algorithms[0]);
        for (k, &a) in cfg.algorithms.iter().enumerate() {
            let (failed, summary, mut error) = cell(a);
            let (mean, std_dev, t, significant) = match &summary {
                Ok(s) => {
                    let t = match (&baseline, k) {
                        (Ok(b), k) if k > 0 => Some(t_statistic(b, s)),
                        _ => None,
                    };
                    let sig = match (&baseline, t) {
                        (Ok(b), Some(t)) => significance_flag(t, b.n, s.n),
                        _ => false,
                    };
                    (Some(s.mean), Some(s.std_dev), t, sig)
                }
                Err(e) => {
                    if error.is_empty() {
                        error = e.to_string();
                    }
                    (None, None, None, false)
                }
            };
            rows.push(ResultRow {
                function: fname.clone(),
                algorithm: a.to_string(),
                mean,
                std_dev,
                t_vs_baseline: t,
                significant,
                runs: cfg.runs,
                max_fe: cfg.max_fe,
                failed: failed as u64,
                error,
            });
        }
    }
    rows
}

/// `4.2111e-07` style with a signed two-digit exponent.
pub fn sci4(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.4e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn t_cell(t: Option<f64>) -> String {
    match t {
        None => "-".to_string(),
        Some(t) if t.is_infinite() => {
            if t < 0.0 {
                "dominant(-)".to_string()
            } else {
                "dominant(+)".to_string()
            }
        }
        Some(t) => format!("{t:.4}"),
    }
}

pub fn render_table(rows: &[ResultRow]) -> String {
    let header = [
        "function",
        "algorithm",
        "mean",
        "std_dev",
        "t_vs_baseline",
        "significant",
        "runs",
        "failed",
    ];
    let body: Vec<[String; 8]> = rows
        .iter()
        .map(|r| {
            [
                r.function.clone(),
                r.algorithm.clone(),
                r.mean.map_or("n/a".into(), sci4),
                r.std_dev.map_or("n/a".into(), sci4),
                t_cell(r.t_vs_baseline),
                if r.t_vs_baseline.is_none() {
                    "-".into()
                } else {
                    r.significant.to_string()
                },
                r.runs.to_string(),
                r.failed.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let joined: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", joined.join("  ").trim_end()).unwrap();
    };
    line(&header);
    for row in &body {
        line(&row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    out
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), HarnessError> {
    let csv_err = |source| HarnessError::Csv {
        path: path.to_path_buf(),
        cause: source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

fn read_csv<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, HarnessError> {
    let csv_err = |source| HarnessError::Csv {
        path: path.to_path_buf(),
        cause: source,
    };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    r.deserialize().collect::<Result<_, _>>().map_err(csv_err)
}

/// Writes `results.csv`, `results.txt` and `runs.csv` into `dir`.
pub fn write_results(results: &SuiteResults, dir: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    write_csv(&dir.join(RESULTS_CSV), &results.rows)?;
    write_csv(&dir.join(RUNS_CSV), &results.runs)?;
    let table = dir.join(RESULTS_TABLE);
    fs::write(&table, render_table(&results.rows)).map_err(|e| HarnessError::io(&table, e))
}

pub fn read_results(dir: &Path) -> Result<SuiteResults, HarnessError> {
    Ok(SuiteResults {
        rows: read_csv(&dir.join(RESULTS_CSV))?,
        runs: read_csv(&dir.join(RUNS_CSV))?,
    })
}
