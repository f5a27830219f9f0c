//! Plain-text benchmark spec files.
//!
//! ```text
//! # cro benchmark spec
//! function f4
//! dim 3
//! bounds -1e2 1e2
//! scale 1e-1
//! griewank index
//! shift
//! 1.5e0 -2.25e1 3e0
//! rotation
//! <row 1>
//! <row 2>
//! <row 3>
//! ```
//!
//! Numbers are written in shortest round-trip scientific notation, so a
//! save/load cycle reproduces every value bit for bit. The shift takes one
//! line and the rotation one line per row; identity rotations are written
//! out in full.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use cro_core::benchmarks::ORTHOGONALITY_TOLERANCE;
use cro_core::{BenchmarkSpec, CroError, FunctionId, GriewankDivisor, Rotation};

use crate::error::HarnessError;

const HEADER: &str = "# cro benchmark spec";

/// File name used for `id` inside a spec directory.
pub fn spec_file_name(id: FunctionId) -> String {
    format!("{id}.spec")
}

pub fn spec_path(dir: &Path, id: FunctionId) -> PathBuf {
    dir.join(spec_file_name(id))
}

fn griewank_name(g: GriewankDivisor) -> &'static str {
    match g {
        GriewankDivisor::Index => "index",
        GriewankDivisor::SqrtIndex => "sqrt-index",
    }
}

fn join(values: impl IntoIterator<Item = f64>) -> String {
    let mut out = String::new();
    for (k, v) in values.into_iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        write!(out, "{v:e}").unwrap();
    }
    out
}

pub fn render_spec(spec: &BenchmarkSpec) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "function {}", spec.id).unwrap();
    writeln!(out, "dim {}", spec.dim).unwrap();
    writeln!(out, "bounds {:e} {:e}", spec.lower, spec.upper).unwrap();
    writeln!(out, "scale {:e}", spec.scale).unwrap();
    writeln!(out, "griewank {}", griewank_name(spec.griewank)).unwrap();
    writeln!(out, "shift").unwrap();
    writeln!(out, "{}", join(spec.shift.iter().copied())).unwrap();
    writeln!(out, "rotation").unwrap();
    let d = spec.rotation.dim();
    for i in 0..d {
        writeln!(out, "{}", join((0..d).map(|j| spec.rotation.get(i, j)))).unwrap();
    }
    out
}

struct Lines<'a> {
    path: &'a Path,
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn err(&self, msg: impl Into<String>) -> HarnessError {
        HarnessError::Parse {
            path: self.path.to_path_buf(),
            line: self.last,
            msg: msg.into(),
        }
    }

    /// Next non-blank, non-comment line.
    fn next(&mut self, what: &str) -> Result<&'a str, HarnessError> {
        for (no, line) in self.inner.by_ref() {
            self.last = no + 1;
            let t = line.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Ok(t);
            }
        }
        Err(self.err(format!("unexpected end of file, expected {what}")))
    }

    fn keyed(&mut self, key: &str) -> Result<&'a str, HarnessError> {
        let line = self.next(key)?;
        let (k, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        if k != key {
            return Err(self.err(format!("expected `{key}`, found `{k}`")));
        }
        Ok(rest.trim())
    }

    fn numbers(&mut self, what: &str, expected: usize) -> Result<Vec<f64>, HarnessError> {
        let line = self.next(what)?;
        let values = line
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| self.err(format!("bad number `{t}` in {what}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != expected {
            return Err(HarnessError::Core(CroError::DimensionMismatch {
                expected,
                actual: values.len(),
            }));
        }
        Ok(values)
    }
}

fn parse_number(lines: &Lines<'_>, s: &str, what: &str) -> Result<f64, HarnessError> {
    s.parse::<f64>()
        .map_err(|_| lines.err(format!("bad {what} `{s}`")))
}

/// Parses spec-file text. `path` is only used in error messages.
pub fn parse_spec(text: &str, path: &Path) -> Result<BenchmarkSpec, HarnessError> {
    let mut lines = Lines {
        path,
        inner: text.lines().enumerate().peekable(),
        last: 0,
    };
    let id: FunctionId = lines
        .keyed("function")?
        .parse()
        .map_err(|e: CroError| lines.err(e.to_string()))?;
    let dim_s = lines.keyed("dim")?;
    let dim: usize = dim_s
        .parse()
        .map_err(|_| lines.err(format!("bad dimension `{dim_s}`")))?;
    if dim == 0 {
        return Err(lines.err("dimension must be positive"));
    }
    let bounds = lines.keyed("bounds")?;
    let (lo, hi) = bounds
        .split_once(char::is_whitespace)
        .ok_or_else(|| lines.err("bounds need two values"))?;
    let lower = parse_number(&lines, lo.trim(), "lower bound")?;
    let upper = parse_number(&lines, hi.trim(), "upper bound")?;
    let scale_s = lines.keyed("scale")?;
    let scale = parse_number(&lines, scale_s, "scale")?;
    let griewank = match lines.keyed("griewank")? {
        "index" => GriewankDivisor::Index,
        "sqrt-index" => GriewankDivisor::SqrtIndex,
        other => return Err(lines.err(format!("unknown griewank divisor `{other}`"))),
    };
    lines.keyed("shift")?;
    let shift = lines.numbers("shift", dim)?;
    lines.keyed("rotation")?;
    let mut rows = Vec::with_capacity(dim * dim);
    for _ in 0..dim {
        rows.extend(lines.numbers("rotation row", dim)?);
    }
    if let Ok(extra) = lines.next("") {
        return Err(lines.err(format!("trailing content `{extra}`")));
    }
    let is_identity = rows
        .iter()
        .enumerate()
        .all(|(k, &v)| v == if k / dim == k % dim { 1.0 } else { 0.0 });
    let rotation = if is_identity {
        Rotation::Identity(dim)
    } else {
        Rotation::dense(dim, rows)?
    };
    let spec = BenchmarkSpec {
        id,
        dim,
        lower,
        upper,
        shift,
        rotation,
        scale,
        griewank,
    };
    spec.validate()?;
    debug_assert!(spec.rotation.orthogonality_residual() <= ORTHOGONALITY_TOLERANCE);
    Ok(spec)
}

pub fn save_spec(spec: &BenchmarkSpec, path: &Path) -> Result<(), HarnessError> {
    fs::write(path, render_spec(spec)).map_err(|e| HarnessError::io(path, e))
}

pub fn load_spec(path: &Path) -> Result<BenchmarkSpec, HarnessError> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_spec(&text, path)
}
