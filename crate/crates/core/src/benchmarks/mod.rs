//! Sixteen shifted and rotated benchmark functions.
//!
//! Each function is evaluated on `z = M (x - o) s`, where `o` is a shift
//! vector, `M` an orthogonal matrix and `s` a per-function input scale.
//! Unshifted functions use `o = 0`, unrotated ones `M = I`.

mod functions;
mod generate;

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use functions::{u_penalty, GriewankDivisor, SCHWEFEL_ARGMIN, SCHWEFEL_OFFSET};
pub use generate::{generate_spec, orthonormalize_rows};

use crate::error::CroError;

/// A box-constrained minimization problem.
pub trait Objective {
    fn dim(&self) -> usize;
    /// Common lower and upper bound of every coordinate.
    fn bounds(&self) -> (f64, f64);
    fn evaluate(&self, x: &[f64]) -> f64;
}

/// Load-time tolerance on `max |M^T M - I|`.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
    F11,
    F12,
    F13,
    F14,
    F15,
    F16,
}

impl FunctionId {
    pub const ALL: [FunctionId; 16] = [
        FunctionId::F1,
        FunctionId::F2,
        FunctionId::F3,
        FunctionId::F4,
        FunctionId::F5,
        FunctionId::F6,
        FunctionId::F7,
        FunctionId::F8,
        FunctionId::F9,
        FunctionId::F10,
        FunctionId::F11,
        FunctionId::F12,
        FunctionId::F13,
        FunctionId::F14,
        FunctionId::F15,
        FunctionId::F16,
    ];

    /// 1-based function number.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.get(usize::from(n).checked_sub(1)?).copied()
    }

    pub fn is_shifted(self) -> bool {
        !matches!(self, FunctionId::F7 | FunctionId::F8)
    }

    pub fn is_rotated(self) -> bool {
        matches!(
            self,
            FunctionId::F4
                | FunctionId::F6
                | FunctionId::F8
                | FunctionId::F10
                | FunctionId::F12
                | FunctionId::F14
        )
    }

    pub fn scale(self) -> f64 {
        use FunctionId::*;
        match self {
            F1 | F2 => 1.0,
            F3 | F4 | F13 | F14 => 0.1,
            F5 | F6 => 0.32,
            F7 | F8 => 5.0,
            F9 | F10 => 0.0512,
            F11 | F12 => 6.0,
            F15 | F16 => 0.5,
        }
    }

    /// Coordinate value of the global minimizer in `z` space (the same for
    /// every coordinate).
    pub fn z_optimum(self) -> f64 {
        use FunctionId::*;
        match self {
            F7 | F8 => SCHWEFEL_ARGMIN,
            F13 | F14 | F16 => -1.0,
            F15 => 1.0,
            _ => 0.0,
        }
    }

    pub fn title(self) -> &'static str {
        use FunctionId::*;
        match self {
            F1 => "Shifted Sphere",
            F2 => "Shifted Schwefel 1.2",
            F3 => "Shifted Schwefel 2.22",
            F4 => "Shifted Rotated Schwefel 2.22",
            F5 => "Shifted Ackley",
            F6 => "Shifted Rotated Ackley",
            F7 => "Schwefel 2.26",
            F8 => "Rotated Schwefel 2.26",
            F9 => "Shifted Rastrigin",
            F10 => "Shifted Rotated Rastrigin",
            F11 => "Shifted Griewank",
            F12 => "Shifted Rotated Griewank",
            F13 => "Shifted Levy",
            F14 => "Shifted Rotated Levy",
            F15 => "Shifted Penalized 1",
            F16 => "Shifted Penalized 2",
        }
    }

    /// Applies the raw formula to a transformed input.
    pub fn raw(self, z: &[f64], griewank: GriewankDivisor) -> f64 {
        use FunctionId::*;
        match self {
            F1 => functions::sphere(z),
            F2 => functions::schwefel_1_2(z),
            F3 | F4 => functions::schwefel_2_22(z),
            F5 | F6 => functions::ackley(z),
            F7 | F8 => functions::schwefel_2_26(z),
            F9 | F10 => functions::rastrigin(z),
            F11 | F12 => functions::griewank(z, griewank),
            F13 | F14 => functions::levy(z),
            F15 => functions::penalized_1(z),
            F16 => functions::penalized_2(z),
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.number())
    }
}

impl FromStr for FunctionId {
    type Err = CroError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let digits = t.strip_prefix(['f', 'F']).unwrap_or(t);
        digits
            .parse::<u8>()
            .ok()
            .and_then(FunctionId::from_number)
            .ok_or_else(|| CroError::Unknown {
                kind: "function",
                name: s.to_string(),
            })
    }
}

/// Square orthogonal matrix, stored row-major when not the identity.
#[derive(Debug, Clone, PartialEq)]
pub enum Rotation {
    Identity(usize),
    Dense { dim: usize, rows: Vec<f64> },
}

impl Rotation {
    pub fn dense(dim: usize, rows: Vec<f64>) -> Result<Self, CroError> {
        if rows.len() != dim * dim {
            return Err(CroError::DimensionMismatch {
                expected: dim * dim,
                actual: rows.len(),
            });
        }
        Ok(Rotation::Dense { dim, rows })
    }

    pub fn dim(&self) -> usize {
        match self {
            Rotation::Identity(d) | Rotation::Dense { dim: d, .. } => *d,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Rotation::Identity(_))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match self {
            Rotation::Identity(_) => f64::from(u8::from(i == j)),
            Rotation::Dense { dim, rows } => rows[i * dim + j],
        }
    }

    /// Row-major entries, materializing the identity if needed.
    pub fn to_rows(&self) -> Vec<f64> {
        let d = self.dim();
        (0..d * d).map(|k| self.get(k / d, k % d)).collect()
    }

    /// `M v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        match self {
            Rotation::Identity(_) => v.to_vec(),
            Rotation::Dense { dim, rows } => rows
                .chunks_exact(*dim)
                .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect(),
        }
    }

    /// `M^T v`.
    pub fn apply_transpose(&self, v: &[f64]) -> Vec<f64> {
        match self {
            Rotation::Identity(_) => v.to_vec(),
            Rotation::Dense { dim, rows } => {
                let mut out = vec![0.0; *dim];
                for (row, &vi) in rows.chunks_exact(*dim).zip(v) {
                    for (o, &m) in out.iter_mut().zip(row) {
                        *o += m * vi;
                    }
                }
                out
            }
        }
    }

    /// `max |M^T M - I|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                let dot: f64 = (0..d).map(|k| self.get(k, i) * self.get(k, j)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// A fully specified benchmark instance.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSpec {
    pub id: FunctionId,
    pub dim: usize,
    pub lower: f64,
    pub upper: f64,
    pub shift: Vec<f64>,
    pub rotation: Rotation,
    pub scale: f64,
    pub griewank: GriewankDivisor,
}

impl BenchmarkSpec {
    /// Instance of `id` with the default box and no shift or rotation.
    pub fn plain(id: FunctionId, dim: usize) -> Self {
        BenchmarkSpec {
            id,
            dim,
            lower: -100.0,
            upper: 100.0,
            shift: vec![0.0; dim],
            rotation: Rotation::Identity(dim),
            scale: id.scale(),
            griewank: GriewankDivisor::default(),
        }
    }

    /// Structural checks: dimensions, bounds, scale and orthogonality of
    /// `M` within [`ORTHOGONALITY_TOLERANCE`].
    pub fn validate(&self) -> Result<(), CroError> {
        if self.dim == 0 {
            return Err(CroError::InvalidConfig(
                "dimension must be positive".to_string(),
            ));
        }
        if self.shift.len() != self.dim {
            return Err(CroError::DimensionMismatch {
                expected: self.dim,
                actual: self.shift.len(),
            });
        }
        if self.rotation.dim() != self.dim {
            return Err(CroError::DimensionMismatch {
                expected: self.dim,
                actual: self.rotation.dim(),
            });
        }
        if !(self.lower < self.upper && self.lower.is_finite() && self.upper.is_finite()) {
            return Err(CroError::InvalidConfig(
                "bounds must satisfy lower < upper".to_string(),
            ));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(CroError::InvalidConfig(
                "scale must be positive".to_string(),
            ));
        }
        let residual = self.rotation.orthogonality_residual();
        if residual.is_nan() || residual > ORTHOGONALITY_TOLERANCE {
            return Err(CroError::NotOrthogonal { residual });
        }
        Ok(())
    }

    /// `z = M (x - o) s`.
    pub fn transform(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.dim);
        let centered: Vec<f64> = x.iter().zip(&self.shift).map(|(a, o)| a - o).collect();
        let mut z = self.rotation.apply(&centered);
        for v in z.iter_mut() {
            *v *= self.scale;
        }
        z
    }

    /// The global minimizer in `x` space: `o + M^T z* / s`.
    pub fn optimum_point(&self) -> Vec<f64> {
        let z = vec![self.id.z_optimum() / self.scale; self.dim];
        let back = self.rotation.apply_transpose(&z);
        back.iter().zip(&self.shift).map(|(b, o)| b + o).collect()
    }

    pub fn contains_strictly(&self, x: &[f64]) -> bool {
        x.iter().all(|&v| v > self.lower && v < self.upper)
    }
}

impl Objective for BenchmarkSpec {
    fn dim(&self) -> usize {
        self.dim
    }

    fn bounds(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        self.id.raw(&self.transform(x), self.griewank)
    }
}
