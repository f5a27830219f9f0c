//! Straight-from-the-table evaluator for the benchmark suite. Shares no
//! code with the library beyond reading the instance data: it uses std
//! math, literal sums (including the double sum of f2) and its own
//! matrix-vector product.

#![allow(clippy::needless_range_loop)]

use std::f64::consts::{E, PI};

use cro_core::{BenchmarkSpec, FunctionId};

/// Exact minimum value of `-z sin(sqrt|z|)` per coordinate, negated.
pub const SCHWEFEL_CONSTANT: f64 = 418.982_887_272_433_7;

fn u(x: f64, a: f64, k: f64, m: i32) -> f64 {
    if x > a {
        k * (x - a).powi(m)
    } else if x < -a {
        k * (-x - a).powi(m)
    } else {
        0.0
    }
}

fn z_of(spec: &BenchmarkSpec, x: &[f64]) -> Vec<f64> {
    let d = spec.dim;
    let shifted: Vec<f64> = (0..d).map(|i| x[i] - spec.shift[i]).collect();
    let mut z = vec![0.0; d];
    for i in 0..d {
        let mut acc = 0.0;
        for j in 0..d {
            acc += spec.rotation.get(i, j) * shifted[j];
        }
        z[i] = acc * spec.scale;
    }
    z
}

fn sin_sq(v: f64) -> f64 {
    v.sin() * v.sin()
}

pub fn evaluate(spec: &BenchmarkSpec, x: &[f64]) -> f64 {
    let z = z_of(spec, x);
    let n = z.len();
    let nf = n as f64;
    let y: Vec<f64> = z.iter().map(|v| 1.0 + (v + 1.0) / 4.0).collect();
    match spec.id {
        FunctionId::F1 => z.iter().map(|v| v * v).sum(),
        FunctionId::F2 => {
            let mut total = 0.0;
            for i in 0..n {
                for _j in 0..=i {
                    total += z[i] * z[i];
                }
            }
            total
        }
        FunctionId::F3 | FunctionId::F4 => {
            z.iter().map(|v| v.abs()).sum::<f64>() + z.iter().map(|v| v.abs()).product::<f64>()
        }
        FunctionId::F5 | FunctionId::F6 => {
            let a = (z.iter().map(|v| v * v).sum::<f64>() / nf).sqrt();
            let b = z.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / nf;
            -20.0 * (-0.2 * a).exp() - b.exp() + 20.0 + E
        }
        FunctionId::F7 | FunctionId::F8 => {
            SCHWEFEL_CONSTANT * nf - z.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>()
        }
        FunctionId::F9 | FunctionId::F10 => z
            .iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
            .sum(),
        FunctionId::F11 | FunctionId::F12 => {
            let mut prod = 1.0;
            for (i, v) in z.iter().enumerate() {
                prod *= (v / (i + 1) as f64).cos();
            }
            z.iter().map(|v| v * v / 4000.0).sum::<f64>() - prod + 1.0
        }
        FunctionId::F13 | FunctionId::F14 => {
            let mut total = sin_sq(PI * y[0]);
            for i in 0..n - 1 {
                total += (y[i] - 1.0).powi(2) * (1.0 + 10.0 * sin_sq(y[i + 1]));
            }
            total + (y[n - 1] - 1.0).powi(2) * (1.0 + sin_sq(2.0 * PI * y[n - 1]))
        }
        FunctionId::F15 => {
            let mut inner = sin_sq(3.0 * PI * z[0]);
            for i in 0..n - 1 {
                inner += (z[i] - 1.0).powi(2) * (1.0 + sin_sq(3.0 * PI * z[i + 1]));
            }
            inner += (z[n - 1] - 1.0).powi(2) * (1.0 + sin_sq(2.0 * PI * z[n - 1]));
            inner / 10.0 + z.iter().map(|&v| u(v, 5.0, 100.0, 4)).sum::<f64>()
        }
        FunctionId::F16 => {
            let mut inner = 10.0 * sin_sq(PI * y[0]);
            for i in 0..n - 1 {
                inner += (y[i] - 1.0).powi(2) * (1.0 + 10.0 * sin_sq(PI * y[i + 1]));
            }
            inner += (y[n - 1] - 1.0).powi(2);
            PI / nf * inner + z.iter().map(|&v| u(v, 10.0, 100.0, 4)).sum::<f64>()
        }
    }
}

/// Largest relative disagreement between the library and this evaluator
/// over `points` uniform draws in the box.
pub fn max_relative_gap(spec: &BenchmarkSpec, points: usize, seed: u64) -> f64 {
    use cro_core::Objective;
    use rand::{Rng, SeedableRng};

    let mut rng = cro_core::CroRng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let x: Vec<f64> = (0..spec.dim)
            .map(|_| rng.random_range(spec.lower..spec.upper))
            .collect();
        let (a, b) = (spec.evaluate(&x), evaluate(spec, &x));
        let scale = a.abs().max(b.abs());
        let gap = if scale == 0.0 {
            0.0
        } else {
            (a - b).abs() / scale
        };
        worst = worst.max(gap);
    }
    worst
}
