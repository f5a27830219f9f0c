//! Raw benchmark formulas, evaluated on already-transformed inputs `z`.

use core::f64::consts::{E, PI};

/// Divisor inside the Griewank cosine product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GriewankDivisor {
    /// `cos(z_i / i)`, as listed in the benchmark table.
    #[default]
    Index,
    /// The textbook `cos(z_i / sqrt(i))`.
    SqrtIndex,
}

/// Exact Schwefel 2.26 constant: `-min_z z sin(sqrt|z|)` on [-500, 500].
pub const SCHWEFEL_OFFSET: f64 = 418.982_887_272_433_7;

/// Location of the per-coordinate Schwefel 2.26 minimum.
pub const SCHWEFEL_ARGMIN: f64 = 420.968_746_359_982_03;

fn sin2(x: f64) -> f64 {
    let s = libm::sin(x);
    s * s
}

/// Boundary penalty `u(x, a, k, m)`.
pub fn u_penalty(x: f64, a: f64, k: f64, m: f64) -> f64 {
    if x > a {
        k * libm::pow(x - a, m)
    } else if x < -a {
        k * libm::pow(-x - a, m)
    } else {
        0.0
    }
}

pub fn sphere(z: &[f64]) -> f64 {
    z.iter().map(|v| v * v).sum()
}

/// Double sum `sum_i sum_{j<=i} z_i^2`; the inner summand does not depend
/// on `j`, so this is `sum_i i * z_i^2`.
pub fn schwefel_1_2(z: &[f64]) -> f64 {
    z.iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * v * v)
        .sum()
}

pub fn schwefel_2_22(z: &[f64]) -> f64 {
    let sum: f64 = z.iter().map(|v| v.abs()).sum();
    let prod: f64 = z.iter().map(|v| v.abs()).product();
    sum + prod
}

pub fn ackley(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let sq = z.iter().map(|v| v * v).sum::<f64>() / n;
    let cos = z.iter().map(|v| libm::cos(2.0 * PI * v)).sum::<f64>() / n;
    -20.0 * libm::exp(-0.2 * libm::sqrt(sq)) - libm::exp(cos) + 20.0 + E
}

pub fn schwefel_2_26(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    SCHWEFEL_OFFSET * n
        - z.iter()
            .map(|v| v * libm::sin(libm::sqrt(v.abs())))
            .sum::<f64>()
}

pub fn rastrigin(z: &[f64]) -> f64 {
    z.iter()
        .map(|v| v * v - 10.0 * libm::cos(2.0 * PI * v) + 10.0)
        .sum()
}

pub fn griewank(z: &[f64], divisor: GriewankDivisor) -> f64 {
    let sum = z.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = z
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let idx = (i + 1) as f64;
            let d = match divisor {
                GriewankDivisor::Index => idx,
                GriewankDivisor::SqrtIndex => libm::sqrt(idx),
            };
            libm::cos(v / d)
        })
        .product();
    sum - prod + 1.0
}

fn levy_y(z: f64) -> f64 {
    1.0 + (z + 1.0) / 4.0
}

/// Levy function as tabulated: the middle term uses `10 sin^2(y_{i+1})`.
pub fn levy(z: &[f64]) -> f64 {
    let n = z.len();
    let y = |i: usize| levy_y(z[i]);
    let mut total = sin2(PI * y(0));
    for i in 0..n - 1 {
        let yi = y(i) - 1.0;
        total += yi * yi * (1.0 + 10.0 * sin2(y(i + 1)));
    }
    let yn = y(n - 1);
    total + (yn - 1.0) * (yn - 1.0) * (1.0 + sin2(2.0 * PI * yn))
}

pub fn penalized_1(z: &[f64]) -> f64 {
    let n = z.len();
    let mut inner = sin2(3.0 * PI * z[0]);
    for i in 0..n - 1 {
        let d = z[i] - 1.0;
        inner += d * d * (1.0 + sin2(3.0 * PI * z[i + 1]));
    }
    let d = z[n - 1] - 1.0;
    inner += d * d * (1.0 + sin2(2.0 * PI * z[n - 1]));
    inner / 10.0
        + z.iter()
            .map(|&v| u_penalty(v, 5.0, 100.0, 4.0))
            .sum::<f64>()
}

pub fn penalized_2(z: &[f64]) -> f64 {
    let n = z.len();
    let y = |i: usize| levy_y(z[i]);
    let mut inner = 10.0 * sin2(PI * y(0));
    for i in 0..n - 1 {
        let d = y(i) - 1.0;
        inner += d * d * (1.0 + 10.0 * sin2(PI * y(i + 1)));
    }
    let d = y(n - 1) - 1.0;
    inner += d * d;
    PI / n as f64 * inner
        + z.iter()
            .map(|&v| u_penalty(v, 10.0, 100.0, 4.0))
            .sum::<f64>()
}
