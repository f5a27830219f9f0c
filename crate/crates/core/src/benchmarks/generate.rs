//! Seeded construction of shift vectors and rotation matrices.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

use super::{BenchmarkSpec, FunctionId, GriewankDivisor, Rotation};
use crate::CroRng;

/// Random (o, M) draws tried before falling back to a reflected rotation
/// that pins the optimum inside the box. Each draw costs O(dim^3), so the
/// cap shrinks with the dimension.
fn max_attempts(dim: usize) -> usize {
    let cube = dim.saturating_mul(dim).saturating_mul(dim).max(1);
    ((1usize << 29) / cube).clamp(16, 20_000)
}

/// Shifts are drawn from this fraction of the box.
const SHIFT_FRACTION: f64 = 0.8;

/// Modified Gram-Schmidt over the rows of a row-major `dim x dim` matrix,
/// run twice for a residual near machine precision. Returns `false` if a
/// row is (numerically) dependent on the previous ones.
pub fn orthonormalize_rows(rows: &mut [f64], dim: usize) -> bool {
    assert_eq!(rows.len(), dim * dim);
    for _pass in 0..2 {
        for i in 0..dim {
            let (done, rest) = rows.split_at_mut(i * dim);
            let row = &mut rest[..dim];
            for prev in done.chunks_exact(dim) {
                let dot: f64 = prev.iter().zip(row.iter()).map(|(a, b)| a * b).sum();
                for (r, p) in row.iter_mut().zip(prev) {
                    *r -= dot * p;
                }
            }
            let norm = libm::sqrt(row.iter().map(|v| v * v).sum::<f64>());
            if norm.is_nan() || norm <= 1e-12 {
                return false;
            }
            for r in row.iter_mut() {
                *r /= norm;
            }
        }
    }
    true
}

fn random_rotation(dim: usize, rng: &mut CroRng) -> Rotation {
    loop {
        let mut rows: Vec<f64> = (0..dim * dim).map(|_| rng.sample(StandardNormal)).collect();
        if orthonormalize_rows(&mut rows, dim) {
            return Rotation::Dense { dim, rows };
        }
    }
}

/// Builds the instance of `id` for dimension `dim`; deterministic in
/// `(id, dim, seed)`.
///
/// Shifted functions get `o` uniform in the inner 80% of `[-100, 100]^dim`;
/// rotated ones get an orthonormalized Gaussian matrix. Draws whose global
/// minimizer falls outside the open box are rejected and redrawn.
pub fn generate_spec(id: FunctionId, dim: usize, seed: u64) -> BenchmarkSpec {
    let mut rng = CroRng::seed_from_u64(seed);
    rng.set_stream(u64::from(id.number()));

    let mut spec = BenchmarkSpec::plain(id, dim);
    spec.griewank = GriewankDivisor::Index;
    let (lo, hi) = (SHIFT_FRACTION * spec.lower, SHIFT_FRACTION * spec.upper);

    for _ in 0..max_attempts(dim) {
        if id.is_shifted() {
            spec.shift = (0..dim).map(|_| rng.random_range(lo..hi)).collect();
        }
        if id.is_rotated() {
            spec.rotation = random_rotation(dim, &mut rng);
        }
        if spec.contains_strictly(&spec.optimum_point()) {
            return spec;
        }
    }
    pin_optimum(spec, &mut rng)
}

/// Composes the current rotation `Q` with a Householder reflection `H` so
/// that `M = H Q` maps `o + u` onto the minimizer, where `u` has entries
/// `±|z*|/s` with random signs. The minimizer then sits at `o + u`, which
/// lies inside the box for every function in the suite.
fn pin_optimum(mut spec: BenchmarkSpec, rng: &mut CroRng) -> BenchmarkSpec {
    let dim = spec.dim;
    let target_z = spec.id.z_optimum() / spec.scale;
    let magnitude = target_z.abs();
    let u: Vec<f64> = (0..dim)
        .map(|_| {
            if rng.random::<bool>() {
                magnitude
            } else {
                -magnitude
            }
        })
        .collect();
    let w = vec![target_z; dim];
    let qu = spec.rotation.apply(&u);
    let v: Vec<f64> = qu.iter().zip(&w).map(|(a, b)| a - b).collect();
    let vv: f64 = v.iter().map(|x| x * x).sum();
    if vv > 0.0 {
        let q = spec.rotation.to_rows();
        // v^T Q
        let mut vq = vec![0.0; dim];
        for (row, &vi) in q.chunks_exact(dim).zip(&v) {
            for (acc, &m) in vq.iter_mut().zip(row) {
                *acc += vi * m;
            }
        }
        let mut rows = q;
        for (i, row) in rows.chunks_exact_mut(dim).enumerate() {
            let coef = 2.0 * v[i] / vv;
            for (r, &c) in row.iter_mut().zip(&vq) {
                *r -= coef * c;
            }
        }
        spec.rotation = Rotation::Dense { dim, rows };
    }
    spec
}
