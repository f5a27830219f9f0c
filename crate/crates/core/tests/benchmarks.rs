mod reference;

use cro_core::benchmarks::{generate_spec, u_penalty, SCHWEFEL_ARGMIN};
use cro_core::{BenchmarkSpec, FunctionId, GriewankDivisor, Objective, Rotation};
use proptest::prelude::*;

const DIM: usize = 30;

fn suite(seed: u64) -> Vec<BenchmarkSpec> {
    FunctionId::ALL
        .iter()
        .map(|&id| generate_spec(id, DIM, seed))
        .collect()
}

#[test]
fn matches_reference_evaluator() {
    for spec in suite(0) {
        let gap = reference::max_relative_gap(&spec, 1000, u64::from(spec.id.number()));
        assert!(gap <= 1e-12, "{}: relative gap {gap:e}", spec.id);
    }
}

#[test]
fn reference_agrees_at_constructed_optimum() {
    for spec in suite(11) {
        let x = spec.optimum_point();
        assert!(reference::evaluate(&spec, &x).abs() < 1e-8, "{}", spec.id);
    }
}

#[test]
fn optimum_points_are_zero_and_interior() {
    for seed in [0, 1, 2024] {
        for spec in suite(seed) {
            let x = spec.optimum_point();
            assert!(spec.contains_strictly(&x), "{} seed {seed}", spec.id);
            let v = spec.evaluate(&x);
            assert!(v.abs() < 1e-8, "{} seed {seed}: {v:e}", spec.id);
            assert!(
                spec.rotation.orthogonality_residual() <= 1e-10,
                "{}",
                spec.id
            );
        }
    }
}

#[test]
fn f13_f14_minimum_sits_below_the_shift() {
    // Levy's substitution puts the minimum at z = -1, i.e. x = o - 1/s.
    for id in [FunctionId::F13, FunctionId::F14] {
        let spec = generate_spec(id, DIM, 3);
        let at_shift = spec.evaluate(&spec.shift);
        assert!(at_shift > 1e-3, "{id}: {at_shift}");
        if !id.is_rotated() {
            let x: Vec<f64> = spec.shift.iter().map(|o| o - 1.0 / spec.scale).collect();
            assert!(spec.evaluate(&x).abs() < 1e-8);
        }
    }
}

#[test]
fn f7_at_tabulated_argmin() {
    let spec = BenchmarkSpec::plain(FunctionId::F7, DIM);
    let x = vec![420.9687 / 5.0; DIM];
    assert!(spec.evaluate(&x) < 1e-4);
    let exact = vec![SCHWEFEL_ARGMIN / 5.0; DIM];
    assert!(spec.evaluate(&exact).abs() < 1e-8);
}

#[test]
fn rotated_variants_pair_with_unrotated() {
    let pairs = [
        (FunctionId::F3, FunctionId::F4),
        (FunctionId::F5, FunctionId::F6),
        (FunctionId::F7, FunctionId::F8),
        (FunctionId::F9, FunctionId::F10),
        (FunctionId::F11, FunctionId::F12),
        (FunctionId::F13, FunctionId::F14),
    ];
    for (plain_id, rotated_id) in pairs {
        let rotated = generate_spec(rotated_id, DIM, 5);
        let mut plain = rotated.clone();
        plain.id = plain_id;
        plain.rotation = Rotation::Identity(DIM);
        // x_rot = o + M^T (x_plain - o) gives the same z.
        let x_plain = plain.optimum_point();
        let centered: Vec<f64> = x_plain
            .iter()
            .zip(&plain.shift)
            .map(|(a, o)| a - o)
            .collect();
        let back = rotated.rotation.apply_transpose(&centered);
        let x_rot: Vec<f64> = back
            .iter()
            .zip(&rotated.shift)
            .map(|(b, o)| b + o)
            .collect();
        let (a, b) = (plain.evaluate(&x_plain), rotated.evaluate(&x_rot));
        assert!((a - b).abs() < 1e-9, "{plain_id}/{rotated_id}: {a} vs {b}");
    }
}

#[test]
fn rastrigin_unit_offset() {
    let spec = generate_spec(FunctionId::F9, DIM, 8);
    let mut x = spec.shift.clone();
    x[0] += 1.0 / spec.scale;
    assert!((spec.evaluate(&x) - 1.0).abs() < 1e-9);
}

#[test]
fn penalty_examples() {
    assert_eq!(u_penalty(6.0, 5.0, 100.0, 4.0), 100.0);
    assert_eq!(u_penalty(3.0, 5.0, 100.0, 4.0), 0.0);
    assert_eq!(u_penalty(-7.0, 5.0, 100.0, 4.0), 1600.0);
}

#[test]
fn transform_examples() {
    let f7 = BenchmarkSpec::plain(FunctionId::F7, 4);
    assert_eq!(f7.transform(&[1.0; 4]), vec![5.0; 4]);
    for spec in suite(9) {
        assert!(spec.transform(&spec.shift).iter().all(|&z| z == 0.0) || !spec.id.is_shifted());
    }
}

#[test]
fn griewank_divisor_switch() {
    let mut spec = BenchmarkSpec::plain(FunctionId::F11, 3);
    let x = [10.0, 20.0, -5.0];
    let index = spec.evaluate(&x);
    spec.griewank = GriewankDivisor::SqrtIndex;
    assert_ne!(index, spec.evaluate(&x));
}

fn point(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0..100.0f64, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotation_preserves_norm(seed in any::<u64>(), x in point(12)) {
        let spec = generate_spec(FunctionId::F10, 12, seed);
        let z = spec.transform(&x);
        let zn = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        let xn = x.iter().zip(&spec.shift).map(|(a, o)| (a - o) * (a - o)).sum::<f64>().sqrt();
        prop_assert!((zn - spec.scale * xn).abs() <= 1e-9 * (spec.scale * xn).max(1e-300));
    }

    #[test]
    fn evaluation_is_pure(n in 1u8..=16, x in point(8)) {
        let spec = generate_spec(FunctionId::from_number(n).unwrap(), 8, 4);
        prop_assert_eq!(spec.evaluate(&x).to_bits(), spec.evaluate(&x).to_bits());
    }

    #[test]
    fn reference_agrees_on_small_instances(n in 1u8..=16, seed in any::<u64>(), x in point(5)) {
        let spec = generate_spec(FunctionId::from_number(n).unwrap(), 5, seed);
        let (a, b) = (spec.evaluate(&x), reference::evaluate(&spec, &x));
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(b.abs()), "{} vs {}", a, b);
    }
}
