//! Summary statistics and the two-sample Student t-test used to compare
//! algorithms over repeated runs.

use alloc::vec::Vec;

use crate::error::CroError;
use crate::report_value;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSummary {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (n - 1 divisor).
    pub std_dev: f64,
    /// Values after the zero-threshold rule.
    pub values: Vec<f64>,
}

/// Mean and sample standard deviation after replacing every value below
/// the zero threshold with 0.
pub fn summarize(values: &[f64]) -> Result<SampleSummary, CroError> {
    if values.len() < 2 {
        return Err(CroError::TooFewSamples {
            needed: 2,
            got: values.len(),
        });
    }
    let values: Vec<f64> = values.iter().copied().map(report_value).collect();
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    let std_dev = libm::sqrt(ss / (n - 1) as f64);
    // Rounding can push the mean a hair outside the sample range when all
    // values are equal.
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    Ok(SampleSummary {
        n,
        mean: mean.max(lo).min(hi),
        std_dev,
        values,
    })
}

/// Pooled-variance two-sample t statistic. Negative means `a` has the lower
/// mean. When both samples have zero variance the result is 0 for equal
/// means and a signed infinity otherwise (one sample dominates).
pub fn t_statistic(a: &SampleSummary, b: &SampleSummary) -> f64 {
    let (na, nb) = (a.n as f64, b.n as f64);
    let diff = a.mean - b.mean;
    let pooled =
        ((na - 1.0) * a.std_dev * a.std_dev + (nb - 1.0) * b.std_dev * b.std_dev) / (na + nb - 2.0);
    if pooled == 0.0 {
        return if diff == 0.0 {
            0.0
        } else if diff < 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    diff / (libm::sqrt(pooled) * libm::sqrt(1.0 / na + 1.0 / nb))
}

/// Whether `|t|` reaches the two-tailed 95% critical value for
/// `n_a + n_b - 2` degrees of freedom. The boundary counts as significant.
pub fn significance_flag(t: f64, n_a: usize, n_b: usize) -> bool {
    let df = (n_a + n_b).saturating_sub(2);
    if df == 0 || t.is_nan() {
        return false;
    }
    t.abs() >= critical_t95(df)
}

/// Two-tailed 95% Student-t critical value. Tabulated for df 1..=200;
/// larger df use the normal limit.
pub fn critical_t95(df: usize) -> f64 {
    match df {
        0 => f64::INFINITY,
        1..=200 => T95[df - 1],
        _ => 1.959_964,
    }
}

/// `T95[df - 1]` is the 0.975 quantile of Student's t with `df` degrees of
/// freedom.
#[rustfmt::skip]
const T95: [f64; 200] = [
    12.706205, 4.302653, 3.182446, 2.776445, 2.570582,
    2.446912, 2.364624, 2.306004, 2.262157, 2.228139,
    2.200985, 2.178813, 2.160369, 2.144787, 2.131450,
    2.119905, 2.109816, 2.100922, 2.093024, 2.085963,
    2.079614, 2.073873, 2.068658, 2.063899, 2.059539,
    2.055529, 2.051831, 2.048407, 2.045230, 2.042272,
    2.039513, 2.036933, 2.034515, 2.032245, 2.030108,
    2.028094, 2.026192, 2.024394, 2.022691, 2.021075,
    2.019541, 2.018082, 2.016692, 2.015368, 2.014103,
    2.012896, 2.011741, 2.010635, 2.009575, 2.008559,
    2.007584, 2.006647, 2.005746, 2.004879, 2.004045,
    2.003241, 2.002465, 2.001717, 2.000995, 2.000298,
    1.999624, 1.998972, 1.998341, 1.997730, 1.997138,
    1.996564, 1.996008, 1.995469, 1.994945, 1.994437,
    1.993943, 1.993464, 1.992997, 1.992543, 1.992102,
    1.991673, 1.991254, 1.990847, 1.990450, 1.990063,
    1.989686, 1.989319, 1.988960, 1.988610, 1.988268,
    1.987934, 1.987608, 1.987290, 1.986979, 1.986675,
    1.986377, 1.986086, 1.985802, 1.985523, 1.985251,
    1.984984, 1.984723, 1.984467, 1.984217, 1.983972,
    1.983731, 1.983495, 1.983264, 1.983038, 1.982815,
    1.982597, 1.982383, 1.982173, 1.981967, 1.981765,
    1.981567, 1.981372, 1.981180, 1.980992, 1.980808,
    1.980626, 1.980448, 1.980272, 1.980100, 1.979930,
    1.979764, 1.979600, 1.979439, 1.979280, 1.979124,
    1.978971, 1.978820, 1.978671, 1.978524, 1.978380,
    1.978239, 1.978099, 1.977961, 1.977826, 1.977692,
    1.977561, 1.977431, 1.977304, 1.977178, 1.977054,
    1.976931, 1.976811, 1.976692, 1.976575, 1.976460,
    1.976346, 1.976233, 1.976122, 1.976013, 1.975905,
    1.975799, 1.975694, 1.975590, 1.975488, 1.975387,
    1.975288, 1.975189, 1.975092, 1.974996, 1.974902,
    1.974808, 1.974716, 1.974625, 1.974535, 1.974446,
    1.974358, 1.974271, 1.974185, 1.974100, 1.974017,
    1.973934, 1.973852, 1.973771, 1.973691, 1.973612,
    1.973534, 1.973457, 1.973381, 1.973305, 1.973231,
    1.973157, 1.973084, 1.973012, 1.972941, 1.972870,
    1.972800, 1.972731, 1.972663, 1.972595, 1.972528,
    1.972462, 1.972396, 1.972332, 1.972268, 1.972204,
    1.972141, 1.972079, 1.972017, 1.971957, 1.971896,
];
