//! Acceptance gate. Runs every criterion at full budget, prints one
//! PASS/FAIL line per criterion and exits non-zero if any failed.

#[path = "../../core/tests/reference/mod.rs"]
mod reference;

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use cro_cli::suite::{run_suite, ResultRow, SpecSource, SuiteConfig, SuiteResults};
use cro_core::benchmarks::generate_spec;
use cro_core::operators::inter_ac;
use cro_core::stats::critical_t95;
use cro_core::{
    coll_rate, summarize, t_statistic, AlgorithmConfig, CroRng, FunctionId, Molecule, Objective,
    Reactor, Variant,
};
use rand::{Rng, SeedableRng};

const FULL_BUDGET: u64 = 300_000;
const DIM: usize = 30;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn suite(functions: &[FunctionId], algorithms: &[Variant], runs: u64) -> SuiteResults {
    let mut cfg = SuiteConfig::new(std::env::temp_dir());
    cfg.functions = functions.to_vec();
    cfg.algorithms = algorithms.to_vec();
    cfg.runs = runs;
    cfg.max_fe = FULL_BUDGET;
    cfg.dim = DIM;
    cfg.master_seed = 0;
    cfg.spec_source = SpecSource::Generate { seed: 0 };
    cfg.jobs = jobs();
    run_suite(&cfg).expect("suite runs")
}

fn energy_conservation() -> Outcome {
    let spec = generate_spec(FunctionId::F1, DIM, 0);
    let mut worst: f64 = 0.0;
    for v in Variant::ALL {
        let cfg = AlgorithmConfig::new(v).with_seed(1).with_max_fe(50_000);
        let mut reactor = Reactor::initialize(&cfg, &spec).map_err(|e| e.to_string())?;
        let e0 = reactor.state().total_energy();
        while !reactor.is_done() {
            reactor.step();
            worst = worst.max((reactor.state().total_energy() - e0).abs() / e0);
        }
    }
    check(
        worst <= 1e-9,
        format!("worst relative drift {worst:.3e} (limit 1e-9)"),
    )
}

fn zero_runs(function: FunctionId, needed: usize) -> Outcome {
    let res = suite(&[function], &[Variant::CroAc], 51);
    let values: Vec<f64> = res.runs.iter().filter_map(|r| r.best_value).collect();
    let zeros = values.iter().filter(|&&v| v == 0.0).count();
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    check(
        zeros >= needed && values.len() == 51,
        format!("{zeros}/51 runs at zero (need >= {needed}); mean best {mean:.4e}"),
    )
}

fn ordering(function: FunctionId, rival: Variant, t_limit: f64) -> Outcome {
    let res = suite(&[function], &[Variant::CroAc, rival], 25);
    let row = |a: Variant| -> &ResultRow {
        res.rows
            .iter()
            .find(|r| r.algorithm == a.to_string())
            .expect("row present")
    };
    let (ac, other) = (row(Variant::CroAc), row(rival));
    let (m_ac, m_other) = (ac.mean.unwrap_or(f64::NAN), other.mean.unwrap_or(f64::NAN));
    let t = other.t_vs_baseline.unwrap_or(f64::NAN);
    check(
        m_ac < m_other && t <= t_limit,
        format!("cro-ac {m_ac:.4e} vs {rival} {m_other:.4e}, t = {t:.3} (need <= {t_limit})"),
    )
}

fn sigmoid() -> Outcome {
    let max_fe = FULL_BUDGET;
    let mid = coll_rate(0, max_fe);
    let hi = coll_rate(max_fe as i64, max_fe);
    let lo = coll_rate(-(max_fe as i64), max_fe);
    let mut ok = mid == 0.5 && (hi - 0.997527).abs() <= 1e-5 && (lo - 0.002473).abs() <= 1e-5;
    let mut rng = CroRng::seed_from_u64(7);
    let mut counters: Vec<i64> = (0..10_000)
        .map(|_| rng.random_range(-(max_fe as i64)..=max_fe as i64))
        .collect();
    counters.sort_unstable();
    counters.dedup();
    for w in counters.windows(2) {
        ok &= coll_rate(w[0], max_fe) < coll_rate(w[1], max_fe);
    }
    for &c in &counters {
        ok &= (coll_rate(c, max_fe) + coll_rate(-c, max_fe) - 1.0).abs() <= 1e-12;
        let r = coll_rate(c, max_fe);
        ok &= r > 0.0 && r < 1.0;
    }
    check(
        ok,
        format!(
            "rate(0) = {mid}, rate(+max) = {hi:.6}, rate(-max) = {lo:.6}, {} counters",
            counters.len()
        ),
    )
}

fn benchmark_sanity() -> Outcome {
    let mut worst_value: f64 = 0.0;
    let mut worst_orth: f64 = 0.0;
    let mut worst_gap: f64 = 0.0;
    let mut interior = true;
    for id in FunctionId::ALL {
        let spec = generate_spec(id, DIM, 0);
        let x = spec.optimum_point();
        interior &= spec.contains_strictly(&x);
        worst_value = worst_value.max(spec.evaluate(&x).abs());
        worst_orth = worst_orth.max(spec.rotation.orthogonality_residual());
        worst_gap = worst_gap.max(reference::max_relative_gap(
            &spec,
            1000,
            u64::from(id.number()),
        ));
    }
    check(
        interior && worst_value < 1e-8 && worst_orth <= 1e-10 && worst_gap <= 1e-12,
        format!(
            "max |f(x*)| {worst_value:.2e}, max |MtM - I| {worst_orth:.2e}, max reference gap {worst_gap:.2e}"
        ),
    )
}

struct WideBowl;

impl Objective for WideBowl {
    fn dim(&self) -> usize {
        8
    }

    fn bounds(&self) -> (f64, f64) {
        (-1e12, 1e12)
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }
}

fn collision_geometry() -> Outcome {
    let p = WideBowl;
    let cfg = AlgorithmConfig::new(Variant::CroAc);
    let mut rng = CroRng::seed_from_u64(99);
    let mut violations = 0u64;
    let trials = 100_000;
    for _ in 0..trials {
        let mol = |rng: &mut CroRng| {
            let x: Vec<f64> = (0..p.dim())
                .map(|_| rng.random_range(-100.0..100.0))
                .collect();
            let pe = p.evaluate(&x);
            Molecule::new(x, pe, 1e7)
        };
        let (a, b) = (mol(&mut rng), mol(&mut rng));
        let out = inter_ac(&a, &b, &cfg, &p, &mut rng);
        let (s, t, s_new, t_new) = if a.pe >= b.pe {
            (
                &a.structure,
                &b.structure,
                &out.new_structures[0],
                &out.new_structures[1],
            )
        } else {
            (
                &b.structure,
                &a.structure,
                &out.new_structures[1],
                &out.new_structures[0],
            )
        };
        for i in 0..p.dim() {
            if s_new[i] < s[i].min(t[i]) || s_new[i] > s[i].max(t[i]) {
                violations += 1;
            }
            let (away, moved) = (t[i] - s_new[i], t_new[i] - t[i]);
            if away != 0.0 && moved != 0.0 && away.signum() != moved.signum() {
                violations += 1;
            }
        }
    }
    check(
        violations == 0,
        format!("{trials} trials, {violations} violations"),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let exe = env!("CARGO_BIN_EXE_cro");
    let run = |out: &Path| {
        Command::new(exe)
            .args([
                "run",
                "--function",
                "f1",
                "--algorithm",
                "cro-ac",
                "--seed",
                "7",
                "--out",
            ])
            .arg(out)
            .output()
            .map(|o| o.status.success())
            .unwrap_or(false)
    };
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    if !(run(&a) && run(&b)) {
        return Err("run subcommand failed".into());
    }
    let name = "run_f1_cro-ac_7.json";
    let same_run = fs::read(a.join(name)).ok() == fs::read(b.join(name)).ok();

    let suite_with = |jobs: &str, out: &Path| {
        Command::new(exe)
            .args(["suite", "--runs", "3", "--max-fe", "20000", "--dim", "10"])
            .args([
                "--function",
                "f1,f6,f10",
                "--algorithm",
                "cro-ac,cro-bp",
                "--jobs",
                jobs,
                "--out",
            ])
            .arg(out)
            .output()
            .map(|o| o.status.success())
            .unwrap_or(false)
    };
    let (s1, s4) = (dir.path().join("s1"), dir.path().join("s4"));
    if !(suite_with("1", &s1) && suite_with("4", &s4)) {
        return Err("suite subcommand failed".into());
    }
    let same_suite = ["results.csv", "runs.csv"]
        .iter()
        .all(|f| fs::read(s1.join(f)).ok() == fs::read(s4.join(f)).ok());
    check(
        same_run && same_suite,
        format!("run records identical: {same_run}; suite --jobs 1 vs 4 identical: {same_suite}"),
    )
}

fn stats_oracle() -> Outcome {
    // scipy.stats.ttest_ind(equal_var=True)
    let fixed: [(&[f64], &[f64], f64); 3] = [
        (&[1.0, 2.0, 3.0], &[2.0, 3.0, 4.0], -1.224744871391589),
        (
            &[1.0, 2.0, 3.0, 4.0],
            &[2.0, 4.0, 6.0, 8.0, 10.0],
            -2.0578065752724592,
        ),
        (
            &[0.5, 0.7, 0.2, 0.9, 0.4],
            &[1.1, 0.8, 1.5, 1.3],
            -3.348238940336953,
        ),
    ];
    let t = |a: &[f64], b: &[f64]| t_statistic(&summarize(a).unwrap(), &summarize(b).unwrap());
    let worst_fixed = fixed
        .iter()
        .map(|(a, b, e)| (t(a, b) - e).abs())
        .fold(0.0, f64::max);

    let mut rng = CroRng::seed_from_u64(11);
    let mut worst_anti: f64 = 0.0;
    let mut worst_scale: f64 = 0.0;
    for _ in 0..1000 {
        let draw = |rng: &mut CroRng| -> Vec<f64> {
            let n = rng.random_range(2..40);
            (0..n).map(|_| rng.random_range(1e-3..1e3)).collect()
        };
        let (a, b) = (draw(&mut rng), draw(&mut rng));
        let k = rng.random_range(0.01..100.0);
        let base = t(&a, &b);
        worst_anti = worst_anti.max((base + t(&b, &a)).abs());
        let sa: Vec<f64> = a.iter().map(|v| v * k).collect();
        let sb: Vec<f64> = b.iter().map(|v| v * k).collect();
        worst_scale = worst_scale.max((t(&sa, &sb) - base).abs() / base.abs().max(1.0));
    }
    let table_ok = (critical_t95(100) - 1.984).abs() < 1e-3;
    check(
        worst_fixed <= 1e-4 && worst_anti == 0.0 && worst_scale <= 1e-12 && table_ok,
        format!(
            "max oracle error {worst_fixed:.1e}, antisymmetry {worst_anti:.1e}, scale drift {worst_scale:.1e}"
        ),
    )
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "energy conservation, all variants",
            Box::new(energy_conservation),
        ),
        (
            "f7 exact zeros, cro-ac",
            Box::new(|| zero_runs(FunctionId::F7, 46)),
        ),
        (
            "f8 exact zeros, cro-ac",
            Box::new(|| zero_runs(FunctionId::F8, 40)),
        ),
        (
            "f5 ordering vs cro-bp",
            Box::new(|| ordering(FunctionId::F5, Variant::CroBp, -3.0)),
        ),
        (
            "f7 ordering vs cro-ac-1step",
            Box::new(|| ordering(FunctionId::F7, Variant::CroAc1Step, -3.0)),
        ),
        (
            "f9 ordering vs cro-ac-0.2",
            Box::new(|| ordering(FunctionId::F9, Variant::CroAc02, -2.0)),
        ),
        ("collision-rate sigmoid", Box::new(sigmoid)),
        (
            "benchmark optima and reference evaluator",
            Box::new(benchmark_sanity),
        ),
        ("two-step collision geometry", Box::new(collision_geometry)),
        ("determinism of run and suite", Box::new(determinism)),
        ("t statistic oracle and properties", Box::new(stats_oracle)),
    ];
    let mut failed = 0;
    for (k, (name, criterion)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(criterion))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = started.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name}: {detail} [{secs:.1}s]", k + 1);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
