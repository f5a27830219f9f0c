use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{error::ErrorKind, Args, Parser, Subcommand};
use cro_cli::record::{save_trace, RunFile};
use cro_cli::specfile::{save_spec, spec_path};
use cro_cli::suite::{render_table, run_suite, write_results, SpecSource, SuiteConfig};
use cro_core::benchmarks::generate_spec;
use cro_core::reactor::DEFAULT_TRACE_INTERVAL;
use cro_core::{run_traced, AlgorithmConfig, BoundaryScheme, FunctionId, Variant};

/// Chemical reaction optimization on the shifted/rotated benchmark suite.
#[derive(Debug, Parser)]
#[command(name = "cro", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Execute one run and write its record.
    Run(RunArgs),
    /// Run every (function, algorithm) pair repeatedly and tabulate.
    Suite(SuiteArgs),
    /// Write one spec file per benchmark function.
    GenData(GenArgs),
}

#[derive(Debug, Args)]
struct SpecArgs {
    /// Read instances from this directory instead of generating them.
    #[arg(long)]
    spec_dir: Option<PathBuf>,
    /// Seed for generated instances.
    #[arg(long, default_value_t = 0)]
    spec_seed: u64,
    #[arg(long, default_value_t = 30)]
    dim: usize,
}

impl SpecArgs {
    fn source(&self) -> SpecSource {
        match &self.spec_dir {
            Some(dir) => SpecSource::Load(dir.clone()),
            None => SpecSource::Generate {
                seed: self.spec_seed,
            },
        }
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    function: FunctionId,
    #[arg(long, default_value = "cro-ac")]
    algorithm: Variant,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 300_000)]
    max_fe: u64,
    /// Overrides the variant's default boundary scheme.
    #[arg(long)]
    boundary: Option<BoundaryScheme>,
    /// Also write the collision-rate trace as CSV.
    #[arg(long)]
    trace: bool,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(Debug, Args)]
struct SuiteArgs {
    /// Comma-separated function ids, or `all`.
    #[arg(long, default_value = "all", value_parser = parse_functions)]
    function: FunctionList,
    /// Comma-separated variants; the first is the t-test baseline.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "cro-ac,cro-bp,cro-bb,cro-hp"
    )]
    algorithm: Vec<Variant>,
    #[arg(long, default_value_t = 51)]
    runs: u64,
    #[arg(long, default_value_t = 300_000)]
    max_fe: u64,
    /// Master seed for the per-run seeds.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    boundary: Option<BoundaryScheme>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "results")]
    out: PathBuf,
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value_t = 30)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "specs")]
    out: PathBuf,
}

#[derive(Debug, Clone)]
struct FunctionList(Vec<FunctionId>);

fn parse_functions(list: &str) -> Result<FunctionList, cro_core::CroError> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(FunctionList(FunctionId::ALL.to_vec()));
    }
    list.split(',')
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map(FunctionList)
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let spec = args.spec.source().resolve(args.function, args.spec.dim)?;
    let mut cfg = AlgorithmConfig::new(args.algorithm)
        .with_seed(args.seed)
        .with_max_fe(args.max_fe);
    if let Some(b) = args.boundary {
        cfg.boundary_scheme = b;
    }
    let started = Instant::now();
    let record = run_traced(&cfg, &spec, DEFAULT_TRACE_INTERVAL)?;
    let elapsed = started.elapsed();

    ensure_dir(&args.out)?;
    let stem = format!("{}_{}_{}", args.function, args.algorithm, args.seed);
    let path = args.out.join(format!("run_{stem}.json"));
    RunFile::new(&record, &cfg, &spec).save(&path)?;
    if args.trace {
        save_trace(
            &record.coll_rate_trace,
            &args.out.join(format!("trace_{stem}.csv")),
        )?;
    }
    println!("{:e}", record.best_value);
    eprintln!(
        "{} {} seed {}: best {:e} after {} evaluations in {:.2?}",
        args.function, args.algorithm, args.seed, record.best_value, record.fe_used, elapsed
    );
    Ok(())
}

fn cmd_suite(args: SuiteArgs) -> Result<()> {
    if args.runs == 0 {
        bail!("--runs must be at least 1");
    }
    if args.algorithm.is_empty() {
        bail!("at least one algorithm is required");
    }
    let cfg = SuiteConfig {
        functions: args.function.0,
        algorithms: args.algorithm,
        runs: args.runs,
        max_fe: args.max_fe,
        dim: args.spec.dim,
        master_seed: args.seed,
        output_dir: args.out,
        spec_source: args.spec.source(),
        boundary: args.boundary,
        jobs: args.jobs,
    };
    let results = run_suite(&cfg)?;
    write_results(&results, &cfg.output_dir)?;
    print!("{}", render_table(&results.rows));
    let failed: u64 = results.rows.iter().map(|r| r.failed).sum();
    if failed > 0 {
        eprintln!("{failed} run(s) failed; see runs.csv");
    }
    Ok(())
}

fn cmd_gen_data(args: GenArgs) -> Result<()> {
    if args.dim < 2 {
        bail!("--dim must be at least 2");
    }
    ensure_dir(&args.out)?;
    for id in FunctionId::ALL {
        save_spec(
            &generate_spec(id, args.dim, args.seed),
            &spec_path(&args.out, id),
        )?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Suite(a) => cmd_suite(a),
        Command::GenData(a) => cmd_gen_data(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
