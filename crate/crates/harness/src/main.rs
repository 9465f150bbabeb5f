use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nsga3_core::Algorithm;
use nsga3_harness::{
    beta_trace_svg, coverage_trace_svg, fit_experiment, read_experiment_csv, read_trace,
    run_experiment, run_single, scaling_svg, summarize, write_trace, ExperimentConfig,
    ExperimentOptions, FitModel, HarnessError, PlotKind, Result, RunConfig,
};

/// Runtime experiments for NSGA-III and NSGA-II on m-OneMinMax.
#[derive(Parser)]
#[command(name = "nsga3", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration until the Pareto front is covered.
    Run(RunArgs),
    /// Run a grid of configurations from a TOML file, writing one CSV row per run.
    Experiment(ExperimentArgs),
    /// Fit a log-log scaling law to an experiment CSV.
    Fit(FitArgs),
    /// Render an experiment or trace CSV as SVG.
    Plot(PlotArgs),
}

fn parse_algo(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse()
        .map_err(|()| format!("expected nsga3 or nsga2, got `{s}`"))
}

#[derive(Args)]
struct RunArgs {
    /// TOML file with run settings; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_algo)]
    algo: Option<Algorithm>,
    /// Number of objectives (even).
    #[arg(long)]
    m: Option<usize>,
    /// Bit-string length.
    #[arg(long)]
    n: Option<usize>,
    /// Population size.
    #[arg(long)]
    mu: Option<usize>,
    /// Reference point resolution [default: ceil(2 m^1.5 n)].
    #[arg(long)]
    p: Option<u32>,
    /// Nadir floor [default: n].
    #[arg(long)]
    eps_nad: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Generation cap [default: ceil(50 n^2 ln(n) / mu)].
    #[arg(long)]
    max_gens: Option<u64>,
    /// Stop once this fraction of the Pareto front is covered.
    #[arg(long)]
    stop_at_coverage: Option<f64>,
    /// Write the per-generation trace CSV here.
    #[arg(long)]
    trace_out: Option<PathBuf>,
    /// Trace every k-th generation.
    #[arg(long)]
    trace_every: Option<u64>,
    /// Check cover-number invariants and report violations.
    #[arg(long)]
    check_invariants: bool,
    /// Abort with exit code 2 on the first invariant violation.
    #[arg(long)]
    strict_invariants: bool,
    /// Write the full result as JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// TOML experiment file.
    #[arg(long)]
    config: PathBuf,
    /// Repetitions per configuration (overrides the file).
    #[arg(long)]
    reps: Option<usize>,
    /// Concurrent runs (overrides the file).
    #[arg(long)]
    jobs: Option<usize>,
    /// Master seed (overrides the file).
    #[arg(long)]
    seed: Option<u64>,
    /// Abort on the first invariant violation in any run.
    #[arg(long)]
    strict_invariants: bool,
    /// Write zeros to the wall_ms column so output is byte-reproducible.
    #[arg(long)]
    no_wall_time: bool,
    /// CSV destination [default: stdout].
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FitArgs {
    /// Experiment CSV.
    input: PathBuf,
    /// n_pow or n_log_n_over_mu.
    #[arg(long, default_value = "n_pow")]
    model: FitModel,
    /// Keep only rows of this algorithm.
    #[arg(long, value_parser = parse_algo)]
    algo: Option<Algorithm>,
    /// Keep only rows with this objective count.
    #[arg(long)]
    m: Option<usize>,
    /// Write the fit as JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Experiment CSV (scaling) or trace CSV (beta_trace, coverage_trace).
    input: PathBuf,
    #[arg(long)]
    kind: PlotKind,
    /// SVG destination [default: stdout].
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Fit(args) => cmd_fit(args),
        Command::Plot(args) => cmd_plot(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| HarnessError::io(path, e))
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| HarnessError::io(path, e))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| HarnessError::io(path, e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| HarnessError::io("<stdout>", e)),
    }
}

fn run_config(args: &RunArgs) -> Result<RunConfig> {
    let mut config = match &args.config {
        Some(path) => RunConfig::from_toml_file(path)?,
        None => {
            let (n, mu) = match (args.n, args.mu) {
                (Some(n), Some(mu)) => (n, mu),
                _ => {
                    return Err(HarnessError::Config(
                        "--n and --mu are required without --config".into(),
                    ))
                }
            };
            RunConfig::new(Algorithm::Nsga3, 2, n, mu, 0)
        }
    };
    if let Some(v) = args.algo {
        config.algo = v;
    }
    if let Some(v) = args.m {
        config.m = v;
    }
    if let Some(v) = args.n {
        config.n = v;
    }
    if let Some(v) = args.mu {
        config.mu = v;
    }
    if args.p.is_some() {
        config.p = args.p;
    }
    if args.eps_nad.is_some() {
        config.eps_nad = args.eps_nad;
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    if args.max_gens.is_some() {
        config.max_gens = args.max_gens;
    }
    if let Some(v) = args.stop_at_coverage {
        config.stop_at_coverage = v;
    }
    if let Some(v) = args.trace_every {
        config.trace_every = v;
    }
    if args.trace_out.is_none() && args.out.is_none() {
        config.trace_every = 0;
    }
    config.check_invariants |= args.check_invariants;
    config.strict_invariants |= args.strict_invariants;
    config.validate()?;
    Ok(config)
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let config = run_config(&args)?;
    let result = run_single(&config)?;
    if let Some(path) = &args.trace_out {
        write_trace(&result.trace, create(path)?)?;
    }
    if let Some(path) = &args.out {
        let mut file = create(path)?;
        serde_json::to_writer_pretty(&mut file, &result)?;
        file.flush().map_err(|e| HarnessError::io(path, e))?;
    }
    let c = &result.config;
    println!(
        "algo={} m={} n={} mu={} p={} eps_nad={} seed={}",
        c.algo.name(),
        c.m,
        c.n,
        c.mu,
        c.resolution(),
        c.nadir_floor(),
        c.seed
    );
    let status = if result.capped { "capped" } else { "covered" };
    println!(
        "{status} generations={} fitness_evals={} coverage={:.4} final_beta={} wall_ms={}",
        result.generations,
        result.fitness_evaluations,
        result.final_coverage,
        result.final_beta,
        result.wall_time_ms
    );
    if config.check_invariants {
        println!("invariant_violations={}", result.violations.len());
        for v in result.violations.iter().take(10) {
            println!("  t={} {}", v.t, v.message);
        }
    }
    Ok(())
}

fn cmd_experiment(args: ExperimentArgs) -> Result<()> {
    let file = ExperimentConfig::from_toml_file(&args.config)?;
    let mut grid = file.expand()?;
    if args.strict_invariants {
        for config in &mut grid {
            config.strict_invariants = true;
        }
    }
    let options = ExperimentOptions {
        reps: args.reps.unwrap_or(file.reps),
        master_seed: args.seed.unwrap_or(file.master_seed),
        jobs: args.jobs.unwrap_or(file.jobs),
        record_wall_time: !args.no_wall_time,
    };
    let rows = match &args.out {
        Some(path) => run_experiment(&grid, options, create(path)?)?,
        None => run_experiment(&grid, options, io::stdout().lock())?,
    };
    for s in summarize(&rows) {
        let stat = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.1}"));
        eprintln!(
            "{} m={} n={} mu={}: runs={} capped={} mean={} median={} sd={}",
            s.algo.name(),
            s.m,
            s.n,
            s.mu,
            s.runs,
            s.capped,
            stat(s.mean),
            stat(s.median),
            stat(s.stddev)
        );
    }
    Ok(())
}

fn cmd_fit(args: FitArgs) -> Result<()> {
    let mut rows = read_experiment_csv(open(&args.input)?)?;
    rows.retain(|r| args.algo.is_none_or(|a| r.algo == a) && args.m.is_none_or(|m| r.m == m));
    let fit = fit_experiment(&rows, args.model)?;
    println!(
        "model={} slope={:.4} intercept={:.4} r_squared={:.4}",
        fit.model.name(),
        fit.slope,
        fit.intercept,
        fit.r_squared
    );
    for p in &fit.points {
        println!(
            "  x={:.4} mean_generations={:.2} residual={:.4}",
            p.x, p.mean_generations, p.residual
        );
    }
    if let Some(path) = &args.out {
        emit(Some(path), &serde_json::to_string_pretty(&fit)?)?;
    }
    Ok(())
}

fn cmd_plot(args: PlotArgs) -> Result<()> {
    let input = open(&args.input)?;
    let svg = match args.kind {
        PlotKind::Scaling => scaling_svg(&read_experiment_csv(input)?)?,
        PlotKind::BetaTrace => beta_trace_svg(&read_trace(input)?)?,
        PlotKind::CoverageTrace => coverage_trace_svg(&read_trace(input)?)?,
    };
    emit(args.out.as_deref(), &svg)
}
