//! `cvmem` — command-line driver for the certification toolkit.
//!
//! Subcommands: `classify`, `bound`, `recalibrate`, `simulate`, `sweep`.
//! Exit codes: 0 success, 2 validation error, 3 internal-consistency
//! assertion.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cvmem::{
    classify, eb_bound, estimate_witness, generic_recalibrated_strategy, photon_loss,
    synthesize_recalibration, tailored_loss_strategy, Error as CoreError, RunSpec,
};

mod config;
mod descriptor;
mod report;

use config::ConfigFile;
use descriptor::{
    build_channel, build_priors, build_strategy, ChannelKind, ChannelParams, PriorDesc,
    PriorKind, StrategyKind,
};
use report::{
    verdict, BoundReport, ClassifyReport, ConfigEcho, RecalibrateReport, SimulateReport,
    SweepRow, SWEEP_CSV_HEADER,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(CoreError),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(CoreError::InternalAssertion(_)) => 3,
            CliError::Core(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "cvmem",
    version,
    about = "Simulation and certification toolkit for continuous-variable quantum memories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a Gaussian channel: CP / EB / gIB flags with decision margins
    Classify(ChannelArgs),
    /// Print the entanglement-breaking bound for the configured priors
    Bound(BoundArgs),
    /// Synthesize the recalibration plan for a CP non-gIB memory
    Recalibrate(ChannelArgs),
    /// Monte Carlo witness estimate with a certification verdict
    Simulate(Box<SimulateArgs>),
    /// Classification and strategy scores over a photon-loss grid
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ChannelArgs {
    /// Channel family
    #[arg(value_enum)]
    kind: ChannelKind,
    /// Photon-loss transmissivity in [0, 1]
    #[arg(long)]
    eta: Option<f64>,
    /// Amplifier gain, at least 1
    #[arg(long)]
    nu: Option<f64>,
    /// Custom channel K, row-major 2×2: k11,k12,k21,k22
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    k: Option<Vec<f64>>,
    /// Custom channel M, row-major 2×2
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    m: Option<Vec<f64>>,
    /// Custom channel displacement offset: c_x,c_p
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    c: Option<Vec<f64>>,
    /// Machine-readable output (default: human text)
    #[arg(long, value_enum)]
    out: Option<OutFormat>,
}

impl ChannelArgs {
    fn params(&self) -> ChannelParams {
        ChannelParams {
            eta: self.eta,
            nu: self.nu,
            k: self.k.clone(),
            m: self.m.clone(),
            c: self.c.clone(),
        }
    }
}

#[derive(Args)]
struct BoundArgs {
    /// Prior family for both arms
    #[arg(long, value_enum, default_value = "gauss")]
    prior: PriorKind,
    /// Gaussian width of the α prior
    #[arg(long)]
    sigma_a: Option<f64>,
    /// Gaussian width of the β prior
    #[arg(long)]
    sigma_b: Option<f64>,
    /// Smoothed-flat square size
    #[arg(long)]
    l: Option<f64>,
    /// Smoothed-flat transition width, in (0, l]
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, value_enum)]
    out: Option<OutFormat>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Eve's strategy: honest | tailored | recalibrated | eb-shrinkage | eb-prior-mean
    #[arg(long, value_enum)]
    strategy: Option<StrategyKind>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    /// Custom memory K (recalibrated strategy), row-major 2×2
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    k: Option<Vec<f64>>,
    /// Custom memory M, row-major 2×2
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    m: Option<Vec<f64>>,
    /// Custom memory displacement offset
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    c: Option<Vec<f64>>,
    /// Prior family for both arms
    #[arg(long, value_enum)]
    prior: Option<PriorKind>,
    #[arg(long)]
    sigma_a: Option<f64>,
    #[arg(long)]
    sigma_b: Option<f64>,
    #[arg(long)]
    l: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Monte Carlo rounds
    #[arg(long)]
    rounds: Option<u64>,
    /// Master seed; the run is a deterministic function of
    /// (seed, rounds, chunk-size)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    chunk_size: Option<u64>,
    /// Confidence multiplier for the one-sided certification interval
    #[arg(long)]
    z: Option<f64>,
    #[arg(long, value_enum)]
    out: Option<OutFormat>,
    /// Configuration file ([alice]/[eve]/[run] sections); flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Photon-loss grid, comma separated, each in (0, 1]
    #[arg(long, value_delimiter = ',', required = true)]
    etas: Vec<f64>,
    #[arg(long)]
    sigma_a: Option<f64>,
    #[arg(long)]
    sigma_b: Option<f64>,
    /// Amplifier gain for the tailored strategy
    #[arg(long, default_value_t = 1.0)]
    nu: f64,
    #[arg(long, default_value_t = 100_000)]
    rounds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 65_536)]
    chunk_size: u64,
    #[arg(long, default_value_t = 5.0)]
    z: f64,
    #[arg(long, value_enum)]
    out: Option<OutFormat>,
}

fn main() {
    // behave like a normal Unix filter when the reader closes the pipe
    // (Rust ignores SIGPIPE by default, turning `cvmem ... | head` into a panic)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify(args) => run_classify(args),
        Command::Bound(args) => run_bound(args),
        Command::Recalibrate(args) => run_recalibrate(args),
        Command::Simulate(args) => run_simulate(*args),
        Command::Sweep(args) => run_sweep(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report serialization cannot fail")
}

fn run_classify(args: ChannelArgs) -> Result<(), CliError> {
    let desc = build_channel(args.kind, &args.params())?;
    let cls = classify(&desc.channel)?;
    let report = ClassifyReport::new(desc.echo, &desc.channel, &cls);
    match args.out {
        Some(OutFormat::Json) => println!("{}", to_json(&report)),
        Some(OutFormat::Csv) => {
            println!("{}", ClassifyReport::csv_header());
            println!("{}", report.csv_row());
        }
        None => report.print_text(),
    }
    Ok(())
}

fn run_recalibrate(args: ChannelArgs) -> Result<(), CliError> {
    let desc = build_channel(args.kind, &args.params())?;
    let plan = synthesize_recalibration(&desc.channel)?;
    let report = RecalibrateReport::new(desc.echo, &plan);
    match args.out {
        Some(OutFormat::Json) => println!("{}", to_json(&report)),
        Some(OutFormat::Csv) => {
            println!("channel,lambda,predicted_trace,predicted_witness");
            println!(
                "\"{}\",{},{},{}",
                report.channel.label(),
                report.lambda,
                report.predicted_trace,
                report.predicted_witness
            );
        }
        None => report.print_text(),
    }
    Ok(())
}

fn run_bound(args: BoundArgs) -> Result<(), CliError> {
    // the bound is a closed form in the widths; σ = 0 is allowed here even
    // though a sampling prior requires σ > 0
    let (echo_a, echo_b, sa, sb) = match args.prior {
        PriorKind::Gauss => {
            let sa = args
                .sigma_a
                .ok_or_else(|| CliError::usage("gauss prior requires --sigma-a"))?;
            let sb = args
                .sigma_b
                .ok_or_else(|| CliError::usage("gauss prior requires --sigma-b"))?;
            let echo = |s| descriptor::PriorEcho {
                kind: "gauss",
                sigma: Some(s),
                l: None,
                delta: None,
            };
            (echo(sa), echo(sb), sa, sb)
        }
        PriorKind::Smoothflat => {
            let l = args.l.ok_or_else(|| CliError::usage("smoothflat prior requires --l"))?;
            let d = args
                .delta
                .ok_or_else(|| CliError::usage("smoothflat prior requires --delta"))?;
            let sigma = cvmem::equivalent_sigma(l, d)?;
            let echo = descriptor::PriorEcho {
                kind: "smoothflat",
                sigma: None,
                l: Some(l),
                delta: Some(d),
            };
            (echo.clone(), echo, sigma, sigma)
        }
    };
    let report = BoundReport {
        prior_a: echo_a,
        prior_b: echo_b,
        equivalent_sigma_a: sa,
        equivalent_sigma_b: sb,
        bound: eb_bound(sa, sb)?,
        gaussian_soundness: args.prior == PriorKind::Gauss,
    };
    match args.out {
        Some(OutFormat::Json) => println!("{}", to_json(&report)),
        Some(OutFormat::Csv) => {
            println!("prior_a,prior_b,equivalent_sigma_a,equivalent_sigma_b,bound");
            println!(
                "{},{},{},{},{}",
                report::label_for_csv(&report.prior_a),
                report::label_for_csv(&report.prior_b),
                report.equivalent_sigma_a,
                report.equivalent_sigma_b,
                report.bound
            );
        }
        None => report.print_text(),
    }
    Ok(())
}

fn run_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let file = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };

    // flags override the config file; defaults apply last
    let strategy_kind = match args.strategy {
        Some(kind) => kind,
        None => match file.get("eve", "strategy") {
            Some(name) => StrategyKind::parse_name(name)?,
            None => return Err(CliError::usage("missing --strategy (or [eve] strategy)")),
        },
    };
    let params = ChannelParams {
        eta: or_file(args.eta, &file, "eve", "eta")?,
        nu: or_file(args.nu, &file, "eve", "nu")?,
        k: args.k.clone().or(file.get_floats("eve", "k")?),
        m: args.m.clone().or(file.get_floats("eve", "m")?),
        c: args.c.clone().or(file.get_floats("eve", "c")?),
    };
    let prior_kind = match args.prior {
        Some(kind) => kind,
        None => match file.get("alice", "prior") {
            Some(name) => <PriorKind as ValueEnum>::from_str(name, true)
                .map_err(|_| CliError::usage(format!("unknown prior `{name}`")))?,
            None => PriorKind::Gauss,
        },
    };
    let (prior_a, prior_b) = build_priors(
        prior_kind,
        or_file(args.sigma_a, &file, "alice", "sigma_a")?,
        or_file(args.sigma_b, &file, "alice", "sigma_b")?,
        or_file(args.l, &file, "alice", "l")?,
        or_file(args.delta, &file, "alice", "delta")?,
    )?;
    let rounds = or_file(args.rounds, &file, "run", "rounds")?.unwrap_or(100_000);
    let seed = or_file(args.seed, &file, "run", "seed")?.unwrap_or(0);
    let chunk_size = or_file(args.chunk_size, &file, "run", "chunk_size")?.unwrap_or(65_536);
    let z = or_file(args.z, &file, "run", "z")?.unwrap_or(5.0);
    if z.is_nan() || z < 0.0 {
        return Err(CliError::usage(format!("z = {z} must be nonnegative")));
    }
    let out = match args.out {
        Some(fmt) => Some(fmt),
        None => match file.get("run", "out") {
            Some(name) => Some(
                <OutFormat as ValueEnum>::from_str(name, true)
                    .map_err(|_| CliError::usage(format!("unknown output format `{name}`")))?,
            ),
            None => None,
        },
    };

    let (strategy, strategy_echo) = build_strategy(strategy_kind, &params, &prior_a, &prior_b)?;
    let spec = RunSpec::new(rounds, seed, chunk_size)?;
    let bound = bound_for(&prior_a, &prior_b)?;

    let start = Instant::now();
    let est = estimate_witness(&strategy, &prior_a.prior, &prior_b.prior, &spec)?;
    let wall_time_ms = start.elapsed().as_millis() as u64;

    let report = SimulateReport {
        config: ConfigEcho {
            strategy: strategy_echo,
            prior_a: prior_a.echo,
            prior_b: prior_b.echo,
            rounds,
            seed,
            chunk_size,
            z,
        },
        mean: est.mean,
        stderr: est.stderr,
        n: est.n,
        bound,
        verdict: verdict(&est, bound, z),
        wall_time_ms,
    };
    match out.unwrap_or(OutFormat::Json) {
        OutFormat::Json => println!("{}", to_json(&report)),
        OutFormat::Csv => {
            println!("strategy,mean,stderr,n,bound,verdict,seed");
            println!(
                "{},{},{},{},{},{},{}",
                report.config.strategy.name,
                report.mean,
                report.stderr,
                report.n,
                report.bound,
                report.verdict,
                report.config.seed
            );
        }
    }
    Ok(())
}

fn run_sweep(args: SweepArgs) -> Result<(), CliError> {
    let (prior_a, prior_b) =
        build_priors(PriorKind::Gauss, args.sigma_a, args.sigma_b, None, None)?;
    let bound = bound_for(&prior_a, &prior_b)?;
    let mut rows: Vec<SweepRow> = Vec::new();
    let mut row_index = 0u64;
    for &eta in &args.etas {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(CliError::usage(format!("sweep eta={eta} outside (0, 1]")));
        }
        let cls = classify(&photon_loss(eta)?)?;
        let is_eb = cls.is_eb.expect("single-mode EB is always decided");

        // every grid point gets the tailored strategy; non-gIB points also
        // get the generic recalibrated one (no plan exists otherwise)
        let mut strategies: Vec<(&'static str, cvmem::EveStrategy)> =
            vec![("tailored", tailored_loss_strategy(eta, args.nu)?)];
        if !cls.is_gib {
            strategies
                .push(("recalibrated", generic_recalibrated_strategy(photon_loss(eta)?)?));
        }
        for (name, strategy) in strategies {
            let spec = RunSpec::new(
                args.rounds,
                cvmem::chunk_seed(args.seed, row_index),
                args.chunk_size,
            )?;
            row_index += 1;
            let est = estimate_witness(&strategy, &prior_a.prior, &prior_b.prior, &spec)?;
            rows.push(SweepRow {
                eta,
                is_cp: cls.is_cp,
                is_eb,
                is_gib: cls.is_gib,
                strategy: name,
                mean: est.mean,
                stderr: est.stderr,
                bound,
                verdict: verdict(&est, bound, args.z),
            });
        }
    }
    match args.out.unwrap_or(OutFormat::Csv) {
        OutFormat::Csv => {
            println!("{SWEEP_CSV_HEADER}");
            for row in &rows {
                println!("{}", row.csv_row());
            }
        }
        OutFormat::Json => println!("{}", to_json(&rows)),
    }
    Ok(())
}

fn bound_for(prior_a: &PriorDesc, prior_b: &PriorDesc) -> Result<f64, CliError> {
    Ok(eb_bound(
        prior_a.prior.fisher_equivalent_sigma(),
        prior_b.prior.fisher_equivalent_sigma(),
    )?)
}

fn or_file<T: std::str::FromStr>(
    flag: Option<T>,
    file: &ConfigFile,
    section: &str,
    key: &str,
) -> Result<Option<T>, CliError> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.get_parsed(section, key),
    }
}
