use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use noma_secrecy::error::Error;
use noma_secrecy::sop_exact::Method;
use noma_secrecy::sweep::{
    emit, evaluate_point, parse_method, parse_model, run_sweep, ModelSpec, OutputFormat, Scale,
    SweepSpec,
};
use noma_secrecy::{load_config, LoadedConfig, Result};

#[derive(Parser)]
#[command(
    name = "noma-secrecy",
    version,
    about = "Secrecy outage probabilities for a two-user downlink NOMA system under imperfect SIC"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one parameter and tabulate SOPs for every (model, method) pair
    Sweep(SweepArgs),
    /// Evaluate SOPs at the configured operating point
    Point(PointArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Path to a key=value config file; omitted keys use reference defaults
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated methods: exact, asy, mc
    #[arg(long, default_value = "exact")]
    methods: String,
    /// Comma-separated models: proposed[:zeta], fixed:<beta>,
    /// constant:<ri_u1>:<ri_u2>, perfect
    #[arg(long, default_value = "proposed")]
    models: String,
    /// Monte Carlo samples per estimate
    #[arg(long, default_value_t = 1_000_000)]
    mc_samples: u64,
    /// Master seed for the Monte Carlo channel streams
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output path; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Swept parameter: alpha, transmit_snr_db, received_snr_db, zeta,
    /// gamma_th, target_rate_1, target_rate_2, d2_m, gain_ratio
    #[arg(long)]
    axis: String,
    #[arg(long)]
    start: f64,
    #[arg(long)]
    stop: f64,
    #[arg(long)]
    points: usize,
    /// Space the grid logarithmically
    #[arg(long)]
    log: bool,
    /// Output format: csv or json
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    common: CommonArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are not errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Point(args) => point(args),
    }
}

fn load(common: &CommonArgs) -> Result<LoadedConfig> {
    match &common.config {
        Some(path) => load_config(path),
        None => Ok(LoadedConfig::defaults()),
    }
}

fn parse_list<T>(s: &str, parse: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse)
        .collect()
}

fn with_output<F>(out: Option<&Path>, write: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    let io_err = |path: &Path| {
        let path = path.display().to_string();
        move |source| Error::Io { path, source }
    };
    match out {
        Some(path) => {
            let file = File::create(path).map_err(io_err(path))?;
            let mut w = BufWriter::new(file);
            write(&mut w).and_then(|()| w.flush()).map_err(io_err(path))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w).map_err(|source| Error::Io {
                path: "<stdout>".to_string(),
                source,
            })
        }
    }
}

fn sweep(args: SweepArgs) -> Result<()> {
    let base = load(&args.common)?;
    let spec = SweepSpec {
        axis: args.axis.parse()?,
        start: args.start,
        stop: args.stop,
        points: args.points,
        scale: if args.log { Scale::Log } else { Scale::Linear },
        methods: parse_list(&args.common.methods, parse_method)?,
        models: parse_list(&args.common.models, parse_model)?,
        mc_samples: args.common.mc_samples,
        seed: args.common.seed,
    };
    let format: OutputFormat = args.format.parse()?;
    let rows = run_sweep(&spec, &base)?;
    with_output(args.common.out.as_deref(), |w| emit(&rows, &spec, format, w))
}

fn point(args: PointArgs) -> Result<()> {
    let base = load(&args.common)?;
    let methods: Vec<Method> = parse_list(&args.common.methods, parse_method)?;
    let models: Vec<ModelSpec> = parse_list(&args.common.models, parse_model)?;
    if methods.is_empty() {
        return Err(Error::config("at least one method must be requested"));
    }
    if models.is_empty() {
        return Err(Error::config("at least one model must be requested"));
    }
    let mut lines = Vec::new();
    for model_spec in &models {
        let model = model_spec.resolve(base.zeta);
        for &method in &methods {
            let (s1, s2) = evaluate_point(
                &base.system,
                &model,
                method,
                args.common.mc_samples,
                args.common.seed,
            )?;
            for est in [s1, s2] {
                let name = format!("{}.{}.S{}", model_spec.label, method.token(), est.user);
                lines.push(format!("{name} = {:.11e}", est.value));
                if let Some(se) = est.std_error {
                    lines.push(format!("{name}_se = {se:.11e}"));
                }
            }
        }
    }
    with_output(args.common.out.as_deref(), |w| {
        for line in &lines {
            writeln!(w, "{line}")?;
        }
        Ok(())
    })
}
