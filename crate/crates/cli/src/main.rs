//! Command-line front end: ingest data, run each analysis, emit
//! machine-readable results with the resolved configuration pinned into
//! every JSON summary.
//!
//! Exit codes: 0 success, 2 data/model error, 3 usage error, 4 numerical
//! blow-up. Summaries go to stdout; artifact files are written only when
//! an output path is given (stylized always writes its three artifacts,
//! defaulting to the current directory).

use clap::{Args, Parser, Subcommand, ValueEnum};
use minkgarch::dynamics::{
    integrate_nahm, lax_matrix, sine_gordon_residual, soliton_value, spectrum, DynamicsError,
    Grid2D, SolitonParams, Su2Triple,
};
use minkgarch::garch::{
    fit_qmle, simulate_with_variance, unconditional_variance, FitOptions, GarchParams, SimConfig,
    GENERATOR_NAME,
};
use minkgarch::minkowski::{extract_shock, metric_flow, MetricParams, RegimeKind};
use minkgarch::series::{log_returns, moments, parse_price_csv, ReturnKind, ReturnSeries};
use minkgarch::stylized::{abs_acf, fit_power_law, minkowski_embedding};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "minkgarch",
    version,
    about = "GARCH(1,1) toolkit with a signed-metric extension",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a price or return file, report moments, optionally write returns
    Ingest(IngestArgs),
    /// Fit GARCH(1,1) by Gaussian quasi-maximum likelihood
    Fit(FitArgs),
    /// Simulate a GARCH(1,1) return series from a seeded generator
    Simulate(SimulateArgs),
    /// Volatility-clustering diagnostics: ACF, power law, Minkowski embedding
    Stylized(StylizedArgs),
    /// Run the signed metric flow over a squared-shock file
    Minkowski(MinkowskiArgs),
    /// Evaluate the sine-Gordon kink and its discrete residual
    Soliton(SolitonArgs),
    /// Integrate the Nahm flow and report Lax eigenvalue drift
    Nahm(NahmArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputKind {
    Prices,
    Returns,
}

impl InputKind {
    fn as_str(self) -> &'static str {
        match self {
            InputKind::Prices => "prices",
            InputKind::Returns => "returns",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Args)]
struct IngestArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "prices")]
    kind: InputKind,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct FitArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "prices")]
    kind: InputKind,
    #[arg(long, default_value_t = 8)]
    multistarts: usize,
    #[arg(long, default_value_t = 2000)]
    max_iter: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    kappa: f64,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    horizon: usize,
    #[arg(long, default_value_t = 0)]
    burn_in: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Args)]
struct StylizedArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "returns")]
    kind: InputKind,
    #[arg(long, default_value_t = 50)]
    max_lag: usize,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct MinkowskiArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    alpha0: f64,
    #[arg(long)]
    alpha1: f64,
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    g0: f64,
    /// Recover the shocks back out of the path and report the round-trip error
    #[arg(long)]
    extract: bool,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SolitonArgs {
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    p: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    d_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    d_max: f64,
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    s_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    s_max: f64,
    #[arg(long, default_value_t = 0.01)]
    grid_h: f64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NahmInit {
    Random,
    Canonical,
}

impl NahmInit {
    fn as_str(self) -> &'static str {
        match self {
            NahmInit::Random => "random",
            NahmInit::Canonical => "canonical",
        }
    }
}

#[derive(Args)]
struct NahmArgs {
    #[arg(long, value_enum, default_value = "random")]
    init: NahmInit,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    s_from: f64,
    #[arg(long, default_value_t = 0.5)]
    s_to: f64,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum CliError {
    Usage(String),
    Data(String),
    BlowUp(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 3,
            CliError::Data(_) => 2,
            CliError::BlowUp(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::BlowUp(m) => m,
        }
    }
}

macro_rules! data_error_from {
    ($($ty:ty),* $(,)?) => {$(
        impl From<$ty> for CliError {
            fn from(e: $ty) -> CliError {
                CliError::Data(e.to_string())
            }
        }
    )*};
}

data_error_from!(
    minkgarch::series::SeriesError,
    minkgarch::garch::GarchError,
    minkgarch::minkowski::MetricError,
    minkgarch::stylized::StylizedError,
);

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> CliError {
        match e {
            DynamicsError::BlowUp { .. } => CliError::BlowUp(e.to_string()),
            DynamicsError::InvalidStep(_) => CliError::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are successful exits; anything else is usage
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Ingest(args) => cmd_ingest(args),
        Command::Fit(args) => cmd_fit(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Stylized(args) => cmd_stylized(args),
        Command::Minkowski(args) => cmd_minkowski(args),
        Command::Soliton(args) => cmd_soliton(args),
        Command::Nahm(args) => cmd_nahm(args),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn read_returns(path: &Path, kind: InputKind) -> Result<ReturnSeries, CliError> {
    let text = read_file(path)?;
    match kind {
        InputKind::Prices => {
            let prices = parse_price_csv(&text)?;
            Ok(log_returns(&prices)?)
        }
        InputKind::Returns => Ok(ReturnSeries::parse_lines(&text, ReturnKind::Log)?),
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

#[derive(Serialize)]
struct Summary<C: Serialize, R: Serialize> {
    command: &'static str,
    version: &'static str,
    seed: u64,
    config: C,
    result: R,
}

fn emit<C: Serialize, R: Serialize>(summary: &Summary<C, R>) {
    println!(
        "{}",
        serde_json::to_string_pretty(summary).expect("summary serializes")
    );
}

#[derive(Serialize)]
struct MomentsJson {
    mean: f64,
    variance: f64,
    fourth_moment: f64,
    excess_kurtosis: f64,
}

// ---------------------------------------------------------------- ingest

#[derive(Serialize)]
struct IngestConfig {
    input: String,
    kind: &'static str,
    output: Option<String>,
    format: &'static str,
}

#[derive(Serialize)]
struct IngestResult {
    n_prices: Option<usize>,
    n_returns: usize,
    moments: Option<MomentsJson>,
    output: Option<String>,
}

fn cmd_ingest(args: IngestArgs) -> Result<(), CliError> {
    let text = read_file(&args.input)?;
    let (n_prices, returns) = match args.kind {
        InputKind::Prices => {
            let prices = parse_price_csv(&text)?;
            let r = log_returns(&prices)?;
            (Some(prices.len()), r)
        }
        InputKind::Returns => (None, ReturnSeries::parse_lines(&text, ReturnKind::Log)?),
    };
    let m = moments(&returns).ok().map(|m| MomentsJson {
        mean: m.mean,
        variance: m.variance,
        fourth_moment: m.fourth_moment,
        excess_kurtosis: m.excess_kurtosis,
    });
    if let Some(out) = &args.output {
        let content = match args.format {
            OutputFormat::Csv => returns.to_lines(),
            OutputFormat::Json => {
                serde_json::to_string_pretty(&returns.values).expect("values serialize")
            }
        };
        write_file(out, &content)?;
    }
    emit(&Summary {
        command: "ingest",
        version: VERSION,
        seed: args.seed,
        config: IngestConfig {
            input: path_str(&args.input),
            kind: args.kind.as_str(),
            output: args.output.as_deref().map(path_str),
            format: args.format.as_str(),
        },
        result: IngestResult {
            n_prices,
            n_returns: returns.len(),
            moments: m,
            output: args.output.as_deref().map(path_str),
        },
    });
    Ok(())
}

// ------------------------------------------------------------------- fit

#[derive(Serialize)]
struct FitConfig {
    input: String,
    kind: &'static str,
    multistarts: usize,
    max_iter: usize,
    tol: f64,
}

#[derive(Serialize)]
struct FitResult {
    kappa: f64,
    alpha: f64,
    beta: f64,
    loglik: f64,
    converged: bool,
    iterations: usize,
    sigma0_sq: f64,
    generator: &'static str,
    seed: u64,
}

fn cmd_fit(args: FitArgs) -> Result<(), CliError> {
    if args.multistarts == 0 {
        return Err(CliError::Usage("--multistarts must be >= 1".into()));
    }
    if args.tol.is_nan() || args.tol <= 0.0 || args.max_iter == 0 {
        return Err(CliError::Usage("--tol must be > 0 and --max-iter >= 1".into()));
    }
    let returns = read_returns(&args.input, args.kind)?;
    let fit = fit_qmle(
        &returns,
        &FitOptions {
            multistarts: args.multistarts,
            max_iter: args.max_iter,
            tol: args.tol,
        },
    )?;
    emit(&Summary {
        command: "fit",
        version: VERSION,
        seed: args.seed,
        config: FitConfig {
            input: path_str(&args.input),
            kind: args.kind.as_str(),
            multistarts: args.multistarts,
            max_iter: args.max_iter,
            tol: args.tol,
        },
        result: FitResult {
            kappa: fit.params.kappa(),
            alpha: fit.params.alpha(),
            beta: fit.params.beta(),
            loglik: fit.loglik,
            converged: fit.converged,
            iterations: fit.iterations,
            sigma0_sq: fit.sigma0_sq,
            generator: GENERATOR_NAME,
            seed: args.seed,
        },
    });
    Ok(())
}

// -------------------------------------------------------------- simulate

#[derive(Serialize)]
struct SimulateConfig {
    kappa: f64,
    alpha: f64,
    beta: f64,
    horizon: usize,
    burn_in: usize,
    generator: &'static str,
    output: Option<String>,
    format: &'static str,
}

#[derive(Serialize)]
struct SimulateResult {
    n_returns: usize,
    sample_mean: f64,
    sample_variance: f64,
    unconditional_variance: f64,
    output: Option<String>,
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    if args.horizon == 0 {
        return Err(CliError::Usage("--horizon must be >= 1".into()));
    }
    let params = GarchParams::new(args.kappa, args.alpha, args.beta)?;
    let (returns, _) = simulate_with_variance(
        &params,
        &SimConfig {
            seed: args.seed,
            horizon: args.horizon,
            burn_in: args.burn_in,
        },
    )?;
    if let Some(out) = &args.output {
        let content = match args.format {
            OutputFormat::Csv => returns.to_lines(),
            OutputFormat::Json => {
                serde_json::to_string_pretty(&returns.values).expect("values serialize")
            }
        };
        write_file(out, &content)?;
    }
    let n = returns.len() as f64;
    let mean = returns.values.iter().sum::<f64>() / n;
    let var = returns.values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    emit(&Summary {
        command: "simulate",
        version: VERSION,
        seed: args.seed,
        config: SimulateConfig {
            kappa: args.kappa,
            alpha: args.alpha,
            beta: args.beta,
            horizon: args.horizon,
            burn_in: args.burn_in,
            generator: GENERATOR_NAME,
            output: args.output.as_deref().map(path_str),
            format: args.format.as_str(),
        },
        result: SimulateResult {
            n_returns: returns.len(),
            sample_mean: mean,
            sample_variance: var,
            unconditional_variance: unconditional_variance(&params),
            output: args.output.as_deref().map(path_str),
        },
    });
    Ok(())
}

// -------------------------------------------------------------- stylized

#[derive(Serialize)]
struct StylizedConfig {
    input: String,
    kind: &'static str,
    max_lag: usize,
    output_dir: String,
}

#[derive(Serialize)]
struct PowerLawJson {
    #[serde(rename = "C")]
    c: f64,
    beta: f64,
    r_squared: f64,
    used_lags: Vec<usize>,
}

#[derive(Serialize)]
struct StylizedArtifacts {
    acf: String,
    power_law: String,
    embedding: String,
}

#[derive(Serialize)]
struct StylizedResult {
    n_returns: usize,
    positive_lags: usize,
    power_law: PowerLawJson,
    paper_beta_bound_satisfied: bool,
    artifacts: StylizedArtifacts,
}

fn cmd_stylized(args: StylizedArgs) -> Result<(), CliError> {
    if args.max_lag == 0 {
        return Err(CliError::Usage("--max-lag must be >= 1".into()));
    }
    let returns = read_returns(&args.input, args.kind)?;
    let curve = abs_acf(&returns, args.max_lag)?;
    let fit = fit_power_law(&curve)?;
    let embedding = minkowski_embedding(&curve, &fit, true)?;

    std::fs::create_dir_all(&args.output_dir)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.output_dir.display())))?;
    let acf_path = args.output_dir.join("acf.csv");
    let fit_path = args.output_dir.join("power_law.json");
    let emb_path = args.output_dir.join("embedding.csv");
    let fit_json = PowerLawJson {
        c: fit.c,
        beta: fit.beta,
        r_squared: fit.r_squared,
        used_lags: fit.used_lags.clone(),
    };
    write_file(&acf_path, &curve.to_csv_string())?;
    write_file(
        &fit_path,
        &serde_json::to_string_pretty(&fit_json).expect("fit serializes"),
    )?;
    write_file(&emb_path, &embedding.to_csv_string())?;

    emit(&Summary {
        command: "stylized",
        version: VERSION,
        seed: args.seed,
        config: StylizedConfig {
            input: path_str(&args.input),
            kind: args.kind.as_str(),
            max_lag: args.max_lag,
            output_dir: path_str(&args.output_dir),
        },
        result: StylizedResult {
            n_returns: returns.len(),
            positive_lags: fit_json.used_lags.len(),
            paper_beta_bound_satisfied: fit_json.beta <= 0.5,
            power_law: fit_json,
            artifacts: StylizedArtifacts {
                acf: path_str(&acf_path),
                power_law: path_str(&fit_path),
                embedding: path_str(&emb_path),
            },
        },
    });
    Ok(())
}

// ------------------------------------------------------------- minkowski

#[derive(Serialize)]
struct MinkowskiConfig {
    input: String,
    alpha0: f64,
    alpha1: f64,
    beta: f64,
    g0: f64,
    extract: bool,
    output: Option<String>,
}

#[derive(Serialize)]
struct RegimeCounts {
    spherical: usize,
    hyperbolic: usize,
    minkowski_like: usize,
}

#[derive(Serialize)]
struct ExtractReport {
    max_abs_error: f64,
}

#[derive(Serialize)]
struct MinkowskiResult {
    n_shocks: usize,
    g_first: f64,
    g_final: f64,
    regimes: RegimeCounts,
    extract: Option<ExtractReport>,
    output: Option<String>,
}

fn cmd_minkowski(args: MinkowskiArgs) -> Result<(), CliError> {
    let text = read_file(&args.input)?;
    let shocks = ReturnSeries::parse_lines(&text, ReturnKind::Log)?.values;
    let params = MetricParams::new(args.alpha0, args.alpha1, args.beta)?;
    let path = metric_flow(&shocks, &params, args.g0)?;

    let extract = if args.extract {
        let mut max_err: f64 = 0.0;
        for t in 1..path.len() {
            let eps = extract_shock(path.g_values[t], path.g_values[t - 1], &params)?;
            max_err = max_err.max((eps - shocks[t - 1]).abs());
        }
        Some(ExtractReport { max_abs_error: max_err })
    } else {
        None
    };

    if let Some(out) = &args.output {
        write_file(out, &path.to_csv_string())?;
    }

    let mut counts = RegimeCounts {
        spherical: 0,
        hyperbolic: 0,
        minkowski_like: 0,
    };
    for r in &path.regimes {
        match r.kind {
            RegimeKind::Spherical => counts.spherical += 1,
            RegimeKind::Hyperbolic => counts.hyperbolic += 1,
            RegimeKind::MinkowskiLike => counts.minkowski_like += 1,
        }
    }
    emit(&Summary {
        command: "minkowski",
        version: VERSION,
        seed: args.seed,
        config: MinkowskiConfig {
            input: path_str(&args.input),
            alpha0: args.alpha0,
            alpha1: args.alpha1,
            beta: args.beta,
            g0: args.g0,
            extract: args.extract,
            output: args.output.as_deref().map(path_str),
        },
        result: MinkowskiResult {
            n_shocks: shocks.len(),
            g_first: path.g_values[0],
            g_final: *path.g_values.last().unwrap(),
            regimes: counts,
            extract,
            output: args.output.as_deref().map(path_str),
        },
    });
    Ok(())
}

// --------------------------------------------------------------- soliton

#[derive(Serialize)]
struct SolitonConfig {
    k: f64,
    p: f64,
    delta: f64,
    d_min: f64,
    d_max: f64,
    s_min: f64,
    s_max: f64,
    grid_h: f64,
    output: Option<String>,
}

#[derive(Serialize)]
struct SolitonResult {
    alpha: f64,
    n_d: usize,
    n_s: usize,
    max_abs_residual: f64,
    output: Option<String>,
}

fn cmd_soliton(args: SolitonArgs) -> Result<(), CliError> {
    if !(args.p.is_finite() && args.p.abs() < 1.0) {
        return Err(CliError::Usage(format!(
            "--p must satisfy |p| < 1, got {}",
            args.p
        )));
    }
    if !(args.k.is_finite() && args.k > 0.0) {
        return Err(CliError::Usage(format!("--k must be > 0, got {}", args.k)));
    }
    if !(args.grid_h.is_finite() && args.grid_h > 0.0) {
        return Err(CliError::Usage(format!(
            "--grid-h must be > 0, got {}",
            args.grid_h
        )));
    }
    if args.d_max <= args.d_min || args.s_max <= args.s_min {
        return Err(CliError::Usage("grid bounds must satisfy min < max".into()));
    }
    let params =
        SolitonParams::new(args.k, args.p, args.delta).map_err(|e| CliError::Usage(e.to_string()))?;
    let grid = Grid2D::sample(
        (args.d_min, args.d_max),
        (args.s_min, args.s_max),
        args.grid_h,
        |d, s| soliton_value(d, s, &params),
    );
    let residual = sine_gordon_residual(&grid, args.k).map_err(|e| CliError::Data(e.to_string()))?;
    if let Some(out) = &args.output {
        write_file(out, &residual.to_csv_string(&grid))?;
    }
    emit(&Summary {
        command: "soliton",
        version: VERSION,
        seed: args.seed,
        config: SolitonConfig {
            k: args.k,
            p: args.p,
            delta: args.delta,
            d_min: args.d_min,
            d_max: args.d_max,
            s_min: args.s_min,
            s_max: args.s_max,
            grid_h: args.grid_h,
            output: args.output.as_deref().map(path_str),
        },
        result: SolitonResult {
            alpha: params.alpha(),
            n_d: grid.n_d,
            n_s: grid.n_s,
            max_abs_residual: residual.max_abs,
            output: args.output.as_deref().map(path_str),
        },
    });
    Ok(())
}

// ------------------------------------------------------------------ nahm

const LAX_DRIFT_KS: [f64; 3] = [-1.0, 0.5, 1.0];

#[derive(Serialize)]
struct NahmConfig {
    init: &'static str,
    s_from: f64,
    s_to: f64,
    step: f64,
    generator: &'static str,
    output: Option<String>,
}

#[derive(Serialize)]
struct DriftEntry {
    k: f64,
    drift: f64,
}

#[derive(Serialize)]
struct NahmResult {
    steps: usize,
    max_entry_magnitude: f64,
    max_trace_magnitude: f64,
    eigenvalue_drift: Vec<DriftEntry>,
    max_drift: f64,
    output: Option<String>,
}

fn cmd_nahm(args: NahmArgs) -> Result<(), CliError> {
    if !(args.step.is_finite() && args.step > 0.0) {
        return Err(CliError::Usage(format!("--step must be > 0, got {}", args.step)));
    }
    if args.s_to <= args.s_from {
        return Err(CliError::Usage("--s-to must exceed --s-from".into()));
    }
    let t0 = match args.init {
        NahmInit::Random => Su2Triple::random_normalized(args.seed),
        NahmInit::Canonical => Su2Triple::canonical_basis(),
    };
    let traj = integrate_nahm(&t0, args.s_from, args.s_to, args.step)?;

    let mut drifts = Vec::new();
    let mut max_drift: f64 = 0.0;
    for k in LAX_DRIFT_KS {
        let (l1_0, l2_0) = spectrum(&lax_matrix(&t0, k).matrix);
        let mut drift: f64 = 0.0;
        for state in &traj.states {
            let (l1, l2) = spectrum(&lax_matrix(state, k).matrix);
            drift = drift.max((l1 - l1_0).norm()).max((l2 - l2_0).norm());
        }
        max_drift = max_drift.max(drift);
        drifts.push(DriftEntry { k, drift });
    }
    let max_entry = traj.states.iter().map(|t| t.max_abs()).fold(0.0, f64::max);
    let max_trace = traj
        .states
        .iter()
        .flat_map(|t| t.components())
        .map(|m| m.trace().norm())
        .fold(0.0, f64::max);

    if let Some(out) = &args.output {
        write_file(out, &traj.to_csv_string())?;
    }
    emit(&Summary {
        command: "nahm",
        version: VERSION,
        seed: args.seed,
        config: NahmConfig {
            init: args.init.as_str(),
            s_from: args.s_from,
            s_to: args.s_to,
            step: args.step,
            generator: GENERATOR_NAME,
            output: args.output.as_deref().map(path_str),
        },
        result: NahmResult {
            steps: traj.s_values.len() - 1,
            max_entry_magnitude: max_entry,
            max_trace_magnitude: max_trace,
            eigenvalue_drift: drifts,
            max_drift,
            output: args.output.as_deref().map(path_str),
        },
    });
    Ok(())
}
