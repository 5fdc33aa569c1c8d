use crate::error::CliError;
use clap::{Args, Parser, Subcommand};
use specfilt::ensembles::{
    Ensemble, DEFAULT_MAJOR_RADIUS, DEFAULT_MINOR_RADIUS, DEFAULT_N, DEFAULT_SIGMA,
};
use specfilt::spectra::DEFAULT_BINS;
use specfilt::{Kind, Seed};
use std::path::PathBuf;

pub const OUTPUT_ENV: &str = "SPECFILT_OUTPUT";

#[derive(Debug, Parser)]
#[command(
    name = "specfilt",
    version,
    about = "Laplacian spectra along order-complex graph filtrations"
)]
struct Cli {
    #[command(subcommand)]
    experiment: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectral gap (second-smallest eigenvalue) against edge density.
    GapCurve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Standard deviation of the eigenvalues against edge density.
    StdCurve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Square root of the spectral gap against edge density.
    SqrtGap {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Histogram of the spectrum at one edge density.
    Density {
        #[command(flatten)]
        common: Common,
        /// Edge density in [0, 1].
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// gaussian | positive-rank1 | wishart-rank1 | circle | torus | matrix-file
    #[arg(long)]
    ensemble: String,
    #[arg(long, default_value_t = DEFAULT_N)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// raw | normalized | both
    #[arg(long, default_value = "raw")]
    kind: String,
    /// Independent draws averaged (curves) or pooled (density).
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    #[arg(long, default_value = ".")]
    output: PathBuf,
    /// Full symmetric matrix as CSV, for `--ensemble matrix-file`.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Point-cloud noise standard deviation.
    #[arg(long, allow_negative_numbers = true)]
    sigma: Option<f64>,
    /// Torus major radius.
    #[arg(long, allow_negative_numbers = true)]
    major: Option<f64>,
    /// Torus minor radius.
    #[arg(long, allow_negative_numbers = true)]
    minor: Option<f64>,
}

#[derive(Debug, Args)]
struct Sweep {
    /// uniform:K (p = k/K) or file:PATH (one density per line).
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    GapCurve,
    StdCurve,
    Density,
    SqrtGap,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::GapCurve => "gap-curve",
            Experiment::StdCurve => "std-curve",
            Experiment::Density => "density",
            Experiment::SqrtGap => "sqrt-gap",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EnsembleChoice {
    Builtin(Ensemble),
    MatrixFile(PathBuf),
}

impl EnsembleChoice {
    pub fn name(&self) -> &str {
        match self {
            EnsembleChoice::Builtin(e) => e.name(),
            EnsembleChoice::MatrixFile(_) => "matrix-file",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    /// Uniform 50-step grid, refined near zero for std curves.
    Default,
    Uniform(usize),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub ensemble: EnsembleChoice,
    pub n: usize,
    pub seed: Seed,
    pub kinds: Vec<Kind>,
    pub p: Option<f64>,
    pub bins: usize,
    pub grid: GridSpec,
    pub output: PathBuf,
    pub repeats: usize,
}

/// Parses and validates arguments (program name excluded), honouring
/// `SPECFILT_OUTPUT`.
pub fn parse_args(argv: &[String]) -> Result<RunConfig, CliError> {
    parse_args_with_env(argv, std::env::var_os(OUTPUT_ENV).map(PathBuf::from))
}

/// As [`parse_args`], with the output override passed explicitly.
pub fn parse_args_with_env(
    argv: &[String],
    output_override: Option<PathBuf>,
) -> Result<RunConfig, CliError> {
    let cli =
        Cli::try_parse_from(std::iter::once("specfilt".to_string()).chain(argv.iter().cloned()))
            .map_err(|e| match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion
                | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    CliError::Help(e.render().to_string())
                }
                _ => CliError::Usage(e.render().to_string()),
            })?;

    let (experiment, common, grid, p, bins) = match cli.experiment {
        Command::GapCurve { common, sweep } => {
            (Experiment::GapCurve, common, sweep.grid, None, DEFAULT_BINS)
        }
        Command::StdCurve { common, sweep } => {
            (Experiment::StdCurve, common, sweep.grid, None, DEFAULT_BINS)
        }
        Command::SqrtGap { common, sweep } => {
            (Experiment::SqrtGap, common, sweep.grid, None, DEFAULT_BINS)
        }
        Command::Density { common, p, bins } => (Experiment::Density, common, None, Some(p), bins),
    };

    let usage = |msg: String| {
        CliError::Usage(format!(
            "error: {msg}\n\nFor more information, try '--help'."
        ))
    };

    if let Some(p) = p {
        if !(0.0..=1.0).contains(&p) {
            return Err(usage(format!("--p must lie in [0, 1], got {p}")));
        }
    }
    if bins == 0 {
        return Err(usage("--bins must be positive".into()));
    }
    if common.repeats == 0 {
        return Err(usage("--repeats must be at least 1".into()));
    }

    let kinds = match common.kind.as_str() {
        "raw" => vec![Kind::Raw],
        "normalized" => vec![Kind::Normalized],
        "both" => vec![Kind::Raw, Kind::Normalized],
        other => {
            return Err(usage(format!(
                "--kind must be raw, normalized or both, got {other:?}"
            )))
        }
    };

    let ensemble = match common.ensemble.as_str() {
        "matrix-file" => {
            let path = common
                .matrix
                .clone()
                .ok_or_else(|| usage("--ensemble matrix-file requires --matrix".into()))?;
            EnsembleChoice::MatrixFile(path)
        }
        name => {
            if common.matrix.is_some() {
                return Err(usage(
                    "--matrix is only valid with --ensemble matrix-file".into(),
                ));
            }
            let base = Ensemble::from_name(name)
                .ok_or_else(|| usage(format!("unknown --ensemble {name:?}")))?;
            EnsembleChoice::Builtin(with_cloud_params(base, &common).map_err(usage)?)
        }
    };
    if matches!(ensemble, EnsembleChoice::Builtin(_)) && common.n < 2 {
        return Err(usage(format!("--n must be at least 2, got {}", common.n)));
    }

    let grid = match grid.as_deref() {
        None => GridSpec::Default,
        Some(spec) => parse_grid(spec).map_err(usage)?,
    };

    Ok(RunConfig {
        experiment,
        ensemble,
        n: common.n,
        seed: Seed(common.seed),
        kinds,
        p,
        bins,
        grid,
        output: output_override.unwrap_or(common.output),
        repeats: common.repeats,
    })
}

fn with_cloud_params(base: Ensemble, common: &Common) -> Result<Ensemble, String> {
    let sigma = common.sigma.unwrap_or(DEFAULT_SIGMA);
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(format!("--sigma must be non-negative, got {sigma}"));
    }
    match base {
        Ensemble::Circle { .. } => {
            if common.major.is_some() || common.minor.is_some() {
                return Err("--major/--minor apply to the torus only".into());
            }
            Ok(Ensemble::Circle { sigma })
        }
        Ensemble::Torus { .. } => {
            let major = common.major.unwrap_or(DEFAULT_MAJOR_RADIUS);
            let minor = common.minor.unwrap_or(DEFAULT_MINOR_RADIUS);
            if !(minor > 0.0 && major > minor) {
                return Err(format!(
                    "torus radii need major > minor > 0, got {major} and {minor}"
                ));
            }
            Ok(Ensemble::Torus {
                major,
                minor,
                sigma,
            })
        }
        other => {
            if common.sigma.is_some() || common.major.is_some() || common.minor.is_some() {
                return Err(format!(
                    "--sigma/--major/--minor do not apply to {}",
                    other.name()
                ));
            }
            Ok(other)
        }
    }
}

fn parse_grid(spec: &str) -> Result<GridSpec, String> {
    if let Some(k) = spec.strip_prefix("uniform:") {
        let k: usize = k
            .parse()
            .map_err(|_| format!("--grid uniform:K needs an integer, got {k:?}"))?;
        if k == 0 {
            return Err("--grid uniform:K needs K >= 1".into());
        }
        Ok(GridSpec::Uniform(k))
    } else if let Some(path) = spec.strip_prefix("file:") {
        Ok(GridSpec::File(PathBuf::from(path)))
    } else {
        Err(format!(
            "--grid must be uniform:K or file:PATH, got {spec:?}"
        ))
    }
}
