use crate::args::{EnsembleChoice, Experiment, GridSpec, RunConfig};
use crate::error::CliError;
use crate::output::{write_csv, write_svg, Table};
use specfilt::curves::{self, average_curves, CurveMeta, CurveSeries, DensityGrid};
use specfilt::filtration::{build_filtration, EdgeFiltration};
use specfilt::spectra::{default_histogram, laplacian_spectrum, Histogram};
use specfilt::{Kind, Seed, SymmetricMatrix};
use std::path::Path;

/// Density window used for the growth fits reported by `sqrt-gap`.
const FIT_WINDOW: (f64, f64) = (0.1, 0.9);

/// Reads a full symmetric matrix from CSV (no header).
pub fn load_matrix(path: &Path) -> Result<SymmetricMatrix, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let mut rows = Vec::new();
    for (lineno, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let row = record
            .iter()
            .map(|field| {
                field.parse::<f64>().map_err(|_| {
                    CliError::Usage(format!(
                        "{}: row {}: cannot parse {field:?}",
                        path.display(),
                        lineno + 1
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    SymmetricMatrix::from_rows(&rows)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => CliError::Usage(format!("{}: {other:?}", path.display())),
    }
}

/// The matrices a run draws: one per repeat, or the single loaded file.
fn matrices(config: &RunConfig) -> Result<Vec<(SymmetricMatrix, Option<Seed>)>, CliError> {
    match &config.ensemble {
        EnsembleChoice::MatrixFile(path) => Ok(vec![(load_matrix(path)?, None)]),
        EnsembleChoice::Builtin(ensemble) => (0..config.repeats)
            .map(|r| {
                let seed = if r == 0 {
                    config.seed
                } else {
                    config.seed.derive(r as u64)
                };
                Ok((ensemble.sample(config.n, seed)?, Some(seed)))
            })
            .collect(),
    }
}

fn grid_for(config: &RunConfig, n: usize) -> Result<DensityGrid, CliError> {
    let grid = match &config.grid {
        GridSpec::Default if config.experiment == Experiment::StdCurve => {
            DensityGrid::refined_near_zero(n)?
        }
        GridSpec::Default => DensityGrid::uniform(50)?,
        GridSpec::Uniform(k) => DensityGrid::uniform(*k)?,
        GridSpec::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            DensityGrid::parse(&text)?
        }
    };
    Ok(grid)
}

fn title(config: &RunConfig, kind: Kind, n: usize) -> String {
    let what = match config.experiment {
        Experiment::GapCurve => "spectral gap".to_string(),
        Experiment::StdCurve => "spectrum standard deviation".to_string(),
        Experiment::SqrtGap => "square root of spectral gap".to_string(),
        Experiment::Density => format!("spectral density at p = {}", config.p.unwrap_or_default()),
    };
    let mut t = format!(
        "{} {what}, {}, n = {n}",
        capitalize(kind.name()),
        config.ensemble.name()
    );
    if !matches!(config.ensemble, EnsembleChoice::MatrixFile(_)) {
        t.push_str(&format!(", seed = {}", config.seed.0));
    }
    if config.repeats > 1 {
        t.push_str(&format!(", {} repeats", config.repeats));
    }
    t
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    c.next()
        .map(|f| f.to_uppercase().chain(c).collect())
        .unwrap_or_default()
}

/// Executes the experiment, writes its files and returns the summary lines.
pub fn run(config: &RunConfig) -> Result<Vec<String>, CliError> {
    let draws = matrices(config)?;
    let n = draws[0].0.n();
    let filtrations = draws
        .iter()
        .map(|(m, _)| build_filtration(m))
        .collect::<Result<Vec<_>, _>>()?;
    std::fs::create_dir_all(&config.output).map_err(|e| CliError::io(&config.output, e))?;

    let mut summary = Vec::new();
    for &kind in &config.kinds {
        let stem = format!(
            "{}-{}-{}",
            config.experiment.name(),
            config.ensemble.name(),
            kind.name()
        );
        let csv_path = config.output.join(format!("{stem}.csv"));
        let svg_path = config.output.join(format!("{stem}.svg"));
        let title = title(config, kind, n);

        let line = if config.experiment == Experiment::Density {
            let p = config.p.expect("density runs carry --p");
            let hist = pooled_histogram(&filtrations, p, kind, config.bins)?;
            write_tables(Table::Histogram(&hist), &csv_path, &svg_path, &title)?;
            density_summary(&hist, kind)
        } else {
            let grid = grid_for(config, n)?;
            let meta = CurveMeta {
                ensemble: config.ensemble.name().to_string(),
                n,
                seed: draws[0].1.map(|s| s.0),
            };
            let curve = sweep_curves(config.experiment, &filtrations, &grid, kind)?.with_meta(meta);
            write_tables(Table::Curve(&curve), &csv_path, &svg_path, &title)?;
            curve_summary(config.experiment, &curve, &filtrations, &grid, kind)?
        };
        summary.push(format!("{stem}: {line}"));
    }
    Ok(summary)
}

fn write_tables(table: Table<'_>, csv: &Path, svg: &Path, title: &str) -> Result<(), CliError> {
    write_csv(table, csv)?;
    write_svg(table, svg, title)
}

fn sweep_curves(
    experiment: Experiment,
    filtrations: &[EdgeFiltration],
    grid: &DensityGrid,
    kind: Kind,
) -> Result<CurveSeries, CliError> {
    let curves = filtrations
        .iter()
        .map(|f| match experiment {
            Experiment::StdCurve => curves::std_curve_on(f, grid, kind),
            _ => curves::gap_curve_on(f, grid, kind),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mean = average_curves(&curves)?;
    Ok(match experiment {
        Experiment::SqrtGap => curves::sqrt_curve(&mean)?,
        _ => mean,
    })
}

/// Spectrum histograms of every draw at density `p`, counts summed.
fn pooled_histogram(
    filtrations: &[EdgeFiltration],
    p: f64,
    kind: Kind,
    bins: usize,
) -> Result<Histogram, CliError> {
    let mut pooled: Option<Histogram> = None;
    for f in filtrations {
        let g = specfilt::filtration::graph_at_density(f, p)?;
        let s = laplacian_spectrum(&g, kind).map_err(|e| specfilt::Error::AtDensity {
            density: g.density(),
            source: Box::new(e),
        })?;
        let h = default_histogram(&s, bins)?;
        pooled = Some(match pooled {
            None => h,
            Some(acc) => {
                let counts = acc
                    .counts()
                    .iter()
                    .zip(h.counts())
                    .map(|(a, b)| a + b)
                    .collect();
                Histogram::from_parts(acc.bin_edges().to_vec(), counts)?
            }
        });
    }
    Ok(pooled.expect("at least one draw"))
}

fn fmt(x: f64) -> String {
    specfilt::report::format_real((x * 1e6).round() / 1e6)
}

fn density_summary(h: &Histogram, kind: Kind) -> String {
    let (peak, count) =
        h.counts().iter().enumerate().fold(
            (0, 0),
            |best, (k, &c)| if c > best.1 { (k, c) } else { best },
        );
    let edges = h.bin_edges();
    let mut line = format!(
        "fullest bin [{}, {}) holds {} of {} eigenvalues; mass at 0 = {}",
        fmt(edges[peak]),
        fmt(edges[peak + 1]),
        count,
        h.total(),
        fmt(h.mass_at(0.0))
    );
    if kind == Kind::Normalized {
        line.push_str(&format!(", mass at 1 = {}", fmt(h.mass_at(1.0))));
    }
    line
}

fn curve_summary(
    experiment: Experiment,
    curve: &CurveSeries,
    filtrations: &[EdgeFiltration],
    grid: &DensityGrid,
    kind: Kind,
) -> Result<String, CliError> {
    Ok(match experiment {
        Experiment::GapCurve => {
            let (p, y) = curve.last().unwrap_or_default();
            format!("gap at p = {} is {}", fmt(p), fmt(y))
        }
        Experiment::StdCurve => {
            let (p, y) = curve.argmax().unwrap_or_default();
            format!("peak std {} at p = {}", fmt(y), fmt(p))
        }
        Experiment::SqrtGap => {
            let gaps = filtrations
                .iter()
                .map(|f| curves::gap_curve_on(f, grid, kind))
                .collect::<Result<Vec<_>, _>>()?;
            let (lo, hi) = FIT_WINDOW;
            match curves::growth_fits(&average_curves(&gaps)?, lo, hi) {
                Ok(fits) => format!(
                    "on p in [{lo}, {hi}]: R^2(sqrt gap ~ p) = {}, R^2(gap ~ p^2) = {}",
                    fmt(fits.sqrt_gap_vs_p.r_squared),
                    fmt(fits.gap_vs_p_squared.r_squared)
                ),
                Err(_) => format!("too few grid points in [{lo}, {hi}] for a fit"),
            }
        }
        Experiment::Density => unreachable!("density runs use density_summary"),
    })
}
