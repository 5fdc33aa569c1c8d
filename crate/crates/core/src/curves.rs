//! Spectral statistics swept across edge density.

use crate::error::{Error, Result};
use crate::filtration::{build_filtration, stream_prefixes, EdgeFiltration, Graph};
use crate::matrix::SymmetricMatrix;
use crate::spectra::{self, default_histogram, laplacian_spectrum, Histogram, Kind, Spectrum};

/// Ascending densities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    points: Vec<f64>,
}

impl DensityGrid {
    pub fn new(mut points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("density grid is empty".into()));
        }
        if let Some(p) = points.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidParameter(format!(
                "density {p} outside [0, 1]"
            )));
        }
        if points.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter(
                "density grid must be ascending".into(),
            ));
        }
        points.dedup();
        Ok(DensityGrid { points })
    }

    /// `p = k / steps` for `k = 0..=steps`.
    pub fn uniform(steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidParameter(
                "uniform grid needs at least one step".into(),
            ));
        }
        Self::new((0..=steps).map(|k| k as f64 / steps as f64).collect())
    }

    /// `count` evenly spaced densities from `lo` to `hi` inclusive.
    pub fn linspace(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Self::new(vec![lo]);
        }
        let step = (hi - lo) / (count - 1) as f64;
        Self::new(
            (0..count)
                .map(|k| {
                    if k + 1 == count {
                        hi
                    } else {
                        lo + k as f64 * step
                    }
                })
                .collect(),
        )
    }

    /// The uniform 50-step grid merged with `2^{-j} · 10 / n`, `j = 0..=10`,
    /// so a peak near `p = 1/n` is resolved.
    pub fn refined_near_zero(n: usize) -> Result<Self> {
        let mut points = Self::uniform(50)?.points;
        let base = 10.0 / n as f64;
        points.extend(
            (0..=10)
                .map(|j| base / f64::from(1u32 << j))
                .filter(|p| *p <= 1.0),
        );
        points.sort_by(f64::total_cmp);
        Self::new(points)
    }

    /// Parses one density per line (blank lines and `#` comments ignored),
    /// sorting the result.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            for field in line.split(',').map(str::trim).filter(|f| !f.is_empty()) {
                let p: f64 = field.parse().map_err(|_| {
                    Error::InvalidParameter(format!("line {}: bad density {field:?}", lineno + 1))
                })?;
                points.push(p);
            }
        }
        points.sort_by(f64::total_cmp);
        Self::new(points)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Distinct edge counts for the grid in `f`, ascending.
    pub fn edge_counts(&self, f: &EdgeFiltration) -> Result<Vec<usize>> {
        let mut counts = self
            .points
            .iter()
            .map(|&p| f.edges_at_density(p))
            .collect::<Result<Vec<_>>>()?;
        counts.dedup();
        Ok(counts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statistic {
    Gap,
    Std,
    SqrtGap,
    Custom(String),
}

impl Statistic {
    pub fn label(&self) -> &str {
        match self {
            Statistic::Gap => "gap",
            Statistic::Std => "std",
            Statistic::SqrtGap => "sqrt-gap",
            Statistic::Custom(s) => s,
        }
    }
}

/// Where a curve came from.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CurveMeta {
    pub ensemble: String,
    pub n: usize,
    pub seed: Option<u64>,
}

/// A scalar statistic sampled along the filtration.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries {
    pub statistic: Statistic,
    pub kind: Kind,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub meta: CurveMeta,
}

impl CurveSeries {
    pub fn new(statistic: Statistic, kind: Kind, xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::InvalidInput(format!(
                "{} densities but {} values",
                xs.len(),
                ys.len()
            )));
        }
        if xs.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput("densities must be ascending".into()));
        }
        if ys.iter().chain(&xs).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite curve value".into()));
        }
        Ok(CurveSeries {
            statistic,
            kind,
            xs,
            ys,
            meta: CurveMeta::default(),
        })
    }

    pub fn with_meta(mut self, meta: CurveMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Points with `lo <= x <= hi`.
    pub fn restrict(&self, lo: f64, hi: f64) -> CurveSeries {
        let (xs, ys) = self
            .xs
            .iter()
            .zip(&self.ys)
            .filter(|(x, _)| (lo..=hi).contains(*x))
            .map(|(x, y)| (*x, *y))
            .unzip();
        CurveSeries {
            xs,
            ys,
            ..self.clone()
        }
    }

    /// `(x, y)` at the largest `y` (first one on ties).
    pub fn argmax(&self) -> Option<(f64, f64)> {
        let mut best: Option<(f64, f64)> = None;
        for (&x, &y) in self.xs.iter().zip(&self.ys) {
            if best.is_none_or(|(_, by)| y > by) {
                best = Some((x, y));
            }
        }
        best
    }

    pub fn last(&self) -> Option<(f64, f64)> {
        Some((*self.xs.last()?, *self.ys.last()?))
    }
}

/// Evaluates `stat` on the spectrum of every grid snapshot. `xs` are the
/// realized densities, one per distinct edge count.
pub fn sweep<F>(
    f: &EdgeFiltration,
    grid: &DensityGrid,
    kind: Kind,
    stat: F,
) -> Result<(Vec<f64>, Vec<f64>)>
where
    F: Fn(&Spectrum) -> f64 + Sync,
{
    let counts = grid.edge_counts(f)?;
    let evaluate = |g: &Graph| -> Result<f64> {
        laplacian_spectrum(g, kind)
            .map(|s| stat(&s))
            .map_err(|e| e.at_density(g.density()))
    };

    let mut xs = Vec::with_capacity(counts.len());
    let mut ys = Vec::with_capacity(counts.len());
    let mut snapshots = stream_prefixes(f, &counts)?;
    let batch = batch_size();
    loop {
        let chunk: Vec<Graph> = snapshots.by_ref().take(batch).collect();
        if chunk.is_empty() {
            break;
        }
        xs.extend(chunk.iter().map(Graph::density));
        ys.extend(map_graphs(&chunk, &evaluate)?);
    }
    Ok((xs, ys))
}

#[cfg(feature = "parallel")]
fn batch_size() -> usize {
    2 * rayon::current_num_threads()
}

#[cfg(not(feature = "parallel"))]
fn batch_size() -> usize {
    1
}

#[cfg(feature = "parallel")]
fn map_graphs<F>(chunk: &[Graph], evaluate: &F) -> Result<Vec<f64>>
where
    F: Fn(&Graph) -> Result<f64> + Sync,
{
    use rayon::prelude::*;
    chunk.par_iter().map(evaluate).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_graphs<F>(chunk: &[Graph], evaluate: &F) -> Result<Vec<f64>>
where
    F: Fn(&Graph) -> Result<f64>,
{
    chunk.iter().map(evaluate).collect()
}

pub fn gap_curve_on(f: &EdgeFiltration, grid: &DensityGrid, kind: Kind) -> Result<CurveSeries> {
    let (xs, ys) = sweep(f, grid, kind, spectra::spectral_gap)?;
    CurveSeries::new(Statistic::Gap, kind, xs, ys)
}

pub fn std_curve_on(f: &EdgeFiltration, grid: &DensityGrid, kind: Kind) -> Result<CurveSeries> {
    let (xs, ys) = sweep(f, grid, kind, spectra::spectrum_std)?;
    CurveSeries::new(Statistic::Std, kind, xs, ys)
}

/// Spectral gap against density.
pub fn gap_curve(m: &SymmetricMatrix, grid: &DensityGrid, kind: Kind) -> Result<CurveSeries> {
    gap_curve_on(&build_filtration(m)?, grid, kind)
}

/// Eigenvalue standard deviation against density.
pub fn std_curve(m: &SymmetricMatrix, grid: &DensityGrid, kind: Kind) -> Result<CurveSeries> {
    std_curve_on(&build_filtration(m)?, grid, kind)
}

/// Pointwise square root.
pub fn sqrt_curve(c: &CurveSeries) -> Result<CurveSeries> {
    if let Some(y) = c.ys.iter().find(|y| **y < 0.0) {
        return Err(Error::InvalidInput(format!(
            "cannot take the square root of {y}"
        )));
    }
    let statistic = match &c.statistic {
        Statistic::Gap => Statistic::SqrtGap,
        other => Statistic::Custom(format!("sqrt-{}", other.label())),
    };
    Ok(CurveSeries {
        statistic,
        ys: c.ys.iter().map(|y| y.sqrt()).collect(),
        ..c.clone()
    })
}

/// Histogram of the spectrum at density `p` over the kind's natural range.
pub fn density_snapshot(m: &SymmetricMatrix, p: f64, kind: Kind, bins: usize) -> Result<Histogram> {
    let f = build_filtration(m)?;
    let g = crate::filtration::graph_at_density(&f, p)?;
    let s = laplacian_spectrum(&g, kind).map_err(|e| e.at_density(g.density()))?;
    default_histogram(&s, bins)
}

/// Pointwise mean of curves sampled on the same densities.
pub fn average_curves(curves: &[CurveSeries]) -> Result<CurveSeries> {
    let first = curves
        .first()
        .ok_or_else(|| Error::InvalidInput("nothing to average".into()))?;
    if curves.iter().any(|c| c.xs != first.xs) {
        return Err(Error::InvalidInput(
            "curves sampled on different densities".into(),
        ));
    }
    let k = curves.len() as f64;
    let ys = (0..first.len())
        .map(|i| curves.iter().map(|c| c.ys[i]).sum::<f64>() / k)
        .collect();
    Ok(CurveSeries {
        ys,
        ..first.clone()
    })
}

/// Ordinary least-squares line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidInput(
            "need at least two paired points".into(),
        ));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidInput("abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(LinearFit {
        slope,
        intercept: my - slope * mx,
        r_squared,
    })
}

/// Two readings of the growth of a gap curve: `√gap` linear in `p`, and
/// `gap` linear in `p²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFits {
    pub sqrt_gap_vs_p: LinearFit,
    pub gap_vs_p_squared: LinearFit,
}

pub fn growth_fits(gap: &CurveSeries, lo: f64, hi: f64) -> Result<GrowthFits> {
    let window = gap.restrict(lo, hi);
    let root = sqrt_curve(&window)?;
    let squares: Vec<f64> = window.xs.iter().map(|p| p * p).collect();
    Ok(GrowthFits {
        sqrt_gap_vs_p: linear_fit(&root.xs, &root.ys)?,
        gap_vs_p_squared: linear_fit(&squares, &window.ys)?,
    })
}
