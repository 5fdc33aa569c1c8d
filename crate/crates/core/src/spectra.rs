//! Raw and normalized Laplacians and the spectral statistics built on them.

use crate::eigen::symmetric_eigenvalues;
use crate::error::{Error, Result};
use crate::filtration::Graph;
use crate::matrix::SymmetricMatrix;

pub const DEFAULT_BINS: usize = 100;

/// Which Laplacian a spectrum came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `L = D - A`
    Raw,
    /// `D^{-1/2} L D^{-1/2}`, with isolated vertices contributing a zero
    /// row and column.
    Normalized,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Raw => "raw",
            Kind::Normalized => "normalized",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "raw" => Some(Kind::Raw),
            "normalized" => Some(Kind::Normalized),
            _ => None,
        }
    }

    /// Theoretical eigenvalue range for an `n`-vertex graph.
    pub fn range(self, n: usize) -> (f64, f64) {
        match self {
            Kind::Raw => (0.0, n as f64),
            Kind::Normalized => (0.0, 2.0),
        }
    }
}

/// Ascending Laplacian eigenvalues tagged with their kind.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    kind: Kind,
    values: Vec<f64>,
}

impl Spectrum {
    /// Wraps already-sorted values; used by tests and callers that compute
    /// spectra in closed form.
    pub fn new(kind: Kind, mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Spectrum { kind, values }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Number of eigenvalues within `zero_tolerance(n)` of zero.
    pub fn zero_multiplicity(&self) -> usize {
        let tol = zero_tolerance(self.n());
        self.values.iter().filter(|v| v.abs() <= tol).count()
    }
}

/// Threshold below which an eigenvalue counts as zero.
pub fn zero_tolerance(n: usize) -> f64 {
    1e-8 * n as f64
}

pub fn laplacian(g: &Graph, kind: Kind) -> SymmetricMatrix {
    match kind {
        Kind::Raw => raw_laplacian(g),
        Kind::Normalized => normalized_laplacian(g),
    }
}

pub fn raw_laplacian(g: &Graph) -> SymmetricMatrix {
    let mut l = SymmetricMatrix::zeros(g.n());
    for v in 0..g.n() {
        l.set(v, v, g.degree(v) as f64);
    }
    for &(i, j) in g.edges() {
        l.set(i, j, -1.0);
    }
    l
}

pub fn normalized_laplacian(g: &Graph) -> SymmetricMatrix {
    let mut l = SymmetricMatrix::zeros(g.n());
    for v in 0..g.n() {
        if g.degree(v) > 0 {
            l.set(v, v, 1.0);
        }
    }
    for &(i, j) in g.edges() {
        l.set(i, j, -1.0 / ((g.degree(i) * g.degree(j)) as f64).sqrt());
    }
    l
}

/// Eigenvalues of a Laplacian of the given kind.
///
/// Values outside the theoretical range by at most `1e-8 · n` are clamped into
/// it; anything further out is reported as [`Error::OutOfRange`].
pub fn eigenvalues(m: &SymmetricMatrix, kind: Kind) -> Result<Spectrum> {
    let n = m.n();
    let (lo, hi) = kind.range(n);
    let slack = 1e-8 * n as f64;
    let mut values = symmetric_eigenvalues(m)?;
    for v in &mut values {
        if *v < lo - slack || *v > hi + slack {
            return Err(Error::OutOfRange { value: *v, lo, hi });
        }
        *v = v.clamp(lo, hi);
    }
    Ok(Spectrum { kind, values })
}

pub fn laplacian_spectrum(g: &Graph, kind: Kind) -> Result<Spectrum> {
    eigenvalues(&laplacian(g, kind), kind)
}

/// Second-smallest eigenvalue; zero whenever the graph is disconnected.
pub fn spectral_gap(s: &Spectrum) -> f64 {
    s.values.get(1).copied().unwrap_or(0.0)
}

/// Population standard deviation of the eigenvalues.
pub fn spectrum_std(s: &Spectrum) -> f64 {
    let n = s.n() as f64;
    if s.values.is_empty() {
        return 0.0;
    }
    let mean = s.values.iter().sum::<f64>() / n;
    // two-pass variance
    let var = s
        .values
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / n;
    var.sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    bin_edges: Vec<f64>,
    counts: Vec<u64>,
}

impl Histogram {
    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    /// Index of the bin that holds `x`, using the same rule as binning.
    pub fn bin_of(&self, x: f64) -> usize {
        let bins = self.bins();
        let lo = self.bin_edges[0];
        let hi = self.bin_edges[bins];
        locate(x, lo, hi, bins)
    }

    /// Fraction of the total mass in the bin holding `x`.
    pub fn mass_at(&self, x: f64) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        self.counts[self.bin_of(x)] as f64 / total as f64
    }

    /// Rebuilds a histogram from serialized parts.
    pub fn from_parts(bin_edges: Vec<f64>, counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() || bin_edges.len() != counts.len() + 1 {
            return Err(Error::InvalidInput(format!(
                "{} edges do not bound {} bins",
                bin_edges.len(),
                counts.len()
            )));
        }
        if bin_edges
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::InvalidInput(
                "bin edges must be strictly ascending".into(),
            ));
        }
        Ok(Histogram { bin_edges, counts })
    }
}

/// Bin index of `x` among `bins` equal bins on `[lo, hi]`. Values within
/// `1e-9` of a bin width below an interior edge count in the upper bin, so
/// eigenvalues that equal an edge in exact arithmetic are not split by
/// rounding. Out-of-range values go to the end bins.
fn locate(x: f64, lo: f64, hi: f64, bins: usize) -> usize {
    let t = (x - lo) / (hi - lo) * bins as f64;
    let k = (t + 1e-9).floor();
    if k < 0.0 {
        0
    } else {
        (k as usize).min(bins - 1)
    }
}

/// Uniform-width histogram of the spectrum on `[lo, hi]`.
pub fn spectrum_histogram(s: &Spectrum, bins: usize, lo: f64, hi: f64) -> Result<Histogram> {
    if bins == 0 {
        return Err(Error::InvalidParameter("bin count must be positive".into()));
    }
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::InvalidParameter(format!(
            "invalid range [{lo}, {hi}]"
        )));
    }
    let width = (hi - lo) / bins as f64;
    let mut bin_edges: Vec<f64> = (0..bins).map(|k| lo + k as f64 * width).collect();
    bin_edges.push(hi);
    let mut counts = vec![0u64; bins];
    for &v in &s.values {
        counts[locate(v, lo, hi, bins)] += 1;
    }
    Ok(Histogram { bin_edges, counts })
}

/// Histogram over the theoretical range of the spectrum's kind.
pub fn default_histogram(s: &Spectrum, bins: usize) -> Result<Histogram> {
    let (lo, hi) = s.kind.range(s.n());
    spectrum_histogram(s, bins, lo, hi)
}
