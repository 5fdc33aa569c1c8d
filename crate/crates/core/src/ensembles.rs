//! Random matrix models and synthetic point clouds.
//!
//! Every sampler is a pure function of its parameters and [`Seed`]; see
//! [`crate::rng`] for the stream definition.

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;
use crate::rng::{Seed, Stream};
use std::f64::consts::TAU;

pub const DEFAULT_N: usize = 200;
pub const DEFAULT_SIGMA: f64 = 0.1;
pub const DEFAULT_MAJOR_RADIUS: f64 = 2.0;
pub const DEFAULT_MINOR_RADIUS: f64 = 1.0;

/// A rank-one matrix `v vᵀ` (diagonal zeroed) together with its generating
/// vector.
#[derive(Debug, Clone)]
pub struct RankOne {
    pub matrix: SymmetricMatrix,
    pub vector: Vec<f64>,
}

impl RankOne {
    /// Outer product of `vector` with itself, diagonal set to zero.
    pub fn from_vector(vector: Vec<f64>) -> Result<Self> {
        check_size(vector.len())?;
        if vector.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "vector has non-finite entries".into(),
            ));
        }
        let matrix = SymmetricMatrix::from_fn(vector.len(), |i, j| {
            if i == j {
                0.0
            } else {
                vector[i] * vector[j]
            }
        });
        Ok(RankOne { matrix, vector })
    }

    /// Number of strictly negative entries of the generating vector.
    pub fn negative_count(&self) -> usize {
        self.vector.iter().filter(|v| **v < 0.0).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        check_size(points.len())?;
        let dim = points[0].len();
        if dim == 0 || points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidParameter(
                "points must share a positive dimension".into(),
            ));
        }
        if points.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("non-finite coordinate".into()));
        }
        Ok(PointCloud { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 2, got {n}"
        )));
    }
    Ok(())
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "sigma must be finite and non-negative, got {sigma}"
        )));
    }
    Ok(())
}

/// Symmetric matrix with i.i.d. standard normal off-diagonal entries and zero
/// diagonal. Entries are drawn row by row over the upper triangle.
pub fn sample_gaussian_symmetric(n: usize, seed: Seed) -> Result<SymmetricMatrix> {
    check_size(n)?;
    let mut stream = Stream::new(seed);
    Ok(SymmetricMatrix::from_fn(n, |i, j| {
        if i == j {
            0.0
        } else {
            stream.normal()
        }
    }))
}

/// `v vᵀ` with `v` uniform in `[0, 1]^n`.
pub fn sample_positive_rank_one(n: usize, seed: Seed) -> Result<RankOne> {
    check_size(n)?;
    let mut stream = Stream::new(seed);
    RankOne::from_vector((0..n).map(|_| stream.uniform()).collect())
}

/// `v vᵀ` with `v` standard normal: the rank-one Wishart model.
pub fn sample_wishart_rank_one(n: usize, seed: Seed) -> Result<RankOne> {
    check_size(n)?;
    let mut stream = Stream::new(seed);
    RankOne::from_vector((0..n).map(|_| stream.normal()).collect())
}

/// Unit circle points at uniform angles plus per-coordinate Gaussian noise.
pub fn sample_noisy_circle(n: usize, sigma: f64, seed: Seed) -> Result<PointCloud> {
    check_size(n)?;
    check_sigma(sigma)?;
    let mut stream = Stream::new(seed);
    let points = (0..n)
        .map(|_| {
            let theta = TAU * stream.uniform();
            let mut p = vec![theta.cos(), theta.sin()];
            if sigma > 0.0 {
                for c in &mut p {
                    *c += sigma * stream.normal();
                }
            }
            p
        })
        .collect();
    PointCloud::new(points)
}

/// Points on the torus with major radius `major` and minor radius `minor`,
/// angles uniform in `[0, 2π)`, plus per-coordinate Gaussian noise.
pub fn sample_noisy_torus(
    n: usize,
    major: f64,
    minor: f64,
    sigma: f64,
    seed: Seed,
) -> Result<PointCloud> {
    check_size(n)?;
    check_sigma(sigma)?;
    if !(minor > 0.0 && major > minor && major.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "torus radii must satisfy major > minor > 0, got major={major}, minor={minor}"
        )));
    }
    let mut stream = Stream::new(seed);
    let points = (0..n)
        .map(|_| {
            let theta = TAU * stream.uniform();
            let phi = TAU * stream.uniform();
            let ring = major + minor * phi.cos();
            let mut p = vec![ring * theta.cos(), ring * theta.sin(), minor * phi.sin()];
            if sigma > 0.0 {
                for c in &mut p {
                    *c += sigma * stream.normal();
                }
            }
            p
        })
        .collect();
    PointCloud::new(points)
}

/// Euclidean distance matrix of a cloud.
pub fn distance_matrix(cloud: &PointCloud) -> SymmetricMatrix {
    let pts = cloud.points();
    SymmetricMatrix::from_fn(pts.len(), |i, j| {
        if i == j {
            return 0.0;
        }
        pts[i]
            .iter()
            .zip(&pts[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    })
}

/// The matrix models, as selected by name from the command line or the demo.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ensemble {
    Gaussian,
    PositiveRankOne,
    WishartRankOne,
    Circle { sigma: f64 },
    Torus { major: f64, minor: f64, sigma: f64 },
}

impl Ensemble {
    pub fn circle() -> Self {
        Ensemble::Circle {
            sigma: DEFAULT_SIGMA,
        }
    }

    pub fn torus() -> Self {
        Ensemble::Torus {
            major: DEFAULT_MAJOR_RADIUS,
            minor: DEFAULT_MINOR_RADIUS,
            sigma: DEFAULT_SIGMA,
        }
    }

    /// Parses the short names used on the command line, with default
    /// point-cloud parameters.
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "gaussian" => Some(Ensemble::Gaussian),
            "positive-rank1" => Some(Ensemble::PositiveRankOne),
            "wishart-rank1" => Some(Ensemble::WishartRankOne),
            "circle" => Some(Self::circle()),
            "torus" => Some(Self::torus()),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Ensemble::Gaussian => "gaussian",
            Ensemble::PositiveRankOne => "positive-rank1",
            Ensemble::WishartRankOne => "wishart-rank1",
            Ensemble::Circle { .. } => "circle",
            Ensemble::Torus { .. } => "torus",
        }
    }

    pub fn sample(&self, n: usize, seed: Seed) -> Result<SymmetricMatrix> {
        match *self {
            Ensemble::Gaussian => sample_gaussian_symmetric(n, seed),
            Ensemble::PositiveRankOne => sample_positive_rank_one(n, seed).map(|r| r.matrix),
            Ensemble::WishartRankOne => sample_wishart_rank_one(n, seed).map(|r| r.matrix),
            Ensemble::Circle { sigma } => {
                sample_noisy_circle(n, sigma, seed).map(|c| distance_matrix(&c))
            }
            Ensemble::Torus {
                major,
                minor,
                sigma,
            } => sample_noisy_torus(n, major, minor, sigma, seed).map(|c| distance_matrix(&c)),
        }
    }
}
