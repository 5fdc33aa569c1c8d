//! Order-complex graph filtrations of random symmetric matrices.
//!
//! A symmetric matrix with zeroed diagonal is read as edge weights on the
//! complete graph. Inserting edges in increasing order of weight gives a
//! nested family of graphs indexed by edge density `p`. This crate samples
//! matrices from several random models, builds that filtration, and tracks
//! raw and normalized Laplacian spectra along it.
//!
//! ```
//! use specfilt::{ensembles, filtration, spectra, Kind, Seed};
//!
//! let m = ensembles::sample_gaussian_symmetric(50, Seed(7)).unwrap();
//! let f = filtration::build_filtration(&m).unwrap();
//! let g = filtration::graph_at_density(&f, 1.0).unwrap();
//! let s = spectra::laplacian_spectrum(&g, Kind::Raw).unwrap();
//! assert!((spectra::spectral_gap(&s) - 50.0).abs() < 1e-9);
//! ```

pub mod curves;
pub mod eigen;
pub mod ensembles;
mod error;
pub mod filtration;
mod matrix;
pub mod report;
pub mod rng;
pub mod spectra;

pub use error::{Error, Result};
pub use matrix::SymmetricMatrix;
pub use rng::Seed;
pub use spectra::Kind;
