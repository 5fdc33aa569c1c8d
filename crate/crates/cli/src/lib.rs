//! Command-line front end for the `specfilt` experiments.
//!
//! ```text
//! specfilt <experiment> --ensemble E [--n N] [--seed S] [--kind raw|normalized|both]
//!          [--p P] [--bins B] [--grid uniform:K|file:PATH] [--repeats R]
//!          [--output DIR] [--matrix PATH] [--sigma X] [--major R --minor r]
//! ```
//!
//! Each run writes `<output>/<experiment>-<ensemble>-<kind>.csv` and a
//! matching `.svg` per Laplacian kind, then prints one summary line per kind.

mod args;
mod error;
mod output;
mod run;

pub use args::{parse_args, parse_args_with_env, EnsembleChoice, Experiment, GridSpec, RunConfig};
pub use error::CliError;
pub use output::{write_csv, write_svg, Table};
pub use run::{load_matrix, run};
