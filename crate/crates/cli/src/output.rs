use crate::error::CliError;
use specfilt::curves::CurveSeries;
use specfilt::report;
use specfilt::spectra::Histogram;
use std::path::Path;

/// Anything the CLI writes out.
#[derive(Debug, Clone, Copy)]
pub enum Table<'a> {
    Curve(&'a CurveSeries),
    Histogram(&'a Histogram),
}

impl<'a> From<&'a CurveSeries> for Table<'a> {
    fn from(c: &'a CurveSeries) -> Self {
        Table::Curve(c)
    }
}

impl<'a> From<&'a Histogram> for Table<'a> {
    fn from(h: &'a Histogram) -> Self {
        Table::Histogram(h)
    }
}

pub fn write_csv<'a>(table: impl Into<Table<'a>>, path: &Path) -> Result<(), CliError> {
    let text = match table.into() {
        Table::Curve(c) => report::curve_csv(c),
        Table::Histogram(h) => report::histogram_csv(h)?,
    };
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn write_svg<'a>(
    table: impl Into<Table<'a>>,
    path: &Path,
    title: &str,
) -> Result<(), CliError> {
    let text = match table.into() {
        Table::Curve(c) => report::curve_svg(c, title),
        Table::Histogram(h) => report::histogram_svg(h, title),
    };
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}
