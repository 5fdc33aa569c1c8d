//! WebAssembly bindings for the browser demo.
//!
//! Each exported function samples one matrix, runs a single experiment and
//! returns the resulting chart as an SVG string ready to drop into the page.
//! Build with `wasm-pack build crates/web --target web --out-dir www/pkg`.

use specfilt::curves::{density_snapshot, gap_curve, std_curve, DensityGrid};
use specfilt::ensembles::Ensemble;
use specfilt::report::{curve_svg, histogram_svg};
use specfilt::{Kind, Seed, SymmetricMatrix};
use wasm_bindgen::prelude::*;

/// Largest matrix size accepted from the page; keeps a sweep interactive.
pub const MAX_N: usize = 400;

fn sample(ensemble: &str, n: usize, seed: u32) -> Result<(Ensemble, SymmetricMatrix), String> {
    let e =
        Ensemble::from_name(ensemble).ok_or_else(|| format!("unknown ensemble {ensemble:?}"))?;
    if !(2..=MAX_N).contains(&n) {
        return Err(format!("n must lie in [2, {MAX_N}], got {n}"));
    }
    let m = e
        .sample(n, Seed(u64::from(seed)))
        .map_err(|err| err.to_string())?;
    Ok((e, m))
}

fn kind(name: &str) -> Result<Kind, String> {
    Kind::from_name(name)
        .ok_or_else(|| format!("unknown kind {name:?} (expected raw or normalized)"))
}

/// Spectral gap against edge density on a uniform grid of `steps` intervals.
pub fn gap_curve_chart(
    ensemble: &str,
    n: usize,
    seed: u32,
    kind_name: &str,
    steps: usize,
) -> Result<String, String> {
    let (e, m) = sample(ensemble, n, seed)?;
    let k = kind(kind_name)?;
    let grid = DensityGrid::uniform(steps).map_err(|err| err.to_string())?;
    let c = gap_curve(&m, &grid, k).map_err(|err| err.to_string())?;
    Ok(curve_svg(
        &c,
        &format!("{} gap, {}, n = {n}, seed {seed}", k.name(), e.name()),
    ))
}

/// Spectrum standard deviation against edge density, refined near zero.
pub fn std_curve_chart(
    ensemble: &str,
    n: usize,
    seed: u32,
    kind_name: &str,
) -> Result<String, String> {
    let (e, m) = sample(ensemble, n, seed)?;
    let k = kind(kind_name)?;
    let grid = DensityGrid::refined_near_zero(n).map_err(|err| err.to_string())?;
    let c = std_curve(&m, &grid, k).map_err(|err| err.to_string())?;
    Ok(curve_svg(
        &c,
        &format!("{} std, {}, n = {n}, seed {seed}", k.name(), e.name()),
    ))
}

/// Histogram of the Laplacian spectrum at edge density `p`.
pub fn density_chart(
    ensemble: &str,
    n: usize,
    seed: u32,
    kind_name: &str,
    p: f64,
    bins: usize,
) -> Result<String, String> {
    let (e, m) = sample(ensemble, n, seed)?;
    let k = kind(kind_name)?;
    let h = density_snapshot(&m, p, k, bins).map_err(|err| err.to_string())?;
    Ok(histogram_svg(
        &h,
        &format!("{} spectrum, {}, n = {n}, p = {p}", k.name(), e.name()),
    ))
}

#[wasm_bindgen]
pub fn gap_curve_svg(
    ensemble: &str,
    n: usize,
    seed: u32,
    kind: &str,
    steps: usize,
) -> Result<String, JsValue> {
    gap_curve_chart(ensemble, n, seed, kind, steps).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn std_curve_svg(ensemble: &str, n: usize, seed: u32, kind: &str) -> Result<String, JsValue> {
    std_curve_chart(ensemble, n, seed, kind).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn density_svg(
    ensemble: &str,
    n: usize,
    seed: u32,
    kind: &str,
    p: f64,
    bins: usize,
) -> Result<String, JsValue> {
    density_chart(ensemble, n, seed, kind, p, bins).map_err(|e| JsValue::from_str(&e))
}
