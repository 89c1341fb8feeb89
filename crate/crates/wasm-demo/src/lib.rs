//! Browser bindings for three interactive views: gap series with running
//! mean, disk Robin zeros against their uniform approximation, and the
//! spacing distribution of the desymmetrized square.
//!
//! Each export returns a flat `Float64Array`; layouts are documented per
//! function. The plain-Rust `*_values` functions carry the logic and are
//! what the native tests exercise.

use wasm_bindgen::prelude::*;

use robin_gaps::disk::{disk_gaps, kappa_approx};
use robin_gaps::rectangle::{desym_square_spectrum, rect_gaps};
use robin_gaps::robin1d::interval_gaps;
use robin_gaps::specfun::{zeros_of_kind, BesselOrder, ZeroKind};
use robin_gaps::stats::{cumulative_mean, spacing_cdf};

const MAX_COUNT: usize = 200_000;

fn check_count(count: usize, cap: usize) -> Result<(), String> {
    if count == 0 || count > cap {
        return Err(format!("count must lie in 1..={cap}, got {count}"));
    }
    Ok(())
}

/// `[d_0 … d_{N−1}, mean_1 … mean_N]`.
pub fn gap_values(domain: &str, sigma: f64, aspect: f64, count: usize) -> Result<Vec<f64>, String> {
    check_count(count, MAX_COUNT)?;
    let g = match domain {
        "interval" => interval_gaps(sigma, count),
        "rectangle" => rect_gaps(aspect, sigma, count),
        "disk" => disk_gaps(sigma, count.min(50_000)),
        other => return Err(format!("unknown domain {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let means = cumulative_mean(&g).map_err(|e| e.to_string())?;
    let mut out = g.gaps;
    out.extend(means.into_iter().map(|(_, m)| m));
    Ok(out)
}

/// `[κ_{n,1} … κ_{n,K}, F_1 … F_K]` with F_k = F(n, k − 3/4).
pub fn disk_zero_values(order: u32, sigma: f64, count: usize) -> Result<Vec<f64>, String> {
    check_count(count, 2_000)?;
    if order > 5_000 {
        return Err(format!("order must be at most 5000, got {order}"));
    }
    let zeros = zeros_of_kind(BesselOrder::integer(order), ZeroKind::RobinCombo, sigma, count)
        .map_err(|e| e.to_string())?;
    let mut out = zeros;
    for k in 1..=count as u32 {
        out.push(kappa_approx(order as i64, k).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

/// Spacing CDF sampled at y = 0, 0.05, …, 3: `[y_0 …, cdf_0 …]`.
pub fn spacing_values(sigma: f64, count: usize) -> Result<Vec<f64>, String> {
    check_count(count, MAX_COUNT)?;
    if count < 2 {
        return Err("spacing needs at least two levels".into());
    }
    let grid: Vec<f64> = (0..=60).map(|i| i as f64 * 0.05).collect();
    let spectrum = desym_square_spectrum(sigma, count).map_err(|e| e.to_string())?;
    let stats = spacing_cdf(&spectrum, &grid).map_err(|e| e.to_string())?;
    let mut out = grid;
    out.extend(stats.cdf_samples.into_iter().map(|(_, f)| f));
    Ok(out)
}

#[wasm_bindgen]
pub fn gap_series(domain: &str, sigma: f64, aspect: f64, count: usize) -> Result<Vec<f64>, JsError> {
    gap_values(domain, sigma, aspect, count).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn disk_zeros(order: u32, sigma: f64, count: usize) -> Result<Vec<f64>, JsError> {
    disk_zero_values(order, sigma, count).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn square_spacing(sigma: f64, count: usize) -> Result<Vec<f64>, JsError> {
    spacing_values(sigma, count).map_err(|e| JsError::new(&e))
}
