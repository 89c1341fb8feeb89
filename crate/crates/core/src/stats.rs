//! Gap statistics: running means, nearest-neighbour spacing distributions
//! and the cluster structure of the desymmetrized square spectrum.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::rectangle::desym_square_spectrum;
use crate::spectrum::{GapSeries, Spectrum};

/// `(N, mean of d_0 … d_{N−1})` for N = 1 … len.
pub fn cumulative_mean(gaps: &GapSeries) -> Result<Vec<(usize, f64)>> {
    if gaps.is_empty() {
        return Err(domain("cumulative mean of an empty gap series"));
    }
    let mut sum = 0.0;
    Ok(gaps
        .gaps
        .iter()
        .enumerate()
        .map(|(i, d)| {
            sum += d;
            (i + 1, sum / (i + 1) as f64)
        })
        .collect())
}

/// Whether m = a² + b² for integers a, b: no prime ≡ 3 (mod 4) divides m
/// to an odd power.
pub fn is_sum_two_squares(m: u64) -> bool {
    if m == 0 {
        return true;
    }
    let mut m = m;
    while m % 2 == 0 {
        m /= 2;
    }
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if p % 4 == 3 && e % 2 == 1 {
                return false;
            }
        }
        p += 2;
    }
    m % 4 != 3
}

/// All sums of two squares s ≤ limit, ascending, by sieving a² + b².
pub fn list_s_values(limit: u64) -> Vec<u64> {
    let mut hit = vec![false; limit as usize + 1];
    let mut a = 0u64;
    while a * a <= limit {
        let mut b = a;
        while a * a + b * b <= limit {
            hit[(a * a + b * b) as usize] = true;
            b += 1;
        }
        a += 1;
    }
    hit.iter().enumerate().filter(|(_, &h)| h).map(|(s, _)| s as u64).collect()
}

/// Representations m = a² + b² with 0 ≤ a ≤ b.
pub fn two_square_representations(m: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut a = 0u64;
    while 2 * a * a <= m {
        let rest = m - a * a;
        let b = (rest as f64).sqrt().round() as u64;
        for c in [b.saturating_sub(1), b, b + 1] {
            if c >= a && c * c == rest && !out.contains(&(a, c)) {
                out.push((a, c));
            }
        }
        a += 1;
    }
    out
}

/// Empirical CDF of normalized nearest-neighbour gaps δ_n = (x_{n+1} − x_n)/c.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpacingStats {
    /// Number of gaps (levels − 1).
    pub sample_count: usize,
    /// The mean gap c over the window.
    pub normalization: f64,
    /// `(y, #{δ_n ≤ y} / sample_count)`.
    pub cdf_samples: Vec<(f64, f64)>,
}

impl SpacingStats {
    pub fn fraction_at(&self, y: f64) -> Option<f64> {
        self.cdf_samples.iter().find(|(g, _)| *g == y).map(|&(_, f)| f)
    }
}

/// Spacing CDF of an ascending list of values.
pub fn spacing_cdf_of(values: &[f64], y_grid: &[f64]) -> Result<SpacingStats> {
    if values.len() < 2 {
        return Err(domain("spacing statistics need at least two levels"));
    }
    let n = values.len() - 1;
    let c = (values[n] - values[0]) / n as f64;
    if !(c > 0.0) {
        return Err(domain("levels must span a positive range"));
    }
    let mut deltas: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]) / c).collect();
    if deltas.iter().any(|d| !(*d >= 0.0)) {
        return Err(domain("levels must be ascending"));
    }
    deltas.sort_unstable_by(f64::total_cmp);
    let cdf_samples = y_grid
        .iter()
        .map(|&y| (y, deltas.partition_point(|&d| d <= y) as f64 / n as f64))
        .collect();
    Ok(SpacingStats { sample_count: n, normalization: c, cdf_samples })
}

/// Spacing CDF of a spectrum, normalized by its own mean gap.
pub fn spacing_cdf(spectrum: &Spectrum, y_grid: &[f64]) -> Result<SpacingStats> {
    spacing_cdf_of(&spectrum.values(), y_grid)
}

/// Desymmetrized Robin levels grouped by the Neumann value π² s_i that
/// occupies the same ranks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterDecomposition {
    pub sigma: f64,
    pub s_values: Vec<u64>,
    /// Rank of the first level of each cluster.
    pub first_rank: Vec<usize>,
    pub cluster_sizes: Vec<usize>,
    /// max − min of the Robin levels in each cluster.
    pub diameters: Vec<f64>,
}

impl ClusterDecomposition {
    /// Largest diameter among clusters starting at a rank in [lo, hi).
    pub fn max_diameter_in(&self, lo: usize, hi: usize) -> f64 {
        self.first_rank
            .iter()
            .zip(&self.diameters)
            .filter(|(r, _)| (lo..hi).contains(*r))
            .map(|(_, d)| *d)
            .fold(0.0, f64::max)
    }

    /// Total number of ranks covered.
    pub fn rank_count(&self) -> usize {
        self.cluster_sizes.iter().sum()
    }
}

/// Clusters covering at least the first `count` desymmetrized ranks; the
/// last cluster is always complete.
pub fn cluster_analysis(sigma: f64, count: usize) -> Result<ClusterDecomposition> {
    if count == 0 {
        return Err(domain("cluster analysis needs count ≥ 1"));
    }
    // Extend past `count` until the cluster holding rank count−1 ends.
    let mut extra = 64;
    let (s_of_rank, end) = loop {
        let neumann = desym_square_spectrum(0.0, count + extra)?;
        let s: Vec<u64> = neumann
            .levels
            .iter()
            .map(|l| (l.label.n * l.label.n + l.label.m * l.label.m) as u64)
            .collect();
        let last = s[count - 1];
        if let Some(end) = (count..s.len()).find(|&r| s[r] != last) {
            break (s, end);
        }
        extra *= 2;
    };
    let robin = desym_square_spectrum(sigma, end)?;
    let mut out = ClusterDecomposition {
        sigma,
        s_values: Vec::new(),
        first_rank: Vec::new(),
        cluster_sizes: Vec::new(),
        diameters: Vec::new(),
    };
    let mut start = 0;
    while start < end {
        let s = s_of_rank[start];
        let mut stop = start + 1;
        while stop < end && s_of_rank[stop] == s {
            stop += 1;
        }
        out.s_values.push(s);
        out.first_rank.push(start);
        out.cluster_sizes.push(stop - start);
        out.diameters.push(robin.levels[stop - 1].value - robin.levels[start].value);
        start = stop;
    }
    Ok(out)
}
