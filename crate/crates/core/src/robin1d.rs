//! Robin frequencies of the unit interval.
//!
//! The eigenfunctions of `−f'' = k² f` on [0, 1] with `f' = σf` at 0 and
//! `f' = −σf` at 1 have frequencies solving `tan k = 2σk / (k² − σ²)`. We work
//! with the pole-free form
//!
//! `G(k) = (k² − σ²) sin k − 2kσ cos k`,
//!
//! which has exactly one zero k_n(σ) in (nπ, (n+1)π) for σ > 0. Writing
//! `k = nπ + δ` gives `G = (−1)ⁿ H(δ)` with
//! `H(δ) = (k² − σ²) sin δ − 2kσ cos δ`, so the root search runs on δ ∈ (0, π)
//! where H goes from negative to positive. Keeping δ separate also makes the
//! gap `k² − (nπ)² = δ(2nπ + δ)` free of cancellation.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::spectrum::{Bc, Domain, GapSeries, Label, Level, Spectrum};

/// The n-th Robin frequency k_n(σ) of the unit interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecularRoot {
    pub n: u64,
    pub sigma: f64,
    pub k: f64,
}

pub(crate) fn check_sigma(sigma: f64) -> Result<()> {
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(domain(format!("Robin parameter must be finite and ≥ 0, got {sigma}")));
    }
    Ok(())
}

/// G(k) = (k² − σ²) sin k − 2kσ cos k.
pub fn secular(k: f64, sigma: f64) -> f64 {
    (k * k - sigma * sigma) * k.sin() - 2.0 * k * sigma * k.cos()
}

fn offset_residual(base: f64, delta: f64, sigma: f64) -> (f64, f64) {
    let k = base + delta;
    let (s, c) = delta.sin_cos();
    let a = k * k - sigma * sigma;
    let h = a * s - 2.0 * k * sigma * c;
    let dh = 2.0 * k * s + a * c - 2.0 * sigma * c + 2.0 * k * sigma * s;
    (h, dh)
}

/// δ = k_n(σ) − nπ ∈ (0, π), σ > 0.
fn offset(n: u64, sigma: f64) -> f64 {
    let base = n as f64 * PI;
    let (mut lo, mut hi) = (0.0, PI);
    // H < 0 just right of 0, H(π) = 2(n+1)πσ > 0.
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if offset_residual(base, mid, sigma).0 < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut delta = 0.5 * (lo + hi);
    let (h, dh) = offset_residual(base, delta, sigma);
    if dh != 0.0 {
        let polished = delta - h / dh;
        if polished > lo && polished < hi {
            delta = polished;
        }
    }
    delta
}

/// k_n(σ): nπ exactly for σ = 0, otherwise the root of G in (nπ, (n+1)π).
pub fn frequency(n: u64, sigma: f64) -> Result<SecularRoot> {
    check_sigma(sigma)?;
    let base = n as f64 * PI;
    let k = if sigma == 0.0 { base } else { base + offset(n, sigma) };
    Ok(SecularRoot { n, sigma, k })
}

/// (n+1)π, the n-th Dirichlet frequency (the σ → ∞ limit).
pub fn dirichlet_frequency(n: u64) -> f64 {
    (n as f64 + 1.0) * PI
}

/// k_n(σ)² − (nπ)².
pub fn gap1d(n: u64, sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    if sigma == 0.0 {
        return Ok(0.0);
    }
    let delta = offset(n, sigma);
    Ok(delta * (2.0 * n as f64 * PI + delta))
}

/// The squared frequency of mode `n` under the given boundary condition.
pub(crate) fn eigenvalue(n: u64, bc: Bc) -> f64 {
    match bc {
        Bc::Neumann => {
            let nf = n as f64;
            PI * PI * (nf * nf)
        }
        Bc::Robin(sigma) => {
            let base = n as f64 * PI;
            base * base + gap1d(n, sigma).unwrap_or(f64::NAN)
        }
        Bc::Dirichlet => {
            let k = dirichlet_frequency(n);
            k * k
        }
    }
}

/// The first `count` eigenvalues k_n² of the unit interval.
pub fn interval_spectrum(bc: Bc, count: usize) -> Result<Spectrum> {
    bc.validate()?;
    let levels: Vec<Level> = crate::par::map_range(0..count, |n| Level {
        value: eigenvalue(n as u64, bc),
        label: Label { n: n as i64, m: 0 },
        bc,
    });
    let cutoff = levels.last().map_or(0.0, |l| l.value);
    Ok(Spectrum { domain: Domain::Interval, bc, levels, cutoff })
}

/// d_n(σ) = k_n(σ)² − (nπ)² for n < count. On the interval ranks and mode
/// indices coincide, so no reordering is involved.
pub fn interval_gaps(sigma: f64, count: usize) -> Result<GapSeries> {
    check_sigma(sigma)?;
    let gaps = crate::par::map_range(0..count, |n| gap1d(n as u64, sigma).unwrap_or(f64::NAN));
    Ok(GapSeries { sigma, gaps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::bisect;
    use proptest::prelude::*;

    // Root of G on (0, π) at σ = 1, bisected in the oracle step.
    const K0_SIGMA1: f64 = 1.306_542_374_188_807_4;

    #[test]
    fn neumann_is_exact() {
        assert_eq!(frequency(3, 0.0).unwrap().k, 3.0 * PI);
        assert_eq!(gap1d(17, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn first_robin_root() {
        let k = frequency(0, 1.0).unwrap().k;
        assert!((k - K0_SIGMA1).abs() < 1e-12);
        let independent = bisect(1e-9, PI - 1e-9, 1e-15, |k| secular(k, 1.0));
        assert!((k - independent).abs() < 1e-12);
        assert!((gap1d(0, 1.0).unwrap() - K0_SIGMA1 * K0_SIGMA1).abs() < 1e-11);
    }

    #[test]
    fn large_index_expansion() {
        let k = frequency(1000, 1.0).unwrap().k;
        let approx = 1000.0 * PI + 2.0 / (1000.0 * PI);
        assert!((k - approx).abs() < 1e-8);
        assert!((gap1d(1000, 1.0).unwrap() - 4.0).abs() < 1e-3);
    }

    #[test]
    fn dirichlet_values() {
        assert_eq!(dirichlet_frequency(0), PI);
        assert_eq!(dirichlet_frequency(5), 6.0 * PI);
    }

    #[test]
    fn rejects_negative_sigma() {
        assert!(frequency(0, -0.1).is_err());
        assert!(gap1d(0, f64::NAN).is_err());
    }

    #[test]
    fn interval_gaps_at_zero_sigma_vanish() {
        let g = interval_gaps(0.0, 10).unwrap();
        assert!(g.gaps.iter().all(|&d| d == 0.0));
    }

    proptest! {
        #[test]
        fn root_bracketed_and_zero(n in 0u64..100_000, sigma in 1e-3f64..50.0) {
            let k = frequency(n, sigma).unwrap().k;
            prop_assert!(n as f64 * PI < k && k < dirichlet_frequency(n));
            // Residual in the shifted form; G itself cannot be evaluated to
            // this accuracy once sin k loses the low bits of k.
            let base = n as f64 * PI;
            let (h, _) = offset_residual(base, offset(n, sigma), sigma);
            let scale = k * k + sigma * sigma + 2.0 * k * sigma;
            prop_assert!(h.abs() <= 1e-13 * scale);
        }

        #[test]
        fn monotone_in_sigma(n in 0u64..10_000, s in 0.0f64..20.0, ds in 1e-3f64..5.0) {
            prop_assert!(frequency(n, s).unwrap().k < frequency(n, s + ds).unwrap().k);
        }

        #[test]
        fn gap_consistent_with_frequency(n in 0u64..1000, sigma in 0.01f64..10.0) {
            let k = frequency(n, sigma).unwrap().k;
            let base = n as f64 * PI;
            let direct = k * k - base * base;
            prop_assert!((gap1d(n, sigma).unwrap() - direct).abs() <= 1e-14 * k * k + 1e-12);
        }
    }
}
