//! Robin and Neumann spectrum of the unit disk.
//!
//! Eigenfunctions `J_n(κ_{n,k} r) e^{inθ}` give eigenvalues κ_{n,k}², where
//! κ_{n,k} is the k-th positive zero of `x J'_n(x) + σ J_n(x)`. Levels with
//! n ≥ 1 are doubly degenerate (κ_{−n,k} = κ_{n,k}) and appear in spectra
//! twice, labelled (n, k) and (−n, k). Since κ_{n,k} > n, orders n ≤ μ
//! suffice for all levels with κ ≤ μ.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::par::map_range;
use crate::robin1d::check_sigma;
use crate::spectrum::{level_order, Bc, Domain, GapSeries, Label, Level, Spectrum};
use crate::specfun::{bessel_j_zeros_below, homogeneous_f, robin_zeros_below, BesselOrder};

/// Upper bound on the number of levels (with multiplicity) per enumeration.
pub const MAX_LEVELS: usize = 20_000_000;

const MAX_CUTOFF_GROWTH: usize = 60;

/// One (n, k) pair with n ≥ 0, before expanding the ±n degeneracy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskLevel {
    pub value: f64,
    pub angular: u32,
    pub radial: u32,
    pub multiplicity: u8,
}

/// All κ_{n,k} ≤ μ, ordered by (n, k).
pub fn disk_levels(sigma: f64, mu_max: f64) -> Result<Vec<DiskLevel>> {
    check_sigma(sigma)?;
    levels_with(mu_max, |o| robin_zeros_below(o, sigma, mu_max))
}

fn levels_with(
    mu_max: f64,
    zeros_of: impl Fn(BesselOrder) -> Result<Vec<f64>> + Sync,
) -> Result<Vec<DiskLevel>> {
    if !(mu_max.is_finite() && mu_max > 0.0) {
        return Err(domain(format!("frequency cutoff must be finite and > 0, got {mu_max}")));
    }
    let weyl = mu_max * mu_max / 4.0 + mu_max / 2.0;
    if weyl > MAX_LEVELS as f64 {
        return Err(Error::Resource { what: "disk levels", requested: weyl, limit: MAX_LEVELS as f64 });
    }
    let orders = mu_max.floor() as usize + 1;
    let per_order = map_range(0..orders, |n| zeros_of(BesselOrder::integer(n as u32)));
    let mut out = Vec::new();
    for (n, zeros) in per_order.into_iter().enumerate() {
        for (i, kappa) in zeros?.into_iter().enumerate() {
            out.push(DiskLevel {
                value: kappa * kappa,
                angular: n as u32,
                radial: i as u32 + 1,
                multiplicity: if n == 0 { 1 } else { 2 },
            });
        }
    }
    Ok(out)
}

/// All eigenvalues κ² with κ ≤ μ, each n ≥ 1 level listed for n and −n.
pub fn disk_spectrum(sigma: f64, mu_max: f64) -> Result<Spectrum> {
    expand(Bc::robin(sigma), disk_levels(sigma, mu_max)?, mu_max)
}

/// Dirichlet eigenvalues j_{n,k}² with j_{n,k} ≤ μ, with the same labelling.
pub fn disk_dirichlet_spectrum(mu_max: f64) -> Result<Spectrum> {
    let levels = levels_with(mu_max, |o| bessel_j_zeros_below(o, mu_max))?;
    expand(Bc::Dirichlet, levels, mu_max)
}

fn expand(bc: Bc, disk: Vec<DiskLevel>, mu_max: f64) -> Result<Spectrum> {
    let mut levels = Vec::new();
    for d in disk {
        let (n, k) = (d.angular as i64, d.radial as i64);
        levels.push(Level { value: d.value, label: Label { n, m: k }, bc });
        if n > 0 {
            levels.push(Level { value: d.value, label: Label { n: -n, m: k }, bc });
        }
    }
    levels.sort_unstable_by(level_order);
    Ok(Spectrum { domain: Domain::Disk, bc, levels, cutoff: mu_max * mu_max })
}

/// The lowest `count` levels (with multiplicity) of the disk.
pub fn disk_lowest(sigma: f64, count: usize) -> Result<Spectrum> {
    check_sigma(sigma)?;
    if count == 0 {
        return Err(domain("level count must be ≥ 1"));
    }
    let mut mu = (1.2 * 4.0 * count as f64 + 8.0 * sigma + 10.0).sqrt();
    for _ in 0..MAX_CUTOFF_GROWTH {
        let mut s = disk_spectrum(sigma, mu)?;
        if s.len() >= count {
            s.truncate_complete(count);
            return Ok(s);
        }
        mu *= 1.25;
    }
    Err(Error::Convergence(format!("no complete cutoff found for {count} disk levels")))
}

/// N_disk,σ(x) = #{λ ≤ x}, with multiplicity.
pub fn disk_counting(sigma: f64, x: f64) -> Result<u64> {
    check_sigma(sigma)?;
    if x.is_nan() {
        return Err(domain("counting argument is NaN"));
    }
    if x < 0.0 {
        return Ok(0);
    }
    if x == 0.0 {
        return Ok(u64::from(sigma == 0.0));
    }
    let mu = x.sqrt() * (1.0 + 1e-12);
    Ok(disk_levels(sigma, mu)?
        .iter()
        .filter(|d| d.value <= x)
        .map(|d| d.multiplicity as u64)
        .sum())
}

/// The first `count` rank-paired Robin–Neumann gaps of the disk.
pub fn disk_gaps(sigma: f64, count: usize) -> Result<GapSeries> {
    Ok(disk_gaps_certified(sigma, count)?.0)
}

/// d_n for n < count from both spectra below a fixed frequency cutoff μ.
pub fn disk_gaps_with_cutoff(sigma: f64, count: usize, mu: f64) -> Result<GapSeries> {
    check_sigma(sigma)?;
    let robin = disk_spectrum(sigma, mu)?;
    let neumann = disk_spectrum(0.0, mu)?;
    if robin.len() < count || neumann.len() < count {
        return Err(domain(format!(
            "cutoff μ = {mu} holds only {} Robin / {} Neumann levels, {count} needed",
            robin.len(),
            neumann.len()
        )));
    }
    Ok(GapSeries::pair(sigma, &robin, &neumann, count))
}

/// [`disk_gaps`] with the frequency cutoff μ at which both spectra were
/// complete to rank `count`.
pub fn disk_gaps_certified(sigma: f64, count: usize) -> Result<(GapSeries, f64)> {
    check_sigma(sigma)?;
    if count == 0 {
        return Err(domain("gap count must be ≥ 1"));
    }
    // N(λ) ≈ λ/4, padded by 20% and by the mean gap 4σ.
    let mut mu = (1.2 * 4.0 * count as f64 + 8.0 * sigma + 10.0).sqrt();
    for _ in 0..MAX_CUTOFF_GROWTH {
        match disk_gaps_with_cutoff(sigma, count, mu) {
            Ok(g) => return Ok((g, mu)),
            Err(Error::Domain(_)) => mu *= 1.25,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Convergence(format!("no complete cutoff found for {count} disk gaps")))
}

/// The leading-order approximation `F(n, k + max(0, −n) − 3/4)` of κ_{n,k}.
pub fn kappa_approx(n: i64, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(domain("radial index k starts at 1"));
    }
    let y = k as f64 + (-n).max(0) as f64 - 0.75;
    homogeneous_f(n as f64, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{bessel_zero, robin_bessel_zero, ZeroKind};
    use std::f64::consts::PI;

    const JP11_SQ: f64 = 3.389_957_716_671_888_7;
    const KAPPA01_SQ: f64 = 1.576_992_730_808_612_5;

    #[test]
    fn neumann_bottom_of_spectrum() {
        let s = disk_spectrum(0.0, 2.0).unwrap();
        assert_eq!(s.levels[0].value, 0.0);
        assert!((s.levels[1].value - JP11_SQ).abs() < 1e-11);
        assert_eq!(s.levels[1].value, s.levels[2].value);
        assert_eq!(s.levels[1].label, Label { n: -1, m: 1 });
        assert_eq!(s.levels[2].label, Label { n: 1, m: 1 });
        assert_eq!(disk_spectrum(0.0, 1.0).unwrap().len(), 1);
    }

    #[test]
    fn robin_ground_state() {
        let s = disk_spectrum(1.0, 2.0).unwrap();
        assert!((s.levels[0].value - KAPPA01_SQ).abs() < 1e-11);
    }

    #[test]
    fn counting_examples() {
        assert_eq!(disk_counting(0.0, 1.0).unwrap(), 1);
        assert_eq!(disk_counting(0.0, 3.389).unwrap(), 1);
        assert_eq!(disk_counting(0.0, 3.391).unwrap(), 3);
        assert_eq!(disk_counting(0.0, -1.0).unwrap(), 0);
        assert_eq!(disk_counting(1.0, 0.0).unwrap(), 0);
    }

    #[test]
    fn levels_reproduce_zeros() {
        for d in disk_levels(0.7, 15.0).unwrap() {
            let o = BesselOrder::integer(d.angular);
            let k = robin_bessel_zero(o, d.radial, 0.7).unwrap();
            assert!((d.value - k * k).abs() <= 1e-9 * d.value);
            let jp = bessel_zero(o, d.radial, ZeroKind::JPrime).unwrap();
            let j = bessel_zero(o, d.radial, ZeroKind::J).unwrap();
            assert!(jp < k && k < j);
            assert_eq!(d.multiplicity, if d.angular == 0 { 1 } else { 2 });
        }
    }

    #[test]
    fn gaps_positive_and_complete() {
        let (g, mu) = disk_gaps_certified(1.0, 400).unwrap();
        assert!(g.gaps.iter().all(|&d| d > 0.0));
        assert_eq!(g, disk_gaps_with_cutoff(1.0, 400, 2.0 * mu).unwrap());
        let zero = disk_gaps(0.0, 100).unwrap();
        assert!(zero.gaps.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn lowest_levels_match_full_spectrum() {
        let low = disk_lowest(1.0, 300).unwrap();
        let full = disk_spectrum(1.0, 60.0).unwrap();
        assert_eq!(low.levels[..], full.levels[..300]);
        assert!(low.cutoff <= low.levels[299].value);
    }

    #[test]
    fn dirichlet_brackets_robin() {
        let d = disk_dirichlet_spectrum(30.0).unwrap();
        let r = disk_spectrum(2.0, 30.0).unwrap();
        let n = disk_spectrum(0.0, 30.0).unwrap();
        assert!(d.len() < r.len() && r.len() <= n.len());
        for i in 0..d.len() {
            assert!(n.levels[i].value < r.levels[i].value && r.levels[i].value < d.levels[i].value);
        }
        let j01 = 2.404_825_557_695_769_3;
        assert!((d.levels[0].value - j01 * j01).abs() < 1e-11);
    }

    #[test]
    fn approximation_examples() {
        for k in 1..10 {
            assert!((kappa_approx(0, k).unwrap() - PI * (k as f64 - 0.75)).abs() < 1e-12);
            assert!((kappa_approx(-5, k).unwrap() - kappa_approx(5, k).unwrap()).abs() < 1e-12);
        }
        let exact = robin_bessel_zero(BesselOrder::integer(100), 10, 1.0).unwrap();
        let c = (exact - kappa_approx(100, 10).unwrap()).abs() * 10f64.powf(4.0 / 3.0) / 100f64.cbrt();
        assert!(c <= 5.0, "fitted C = {c}");
        assert!(kappa_approx(1, 0).is_err());
    }
}
