//! Shifted lattice points in dilations of the cusped domain
//! `D = {(x, y) : −1 ≤ x ≤ 1, max(0, −x) ≤ y ≤ g(x)}`,
//! and the comparison of their count with the disk counting function.
//!
//! `N_D(μ) = #{(n, k) ∈ ℤ × ℤ_{≥1} : (n, k + max(0, −n) − 3/4) ∈ μD}`.
//! Because g(−a) = g(a) + a, the rows n and −n contain the same number of
//! points, `max(0, ⌊μ g(|n|/μ) + 3/4⌋)`, so the count is
//! `row(0) + 2 Σ_{n ≥ 1} row(n)`.
//!
//! Points on the boundary of μD count as inside; comparisons carry a
//! relative slack of 1e−12 so that rounding cannot move a point across it.

use serde::Serialize;

use crate::disk::disk_counting;
use crate::error::{domain, Error, Result};
use crate::par::map_range;
use crate::specfun::g_unchecked;

/// Largest μ accepted by [`count_lattice`].
pub const MU_CAP: f64 = 1e6;

const BOUNDARY_SLACK: f64 = 1e-12;

/// N_D(μ) with its two-term Weyl decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeCount {
    pub mu: f64,
    pub count: u64,
    /// area(D) μ² = μ²/4.
    pub area_term: f64,
    /// μ/2.
    pub perimeter_term: f64,
    /// count − area_term − perimeter_term.
    pub residual: f64,
}

/// Whether (x, y) lies in D, boundary included.
pub fn in_domain_d(x: f64, y: f64) -> bool {
    if !(x.is_finite() && y.is_finite()) || x.abs() > 1.0 + BOUNDARY_SLACK {
        return false;
    }
    let x = x.clamp(-1.0, 1.0);
    let floor = (-x).max(0.0);
    let ceil = g_unchecked(x);
    y >= floor - BOUNDARY_SLACK * floor.max(1.0) && y <= ceil + BOUNDARY_SLACK * ceil.max(1.0)
}

fn row(mu: f64, n: u64) -> u64 {
    let a = n as f64 / mu;
    if a > 1.0 {
        return 0;
    }
    let top = mu * g_unchecked(a) + 0.75 + BOUNDARY_SLACK * mu.max(1.0);
    top.floor().max(0.0) as u64
}

fn count_only(mu: f64) -> u64 {
    let rows = mu.floor() as usize + 1;
    let per_row = map_range(0..rows, |n| row(mu, n as u64));
    per_row[0] + 2 * per_row[1..].iter().sum::<u64>()
}

fn check_mu(mu: f64) -> Result<()> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(domain(format!("μ must be finite and > 0, got {mu}")));
    }
    if mu > MU_CAP {
        return Err(Error::Resource { what: "lattice dilation μ", requested: mu, limit: MU_CAP });
    }
    Ok(())
}

/// N_D(μ), by rows in O(μ).
pub fn count_lattice(mu: f64) -> Result<LatticeCount> {
    check_mu(mu)?;
    let count = count_only(mu);
    let area_term = mu * mu / 4.0;
    let perimeter_term = mu / 2.0;
    Ok(LatticeCount { mu, count, area_term, perimeter_term, residual: count as f64 - area_term - perimeter_term })
}

/// N_D(μ) by testing every candidate point with [`in_domain_d`]. O(μ²); an
/// oracle for [`count_lattice`].
pub fn count_lattice_brute(mu: f64) -> Result<u64> {
    check_mu(mu)?;
    let reach = mu.ceil() as i64 + 1;
    let mut count = 0;
    for n in -reach..=reach {
        // y ≤ μ max g = μ, so k + max(0, −n) ≤ μ + 1 bounds the search.
        for k in 1..=(2 * reach + 2) {
            let y = k as f64 + (-n).max(0) as f64 - 0.75;
            if in_domain_d(n as f64 / mu, y / mu) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Outcome of comparing N_disk,σ(μ²) with shifted lattice counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichReport {
    pub sigma: f64,
    pub mu: f64,
    pub disk_count: u64,
    pub margin: f64,
    /// Both inequalities hold with C = margin.
    pub holds: bool,
    /// The least C ≥ 0 (to 1e−9) for which both hold.
    pub minimal_c: f64,
}

fn sandwich_holds(mu: f64, disk: u64, c: f64) -> bool {
    let shift = c * mu.powf(-3.0 / 7.0);
    let slack = c * mu.powf(4.0 / 7.0);
    let lower_mu = mu - shift;
    let lower = if lower_mu > 0.0 { count_only(lower_mu) as f64 } else { 0.0 };
    let upper = count_only(mu + shift) as f64;
    lower - slack <= disk as f64 && disk as f64 <= upper + slack
}

/// Evaluate `N_D(μ − Cμ^{−3/7}) − Cμ^{4/7} ≤ N_disk,σ(μ²) ≤ N_D(μ + Cμ^{−3/7}) + Cμ^{4/7}`
/// at C = `margin`, and find the smallest C for which it holds.
pub fn sandwich_check(sigma: f64, mu: f64, margin: f64) -> Result<SandwichReport> {
    if !(mu >= 10.0) {
        return Err(domain(format!("sandwich check needs μ ≥ 10, got {mu}")));
    }
    check_mu(2.0 * mu)?;
    if !(margin.is_finite() && margin >= 0.0) {
        return Err(domain(format!("margin must be finite and ≥ 0, got {margin}")));
    }
    let disk = disk_counting(sigma, mu * mu)?;
    let holds = sandwich_holds(mu, disk, margin);
    let minimal_c = if sandwich_holds(mu, disk, 0.0) {
        0.0
    } else {
        let mut hi = 1.0;
        while !sandwich_holds(mu, disk, hi) {
            hi *= 2.0;
            if hi > 1e12 {
                return Err(Error::Convergence("sandwich constant search diverged".into()));
            }
        }
        let mut lo = 0.0;
        while hi - lo > 1e-9 * hi.max(1.0) {
            let mid = 0.5 * (lo + hi);
            if sandwich_holds(mu, disk, mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    Ok(SandwichReport { sigma, mu, disk_count: disk, margin, holds, minimal_c })
}
