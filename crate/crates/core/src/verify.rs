//! The acceptance suite: twelve numerical checks with fitted constants.
//!
//! Reports contain no timings or addresses, so the rendered text is a pure
//! function of the library and can be compared byte for byte across runs and
//! thread counts (check 12 does exactly that).

use std::fmt::Write as _;

use serde::Serialize;

use crate::disk::{disk_dirichlet_spectrum, disk_gaps, disk_levels, disk_spectrum, kappa_approx};
use crate::error::Result;
use crate::lattice::{count_lattice, count_lattice_brute, sandwich_check};
use crate::rectangle::{desym_square_spectrum, rect_gaps, rect_spectrum};
use crate::reference::series_j;
use crate::robin1d::gap1d;
use crate::specfun::{bessel_j_integral, zeros_of_kind, BesselOrder, ZeroKind};
use crate::spectrum::{Bc, Spectrum};
use crate::stats::{cumulative_mean, spacing_cdf};

/// Outcome of one acceptance check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("{tag} {:>2} {}: {}", self.id, self.title, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One line per check, LF terminated.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.line());
            out.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        out
    }
}

/// Identifiers accepted by [`run_check`]; 12 needs two reports, see [`determinism`].
pub const CHECK_IDS: [u8; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11];

const TITLES: [&str; 12] = [
    "interval gap limit",
    "Dirichlet-Neumann bracketing",
    "mean gap",
    "bounded rectangle gaps",
    "spacing mass near zero",
    "Bessel zero interlacing",
    "lattice sandwich constant",
    "disk gap growth and Weyl residual",
    "lattice rows vs brute force",
    "Bessel integral vs series",
    "uniform zero approximation",
    "thread-count determinism",
];

fn title(id: u8) -> &'static str {
    TITLES[id as usize - 1]
}

fn finish(id: u8, outcome: Result<(bool, String)>) -> Check {
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Check { id, title: title(id), passed, detail }
}

/// Run a single check by number (1 to 11).
pub fn run_check(id: u8) -> Option<Check> {
    let outcome = match id {
        1 => interval_limit(),
        2 => bracketing(),
        3 => mean_gap(),
        4 => bounded_rectangle(),
        5 => spacing_mass(),
        6 => interlacing(),
        7 => sandwich(),
        8 => disk_growth(),
        9 => lattice_rows(),
        10 => bessel_oracle(),
        11 => uniform_zeros(),
        _ => return None,
    };
    Some(finish(id, outcome))
}

/// Checks 1 to 11 in order.
pub fn run_all() -> Report {
    Report { checks: CHECK_IDS.iter().filter_map(|&id| run_check(id)).collect() }
}

/// Check 12: two reports produced under different thread counts must render
/// to the same bytes.
pub fn determinism(a: &Report, b: &Report, threads_a: usize, threads_b: usize) -> Check {
    let (ra, rb) = (a.render(), b.render());
    let (threads_a, threads_b) = (threads_a.min(threads_b), threads_a.max(threads_b));
    let passed = ra == rb;
    let detail = if passed {
        format!("{} bytes identical under {threads_a} and {threads_b} threads", ra.len())
    } else {
        let line = ra.lines().zip(rb.lines()).position(|(x, y)| x != y).map_or(0, |i| i + 1);
        format!("reports under {threads_a} and {threads_b} threads differ at line {line}")
    };
    Check { id: 12, title: title(12), passed, detail }
}

fn interval_limit() -> Result<(bool, String)> {
    let devs = [100u64, 1_000, 10_000]
        .iter()
        .map(|&n| Ok((gap1d(n, 1.0)? - 4.0).abs()))
        .collect::<Result<Vec<f64>>>()?;
    let passed = devs[2] <= 1e-3 && devs[0] > devs[1] && devs[1] > devs[2];
    Ok((passed, format!("|gap1d(n,1)-4| = {:.3e}, {:.3e}, {:.3e} at n = 1e2, 1e3, 1e4", devs[0], devs[1], devs[2])))
}

const BRACKET_RANKS: usize = 10_000;

fn strict_violations(low: &Spectrum, mid: &Spectrum, high: &Spectrum, ranks: usize) -> usize {
    if low.len() < ranks || mid.len() < ranks || high.len() < ranks {
        return ranks;
    }
    (0..ranks)
        .filter(|&i| !(low.levels[i].value < mid.levels[i].value && mid.levels[i].value < high.levels[i].value))
        .count()
}

fn bracketing() -> Result<(bool, String)> {
    let sigmas = [0.5, 1.0, 4.0];
    let mut violations = 0;
    let mut compared = 0;
    for aspect in [1.0, 0.7] {
        let mut cutoff = 4.0 * std::f64::consts::PI * BRACKET_RANKS as f64 / aspect;
        let dirichlet = loop {
            let d = rect_spectrum(aspect, Bc::Dirichlet, cutoff)?;
            if d.len() >= BRACKET_RANKS {
                break d;
            }
            cutoff *= 1.25;
        };
        let neumann = rect_spectrum(aspect, Bc::Neumann, cutoff)?;
        for sigma in sigmas {
            let robin = rect_spectrum(aspect, Bc::robin(sigma), cutoff)?;
            violations += strict_violations(&neumann, &robin, &dirichlet, BRACKET_RANKS);
            compared += BRACKET_RANKS;
        }
    }
    let mut mu = (4.0 * BRACKET_RANKS as f64).sqrt();
    let dirichlet = loop {
        let d = disk_dirichlet_spectrum(mu)?;
        if d.len() >= BRACKET_RANKS {
            break d;
        }
        mu *= 1.1;
    };
    let neumann = disk_spectrum(0.0, mu)?;
    for sigma in sigmas {
        let robin = disk_spectrum(sigma, mu)?;
        violations += strict_violations(&neumann, &robin, &dirichlet, BRACKET_RANKS);
        compared += BRACKET_RANKS;
    }
    Ok((violations == 0, format!("{violations} violations over {compared} ranks (rectangles L = 1, 0.7 and disk)")))
}

fn mean_gap() -> Result<(bool, String)> {
    let last = |g| cumulative_mean(&g).map(|m| m[m.len() - 1].1);
    let square = last(rect_gaps(1.0, 1.0, 2000)?)?;
    let disk = last(disk_gaps(1.0, 2000)?)?;
    let (ds, dd) = (square / 8.0 - 1.0, disk / 4.0 - 1.0);
    let passed = ds.abs() <= 0.05 && dd.abs() <= 0.05;
    Ok((
        passed,
        format!("square mean {square:.6} ({:+.2}% from 8), disk mean {disk:.6} ({:+.2}% from 4), N = 2000", 100.0 * ds, 100.0 * dd),
    ))
}

fn bounded_rectangle() -> Result<(bool, String)> {
    let mut passed = true;
    let mut parts = Vec::new();
    for (aspect, sigma) in [(1.0, 1.0), (0.7, 1.0), (1.0, 4.0)] {
        let g = rect_gaps(aspect, sigma, 100_001)?;
        let first = g.gaps[..50_000].iter().copied().fold(f64::MIN, f64::max);
        let second = g.gaps[50_000..].iter().copied().fold(f64::MIN, f64::max);
        passed &= second <= first + 0.05;
        parts.push(format!("(L={aspect}, s={sigma}) max {first:.6} then {second:.6}"));
    }
    Ok((passed, parts.join("; ")))
}

fn spacing_mass() -> Result<(bool, String)> {
    let grid = [0.05, 0.1, 0.2];
    let small = spacing_cdf(&desym_square_spectrum(1.0, 2_000)?, &grid)?;
    let large = spacing_cdf(&desym_square_spectrum(1.0, 20_000)?, &grid)?;
    let mut passed = true;
    let mut parts = Vec::new();
    for ((y, a), (_, b)) in small.cdf_samples.iter().zip(&large.cdf_samples) {
        passed &= b > a;
        parts.push(format!("CDF({y}) {a:.4} -> {b:.4}"));
    }
    Ok((passed, format!("{} from N = 2000 to 20000", parts.join(", "))))
}

const INTERLACE_ORDERS: u32 = 50;
const INTERLACE_ZEROS: usize = 200;

fn interlacing() -> Result<(bool, String)> {
    let per_order = crate::par::map_range(0..INTERLACE_ORDERS as usize + 1, |nu| -> Result<usize> {
        let o = BesselOrder::integer(nu as u32);
        let j = zeros_of_kind(o, ZeroKind::J, 0.0, INTERLACE_ZEROS)?;
        let jp = zeros_of_kind(o, ZeroKind::JPrime, 0.0, INTERLACE_ZEROS)?;
        let mut bad = 0;
        for sigma in [0.0, 0.5, 1.0, 4.0] {
            let kappa = zeros_of_kind(o, ZeroKind::RobinCombo, sigma, INTERLACE_ZEROS)?;
            for i in 0..INTERLACE_ZEROS {
                let middle = if sigma == 0.0 { jp[i] == kappa[i] } else { jp[i] < kappa[i] };
                if !(nu as f64 <= jp[i] && middle && kappa[i] < j[i]) {
                    bad += 1;
                }
            }
        }
        Ok(bad)
    });
    let violations = per_order.into_iter().sum::<Result<usize>>()?;
    let total = (INTERLACE_ORDERS as usize + 1) * INTERLACE_ZEROS * 4;
    Ok((violations == 0, format!("{violations} violations over {total} triples (nu <= 50, k <= 200, s in 0, 0.5, 1, 4)")))
}

fn sandwich() -> Result<(bool, String)> {
    let mut cs = Vec::new();
    let mut parts = Vec::new();
    for sigma in [0.0, 1.0] {
        for mu in [20.0, 50.0, 100.0, 200.0] {
            let r = sandwich_check(sigma, mu, 10.0)?;
            cs.push(r.minimal_c);
            parts.push(format!("C(s={sigma}, mu={mu}) = {:.4}", r.minimal_c));
        }
    }
    let max = cs.iter().copied().fold(f64::MIN, f64::max);
    let min = cs.iter().copied().fold(f64::MAX, f64::min);
    let passed = max <= 2.0 * min && max <= 10.0;
    Ok((passed, format!("{}; max {max:.4}, min {min:.4}", parts.join(", "))))
}

fn disk_growth() -> Result<(bool, String)> {
    let g = disk_gaps(1.0, 20_001)?;
    let scaled = |range: std::ops::Range<usize>| {
        range.map(|n| g.gaps[n] / (n as f64).cbrt()).fold(f64::MIN, f64::max)
    };
    let first = scaled(1..10_000);
    let second = scaled(10_000..20_001);
    let growth_ok = second <= first;

    let (x_lo, x_hi) = (100.0f64, 10_000.0f64);
    let mut values: Vec<(f64, u64)> = disk_levels(1.0, x_hi.sqrt() * (1.0 + 1e-9))?
        .into_iter()
        .filter(|d| d.value <= x_hi)
        .map(|d| (d.value, d.multiplicity as u64))
        .collect();
    values.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
    let smooth = |x: f64| x / 4.0 + x.sqrt() / 2.0;
    let mut fitted: f64 = 0.0;
    let mut count = 0u64;
    let mut i = 0;
    let mut probe = |x: f64, n: u64| fitted = fitted.max((n as f64 - smooth(x)).abs() / x.cbrt());
    while i < values.len() && values[i].0 < x_lo {
        count += values[i].1;
        i += 1;
    }
    probe(x_lo, count);
    while i < values.len() {
        let x = values[i].0;
        probe(x, count);
        while i < values.len() && values[i].0 == x {
            count += values[i].1;
            i += 1;
        }
        probe(x, count);
    }
    probe(x_hi, count);
    let passed = growth_ok && fitted <= 2.0;
    Ok((
        passed,
        format!(
            "max d_n n^(-1/3) = {first:.4} for n < 1e4, {second:.4} for 1e4 <= n <= 2e4; Weyl residual C = {fitted:.4} on [1e2, 1e4], s = 1"
        ),
    ))
}

fn lattice_rows() -> Result<(bool, String)> {
    let mut mismatches = Vec::new();
    for i in 1..=200 {
        let mu = i as f64;
        if count_lattice(mu)?.count != count_lattice_brute(mu)? {
            mismatches.push(i);
        }
    }
    let detail = match mismatches.first() {
        None => "200 of 200 dilations mu = 1..200 match exactly".to_string(),
        Some(first) => format!("{} mismatches, first at mu = {first}", mismatches.len()),
    };
    Ok((mismatches.is_empty(), detail))
}

/// x grid for check 10: 477 points spread over [0.1, 50].
pub(crate) fn oracle_grid() -> Vec<f64> {
    (0..477).map(|i| 0.1 + i as f64 * (49.9 / 476.0)).collect()
}

fn bessel_oracle() -> Result<(bool, String)> {
    let xs = oracle_grid();
    let per_order = crate::par::map_range(0..21, |n| -> Result<(f64, f64)> {
        let order = BesselOrder::integer(n as u32);
        let mut worst = (0.0, 0.0);
        for &x in &xs {
            let exact = series_j(4 * n as u32, x);
            let rel = ((bessel_j_integral(order, x)? - exact) / exact).abs();
            if !(rel <= worst.0) {
                worst = (rel, x);
            }
        }
        Ok(worst)
    });
    let mut worst = (0.0, 0, 0.0);
    for (n, w) in per_order.into_iter().enumerate() {
        let (rel, x) = w?;
        if !(rel <= worst.0) {
            worst = (rel, n, x);
        }
    }
    let points = 21 * xs.len();
    Ok((
        worst.0 <= 1e-10,
        format!("worst relative error {:.3e} at nu = {}, x = {:.4} over {points} points", worst.0, worst.1, worst.2),
    ))
}

fn uniform_zeros() -> Result<(bool, String)> {
    let sigma = 1.0;
    let per_order = crate::par::map_range(60..301, |n| -> Result<Vec<f64>> {
        let kmax = n / 3;
        let zeros = zeros_of_kind(BesselOrder::integer(n as u32), ZeroKind::RobinCombo, sigma, kmax)?;
        zeros
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let k = (i + 1) as f64;
                let f = kappa_approx(n as i64, i as u32 + 1)?;
                Ok((z - f).abs() * k.powf(4.0 / 3.0) / (n as f64).cbrt())
            })
            .collect()
    });
    let mut scaled = Vec::new();
    for v in per_order {
        scaled.extend(v?);
    }
    scaled.sort_unstable_by(f64::total_cmp);
    let max = scaled[scaled.len() - 1];
    let median = scaled[scaled.len() / 2];
    Ok((
        max <= 2.0 * median,
        format!("max {max:.4}, median {median:.4}, ratio {:.3} over {} zeros (s = 1)", max / median, scaled.len()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_checks_pass() {
        for id in [1, 9] {
            let c = run_check(id).unwrap();
            assert!(c.passed, "{}", c.line());
        }
        assert!(run_check(12).is_none());
    }

    #[test]
    fn render_shape() {
        let r = Report {
            checks: vec![
                Check { id: 1, title: title(1), passed: true, detail: "ok".into() },
                Check { id: 2, title: title(2), passed: false, detail: "bad".into() },
            ],
        };
        assert_eq!(r.render(), "PASS  1 interval gap limit: ok\nFAIL  2 Dirichlet-Neumann bracketing: bad\n1/2 checks passed\n");
        assert!(!r.all_passed());
        let d = determinism(&r, &r.clone(), 1, 8);
        assert!(d.passed);
    }

    #[test]
    fn grid_size() {
        let xs = oracle_grid();
        assert_eq!(xs.len() * 21, 10_017);
        assert!((xs[476] - 50.0).abs() < 1e-12);
    }
}
