//! Spectra of the rectangle Q_L = [0, 1] × [0, L], 0 < L ≤ 1.
//!
//! Separation of variables gives `Λ_{n,m} = k_n(σ)² + k_m(σL)² / L²`, where
//! k_m(σL)/L are the Robin frequencies of an interval of length L. Neumann
//! levels are computed as `π²(n² + m²/L²)` in one product so that
//! arithmetic coincidences (25 = 0² + 5² = 3² + 4²) produce exactly equal
//! floating-point values.
//!
//! Each Λ_{n,m} is increasing in both n and m, so enumerating all labels
//! with Λ ≤ λ_max is complete by construction. The rank-paired gap series
//! only needs each of the two spectra to contain at least N levels below
//! the shared cutoff; the cutoff starts from the Weyl estimate and grows
//! until that holds.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::par::map_range;
use crate::robin1d::{eigenvalue, gap1d};
use crate::spectrum::{level_order, Bc, Domain, GapSeries, Label, Level, Spectrum};

/// Upper bound on the number of levels a single enumeration may produce.
pub const MAX_LEVELS: usize = 40_000_000;

const MAX_CUTOFF_GROWTH: usize = 60;

fn check_aspect(aspect: f64) -> Result<()> {
    if !(aspect > 0.0 && aspect <= 1.0) {
        return Err(domain(format!("aspect ratio must lie in (0, 1], got {aspect}")));
    }
    Ok(())
}

fn check_cutoff(lambda_max: f64) -> Result<()> {
    if !(lambda_max.is_finite() && lambda_max > 0.0) {
        return Err(domain(format!("eigenvalue cutoff must be finite and > 0, got {lambda_max}")));
    }
    Ok(())
}

fn scaled(bc: Bc, aspect: f64) -> Bc {
    match bc {
        Bc::Robin(s) => Bc::Robin(s * aspect),
        other => other,
    }
}

/// Every level with Λ_{n,m} ≤ λ_max and `keep(n, m)`, sorted.
fn levels_below(
    aspect: f64,
    bc: Bc,
    lambda_max: f64,
    keep: impl Fn(u64, u64) -> bool + Sync + Send,
) -> Result<Vec<Level>> {
    bc.validate()?;
    check_aspect(aspect)?;
    check_cutoff(lambda_max)?;
    let weyl = aspect * lambda_max / (4.0 * PI) + (2.0 + 2.0 * aspect) * lambda_max.sqrt() / (4.0 * PI);
    if weyl > MAX_LEVELS as f64 {
        return Err(Error::Resource { what: "rectangle levels", requested: weyl, limit: MAX_LEVELS as f64 });
    }
    let inv_l2 = 1.0 / (aspect * aspect);
    let side = |bc: Bc, scale: f64| -> Vec<f64> {
        let mut v = Vec::new();
        let mut n = 0u64;
        loop {
            let e = eigenvalue(n, bc) * scale;
            if e > lambda_max {
                break;
            }
            v.push(e);
            n += 1;
        }
        v
    };
    let xs = side(bc, 1.0);
    let ys = side(scaled(bc, aspect), inv_l2);
    let value = |n: usize, m: usize| -> f64 {
        if bc == Bc::Neumann {
            let (nf, mf) = (n as f64, m as f64);
            PI * PI * (nf * nf + mf * mf * inv_l2)
        } else {
            xs[n] + ys[m]
        }
    };
    let rows = map_range(0..xs.len(), |n| {
        let mut row = Vec::new();
        for m in 0..ys.len() {
            let v = value(n, m);
            if v > lambda_max {
                break;
            }
            if keep(n as u64, m as u64) {
                row.push(Level { value: v, label: Label { n: n as i64, m: m as i64 }, bc });
            }
        }
        row
    });
    let mut levels: Vec<Level> = rows.into_iter().flatten().collect();
    levels.sort_unstable_by(level_order);
    Ok(levels)
}

/// All Λ_{n,m} ≤ λ_max for the given boundary condition.
pub fn rect_spectrum(aspect: f64, bc: Bc, lambda_max: f64) -> Result<Spectrum> {
    let levels = levels_below(aspect, bc, lambda_max, |_, _| true)?;
    Ok(Spectrum { domain: Domain::Rectangle { aspect }, bc, levels, cutoff: lambda_max })
}

/// Upper bound for the one-dimensional gaps along both sides, used to pad
/// the Weyl estimate of the cutoff.
fn gap_pad(aspect: f64, sigma: f64) -> f64 {
    let side = |s: f64| gap1d(0, s).unwrap_or(0.0) + 16.0 * s / 3.0;
    side(sigma) + side(sigma * aspect) / (aspect * aspect)
}

fn initial_cutoff(aspect: f64, sigma: f64, count: usize, fraction: f64) -> f64 {
    let weyl = 4.0 * PI * count as f64 / (aspect * fraction);
    1.2 * weyl + gap_pad(aspect, sigma) + 10.0
}

/// d_n = λ_n^σ − λ_n^0 for n < count, computing both spectra below a fixed
/// cutoff. Fails if either spectrum has fewer than `count` levels there.
pub fn rect_gaps_with_cutoff(aspect: f64, sigma: f64, count: usize, cutoff: f64) -> Result<GapSeries> {
    crate::robin1d::check_sigma(sigma)?;
    let robin = rect_spectrum(aspect, Bc::robin(sigma), cutoff)?;
    let neumann = rect_spectrum(aspect, Bc::Neumann, cutoff)?;
    if robin.len() < count || neumann.len() < count {
        return Err(domain(format!(
            "cutoff {cutoff} holds only {} Robin / {} Neumann levels, {count} needed",
            robin.len(),
            neumann.len()
        )));
    }
    Ok(GapSeries::pair(sigma, &robin, &neumann, count))
}

/// The first `count` rank-paired Robin–Neumann gaps of Q_L.
pub fn rect_gaps(aspect: f64, sigma: f64, count: usize) -> Result<GapSeries> {
    Ok(rect_gaps_certified(aspect, sigma, count)?.0)
}

/// [`rect_gaps`] together with the cutoff at which both spectra were
/// complete to rank `count`.
pub fn rect_gaps_certified(aspect: f64, sigma: f64, count: usize) -> Result<(GapSeries, f64)> {
    crate::robin1d::check_sigma(sigma)?;
    check_aspect(aspect)?;
    if count == 0 {
        return Err(domain("gap count must be ≥ 1"));
    }
    let mut cutoff = initial_cutoff(aspect, sigma, count, 1.0);
    for _ in 0..MAX_CUTOFF_GROWTH {
        match rect_gaps_with_cutoff(aspect, sigma, count, cutoff) {
            Ok(g) => return Ok((g, cutoff)),
            Err(Error::Domain(_)) => cutoff *= 1.25,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Convergence(format!("no complete cutoff found for {count} rectangle gaps")))
}

/// The lowest `count` levels of Q_L under `bc`.
pub fn rect_lowest(aspect: f64, bc: Bc, count: usize) -> Result<Spectrum> {
    bc.validate()?;
    check_aspect(aspect)?;
    if count == 0 {
        return Err(domain("level count must be ≥ 1"));
    }
    let sigma = if bc == Bc::Dirichlet { 0.0 } else { bc.sigma() };
    let mut cutoff = initial_cutoff(aspect, sigma, count, 1.0);
    for _ in 0..MAX_CUTOFF_GROWTH {
        let mut s = rect_spectrum(aspect, bc, cutoff)?;
        if s.len() >= count {
            s.truncate_complete(count);
            return Ok(s);
        }
        cutoff *= 1.25;
    }
    Err(Error::Convergence(format!("no complete cutoff found for {count} rectangle levels")))
}

/// The first `count` levels of the unit square restricted to labels n ≤ m.
pub fn desym_square_spectrum(sigma: f64, count: usize) -> Result<Spectrum> {
    crate::robin1d::check_sigma(sigma)?;
    if count == 0 {
        return Err(domain("level count must be ≥ 1"));
    }
    let bc = Bc::robin(sigma);
    let mut cutoff = initial_cutoff(1.0, sigma, count, 0.5);
    for _ in 0..MAX_CUTOFF_GROWTH {
        let levels = levels_below(1.0, bc, cutoff, |n, m| n <= m)?;
        if levels.len() >= count {
            let mut s = Spectrum { domain: Domain::Rectangle { aspect: 1.0 }, bc, levels, cutoff };
            s.truncate_complete(count);
            return Ok(s);
        }
        cutoff *= 1.25;
    }
    Err(Error::Convergence(format!("no complete cutoff found for {count} square levels")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TWO_K0_SQ: f64 = 3.414_105_951_101_851_2;

    #[test]
    fn lowest_levels_are_a_prefix() {
        let low = rect_lowest(0.6, Bc::Robin(1.5), 500).unwrap();
        let full = rect_spectrum(0.6, Bc::Robin(1.5), 2.0 * low.levels[499].value).unwrap();
        assert_eq!(low.levels[..], full.levels[..500]);
        assert_eq!(rect_lowest(1.0, Bc::Dirichlet, 1).unwrap().levels[0].value, 2.0 * PI * PI);
    }

    #[test]
    fn neumann_square_begins_with_known_values() {
        let s = rect_spectrum(1.0, Bc::Neumann, 9.5 * PI * PI).unwrap();
        let got: Vec<f64> = s.values().iter().map(|v| v / (PI * PI)).collect();
        let want = [0.0, 1.0, 1.0, 2.0, 4.0, 4.0, 5.0, 5.0, 8.0, 9.0, 9.0];
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12);
        }
        assert_eq!(s.levels[0].label, Label { n: 0, m: 0 });
    }

    #[test]
    fn robin_ground_state() {
        let s = rect_spectrum(1.0, Bc::Robin(1.0), 10.0).unwrap();
        assert!((s.levels[0].value - TWO_K0_SQ).abs() < 1e-11);
        let g = rect_gaps(1.0, 1.0, 5).unwrap();
        assert!((g.gaps[0] - TWO_K0_SQ).abs() < 1e-11);
    }

    #[test]
    fn dirichlet_uses_shifted_modes() {
        let s = rect_spectrum(1.0, Bc::Dirichlet, 2.5 * PI * PI).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s.levels[0].value - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn desymmetrized_square() {
        let s = desym_square_spectrum(0.0, 40).unwrap();
        let first: Vec<f64> = s.values().iter().take(7).map(|v| v / (PI * PI)).collect();
        for (g, w) in first.iter().zip([0.0, 1.0, 2.0, 4.0, 5.0, 8.0, 9.0]) {
            assert!((g - w).abs() < 1e-12);
        }
        let at25: Vec<Label> = s
            .levels
            .iter()
            .filter(|l| l.value == 25.0 * PI * PI)
            .map(|l| l.label)
            .collect();
        assert_eq!(at25, vec![Label { n: 0, m: 5 }, Label { n: 3, m: 4 }]);
        let robin = desym_square_spectrum(1.0, 40).unwrap();
        for (r, n) in robin.levels.iter().zip(&s.levels) {
            assert!(r.value > n.value);
        }
    }

    #[test]
    fn gaps_split_along_sides() {
        let aspect = 0.7;
        let robin = rect_spectrum(aspect, Bc::Robin(1.0), 500.0).unwrap();
        let neumann = rect_spectrum(aspect, Bc::Neumann, 2000.0).unwrap();
        for r in &robin.levels {
            let n = neumann.levels.iter().find(|l| l.label == r.label).unwrap();
            let split = gap1d(r.label.n as u64, 1.0).unwrap()
                + gap1d(r.label.m as u64, aspect).unwrap() / (aspect * aspect);
            assert!((r.value - n.value - split).abs() < 1e-9 * r.value.max(1.0));
        }
    }

    #[test]
    fn zero_sigma_gives_zero_gaps() {
        let g = rect_gaps(0.8, 0.0, 200).unwrap();
        assert!(g.gaps.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(rect_spectrum(1.5, Bc::Neumann, 10.0).is_err());
        assert!(rect_spectrum(1.0, Bc::Neumann, -1.0).is_err());
        assert!(rect_gaps(1.0, 1.0, 0).is_err());
        assert!(matches!(
            rect_spectrum(1.0, Bc::Neumann, 1e12),
            Err(Error::Resource { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn doubling_the_cutoff_changes_no_gap(
            aspect in 0.3f64..=1.0, sigma in 0.05f64..6.0, count in 1usize..600,
        ) {
            let (g, cutoff) = rect_gaps_certified(aspect, sigma, count).unwrap();
            let again = rect_gaps_with_cutoff(aspect, sigma, count, 2.0 * cutoff).unwrap();
            prop_assert_eq!(g, again);
        }

        #[test]
        fn gaps_positive_and_below_dirichlet(aspect in 0.3f64..=1.0, sigma in 0.05f64..6.0) {
            let count = 300;
            let g = rect_gaps(aspect, sigma, count).unwrap();
            let dir = rect_spectrum(aspect, Bc::Dirichlet, 4.0 * PI * count as f64 / aspect * 2.0).unwrap();
            let neu = rect_spectrum(aspect, Bc::Neumann, 4.0 * PI * count as f64 / aspect * 2.0).unwrap();
            for n in 0..count {
                prop_assert!(g.gaps[n] > 0.0);
                prop_assert!(neu.levels[n].value + g.gaps[n] < dir.levels[n].value);
            }
        }
    }
}
