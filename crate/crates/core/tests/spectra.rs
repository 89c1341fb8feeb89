use robin_gaps::disk::{disk_counting, disk_gaps_certified, disk_gaps_with_cutoff};
use robin_gaps::rectangle::{rect_gaps_certified, rect_gaps_with_cutoff, rect_spectrum};
use robin_gaps::stats::{cluster_analysis, cumulative_mean};
use robin_gaps::{with_threads, Bc, Error};

#[test]
fn rectangle_gaps_stable_under_larger_cutoff() {
    for (aspect, sigma) in [(1.0, 1.0), (0.7, 0.5), (0.3, 4.0)] {
        let (g, cutoff) = rect_gaps_certified(aspect, sigma, 3000).unwrap();
        assert_eq!(g, rect_gaps_with_cutoff(aspect, sigma, 3000, 1.7 * cutoff).unwrap());
        assert!(g.gaps.iter().all(|&d| d > 0.0));
    }
}

#[test]
fn disk_gaps_stable_under_larger_cutoff() {
    let (g, mu) = disk_gaps_certified(0.5, 3000).unwrap();
    assert_eq!(g, disk_gaps_with_cutoff(0.5, 3000, 1.3 * mu).unwrap());
}

#[test]
fn thread_count_does_not_change_results() {
    let a = with_threads(1, || rect_gaps_certified(0.7, 1.0, 5000).unwrap());
    let b = with_threads(8, || rect_gaps_certified(0.7, 1.0, 5000).unwrap());
    assert_eq!(a, b);
    let c = with_threads(1, || disk_counting(1.0, 5000.0).unwrap());
    let d = with_threads(8, || disk_counting(1.0, 5000.0).unwrap());
    assert_eq!(c, d);
}

#[test]
fn square_mean_near_eight() {
    let (g, _) = rect_gaps_certified(1.0, 1.0, 2000).unwrap();
    let m = cumulative_mean(&g).unwrap();
    assert!((m[1999].1 - 8.0).abs() < 0.4, "{}", m[1999].1);
}

#[test]
fn square_clusters_do_not_widen() {
    let c = cluster_analysis(1.0, 100_000).unwrap();
    let early = c.max_diameter_in(1_000, 10_000);
    let late = c.max_diameter_in(10_000, 100_000);
    assert!(late <= early + 0.05, "{early} {late}");
}

#[test]
fn resource_cap_is_reported() {
    let err = rect_spectrum(1.0, Bc::Neumann, 1e12).unwrap_err();
    assert!(matches!(err, Error::Resource { .. }));
}

#[test]
fn neumann_square_spacing_mass_at_origin() {
    use robin_gaps::rectangle::desym_square_spectrum;
    use robin_gaps::stats::spacing_cdf;
    let at = |n| spacing_cdf(&desym_square_spectrum(0.0, n).unwrap(), &[0.1]).unwrap().cdf_samples[0].1;
    let (small, large) = (at(2_000), at(20_000));
    // Measured 0.372 at N = 2e4.
    assert!(large >= 0.35, "{large}");
    assert!(large > small, "{small} {large}");
}

#[test]
fn disk_weyl_residual_sampled() {
    for sigma in [0.0, 1.0] {
        let mut fitted: f64 = 0.0;
        for i in 0..200 {
            let x = 100.0 * 100f64.powf(i as f64 / 199.0);
            let n = disk_counting(sigma, x).unwrap() as f64;
            fitted = fitted.max((n - x / 4.0 - x.sqrt() / 2.0).abs() / x.cbrt());
        }
        assert!(fitted <= 2.0, "σ={sigma} C={fitted}");
    }
}
