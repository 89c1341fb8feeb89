//! Zeros a'_k of the Airy derivative Ai'.

use std::f64::consts::PI;

const AI0: f64 = 0.355_028_053_887_817_24;
const AIP0: f64 = -0.258_819_403_792_806_8;

/// The leading asymptotic term `−[3π/2 (k − 3/4)]^{2/3}`.
pub fn airy_prime_zero_leading(k: u32) -> f64 {
    -(1.5 * PI * (k as f64 - 0.75)).powf(2.0 / 3.0)
}

/// a'_k, the k-th (negative) zero of Ai'.
///
/// From the asymptotic series
/// `−t^{2/3}(1 − 7/48 t⁻² + 35/288 t⁻⁴ − 181223/207360 t⁻⁶ + 18683371/1244160 t⁻⁸)`
/// with `t = 3π/8 (4k − 3)`, polished by Newton on the Maclaurin series of Ai'
/// where that series is accurate (|z| ≲ 8).
pub fn airy_prime_zero(k: u32) -> f64 {
    assert!(k >= 1, "Airy zeros are indexed from 1");
    let t = 0.375 * PI * (4.0 * k as f64 - 3.0);
    let t2 = 1.0 / (t * t);
    let series =
        1.0 - t2 * (7.0 / 48.0 - t2 * (35.0 / 288.0 - t2 * (181_223.0 / 207_360.0 - t2 * 18_683_371.0 / 1_244_160.0)));
    // The correction series is useless for k ≤ 2 (t < 6); start Newton from
    // the leading term there.
    let mut z = if k <= 2 { airy_prime_zero_leading(k) } else { -t.powf(2.0 / 3.0) * series };
    if z > -8.0 {
        for _ in 0..50 {
            let (ai, aip) = maclaurin(z);
            // Ai'' = z Ai
            let step = aip / (z * ai);
            z -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
    }
    z
}

/// (Ai, Ai') from the Taylor series about 0; the coefficients obey
/// `c_{n+3} = c_n / ((n+2)(n+3))` because Ai'' = z Ai.
fn maclaurin(z: f64) -> (f64, f64) {
    let mut c = [AI0, AIP0, 0.0];
    let mut ai = 0.0;
    let mut aip = 0.0;
    let mut pow = 1.0; // z^n
    // |z| < 8 here, so 150 terms are far past convergence.
    for n in 0..150usize {
        let cn = c[n % 3];
        ai += cn * pow;
        if n >= 1 {
            aip += n as f64 * cn * pow / z;
        }
        let nf = n as f64;
        c[n % 3] = cn / ((nf + 2.0) * (nf + 3.0));
        pow *= z;
    }
    (ai, aip)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::{airy_prime_series, bisect};

    #[test]
    fn first_zero_matches_series_oracle() {
        // Root of the fixed-point Maclaurin series of Ai', bisected.
        let want = bisect(-1.5, -0.5, 1e-14, airy_prime_series);
        assert!((airy_prime_zero(1) - want).abs() < 1e-6);
        assert!((airy_prime_zero(1) + 1.018_792_971_647).abs() < 1e-9);
        assert!((airy_prime_zero(2) + 3.248_197_582_180).abs() < 1e-9);
    }

    #[test]
    fn leading_term_examples() {
        assert!((airy_prime_zero_leading(1) + (3.0 * PI / 8.0).powf(2.0 / 3.0)).abs() < 1e-15);
        assert!((airy_prime_zero_leading(1) + 1.1155).abs() < 1e-4);
    }

    #[test]
    fn leading_term_error_is_order_k_to_minus_four_thirds() {
        let mut worst: f64 = 0.0;
        for k in 10..=1000u32 {
            let scaled =
                (airy_prime_zero(k) - airy_prime_zero_leading(k)).abs() * (k as f64).powf(4.0 / 3.0);
            worst = worst.max(scaled);
        }
        assert!(worst < 1.0, "{worst}");
    }

    #[test]
    fn zeros_of_derivative_series() {
        for k in 1..=4 {
            let z = airy_prime_zero(k);
            let v = airy_prime_series(z);
            assert!(v.abs() < 1e-9, "k={k}: Ai'({z}) = {v}");
        }
    }
}
