//! The Airy-type variable ζ(z), its inverse, the cusp profile g and the
//! homogeneous function F with F ≡ 1 on the graph of g.
//!
//! All of them reduce to `h(w) = w − arctan w` with `w = √(z² − 1)`:
//! `(2/3)(−ζ)^{3/2} = h(w)`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Result};

/// w − arctan w, accurate for small w.
fn h(w: f64) -> f64 {
    if w == 0.0 {
        0.0
    } else if w < 0.1 {
        // w³/3 − w⁵/5 + w⁷/7 − …
        let w2 = w * w;
        let mut pow = w * w2;
        let mut sum = 0.0;
        let mut j = 1.0;
        loop {
            let term = pow / (2.0 * j + 1.0);
            sum += if (j as i64) % 2 == 1 { term } else { -term };
            if term <= 1e-18 * sum.abs() {
                break;
            }
            pow *= w2;
            j += 1.0;
        }
        sum
    } else {
        w - w.atan()
    }
}

/// Solve h(w) = t for w ≥ 0 by bracketed Newton.
fn h_inverse(t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    // h(w) ≤ w³/3 and h(w) ≥ w − π/2 give the bracket.
    let mut lo = (3.0 * t).cbrt();
    let mut hi = t + FRAC_PI_2;
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut w = if t < 1.0 { lo } else { hi - 1.0 / (t + FRAC_PI_2) };
    w = w.clamp(lo, hi);
    for _ in 0..200 {
        let r = h(w) - t;
        if r == 0.0 {
            return w;
        }
        if r > 0.0 {
            hi = w;
        } else {
            lo = w;
        }
        let w2 = w * w;
        let mut next = w - r * (1.0 + w2) / w2;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - w).abs() <= 4.0 * f64::EPSILON * w {
            return next;
        }
        w = next;
    }
    w
}

/// ζ(z) for z ≥ 1: the non-positive solution of
/// `(2/3)(−ζ)^{3/2} = √(z²−1) − arccos(1/z)`.
pub fn zeta_of_z(z: f64) -> Result<f64> {
    if !z.is_finite() || z < 1.0 {
        return Err(domain(format!("ζ(z) needs finite z ≥ 1, got {z}")));
    }
    let w = ((z - 1.0) * (z + 1.0)).sqrt();
    Ok(-(1.5 * h(w)).powf(2.0 / 3.0))
}

/// Inverse of [`zeta_of_z`]: z(ζ) ≥ 1 for ζ ≤ 0.
pub fn z_of_zeta(zeta: f64) -> Result<f64> {
    if !zeta.is_finite() || zeta > 0.0 {
        return Err(domain(format!("z(ζ) needs finite ζ ≤ 0, got {zeta}")));
    }
    let t = (2.0 / 3.0) * (-zeta).powf(1.5);
    let w = h_inverse(t);
    Ok((1.0 + w * w).sqrt())
}

/// g(x) = (1/π)(√(1−x²) − x arccos x) on [−1, 1].
pub fn g(x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(domain(format!("g(x) needs |x| ≤ 1, got {x}")));
    }
    Ok(g_unchecked(x))
}

pub(crate) fn g_unchecked(x: f64) -> f64 {
    (((1.0 - x) * (1.0 + x)).max(0.0).sqrt() - x * x.acos()) / PI
}

/// F(x, y) on the sector `y ≥ max(0, −x)`.
///
/// For x > 0, `F(x,y) = x·z(−x^{−2/3}(3πy/2)^{2/3})`, which simplifies to
/// `x√(1+w²)` with `h(w) = πy/x`. Then `F(0,y) = πy` and
/// `F(−x,y) = F(x, y−x)`.
pub fn homogeneous_f(x: f64, y: f64) -> Result<f64> {
    if !x.is_finite() || !y.is_finite() || y < 0.0 || y < -x {
        return Err(domain(format!("F(x, y) needs y ≥ max(0, −x), got ({x}, {y})")));
    }
    Ok(f_sector(x, y))
}

fn f_sector(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        PI * y
    } else if x < 0.0 {
        f_sector(-x, (y + x).max(0.0))
    } else {
        let w = h_inverse(PI * y / x);
        x * (1.0 + w * w).sqrt()
    }
}
