//! Bessel functions of the first kind for real order ν ≥ 0 and real x ≥ 0.
//!
//! Two independent evaluators live here:
//!
//! * [`j_pair`] (behind [`bessel_j`]): the Maclaurin series where it does not
//!   cancel (`x² ≤ 4(ν+1)`), Miller's backward recurrence otherwise. The
//!   recurrence is normalised with the Neumann sum
//!   `(x/2)^α = Σ_k (α+2k) Γ(α+k)/k! · J_{α+2k}(x)`, which gives relative
//!   accuracy even where `J_ν(x)` is exponentially small.
//! * [`bessel_j_integral`]: the integral representation
//!   `J_ν(x) = (1/π)∫₀^π cos(x sin t − νt) dt − (sin νπ/π)∫₀^∞ e^{−x sinh t − νt} dt`.
//!   For integer order the first integral is a periodic trapezoid sum on a
//!   contour shifted through the saddle point; otherwise both integrals use
//!   composite Gauss–Legendre panels, refined until two passes agree.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::BesselOrder;
use crate::error::{domain, Result};

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(domain(format!("Bessel argument must be finite and ≥ 0, got {x}")));
    }
    Ok(())
}

/// J_ν(x).
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(j_pair(order.value(), x).0)
}

/// J'_ν(x), from `J'_ν = (ν/x) J_ν − J_{ν+1}`.
///
/// At `x = 0` the derivative is finite except for `0 < ν < 1`, where it is
/// unbounded and a domain error is returned.
pub fn bessel_j_prime(order: BesselOrder, x: f64) -> Result<f64> {
    check_x(x)?;
    let nu = order.value();
    if x == 0.0 {
        return if nu == 0.0 || nu > 1.0 {
            Ok(0.0)
        } else if nu == 1.0 {
            Ok(0.5)
        } else {
            Err(domain(format!("J'_ν(0) is unbounded for ν = {nu}")))
        };
    }
    let (j, j1) = j_pair(nu, x);
    Ok(nu / x * j - j1)
}

/// φ_ν(x) = J'_ν(x) + (σ/x) J_ν(x). Its positive zeros are those of
/// `x J'_ν(x) + σ J_ν(x)`.
pub fn phi(order: BesselOrder, x: f64, sigma: f64) -> Result<f64> {
    check_x(x)?;
    if x == 0.0 {
        return Err(domain("φ_ν is singular at x = 0"));
    }
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(domain(format!("Robin parameter must be finite and ≥ 0, got {sigma}")));
    }
    let nu = order.value();
    let (j, j1) = j_pair(nu, x);
    Ok((nu + sigma) / x * j - j1)
}

/// `(J_ν(x), J_{ν+1}(x))` without argument checks.
pub(crate) fn j_pair(nu: f64, x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (if nu == 0.0 { 1.0 } else { 0.0 }, 0.0);
    }
    if x * x <= 4.0 * (nu + 1.0) {
        (series(nu, x), series(nu + 1.0, x))
    } else {
        miller(nu, x)
    }
}

/// `(x/2)^ν / Γ(ν+1)`.
fn series_prefactor(nu: f64, x: f64) -> f64 {
    let whole = nu.floor();
    let alpha = nu - whole;
    let half = 0.5 * x;
    let mut p = if alpha == 0.0 {
        1.0
    } else {
        (alpha * half.ln() - ln_gamma(alpha + 1.0)).exp()
    };
    if whole > 400.0 {
        return (nu * half.ln() - ln_gamma(nu + 1.0)).exp();
    }
    let mut j = 1.0;
    while j <= whole {
        p *= half / (alpha + j);
        j += 1.0;
    }
    p
}

fn series(nu: f64, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 1.0;
    loop {
        term *= -q / (m * (nu + m));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && m * (m + nu) > q {
            break;
        }
        m += 1.0;
    }
    series_prefactor(nu, x) * sum
}

fn miller(nu: f64, x: f64) -> (f64, f64) {
    let whole = nu.floor();
    let alpha = nu - whole;
    let target = whole as usize;
    let reach = whole.max(x.ceil());
    let start = (reach + 10.0 * reach.cbrt() + 24.0) as usize;

    // Neumann-sum weights ĉ_k = (α+2k) Γ(α+k) / (k! Γ(α+1)).
    let weight = |k: usize, prod: f64| -> f64 {
        if k == 0 {
            1.0
        } else {
            (alpha + 2.0 * k as f64) * prod
        }
    };
    // prods[k] = Π_{j=1}^{k-1} (α+j) / k!, only needed for α ≠ 0.
    let prods: Vec<f64> = if alpha == 0.0 {
        Vec::new()
    } else {
        let mut v = Vec::with_capacity(start / 2 + 2);
        v.push(1.0);
        let mut p = 1.0;
        for k in 1..=start / 2 + 1 {
            if k > 1 {
                p *= (alpha + (k - 1) as f64) / k as f64;
            }
            v.push(p);
        }
        v
    };
    let c = |k: usize| -> f64 {
        if alpha == 0.0 {
            if k == 0 {
                1.0
            } else {
                2.0
            }
        } else {
            weight(k, prods[k])
        }
    };

    let mut upper = 0.0; // F_{k+1}
    let mut cur = 1e-30; // F_k
    let mut sum = 0.0;
    let mut at_target = 0.0;
    let mut at_target1 = 0.0;
    let mut k = start;
    loop {
        if k == target {
            at_target = cur;
        } else if k == target + 1 {
            at_target1 = cur;
        }
        if k % 2 == 0 {
            sum += c(k / 2) * cur;
        }
        if k == 0 {
            break;
        }
        let lower = 2.0 * (alpha + k as f64) / x * cur - upper;
        upper = cur;
        cur = lower;
        k -= 1;
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            upper *= RESCALE_BY;
            sum *= RESCALE_BY;
            at_target *= RESCALE_BY;
            at_target1 *= RESCALE_BY;
        }
    }
    let norm = if alpha == 0.0 {
        1.0
    } else {
        (alpha * (0.5 * x).ln() - ln_gamma(alpha + 1.0)).exp()
    };
    let scale = norm / sum;
    (at_target * scale, at_target1 * scale)
}

/// ln Γ(x) for x > 0: upward shift to x ≥ 15, then Stirling's series.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    let mut x = x;
    let mut shift = 1.0;
    while x < 15.0 {
        shift *= x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let tail = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + tail - shift.ln()
}

/// J_ν(x) from the integral representation. Used as an independent check on
/// [`bessel_j`]; accuracy is absolute (≈1e−15) for non-integer order and
/// relative for integer order.
pub fn bessel_j_integral(order: BesselOrder, x: f64) -> Result<f64> {
    check_x(x)?;
    let nu = order.value();
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    if order.is_integer() {
        Ok(integer_order_trapezoid(nu, x))
    } else {
        Ok(oscillatory_part(nu, x) - (nu * PI).sin() / PI * laplace_part(nu, x))
    }
}

/// (1/2π)∮ e^{i(x sin t − n t)} dt on the line Im t = −T with cosh T = n/x,
/// which passes through the saddle when n > x.
fn integer_order_trapezoid(n: f64, x: f64) -> f64 {
    let shift = if n > x { (n / x).acosh() } else { 0.0 };
    let (sh, ch) = (shift.sinh(), shift.cosh());
    let points = (1.3 * (x * ch + n)).ceil() as usize + 64;
    let h = 2.0 * PI / points as f64;
    let mut acc = 0.0;
    for j in 0..points {
        let s = j as f64 * h;
        let (sin_s, cos_s) = s.sin_cos();
        let amp = (x * cos_s * sh - n * shift).exp();
        acc += amp * (x * sin_s * ch - n * s).cos();
    }
    acc / points as f64
}

fn oscillatory_part(nu: f64, x: f64) -> f64 {
    let integrand = |t: f64| (x * t.sin() - nu * t).cos();
    let panels = ((x + nu) / 2.0).ceil() as usize + 2;
    adaptive_gauss_legendre(integrand, 0.0, PI, panels) / PI
}

fn laplace_part(nu: f64, x: f64) -> f64 {
    // Truncate where the exponent reaches 40.
    let rate = |t: f64| x * t.sinh() + nu * t;
    let mut hi = 1.0;
    while rate(hi) < 40.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if rate(mid) < 40.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let panels = (hi * (x + nu) / 4.0).ceil() as usize + 4;
    adaptive_gauss_legendre(|t| (-rate(t)).exp(), 0.0, hi, panels)
}

/// Composite 16-point Gauss–Legendre, doubling the panel count until two
/// successive estimates agree to 1e−15 (absolute, relative to the result's
/// scale) or the panel count reaches a hard cap.
fn adaptive_gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let mut n = panels.max(1);
    let mut prev = composite_gauss_legendre(&f, a, b, n);
    for _ in 0..8 {
        n *= 2;
        let next = composite_gauss_legendre(&f, a, b, n);
        if (next - prev).abs() <= 1e-15 * next.abs().max(1.0) {
            return next;
        }
        prev = next;
    }
    prev
}

fn composite_gauss_legendre(f: &impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let (nodes, weights) = gauss_legendre_16();
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let left = a + p as f64 * width;
        let mid = left + 0.5 * width;
        let mut part = 0.0;
        for (t, w) in nodes.iter().zip(weights.iter()) {
            part += w * f(mid + 0.5 * width * t);
        }
        total += 0.5 * width * part;
    }
    total
}

fn gauss_legendre_16() -> &'static ([f64; 16], [f64; 16]) {
    static RULE: OnceLock<([f64; 16], [f64; 16])> = OnceLock::new();
    RULE.get_or_init(|| {
        const N: usize = 16;
        let mut nodes = [0.0; N];
        let mut weights = [0.0; N];
        for i in 0..N {
            let mut t = (PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Legendre recurrence for P_N(t) and its derivative.
                let (mut p0, mut p1) = (1.0, t);
                for k in 2..=N {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N as f64 * (t * p1 - p0) / (t * t - 1.0);
                let step = p1 / dp;
                t -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = t;
            weights[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
        (nodes, weights)
    })
}
