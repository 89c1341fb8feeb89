//! High-precision reference evaluations, kept independent of the f64
//! evaluators in `specfun` so they can serve as oracles for them.
//!
//! `series_j` sums the Maclaurin series of J_ν in 512-bit fixed point, so the
//! catastrophic cancellation that ruins an f64 series for moderate x does not
//! touch it. Orders are restricted to multiples of 1/4 so that the prefactor
//! (x/2)^ν / Γ(ν+1) can be built from three tabulated gamma values.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

const FRAC_BITS: u32 = 512;

const GAMMA_QUARTER: f64 = 3.625_609_908_221_908_3;
const GAMMA_HALF: f64 = 1.772_453_850_905_516;
const GAMMA_THREE_QUARTERS: f64 = 1.225_416_702_465_177_6;

fn decompose(x: f64) -> (BigInt, i64) {
    assert!(x.is_finite() && x >= 0.0);
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    (BigInt::from(mant), e)
}

fn shift(v: BigInt, by: i64) -> BigInt {
    if by >= 0 {
        v << (by as usize)
    } else {
        v >> ((-by) as usize)
    }
}

/// Σ_m (−x²/4)^m / (m! (ν+1)_m) for ν = quarters/4.
fn reduced_series(quarters: u32, x: f64) -> f64 {
    let (mant, e) = decompose(x);
    let q_num = &mant * &mant;
    // q = x²/4 = q_num · 2^(2e−2)
    let q_shift = 2 * e - 2;
    let q = x * x / 4.0;
    let one = BigInt::from(1) << FRAC_BITS as usize;
    let mut term = one.clone();
    let mut sum = one;
    let a = quarters as i64;
    let mut m: i64 = 1;
    loop {
        // term *= -q / (m (ν + m)) = -q·4 / (m (a + 4m))
        let t = shift(term * &q_num * 4, q_shift);
        term = -(t / BigInt::from(m * (a + 4 * m)));
        sum += &term;
        if (m as f64) > q && term.abs().bits() < 8 {
            break;
        }
        m += 1;
        assert!(m < 100_000);
    }
    let top = sum.bits() as i64;
    let keep = 80i64;
    let scaled = shift(sum, keep - top);
    scaled.to_f64().unwrap() * 2f64.powi((top - keep - FRAC_BITS as i64) as i32)
}

fn gamma_quarter_order(quarters: u32) -> f64 {
    // Γ(ν+1) with ν = quarters/4
    let whole = quarters / 4;
    let rem = quarters % 4;
    let (mut g, base) = match rem {
        0 => (1.0, 0.0),
        1 => (GAMMA_QUARTER / 4.0 * 1.0, 0.25),
        2 => (GAMMA_HALF / 2.0, 0.5),
        _ => (GAMMA_THREE_QUARTERS * 0.75, 0.75),
    };
    // g = Γ(base + 1); walk up to Γ(ν + 1)
    let mut arg = base + 1.0;
    for _ in 0..whole {
        g *= arg;
        arg += 1.0;
    }
    g
}

/// J_ν(x) for ν = quarters / 4.
pub fn series_j(quarters: u32, x: f64) -> f64 {
    let nu = quarters as f64 / 4.0;
    if x == 0.0 {
        return if quarters == 0 { 1.0 } else { 0.0 };
    }
    let prefactor = if quarters % 4 == 0 {
        let mut p = 1.0;
        for _ in 0..quarters / 4 {
            p *= x / 2.0;
        }
        p / gamma_quarter_order(quarters)
    } else {
        (nu * (x / 2.0).ln()).exp() / gamma_quarter_order(quarters)
    };
    prefactor * reduced_series(quarters, x)
}

/// J'_ν(x) = (ν/x) J_ν(x) − J_{ν+1}(x), both sides from the series oracle.
pub fn series_j_prime(quarters: u32, x: f64) -> f64 {
    if x == 0.0 {
        return match quarters {
            4 => 0.5,
            _ => 0.0,
        };
    }
    let nu = quarters as f64 / 4.0;
    nu / x * series_j(quarters, x) - series_j(quarters + 4, x)
}

/// Plain bisection on a sign change; `tol` is the final bracket width.
pub fn bisect(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut flo = f(lo);
    let fhi = f(hi);
    assert!(flo * fhi < 0.0, "no sign change on [{lo}, {hi}]");
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maclaurin series of Ai'(z) in f64; adequate for |z| ≲ 3.
pub fn airy_prime_series(z: f64) -> f64 {
    const AI0: f64 = 0.355_028_053_887_817_2;
    const AIP0: f64 = -0.258_819_403_792_806_8;
    // Ai(z) = AI0 f(z) + AIP0 g(z); f'(z) and g'(z) termwise.
    let z3 = z * z * z;
    let mut fp = 0.0;
    let mut gp = 1.0;
    // f = Σ c_k z^{3k}, c_0 = 1, c_k = c_{k-1} / ((3k-1)(3k))
    // g = Σ d_k z^{3k+1}, d_0 = 1, d_k = d_{k-1} / ((3k)(3k+1))
    let mut c = 1.0;
    let mut d = 1.0;
    let mut zp = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        c /= (3.0 * kf - 1.0) * (3.0 * kf);
        d /= (3.0 * kf) * (3.0 * kf + 1.0);
        // derivative of z^{3k} is 3k z^{3k-1}; of z^{3k+1} is (3k+1) z^{3k}
        let zk_minus1 = zp * z * z; // z^{3k-1}
        zp *= z3; // z^{3k}
        fp += c * 3.0 * kf * zk_minus1;
        gp += d * (3.0 * kf + 1.0) * zp;
    }
    AI0 * fp + AIP0 * gp
}
