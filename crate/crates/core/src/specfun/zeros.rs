//! Zeros of J_ν, J'_ν and the Robin combination ψ(x) = x J'_ν(x) + σ J_ν(x).
//!
//! Brackets are certified rather than guessed. Consecutive zeros of J_ν are
//! more than 3.11 apart for every ν ≥ 0, so scanning J_ν with unit steps
//! from x = ν sees every zero as exactly one sign change. Between consecutive
//! zeros j_{k−1} < j_k (with j_0 = ν, or 0 when ν = 0) ψ changes sign exactly
//! once, which locates both j'_{ν,k} (σ = 0) and κ_{ν,k}. Each bracket is
//! then refined by a Newton step safeguarded by bisection.
//!
//! By convention x = 0 is the first zero of J'_0, and κ_{0,1} = 0 at σ = 0.

use super::bessel::j_pair;
use super::geom::homogeneous_f;
use super::BesselOrder;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroKind {
    J,
    JPrime,
    RobinCombo,
}

/// An interval containing exactly one zero of the requested kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroBracket {
    pub lo: f64,
    pub hi: f64,
    pub k: u32,
    pub kind: ZeroKind,
}

const SCAN_STEP: f64 = 1.0;
const MAX_EXPANSIONS: usize = 400;
const MAX_POLISH: usize = 200;

#[derive(Clone, Copy)]
enum Target {
    J,
    Psi(f64),
}

#[derive(Clone, Copy)]
enum Stop {
    Count(usize),
    Below(f64),
}

fn start_of(nu: f64) -> f64 {
    if nu > 0.0 {
        nu
    } else {
        0.0
    }
}

fn j_and_slope(nu: f64, x: f64) -> (f64, f64) {
    let (j, j1) = j_pair(nu, x);
    let d = if x == 0.0 {
        if nu == 1.0 {
            0.5
        } else {
            0.0
        }
    } else {
        nu / x * j - j1
    };
    (j, d)
}

/// ψ = (ν+σ)J_ν − xJ_{ν+1} and ψ' = (ν(ν+σ)/x − x)J_ν − σJ_{ν+1}.
fn psi_and_slope(nu: f64, sigma: f64, x: f64) -> (f64, f64) {
    let (j, j1) = j_pair(nu, x);
    let v = (nu + sigma) * j - x * j1;
    let d = if x == 0.0 {
        -sigma * j1
    } else {
        (nu * (nu + sigma) / x - x) * j - sigma * j1
    };
    (v, d)
}

/// Newton iteration kept inside a sign-change bracket, falling back to
/// bisection whenever a step leaves the bracket or stalls.
fn polish(f: impl Fn(f64) -> (f64, f64), lo: f64, hi: f64) -> Result<f64> {
    let (flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if (flo > 0.0) == (fhi > 0.0) {
        return Err(Error::Convergence(format!(
            "no sign change on [{lo}, {hi}]"
        )));
    }
    let (mut xl, mut xh) = if flo < 0.0 { (lo, hi) } else { (hi, lo) };
    let mut x = 0.5 * (lo + hi);
    let mut dx_old = (hi - lo).abs();
    let mut dx = dx_old;
    let (mut fx, mut dfx) = f(x);
    for _ in 0..MAX_POLISH {
        let leaves = ((x - xh) * dfx - fx) * ((x - xl) * dfx - fx) > 0.0;
        let slow = (2.0 * fx).abs() > (dx_old * dfx).abs();
        if leaves || slow {
            dx_old = dx;
            dx = 0.5 * (xh - xl);
            x = xl + dx;
        } else {
            dx_old = dx;
            dx = fx / dfx;
            x -= dx;
        }
        if dx.abs() <= 1e-15 * x.abs().max(1.0) || (xh - xl).abs() <= 4.0 * f64::EPSILON * x.abs() {
            return Ok(x);
        }
        (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            xl = x;
        } else {
            xh = x;
        }
    }
    Err(Error::Convergence(format!(
        "root polish did not converge on [{lo}, {hi}]"
    )))
}

/// Walks J_ν in unit steps and yields sign-change intervals in order. The
/// scan window starts at `upper` and grows by a factor 1.25 each time it is
/// exhausted, up to a hard cap.
struct JScan {
    nu: f64,
    x: f64,
    positive: bool,
    upper: f64,
    expansions: usize,
}

impl JScan {
    fn new(nu: f64, upper: f64) -> Self {
        let x = start_of(nu);
        JScan {
            nu,
            x,
            positive: j_pair(nu, x).0 >= 0.0,
            upper: upper.max(x + 4.0),
            expansions: 0,
        }
    }

    fn next_bracket(&mut self) -> Result<(f64, f64)> {
        loop {
            while self.x < self.upper {
                let next = self.x + SCAN_STEP;
                let positive = j_pair(self.nu, next).0 >= 0.0;
                let prev = self.x;
                self.x = next;
                if positive != self.positive {
                    self.positive = positive;
                    return Ok((prev, next));
                }
            }
            self.expansions += 1;
            if self.expansions > MAX_EXPANSIONS {
                return Err(Error::Convergence(format!(
                    "bracket search for ν = {} passed x = {}",
                    self.nu, self.x
                )));
            }
            self.upper *= 1.25;
        }
    }
}

fn zero_sequence(nu: f64, target: Target, stop: Stop, guess: f64) -> Result<Vec<f64>> {
    let mut scan = JScan::new(nu, guess);
    let mut out = Vec::new();
    let mut prev_j = start_of(nu);
    let conventional_zero = matches!(target, Target::Psi(s) if s == 0.0) && nu == 0.0;
    loop {
        if let Stop::Count(n) = stop {
            if out.len() >= n {
                break;
            }
        }
        let (a, b) = scan.next_bracket()?;
        let jk = polish(|x| j_and_slope(nu, x), a, b)?;
        let z = match target {
            Target::J => jk,
            Target::Psi(_) if conventional_zero && out.is_empty() => 0.0,
            Target::Psi(sigma) => polish(|x| psi_and_slope(nu, sigma, x), prev_j, jk)?,
        };
        if let Stop::Below(limit) = stop {
            if z > limit {
                break;
            }
            out.push(z);
            if jk > limit {
                break;
            }
        } else {
            out.push(z);
        }
        prev_j = jk;
    }
    Ok(out)
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(domain(format!("Robin parameter must be finite and ≥ 0, got {sigma}")));
    }
    Ok(())
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(domain("zero index k starts at 1"));
    }
    Ok(())
}

fn target_for(kind: ZeroKind, sigma: f64) -> Target {
    match kind {
        ZeroKind::J => Target::J,
        ZeroKind::JPrime => Target::Psi(0.0),
        ZeroKind::RobinCombo => Target::Psi(sigma),
    }
}

fn initial_guess(nu: f64, k: u32, kind: ZeroKind) -> f64 {
    let shift = if kind == ZeroKind::J { 0.25 } else { 0.75 };
    homogeneous_f(nu, k as f64 - shift).unwrap_or(nu + 4.0)
}

/// j_{ν,k} (kind `J`) or j'_{ν,k} (kind `JPrime`), with j'_{0,1} = 0.
pub fn bessel_zero(order: BesselOrder, k: u32, kind: ZeroKind) -> Result<f64> {
    check_k(k)?;
    if kind == ZeroKind::RobinCombo {
        return Err(domain("use robin_bessel_zero for the Robin combination"));
    }
    let nu = order.value();
    let zs = zero_sequence(nu, target_for(kind, 0.0), Stop::Count(k as usize), initial_guess(nu, k, kind))?;
    Ok(zs[k as usize - 1])
}

/// κ_{ν,k}: the k-th zero of x J'_ν(x) + σ J_ν(x), with κ_{0,1} = 0 at σ = 0.
pub fn robin_bessel_zero(order: BesselOrder, k: u32, sigma: f64) -> Result<f64> {
    check_k(k)?;
    check_sigma(sigma)?;
    let nu = order.value();
    let guess = initial_guess(nu, k, ZeroKind::RobinCombo);
    let zs = zero_sequence(nu, Target::Psi(sigma), Stop::Count(k as usize), guess)?;
    Ok(zs[k as usize - 1])
}

/// The first `count` zeros of the given kind in one scan (`sigma` is only
/// used by `RobinCombo`).
pub fn zeros_of_kind(order: BesselOrder, kind: ZeroKind, sigma: f64, count: usize) -> Result<Vec<f64>> {
    check_sigma(sigma)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let nu = order.value();
    let guess = initial_guess(nu, count as u32, kind);
    zero_sequence(nu, target_for(kind, sigma), Stop::Count(count), guess)
}

/// All κ_{ν,k} ≤ `limit` in increasing order.
pub fn robin_zeros_below(order: BesselOrder, sigma: f64, limit: f64) -> Result<Vec<f64>> {
    check_sigma(sigma)?;
    if !limit.is_finite() {
        return Err(domain(format!("zero limit must be finite, got {limit}")));
    }
    let nu = order.value();
    if limit < nu {
        return Ok(Vec::new());
    }
    zero_sequence(nu, Target::Psi(sigma), Stop::Below(limit), limit + 4.0)
}

/// All j_{ν,k} ≤ `limit` in increasing order.
pub fn bessel_j_zeros_below(order: BesselOrder, limit: f64) -> Result<Vec<f64>> {
    if !limit.is_finite() {
        return Err(domain(format!("zero limit must be finite, got {limit}")));
    }
    let nu = order.value();
    if limit < nu {
        return Ok(Vec::new());
    }
    zero_sequence(nu, Target::J, Stop::Below(limit), limit + 4.0)
}

/// A certified bracket for the k-th zero. For J it is the unit scan interval;
/// for the other kinds it is (j_{ν,k−1}, j_{ν,k}). The conventional zero at
/// the origin is returned as the degenerate bracket [0, 0].
pub fn zero_bracket(order: BesselOrder, k: u32, kind: ZeroKind, sigma: f64) -> Result<ZeroBracket> {
    check_k(k)?;
    check_sigma(sigma)?;
    let nu = order.value();
    let sigma = if kind == ZeroKind::JPrime { 0.0 } else { sigma };
    if kind != ZeroKind::J && nu == 0.0 && sigma == 0.0 && k == 1 {
        return Ok(ZeroBracket { lo: 0.0, hi: 0.0, k, kind });
    }
    let mut scan = JScan::new(nu, initial_guess(nu, k, ZeroKind::J));
    let mut prev = (start_of(nu), start_of(nu));
    let mut current = scan.next_bracket()?;
    for _ in 1..k {
        prev = current;
        current = scan.next_bracket()?;
    }
    let (lo, hi) = match kind {
        ZeroKind::J => current,
        _ => {
            let lo = if k == 1 {
                start_of(nu)
            } else {
                polish(|x| j_and_slope(nu, x), prev.0, prev.1)?
            };
            (lo, polish(|x| j_and_slope(nu, x), current.0, current.1)?)
        }
    };
    Ok(ZeroBracket { lo, hi, k, kind })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::{bisect, series_j, series_j_prime};
    use crate::specfun::{bessel_j, bessel_j_prime, phi};
    use proptest::prelude::*;

    const J01: f64 = 2.404_825_557_695_769_3;
    const JP11: f64 = 1.841_183_781_340_657_1;
    const KAPPA01_SIGMA1: f64 = 1.255_783_711_794_595_8;

    #[test]
    fn conventional_zeros() {
        let o = BesselOrder::integer(0);
        assert_eq!(bessel_zero(o, 1, ZeroKind::JPrime).unwrap(), 0.0);
        assert_eq!(robin_bessel_zero(o, 1, 0.0).unwrap(), 0.0);
        assert!(robin_bessel_zero(o, 1, 1e-9).unwrap() > 0.0);
    }

    #[test]
    fn oracle_values() {
        let o0 = BesselOrder::integer(0);
        let o1 = BesselOrder::integer(1);
        assert!((bessel_zero(o0, 1, ZeroKind::J).unwrap() - J01).abs() < 1e-12);
        assert!((bessel_zero(o1, 1, ZeroKind::JPrime).unwrap() - JP11).abs() < 1e-12);
        assert!((robin_bessel_zero(o0, 1, 1.0).unwrap() - KAPPA01_SIGMA1).abs() < 1e-12);
        // j'_{0,2} = j_{1,1}
        let j11 = bisect(3.0, 4.5, 1e-14, |x| series_j(4, x));
        assert!((bessel_zero(o0, 2, ZeroKind::JPrime).unwrap() - j11).abs() < 1e-11);
    }

    #[test]
    fn fractional_order_zero_against_oracle() {
        // ν = 5/4: compare first three zeros of J and J' with the oracle.
        let o = BesselOrder::new(1.25).unwrap();
        let js = zeros_of_kind(o, ZeroKind::J, 0.0, 3).unwrap();
        let jps = zeros_of_kind(o, ZeroKind::JPrime, 0.0, 3).unwrap();
        for k in 0..3 {
            assert!(series_j(5, js[k]).abs() < 1e-12);
            assert!(series_j_prime(5, jps[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn sign_change_across_j5_third_zero() {
        let o = BesselOrder::integer(5);
        let z = bessel_zero(o, 3, ZeroKind::J).unwrap();
        assert!(z > 5.0);
        let a = bessel_j(o, z - 1e-6).unwrap();
        let b = bessel_j(o, z + 1e-6).unwrap();
        assert!(a * b < 0.0);
        let br = zero_bracket(o, 3, ZeroKind::J, 0.0).unwrap();
        assert!(br.lo < z && z < br.hi);
    }

    #[test]
    fn brackets_disjoint_and_increasing() {
        for kind in [ZeroKind::J, ZeroKind::JPrime, ZeroKind::RobinCombo] {
            let o = BesselOrder::integer(7);
            let mut last_hi = 0.0;
            for k in 1..=10 {
                let b = zero_bracket(o, k, kind, 1.0).unwrap();
                assert!(b.lo < b.hi && b.lo >= last_hi);
                let z = match kind {
                    ZeroKind::RobinCombo => robin_bessel_zero(o, k, 1.0).unwrap(),
                    _ => bessel_zero(o, k, kind).unwrap(),
                };
                assert!(b.lo < z && z < b.hi);
                last_hi = b.hi;
            }
        }
    }

    #[test]
    fn interlacing_and_residuals_on_grid() {
        for nu in (0..=50).step_by(7) {
            let o = BesselOrder::integer(nu);
            let js = zeros_of_kind(o, ZeroKind::J, 0.0, 60).unwrap();
            let jps = zeros_of_kind(o, ZeroKind::JPrime, 0.0, 60).unwrap();
            for sigma in [0.0, 0.5, 1.0, 4.0] {
                let ks = zeros_of_kind(o, ZeroKind::RobinCombo, sigma, 60).unwrap();
                for k in 0..60 {
                    assert!(nu as f64 <= jps[k] && jps[k] <= ks[k] && ks[k] < js[k]);
                    if sigma > 0.0 {
                        assert!(jps[k] < ks[k]);
                        let r = phi(o, ks[k], sigma).unwrap() * ks[k];
                        let scale = bessel_j_prime(o, ks[k]).unwrap().abs().max(1.0);
                        assert!(r.abs() <= 1e-8 * scale);
                    }
                }
            }
            for k in 0..60 {
                let scale = bessel_j_prime(o, js[k]).unwrap().abs().max(1.0);
                assert!(bessel_j(o, js[k]).unwrap().abs() <= 1e-8 * scale);
            }
        }
    }

    #[test]
    fn below_limit_agrees_with_indexed() {
        let o = BesselOrder::integer(3);
        let zs = robin_zeros_below(o, 1.0, 40.0).unwrap();
        assert!(zs.iter().all(|&z| z <= 40.0));
        for (i, z) in zs.iter().enumerate() {
            assert_eq!(*z, robin_bessel_zero(o, i as u32 + 1, 1.0).unwrap());
        }
        let next = robin_bessel_zero(o, zs.len() as u32 + 1, 1.0).unwrap();
        assert!(next > 40.0);
        assert!(robin_zeros_below(BesselOrder::integer(50), 1.0, 40.0).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_index_and_sigma() {
        let o = BesselOrder::integer(0);
        assert!(bessel_zero(o, 0, ZeroKind::J).is_err());
        assert!(robin_bessel_zero(o, 1, -1.0).is_err());
        assert!(bessel_zero(o, 1, ZeroKind::RobinCombo).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn robin_zero_strictly_interlaced(nu in 0.0f64..40.0, k in 1u32..30, sigma in 0.01f64..10.0) {
            let o = BesselOrder::new(nu).unwrap();
            let jp = bessel_zero(o, k, ZeroKind::JPrime).unwrap();
            let kappa = robin_bessel_zero(o, k, sigma).unwrap();
            let j = bessel_zero(o, k, ZeroKind::J).unwrap();
            prop_assert!(nu <= jp && jp < kappa && kappa < j);
        }

        #[test]
        fn robin_zero_increases_with_sigma(k in 1u32..20, s1 in 0.0f64..5.0, ds in 0.01f64..5.0) {
            let o = BesselOrder::integer(2);
            prop_assert!(robin_bessel_zero(o, k, s1).unwrap() < robin_bessel_zero(o, k, s1 + ds).unwrap());
        }
    }
}
