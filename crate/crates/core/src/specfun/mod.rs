//! Bessel functions of real order and their zeros, Airy-derivative zeros,
//! and the geometric functions `ζ`, `z`, `g`, `F` used by the uniform
//! approximation of Robin–Bessel zeros.
//!
//! Everything here is a pure function of its arguments; there is no cache.

mod airy;
mod asymptotic;
mod bessel;
mod geom;
mod zeros;

pub use airy::{airy_prime_zero, airy_prime_zero_leading};
pub use asymptotic::{j_asymptotic, j_prime_asymptotic, phi_asymptotic};
pub use bessel::{bessel_j, bessel_j_integral, bessel_j_prime, phi};
pub use geom::{g, homogeneous_f, z_of_zeta, zeta_of_z};
pub use zeros::{
    bessel_j_zeros_below, bessel_zero, robin_bessel_zero, robin_zeros_below, zero_bracket, zeros_of_kind, ZeroBracket,
    ZeroKind,
};

pub(crate) use geom::g_unchecked;

use crate::error::{domain, Result};

/// A real Bessel order ν ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 0.0 {
            return Err(domain(format!("Bessel order must be finite and ≥ 0, got {nu}")));
        }
        Ok(BesselOrder(nu))
    }

    pub const fn integer(n: u32) -> Self {
        BesselOrder(n as f64)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0.fract() == 0.0
    }
}

impl From<u32> for BesselOrder {
    fn from(n: u32) -> Self {
        BesselOrder::integer(n)
    }
}
