//! Laplace eigenvalues of the unit interval, rectangles and the unit disk
//! under Neumann, Robin and Dirichlet boundary conditions, together with the
//! Robin–Neumann gap sequences they generate.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: Bessel functions of real order, their zeros and the zeros
//!   of the Robin combination `x J'_ν(x) + σ J_ν(x)`, Airy-derivative zeros
//!   and the geometric functions `ζ`, `z`, `g`, `F` of the uniform expansion.
//! * [`robin1d`]: Robin frequencies of the unit interval.
//! * [`rectangle`] and [`disk`]: ordered spectra and rank-paired gap series.
//! * [`lattice`]: shifted lattice counts in dilations of the cusped domain
//!   `D` and their comparison with the disk counting function.
//! * [`stats`]: cumulative means, level spacing and cluster statistics.
//! * [`verify`]: the end-to-end numerical checks, shared by the CLI and the
//!   acceptance tests.

pub mod disk;
mod error;
pub mod lattice;
mod par;
pub mod rectangle;
pub mod reference;
pub mod robin1d;
pub mod specfun;
pub mod spectrum;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
pub use par::with_threads;
pub use spectrum::{Bc, Domain, GapSeries, Label, Level, Spectrum};
