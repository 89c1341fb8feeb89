//! Types shared by every domain: levels, ordered spectra and gap series.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{domain, Result};

/// Boundary condition. Robin carries its parameter σ > 0; `Bc::robin(0)`
/// collapses to Neumann so that σ = 0 always takes the exact code path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Bc {
    Neumann,
    Robin(f64),
    Dirichlet,
}

impl Bc {
    pub fn robin(sigma: f64) -> Bc {
        if sigma == 0.0 {
            Bc::Neumann
        } else {
            Bc::Robin(sigma)
        }
    }

    /// σ, with 0 for Neumann and +∞ for Dirichlet.
    pub fn sigma(self) -> f64 {
        match self {
            Bc::Neumann => 0.0,
            Bc::Robin(s) => s,
            Bc::Dirichlet => f64::INFINITY,
        }
    }

    pub(crate) fn validate(self) -> Result<()> {
        if let Bc::Robin(s) = self {
            if !s.is_finite() || s < 0.0 {
                return Err(domain(format!("Robin parameter must be finite and ≥ 0, got {s}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Domain {
    Interval,
    /// [0, 1] × [0, L].
    Rectangle { aspect: f64 },
    Disk,
}

/// Separation-of-variables label. For rectangles `(n, m)` are the mode
/// numbers along the two sides; for the disk `n` is the signed angular order
/// and `m` the radial index k ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Label {
    pub n: i64,
    pub m: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level {
    pub value: f64,
    pub label: Label,
    pub bc: Bc,
}

/// Ascending by value, ties broken by label.
pub(crate) fn level_order(a: &Level, b: &Level) -> Ordering {
    a.value.total_cmp(&b.value).then(a.label.cmp(&b.label))
}

/// An ordered eigenvalue list, complete below `cutoff`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub domain: Domain,
    pub bc: Bc,
    pub levels: Vec<Level>,
    pub cutoff: f64,
}

impl Spectrum {
    pub fn sigma(&self) -> f64 {
        self.bc.sigma()
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.value).collect()
    }

    /// #{λ ≤ x}, counted with multiplicity. Only meaningful for x ≤ cutoff.
    pub fn counting(&self, x: f64) -> usize {
        self.levels.partition_point(|l| l.value <= x)
    }

    /// Keep the first `n` levels and lower the cutoff so the result is still
    /// complete: if level n−1 ties with a dropped level, the cutoff moves
    /// just below that shared value.
    pub(crate) fn truncate_complete(&mut self, n: usize) {
        if n >= self.levels.len() {
            return;
        }
        let boundary = self.levels[n].value;
        self.levels.truncate(n);
        self.cutoff = match self.levels.last() {
            Some(last) if last.value < boundary => last.value,
            _ => {
                let below = self.levels.iter().rev().find(|l| l.value < boundary);
                below.map_or(0.0, |l| l.value)
            }
        };
    }
}

/// Rank-paired Robin–Neumann differences d_n = λ_n^σ − λ_n^0, n = 0, 1, ….
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapSeries {
    pub sigma: f64,
    pub gaps: Vec<f64>,
}

impl GapSeries {
    /// Pair two ordered spectra rank by rank for the first `count` ranks.
    pub(crate) fn pair(sigma: f64, robin: &Spectrum, neumann: &Spectrum, count: usize) -> GapSeries {
        let gaps = robin
            .levels
            .iter()
            .zip(&neumann.levels)
            .take(count)
            .map(|(r, n)| r.value - n.value)
            .collect();
        GapSeries { sigma, gaps }
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    /// `(n, d_n)` pairs.
    pub fn entries(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.gaps.iter().copied().enumerate()
    }
}
