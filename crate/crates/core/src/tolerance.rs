use serde::{Deserialize, Serialize};

/// Thresholds for the exact case splits (`δ = 0`, `k = 0`, `Δ = 0`, `ℛ = 1`).
///
/// A quantity `q` counts as zero when `|q| ≤ degenerate · max(1, scale)`, where
/// `scale` has the same degree in the input entries as `q`. Values within
/// `FRAGILE_FACTOR` times that band are reported as fragile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub degenerate: f64,
    pub ratio: f64,
}

pub const FRAGILE_FACTOR: f64 = 10.0;

impl Default for Tolerances {
    fn default() -> Self {
        Self { degenerate: 1e-9, ratio: 1e-9 }
    }
}

impl Tolerances {
    pub fn band(&self, scale: f64) -> f64 {
        self.degenerate * scale.abs().max(1.0)
    }

    pub fn is_zero(&self, q: f64, scale: f64) -> bool {
        q.abs() <= self.band(scale)
    }

    /// Near the zero band but possibly outside it.
    pub fn is_fragile(&self, q: f64, scale: f64) -> bool {
        q.abs() <= FRAGILE_FACTOR * self.band(scale)
    }

    /// Sign under the tolerance: `0` inside the zero band.
    pub fn sign(&self, q: f64, scale: f64) -> i8 {
        if self.is_zero(q, scale) {
            0
        } else if q > 0.0 {
            1
        } else {
            -1
        }
    }

    /// `|r − 1| ≤ ratio · max(1, r)`.
    pub fn ratio_is_one(&self, r: f64) -> bool {
        (r - 1.0).abs() <= self.ratio * r.max(1.0)
    }
}
