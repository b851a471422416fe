//! The Bessel index and spatial dimension that parametrize the whole calculus.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Parameter pair `(alpha, d)`: the Bessel index `alpha > -1/2` attached to the
/// last coordinate and the number `d >= 1` of ordinary coordinates. The
/// underlying domain is the half-space `R^d x (0, inf)` with the measure
/// `x_{d+1}^{2 alpha + 1} dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaParam {
    alpha: f64,
    d: usize,
}

impl AlphaParam {
    pub fn new(alpha: f64, d: usize) -> Result<Self> {
        if !alpha.is_finite() || alpha <= -0.5 {
            return Err(Error::domain(format!(
                "alpha must be finite and > -1/2, got {alpha}"
            )));
        }
        if d < 1 {
            return Err(Error::domain("dimension d must be >= 1"));
        }
        Ok(AlphaParam { alpha, d })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Total number of coordinates, `d + 1`.
    pub fn axes(&self) -> usize {
        self.d + 1
    }

    /// Exponent of the weight on the last axis, `2 alpha + 1`.
    pub fn weight_exponent(&self) -> f64 {
        2.0 * self.alpha + 1.0
    }

    /// Homogeneous dimension `d + 2 alpha + 2` of the weighted half-space.
    pub fn homogeneous_dim(&self) -> f64 {
        self.d as f64 + 2.0 * self.alpha + 2.0
    }
}
