//! Dirichlet electron grid on a symmetric interval.

use crate::error::{CoreError, Result};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Uniform grid of `points` interior nodes on `(-extent, extent)` with
/// Dirichlet boundaries; spacing `h = 2·extent/(points+1)`, symmetric
/// about 0 by construction.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ElectronGrid<S: Scalar> {
    extent: S,
    points: usize,
}

impl<S: Scalar> ElectronGrid<S> {
    pub fn new(extent: S, points: usize) -> Result<Self> {
        if points < 8 {
            return Err(CoreError::InvalidModel(format!(
                "grid needs at least 8 points, got {points}"
            )));
        }
        if extent <= S::zero() {
            return Err(CoreError::InvalidModel("grid extent must be positive".into()));
        }
        Ok(Self { extent, points })
    }

    pub fn extent(&self) -> S {
        self.extent
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> S {
        S::of(2.0) * self.extent / S::of((self.points + 1) as f64)
    }

    pub fn coordinate(&self, i: usize) -> S {
        debug_assert!(i < self.points);
        -self.extent + S::of((i + 1) as f64) * self.spacing()
    }

    pub fn coordinates(&self) -> Vec<S> {
        (0..self.points).map(|i| self.coordinate(i)).collect()
    }

    /// Halved resolution on the same interval (discretization proxies).
    pub fn coarsened(&self) -> Result<Self> {
        Self::new(self.extent, self.points / 2)
    }
}
