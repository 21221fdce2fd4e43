//! Smooth spectral cutoff functions with closed-form derivatives, used by
//! the almost-analytic calculus and the decay certificates.

use crate::error::{CoreError, Result};
use crate::profile::smoothstep_d2;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Spectral bump `g`: identically 1 on `(-∞, λ]`, identically 0 on
/// `[λ + δ/2, ∞)`, C-infinity glue in between.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SmoothBumpSpec<S: Scalar> {
    lambda: S,
    delta: S,
}

impl<S: Scalar> SmoothBumpSpec<S> {
    pub fn new(lambda: S, delta: S) -> Result<Self> {
        if delta <= S::zero() {
            return Err(CoreError::InvalidInput("bump margin must be positive".into()));
        }
        Ok(Self { lambda, delta })
    }

    pub fn lambda(&self) -> S {
        self.lambda
    }

    pub fn delta(&self) -> S {
        self.delta
    }

    /// Right end of the support, `λ + δ/2`.
    pub fn support_end(&self) -> S {
        self.lambda + self.delta / S::of(2.0)
    }

    pub fn value(&self, x: S) -> S {
        self.with_derivatives(x).0
    }

    /// `(g, g', g'')` with analytic derivatives of the glue profile.
    pub fn with_derivatives(&self, x: S) -> (S, S, S) {
        let half = self.delta / S::of(2.0);
        let u = (x - self.lambda) / half;
        if u <= S::zero() {
            return (S::one(), S::zero(), S::zero());
        }
        if u >= S::one() {
            return (S::zero(), S::zero(), S::zero());
        }
        let (s, s1, s2) = smoothstep_d2(u);
        let inv = S::one() / half;
        (S::one() - s, -s1 * inv, -s2 * inv * inv)
    }
}

/// Cutoff in the imaginary direction: 1 on `|y| ≤ w`, 0 on `|y| ≥ 2w`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GammaCutoff<S: Scalar> {
    half_width: S,
}

impl<S: Scalar> GammaCutoff<S> {
    pub fn new(half_width: S) -> Result<Self> {
        if half_width <= S::zero() {
            return Err(CoreError::InvalidInput(
                "gamma cutoff half-width must be positive".into(),
            ));
        }
        Ok(Self { half_width })
    }

    pub fn half_width(&self) -> S {
        self.half_width
    }

    /// Outer edge of the support, `2w`.
    pub fn support_end(&self) -> S {
        S::of(2.0) * self.half_width
    }

    /// `(γ, γ')`.
    pub fn with_derivative(&self, y: S) -> (S, S) {
        let w = self.half_width;
        let a = y.abs();
        if a <= w {
            return (S::one(), S::zero());
        }
        if a >= S::of(2.0) * w {
            return (S::zero(), S::zero());
        }
        let u = (a - w) / w;
        let (s, s1, _) = smoothstep_d2(u);
        let sign = if y >= S::zero() { S::one() } else { -S::one() };
        (S::one() - s, -s1 / w * sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_plateau_and_support() {
        let g = SmoothBumpSpec::new(1.0f64, 0.5).unwrap();
        assert_eq!(g.value(-100.0), 1.0);
        assert_eq!(g.value(1.0), 1.0);
        assert_eq!(g.value(1.25), 0.0);
        assert_eq!(g.value(50.0), 0.0);
        let mid = g.value(1.1);
        assert!(mid > 0.0 && mid < 1.0);
    }

    #[test]
    fn bump_derivatives_match_finite_differences() {
        let g = SmoothBumpSpec::new(0.0f64, 1.0).unwrap();
        let h = 1e-6;
        for &x in &[0.05, 0.15, 0.25, 0.35, 0.45] {
            let (_, d1, d2) = g.with_derivatives(x);
            let fp = g.value(x + h);
            let fm = g.value(x - h);
            let f0 = g.value(x);
            let fd1 = (fp - fm) / (2.0 * h);
            let fd2 = (fp - 2.0 * f0 + fm) / (h * h);
            assert!((d1 - fd1).abs() < 1e-4 * (1.0 + d1.abs()), "x={x}");
            assert!((d2 - fd2).abs() < 1e-2 * (1.0 + d2.abs()), "x={x}");
        }
    }

    #[test]
    fn gamma_cutoff_shape() {
        let g = GammaCutoff::new(1.0f64).unwrap();
        assert_eq!(g.with_derivative(0.0).0, 1.0);
        assert_eq!(g.with_derivative(0.9).0, 1.0);
        assert_eq!(g.with_derivative(2.1).0, 0.0);
        let (v, d) = g.with_derivative(1.5);
        assert!(v > 0.0 && v < 1.0);
        assert!(d < 0.0);
        // even function, odd derivative
        let (vm, dm) = g.with_derivative(-1.5);
        assert_eq!(v, vm);
        assert_eq!(d, -dm);
    }
}
