//! The C-infinity glue profile shared by spectral bumps, electron cutoffs
//! and photon localizers, with closed-form first and second derivatives.
//!
//! `smoothstep` is the standard `exp(-1/t)` transition: 0 for `u ≤ 0`,
//! 1 for `u ≥ 1`, strictly increasing in between.

use crate::scalar::Scalar;

/// Guard width: within it the profile is exactly 0 or 1 in double precision
/// (`exp(-1/u)` underflows), so returning the saturated value avoids
/// overflowing intermediate terms in the derivative formulas.
const GUARD: f64 = 1e-3;

/// `s(u) = a/(a+b)`, `a = e^{-1/u}`, `b = e^{-1/(1-u)}`.
pub fn smoothstep<S: Scalar>(u: S) -> S {
    let (s, _, _) = smoothstep_d2(u);
    s
}

/// Value and first derivative.
pub fn smoothstep_d1<S: Scalar>(u: S) -> (S, S) {
    let (s, d1, _) = smoothstep_d2(u);
    (s, d1)
}

/// Value, first and second derivative of the glue transition.
pub fn smoothstep_d2<S: Scalar>(u: S) -> (S, S, S) {
    let lo = S::of(GUARD);
    let hi = S::one() - lo;
    if u <= lo {
        return (S::zero(), S::zero(), S::zero());
    }
    if u >= hi {
        return (S::one(), S::zero(), S::zero());
    }
    let one = S::one();
    let v = one - u;
    let a = (-one / u).exp();
    let b = (-one / v).exp();
    let denom = a + b;
    let s = a / denom;

    let iu2 = one / (u * u);
    let iv2 = one / (v * v);
    let c = iu2 + iv2;
    let d1 = a * b * c / (denom * denom);

    // logarithmic derivative of d1
    let c_prime = S::of(-2.0) / (u * u * u) + S::of(2.0) / (v * v * v);
    let log_deriv = iu2 - iv2 + c_prime / c - S::of(2.0) * (a * iu2 - b * iv2) / denom;
    let d2 = d1 * log_deriv;
    (s, d1, d2)
}

/// Smooth cutoff `χ(t)`: 1 for `t ≤ 1`, 0 for `t ≥ 2` (value only).
pub fn chi_cutoff<S: Scalar>(t: S) -> S {
    smoothstep(S::of(2.0) - t)
}
