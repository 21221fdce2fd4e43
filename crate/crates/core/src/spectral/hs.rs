//! Almost-analytic functional calculus: `g(H)` as a plane quadrature of
//! `∂̄g̃(z) (z−H)^{-1}` over the support of the extension
//! `g̃(x+iy) = (g(x) + iy g'(x)) γ(y)`.
//!
//! Since the paper's bump is 1 on the whole half-line left of λ while the
//! quadrature needs a compact support, the bump is internally multiplied by
//! a smooth roll-up that completes below the bottom of the spectrum
//! (Gershgorin bound), which leaves `g(H)` unchanged.

use crate::error::{CoreError, Result};
use crate::fock::FockOperator;
use crate::linalg;
use crate::profile::smoothstep_d2;
use crate::scalar::{Scalar, C};
use crate::spectral::bump::{GammaCutoff, SmoothBumpSpec};
use crate::spectral::solve::{shifted_solve, ShiftedSolveOptions};
use crate::tol::DENSE_EIG_MAX_DIM;
use serde::{Deserialize, Serialize};

/// Plane quadrature layout: midpoint grids over the bump support in x and
/// the γ support in y, symmetric about y = 0 (which is never sampled).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HsQuadratureSpec<S: Scalar> {
    /// Left end of the x grid; must lie strictly below the spectrum.
    pub x_lo: S,
    pub nx: usize,
    pub ny: usize,
    pub gamma_half_width: S,
}

impl<S: Scalar> HsQuadratureSpec<S> {
    pub fn validate(&self) -> Result<()> {
        if self.nx < 4 {
            return Err(CoreError::InvalidInput("nx must be at least 4".into()));
        }
        if self.ny < 2 || self.ny % 2 != 0 {
            return Err(CoreError::InvalidInput(
                "ny must be even (y grid symmetric about 0)".into(),
            ));
        }
        if self.gamma_half_width <= S::zero() {
            return Err(CoreError::InvalidInput(
                "gamma half-width must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Both grids refined by an integer factor.
    pub fn refined(&self, factor: usize) -> Self {
        Self {
            nx: self.nx * factor,
            ny: self.ny * factor,
            ..*self
        }
    }
}

/// Bump times a smooth left roll-up over `[lo, hi]`, giving the compactly
/// supported function the quadrature actually integrates.
struct CompactBump<S: Scalar> {
    bump: SmoothBumpSpec<S>,
    lo: S,
    hi: S,
}

impl<S: Scalar> CompactBump<S> {
    fn with_derivatives(&self, x: S) -> (S, S, S) {
        let (g, g1, g2) = self.bump.with_derivatives(x);
        if x >= self.hi {
            return (g, g1, g2);
        }
        if x <= self.lo {
            return (S::zero(), S::zero(), S::zero());
        }
        let width = self.hi - self.lo;
        let u = (x - self.lo) / width;
        let (s, s1, s2) = smoothstep_d2(u);
        let inv = S::one() / width;
        let r = s;
        let r1 = s1 * inv;
        let r2 = s2 * inv * inv;
        (
            r * g,
            r1 * g + r * g1,
            r2 * g + S::of(2.0) * r1 * g1 + r * g2,
        )
    }
}

/// `∂̄g̃(x+iy) = (i/2)·[ y·g''(x)·γ(y) + (g(x) + i·y·g'(x))·γ'(y) ]`.
fn dbar<S: Scalar>(cb: &CompactBump<S>, gamma: &GammaCutoff<S>, x: S, y: S) -> C<S> {
    let (g, g1, g2) = cb.with_derivatives(x);
    let (gv, gd) = gamma.with_derivative(y);
    if (g == S::zero() && g1 == S::zero() && g2 == S::zero()) || (gv == S::zero() && gd == S::zero())
    {
        return C::new(S::zero(), S::zero());
    }
    let term1 = C::new(y * g2 * gv, S::zero());
    let term2 = C::new(g, y * g1) * C::new(gd, S::zero());
    C::new(S::zero(), S::of(0.5)) * (term1 + term2)
}

struct QuadPoint<S: Scalar> {
    z: C<S>,
    weight: C<S>,
}

/// Quadrature points with positive imaginary part only; the mirror half is
/// recovered from the conjugation symmetry `∂̄g̃(z̄) = conj ∂̄g̃(z)`,
/// `R(z̄) = R(z)†`.
fn upper_half_points<S: Scalar>(
    h: &FockOperator<S>,
    bump: &SmoothBumpSpec<S>,
    quad: &HsQuadratureSpec<S>,
) -> Result<(CompactBump<S>, Vec<QuadPoint<S>>)> {
    quad.validate()?;
    let (glo, _) = h.gershgorin_interval();
    if quad.x_lo >= glo {
        return Err(CoreError::InvalidInput(format!(
            "x_lo = {} must lie below the spectrum (Gershgorin bound {})",
            quad.x_lo.to_f64_lossy(),
            glo.to_f64_lossy()
        )));
    }
    let hi = quad.x_lo + S::of(0.9) * (glo - quad.x_lo);
    let cb = CompactBump {
        bump: *bump,
        lo: quad.x_lo,
        hi,
    };
    let gamma = GammaCutoff::new(quad.gamma_half_width)?;

    let xe = bump.support_end();
    let dx = (xe - quad.x_lo) / S::of(quad.nx as f64);
    let ye = gamma.support_end();
    let dy = S::of(2.0) * ye / S::of(quad.ny as f64);
    let area = dx * dy;
    let minus_inv_pi = -S::one() / S::PI();

    let mut points = Vec::new();
    for jy in (quad.ny / 2)..quad.ny {
        let y = -ye + (S::of(jy as f64) + S::of(0.5)) * dy;
        debug_assert!(y > S::zero());
        for jx in 0..quad.nx {
            let x = quad.x_lo + (S::of(jx as f64) + S::of(0.5)) * dx;
            let c = dbar(&cb, &gamma, x, y);
            if c.norm_sqr() == S::zero() {
                continue;
            }
            points.push(QuadPoint {
                z: C::new(x, y),
                weight: c.scale(minus_inv_pi * area),
            });
        }
    }
    Ok((cb, points))
}

/// `g(H)` as an explicit operator (dense resolvents; dimension-capped).
pub fn hs_function<S: Scalar>(
    h: &FockOperator<S>,
    bump: &SmoothBumpSpec<S>,
    quad: &HsQuadratureSpec<S>,
) -> Result<FockOperator<S>> {
    let n = h.dim();
    if n > DENSE_EIG_MAX_DIM {
        return Err(CoreError::InvalidInput(
            "hs_function builds dense resolvents; use hs_apply above the dense cap".into(),
        ));
    }
    let (_cb, points) = upper_half_points(h, bump, quad)?;
    let minus_h = {
        let mut d = h.to_dense();
        for v in d.iter_mut() {
            *v = -*v;
        }
        d
    };
    let mut acc = vec![C::new(S::zero(), S::zero()); n * n];
    let mut work = vec![C::new(S::zero(), S::zero()); n * n];
    for p in &points {
        work.copy_from_slice(&minus_h);
        for i in 0..n {
            work[i * n + i] += p.z;
        }
        let inv = linalg::dense_inverse(n, &work).map_err(|_| CoreError::SolveFailure {
            z_re: p.z.re.to_f64_lossy(),
            z_im: p.z.im.to_f64_lossy(),
            reason: "resolvent solve failed near the real axis".into(),
        })?;
        for (a, r) in acc.iter_mut().zip(&inv) {
            *a += p.weight * *r;
        }
    }
    // add the mirror half: total = acc + acc†
    let mut triplets = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let v = acc[i * n + j] + acc[j * n + i].conj();
            if v.norm_sqr() != S::zero() {
                triplets.push((i, j, v));
            }
        }
    }
    Ok(FockOperator::from_triplets(n, triplets).assume_hermitian())
}

/// `g(H)·v` matrix-free, one shifted solve per quadrature point (both
/// half-planes; summation in a fixed deterministic order).
pub fn hs_apply<S: Scalar>(
    h: &FockOperator<S>,
    bump: &SmoothBumpSpec<S>,
    quad: &HsQuadratureSpec<S>,
    v: &[C<S>],
    solve_opts: ShiftedSolveOptions<S>,
) -> Result<Vec<C<S>>> {
    let (_cb, points) = upper_half_points(h, bump, quad)?;
    let n = h.dim();
    let mut out = vec![C::new(S::zero(), S::zero()); n];
    for p in &points {
        let x_up = shifted_solve(h, p.z, v, solve_opts)?;
        for (o, xi) in out.iter_mut().zip(&x_up) {
            *o += p.weight * *xi;
        }
        let x_dn = shifted_solve(h, p.z.conj(), v, solve_opts)?;
        for (o, xi) in out.iter_mut().zip(&x_dn) {
            *o += p.weight.conj() * *xi;
        }
    }
    Ok(out)
}
