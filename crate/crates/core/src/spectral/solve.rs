//! Shifted linear solves `(z − H) x = rhs` for Hermitian `H`: dense LU at
//! small dimensions, conjugate gradients on the Hermitian positive system
//! `(z̄−H)(z−H) = (Re z − H)² + (Im z)²` above.

use crate::error::{CoreError, Result};
use crate::fock::FockOperator;
use crate::linalg;
use crate::scalar::{dot, norm, Scalar, C};
use crate::tol::DENSE_EIG_MAX_DIM;

#[derive(Debug, Clone, Copy)]
pub struct ShiftedSolveOptions<S: Scalar> {
    pub tol: S,
    pub max_iter: usize,
    /// Skip the dense path regardless of dimension (for tests).
    pub force_iterative: bool,
}

impl<S: Scalar> Default for ShiftedSolveOptions<S> {
    fn default() -> Self {
        Self {
            tol: S::of(1e-10),
            max_iter: 50_000,
            force_iterative: false,
        }
    }
}

fn true_residual<S: Scalar>(h: &FockOperator<S>, z: C<S>, x: &[C<S>], rhs: &[C<S>]) -> S {
    let hx = h.apply_vec(x);
    let mut acc = S::zero();
    for i in 0..x.len() {
        let lhs = x[i] * z - hx[i];
        acc = acc + (lhs - rhs[i]).norm_sqr();
    }
    acc.sqrt()
}

/// Solve `(z − H) x = rhs` to `‖(z−H)x − rhs‖ ≤ tol·‖rhs‖`.
pub fn shifted_solve<S: Scalar>(
    h: &FockOperator<S>,
    z: C<S>,
    rhs: &[C<S>],
    opts: ShiftedSolveOptions<S>,
) -> Result<Vec<C<S>>> {
    let n = h.dim();
    if rhs.len() != n {
        return Err(CoreError::ShapeMismatch {
            expected: n,
            got: rhs.len(),
        });
    }
    let rhs_norm = norm(rhs);
    if rhs_norm == S::zero() {
        return Ok(vec![C::new(S::zero(), S::zero()); n]);
    }

    if n <= DENSE_EIG_MAX_DIM && !opts.force_iterative {
        return dense_shifted_solve(h, z, rhs, opts.tol, rhs_norm);
    }

    match cgn_solve(h, z, rhs, opts, rhs_norm) {
        Ok(x) => Ok(x),
        Err(e) => {
            if n <= DENSE_EIG_MAX_DIM {
                dense_shifted_solve(h, z, rhs, opts.tol, rhs_norm)
            } else {
                Err(e)
            }
        }
    }
}

fn dense_shifted_solve<S: Scalar>(
    h: &FockOperator<S>,
    z: C<S>,
    rhs: &[C<S>],
    tol: S,
    rhs_norm: S,
) -> Result<Vec<C<S>>> {
    let n = h.dim();
    let mut a = h.to_dense();
    for v in a.iter_mut() {
        *v = -*v;
    }
    for i in 0..n {
        a[i * n + i] += z;
    }
    let piv = lu_with_context(&mut a, n, z)?;
    let mut x = rhs.to_vec();
    linalg::lu_solve(n, &a, &piv, &mut x);
    let res = true_residual(h, z, &x, rhs);
    if res > tol * rhs_norm * S::of(1e3) {
        return Err(CoreError::SolveFailure {
            z_re: z.re.to_f64_lossy(),
            z_im: z.im.to_f64_lossy(),
            reason: format!("dense residual {}", res.to_f64_lossy()),
        });
    }
    Ok(x)
}

fn lu_with_context<S: Scalar>(a: &mut [C<S>], n: usize, z: C<S>) -> Result<Vec<usize>> {
    linalg::lu_factor(n, a).map_err(|_| CoreError::SolveFailure {
        z_re: z.re.to_f64_lossy(),
        z_im: z.im.to_f64_lossy(),
        reason: "singular shifted operator".into(),
    })
}

/// CG on the normal system `M x = (z̄−H) rhs` with
/// `M = (a−H)² + b²·Id`, Hermitian positive definite for `b ≠ 0`
/// (and for real shifts outside the spectrum).
fn cgn_solve<S: Scalar>(
    h: &FockOperator<S>,
    z: C<S>,
    rhs: &[C<S>],
    opts: ShiftedSolveOptions<S>,
    rhs_norm: S,
) -> Result<Vec<C<S>>> {
    let n = h.dim();
    let a_shift = z.re;
    let b_shift = z.im;
    let b2 = b_shift * b_shift;

    let apply_shifted = |x: &[C<S>]| -> Vec<C<S>> {
        // (a − H) x
        let hx = h.apply_vec(x);
        x.iter()
            .zip(&hx)
            .map(|(xi, hxi)| xi.scale(a_shift) - *hxi)
            .collect()
    };
    let apply_m = |x: &[C<S>]| -> Vec<C<S>> {
        let t = apply_shifted(x);
        let mut tt = apply_shifted(&t);
        for (o, xi) in tt.iter_mut().zip(x) {
            *o += xi.scale(b2);
        }
        tt
    };

    // rhs' = (z̄ − H) rhs = (a − H) rhs − i b rhs
    let mut bprime = apply_shifted(rhs);
    for (bp, r) in bprime.iter_mut().zip(rhs) {
        *bp -= r * C::new(S::zero(), b_shift);
    }

    let mut x = vec![C::new(S::zero(), S::zero()); n];
    let mut r = bprime.clone();
    let mut p = r.clone();
    let mut rho = crate::scalar::norm_sqr(&r);
    let target = opts.tol * rhs_norm;

    for it in 0..opts.max_iter {
        let q = apply_m(&p);
        let pq = dot(&p, &q).re;
        if pq <= S::zero() {
            return Err(CoreError::SolveFailure {
                z_re: z.re.to_f64_lossy(),
                z_im: z.im.to_f64_lossy(),
                reason: "indefinite normal system (breakdown)".into(),
            });
        }
        let alpha = rho / pq;
        for i in 0..n {
            x[i] += p[i].scale(alpha);
            r[i] -= q[i].scale(alpha);
        }
        let rho_next = crate::scalar::norm_sqr(&r);
        if it % 16 == 15 || rho_next.sqrt() <= target {
            let res = true_residual(h, z, &x, rhs);
            if res <= target {
                return Ok(x);
            }
        }
        let beta = rho_next / rho;
        rho = rho_next;
        for i in 0..n {
            p[i] = r[i] + p[i].scale(beta);
        }
    }
    let res = true_residual(h, z, &x, rhs);
    if res <= target {
        return Ok(x);
    }
    Err(CoreError::SolveFailure {
        z_re: z.re.to_f64_lossy(),
        z_im: z.im.to_f64_lossy(),
        reason: format!(
            "budget {} exceeded, residual {}",
            opts.max_iter,
            res.to_f64_lossy()
        ),
    })
}
