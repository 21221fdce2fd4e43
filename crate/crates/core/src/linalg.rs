//! Dense linear algebra kernels: complex Hermitian eigendecomposition
//! (Householder tridiagonalization + implicit QL), LU solves and small
//! dense utilities.
//!
//! Matrices are row-major `Vec<C<S>>` of length `n·n`. Eigenvectors are
//! returned row-major as well: `z[i*n + j]` is component `i` of the `j`-th
//! eigenvector.

use crate::error::{CoreError, Result};
use crate::scalar::{Scalar, C};

fn czero<S: Scalar>() -> C<S> {
    C::new(S::zero(), S::zero())
}

/// Implicit-shift QL iteration on a real symmetric tridiagonal matrix.
///
/// `d` holds the diagonal, `e` the subdiagonal in `e[0..n-1]` (`e[i]`
/// couples `i` and `i+1`). On success `d` contains the (unsorted)
/// eigenvalues. Every plane rotation is reported through `rot(i, c, s)`
/// meaning columns `i` and `i+1` of the accumulated transform are mixed by
/// `[c, s; -s, c]` acting from the right.
pub fn tridiag_ql<S: Scalar, F: FnMut(usize, S, S)>(
    d: &mut [S],
    e_sub: &[S],
    mut rot: F,
) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    // e[i] couples (i, i+1); e[n-1] is workspace
    let mut e = vec![S::zero(); n];
    e[..n - 1].copy_from_slice(&e_sub[..n - 1]);

    let two = S::of(2.0);
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // locate a negligible subdiagonal element
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= S::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 64 {
                return Err(CoreError::NoConvergence {
                    iterations: iter,
                    residual: e[l].abs().to_f64_lossy(),
                });
            }
            // implicit shift from the 2x2 at the l end
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(S::one());
            let denom = g + if g >= S::zero() { r } else { -r };
            g = d[m] - d[l] + e[l] / denom;
            let mut s = S::one();
            let mut c = S::one();
            let mut p = S::zero();
            let mut broke_early = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == S::zero() {
                    d[i + 1] -= p;
                    e[m] = S::zero();
                    broke_early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                rot(i, c, s);
            }
            if broke_early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = S::zero();
        }
    }
    Ok(())
}

/// Complex Hermitian eigendecomposition. Returns eigenvalues ascending and
/// eigenvectors as columns of a row-major matrix. The input buffer is
/// consumed as workspace.
pub fn hermitian_eigen<S: Scalar>(n: usize, a: &mut [C<S>]) -> Result<(Vec<S>, Vec<C<S>>)> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    if n == 1 {
        return Ok((vec![a[0].re], vec![C::new(S::one(), S::zero())]));
    }

    // --- Householder reduction to complex tridiagonal form ---
    // reflectors stored per step: v (length n-1-k), tau
    let mut reflectors: Vec<(usize, Vec<C<S>>, S)> = Vec::new();
    let mut diag = vec![S::zero(); n];
    let mut sub = vec![czero::<S>(); n - 1]; // sub[k] = A[k+1, k] after reduction

    for k in 0..n.saturating_sub(2) {
        // column k below the diagonal
        let len = n - k - 1;
        let mut x = vec![czero::<S>(); len];
        for i in 0..len {
            x[i] = a[(k + 1 + i) * n + k];
        }
        let xnorm = crate::scalar::norm(&x);
        if xnorm == S::zero() {
            diag[k] = a[k * n + k].re;
            sub[k] = czero();
            reflectors.push((k, Vec::new(), S::zero()));
            continue;
        }
        // alpha = -(x0/|x0|)·‖x‖, avoiding cancellation in v = x - alpha e1
        let x0 = x[0];
        let phase = if x0.norm_sqr() == S::zero() {
            C::new(S::one(), S::zero())
        } else {
            x0.scale(S::one() / x0.norm_sqr().sqrt())
        };
        let alpha = -phase.scale(xnorm);
        let mut v = x.clone();
        v[0] -= alpha;
        let vnorm2 = crate::scalar::norm_sqr(&v);
        let tau = if vnorm2 == S::zero() {
            S::zero()
        } else {
            S::of(2.0) / vnorm2
        };

        if tau != S::zero() {
            // p = tau · A_sub · v on the trailing block (k+1..n)
            let mut p = vec![czero::<S>(); len];
            for i in 0..len {
                let mut acc = czero::<S>();
                for j in 0..len {
                    acc += a[(k + 1 + i) * n + (k + 1 + j)] * v[j];
                }
                p[i] = acc.scale(tau);
            }
            // K = tau/2 · v†p (real for Hermitian block)
            let vp = crate::scalar::dot(&v, &p);
            let kappa = S::of(0.5) * tau * vp.re;
            // w = p - K v;  A ← A - v w† - w v†
            let w: Vec<C<S>> = p
                .iter()
                .zip(&v)
                .map(|(pi, vi)| *pi - vi.scale(kappa))
                .collect();
            for i in 0..len {
                for j in 0..len {
                    let delta = v[i] * w[j].conj() + w[i] * v[j].conj();
                    a[(k + 1 + i) * n + (k + 1 + j)] -= delta;
                }
            }
        }

        diag[k] = a[k * n + k].re;
        sub[k] = alpha;
        reflectors.push((k, v, tau));
    }
    if n >= 2 {
        diag[n - 2] = a[(n - 2) * n + (n - 2)].re;
        diag[n - 1] = a[(n - 1) * n + (n - 1)].re;
        sub[n - 2] = a[(n - 1) * n + (n - 2)];
    }

    // --- accumulate Q = H_0 H_1 ... (row-major, columns are basis images) ---
    let mut q = vec![czero::<S>(); n * n];
    for i in 0..n {
        q[i * n + i] = C::new(S::one(), S::zero());
    }
    for (k, v, tau) in reflectors.iter().rev() {
        if *tau == S::zero() {
            continue;
        }
        let len = v.len();
        // Q[k+1.., :] ← (I - tau v v†) Q[k+1.., :]
        for col in (k + 1)..n {
            let mut acc = czero::<S>();
            for i in 0..len {
                acc += v[i].conj() * q[(k + 1 + i) * n + col];
            }
            let acc = acc.scale(*tau);
            for i in 0..len {
                let upd = v[i] * acc;
                q[(k + 1 + i) * n + col] -= upd;
            }
        }
    }

    // --- phase-normalize the subdiagonal to be real nonnegative ---
    let mut e = vec![S::zero(); n.saturating_sub(1)];
    let mut phi = vec![C::new(S::one(), S::zero()); n];
    for k in 0..n - 1 {
        let ek = sub[k];
        let mag = ek.norm_sqr().sqrt();
        e[k] = mag;
        phi[k + 1] = if mag == S::zero() {
            phi[k]
        } else {
            ek.scale(S::one() / mag) * phi[k]
        };
    }
    // fold the phase diagonal into Q's columns: Q ← Q · diag(phi)
    for j in 0..n {
        if phi[j] != C::new(S::one(), S::zero()) {
            for i in 0..n {
                q[i * n + j] *= phi[j];
            }
        }
    }

    // --- QL iteration, rotating Q's columns ---
    let mut d = diag;
    tridiag_ql(&mut d, &e, |col, c, s| {
        for row in 0..n {
            let zi = q[row * n + col];
            let zi1 = q[row * n + col + 1];
            q[row * n + col + 1] = zi.scale(s) + zi1.scale(c);
            q[row * n + col] = zi.scale(c) - zi1.scale(s);
        }
    })?;

    // --- sort ascending ---
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let evals: Vec<S> = order.iter().map(|&i| d[i]).collect();
    let mut z = vec![czero::<S>(); n * n];
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            z[i * n + new_j] = q[i * n + old_j];
        }
    }
    Ok((evals, z))
}

/// LU factorization with partial pivoting, in place. Returns the pivot
/// permutation (row swaps applied in order).
pub fn lu_factor<S: Scalar>(n: usize, a: &mut [C<S>]) -> Result<Vec<usize>> {
    assert_eq!(a.len(), n * n);
    let mut piv = vec![0usize; n];
    for k in 0..n {
        // pivot search
        let mut pmax = S::zero();
        let mut prow = k;
        for i in k..n {
            let mag = a[i * n + k].norm_sqr();
            if mag > pmax {
                pmax = mag;
                prow = i;
            }
        }
        if pmax == S::zero() {
            return Err(CoreError::SolveFailure {
                z_re: 0.0,
                z_im: 0.0,
                reason: format!("singular matrix at pivot {k}"),
            });
        }
        piv[k] = prow;
        if prow != k {
            for j in 0..n {
                a.swap(k * n + j, prow * n + j);
            }
        }
        let pivot = a[k * n + k];
        let inv = C::new(S::one(), S::zero()) / pivot;
        for i in (k + 1)..n {
            let factor = a[i * n + k] * inv;
            a[i * n + k] = factor;
            if factor != czero() {
                for j in (k + 1)..n {
                    let sub = factor * a[k * n + j];
                    a[i * n + j] -= sub;
                }
            }
        }
    }
    Ok(piv)
}

/// Solve `A x = b` in place using a factorization from [`lu_factor`].
pub fn lu_solve<S: Scalar>(n: usize, lu: &[C<S>], piv: &[usize], b: &mut [C<S>]) {
    for k in 0..n {
        b.swap(k, piv[k]);
    }
    // forward: L y = P b
    for i in 1..n {
        let mut acc = b[i];
        for j in 0..i {
            acc -= lu[i * n + j] * b[j];
        }
        b[i] = acc;
    }
    // backward: U x = y
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in (i + 1)..n {
            acc -= lu[i * n + j] * b[j];
        }
        b[i] = acc / lu[i * n + i];
    }
}

/// Dense inverse via LU (used for resolvent accumulation at modest sizes).
pub fn dense_inverse<S: Scalar>(n: usize, a: &[C<S>]) -> Result<Vec<C<S>>> {
    let mut lu = a.to_vec();
    let piv = lu_factor(n, &mut lu)?;
    let mut inv = vec![czero::<S>(); n * n];
    let mut col = vec![czero::<S>(); n];
    for j in 0..n {
        col.iter_mut().for_each(|z| *z = czero());
        col[j] = C::new(S::one(), S::zero());
        lu_solve(n, &lu, &piv, &mut col);
        for i in 0..n {
            inv[i * n + j] = col[i];
        }
    }
    Ok(inv)
}

/// `y = A x` for a dense row-major matrix.
pub fn dense_matvec<S: Scalar>(n: usize, a: &[C<S>], x: &[C<S>], y: &mut [C<S>]) {
    for i in 0..n {
        let mut acc = czero::<S>();
        let row = &a[i * n..(i + 1) * n];
        for (aij, xj) in row.iter().zip(x) {
            acc += *aij * *xj;
        }
        y[i] = acc;
    }
}

/// Largest singular value of a dense m×m matrix by power iteration on `A†A`.
pub fn dense_sigma_max<S: Scalar>(m: usize, a: &[C<S>], seed: u64) -> S {
    if m == 0 {
        return S::zero();
    }
    let mut rng = crate::rng::SplitMix64::new(seed);
    let mut v = rng.complex_vector::<S>(m);
    crate::scalar::normalize(&mut v);
    let mut w = vec![czero::<S>(); m];
    let mut u = vec![czero::<S>(); m];
    let mut prev = S::zero();
    for _ in 0..500 {
        dense_matvec(m, a, &v, &mut w);
        // u = A† w
        for i in 0..m {
            let mut acc = czero::<S>();
            for j in 0..m {
                acc += a[j * m + i].conj() * w[j];
            }
            u[i] = acc;
        }
        let nrm = crate::scalar::normalize(&mut u);
        let est = nrm.sqrt();
        if (est - prev).abs() <= S::of(1e-13) * est.max(S::epsilon()) {
            return est;
        }
        prev = est;
        std::mem::swap(&mut v, &mut u);
    }
    prev
}
