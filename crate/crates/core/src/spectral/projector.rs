//! Spectral projectors onto the part of the spectrum at or below a cut
//! energy, with an explicit eigenvalue-tie guard.

use crate::error::{CoreError, Result};
use crate::fock::FockOperator;
use crate::scalar::{Scalar, C};
use crate::spectral::eigs::eigs_full_dense;

/// Orthogonal projector onto the span of eigenvectors with eigenvalue
/// `≤ lambda`. Aborts with a collision report when `lambda` falls within
/// the tie guard of an eigenvalue, so the rank is always well defined.
pub fn spectral_projector<S: Scalar>(
    h: &FockOperator<S>,
    lambda: S,
) -> Result<FockOperator<S>> {
    let n = h.dim();
    let (evals, z) = eigs_full_dense(h)?;
    let (glo, ghi) = h.gershgorin_interval();
    let scale = glo.abs().max(ghi.abs()).max(S::one());
    let guard = S::of(crate::tol::EIGENVALUE_TIE) * scale;
    for &ev in &evals {
        if (ev - lambda).abs() < guard {
            return Err(CoreError::EigenvalueCollision {
                lambda: lambda.to_f64_lossy(),
                eigenvalue: ev.to_f64_lossy(),
                gap: (ev - lambda).abs().to_f64_lossy(),
            });
        }
    }
    let rank = evals.iter().take_while(|&&ev| ev <= lambda).count();
    let mut triplets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut acc = C::new(S::zero(), S::zero());
            for k in 0..rank {
                acc += z[i * n + k] * z[j * n + k].conj();
            }
            if acc.norm_sqr() != S::zero() {
                triplets.push((i, j, acc));
            }
        }
    }
    Ok(FockOperator::from_triplets(n, triplets).assume_hermitian())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    type Cx = C<f64>;

    fn random_hermitian(n: usize, seed: u64) -> FockOperator<f64> {
        let mut rng = SplitMix64::new(seed);
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, Cx::new(rng.next_symmetric::<f64>() * 3.0, 0.0)));
            for j in (i + 1)..n {
                let v = Cx::new(rng.next_symmetric(), rng.next_symmetric()).scale(0.4);
                t.push((i, j, v));
                t.push((j, i, v.conj()));
            }
        }
        FockOperator::from_triplets(n, t).assume_hermitian()
    }

    #[test]
    fn zero_and_identity_limits() {
        let h = FockOperator::from_real_diag(&[0.0, 1.0, 2.0]);
        let below = spectral_projector(&h, -5.0).unwrap();
        assert_eq!(below.nnz(), 0);
        let above = spectral_projector(&h, 50.0).unwrap();
        assert!(above.sub(&FockOperator::identity(3)).max_abs() < 1e-12);
    }

    #[test]
    fn rank_matches_eigenvalue_count_oracle() {
        let h = random_hermitian(24, 99);
        let (evals, _) = eigs_full_dense(&h).unwrap();
        let lambda = 0.5 * (evals[10] + evals[11]);
        let p = spectral_projector(&h, lambda).unwrap();
        // rank = trace for an orthogonal projector
        let trace: f64 = p.entries().filter(|(i, j, _)| i == j).map(|(_, _, v)| v.re).sum();
        let expect = evals.iter().filter(|&&ev| ev <= lambda).count();
        assert!((trace - expect as f64).abs() < 1e-9);
        assert_eq!(expect, 11);
    }

    #[test]
    fn projector_algebra_and_commutation() {
        let h = random_hermitian(16, 7);
        let (evals, _) = eigs_full_dense(&h).unwrap();
        let lambda = 0.5 * (evals[7] + evals[8]);
        let p = spectral_projector(&h, lambda).unwrap();
        assert!(p.matmul(&p).sub(&p).max_abs() < 1e-10);
        assert!(p.hermiticity_defect() < 1e-12);
        let comm = p.matmul(&h).sub(&h.matmul(&p));
        assert!(comm.max_abs() < 1e-9);
    }

    #[test]
    fn collision_detected() {
        let h = FockOperator::from_real_diag(&[0.0, 1.0, 2.0]);
        match spectral_projector(&h, 1.0 + 1e-12) {
            Err(CoreError::EigenvalueCollision { .. }) => {}
            other => panic!("expected collision, got {other:?}"),
        }
    }
}
