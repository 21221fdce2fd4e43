//! Creation/annihilation operators, additive and multiplicative second
//! quantization on the truncated basis.
//!
//! Truncation semantics: creation into grades above `N_max` is silently
//! dropped (projected Fock space). All operator identities are therefore
//! exact only on the safe subspace where truncation cannot bite; the tests
//! restrict themselves accordingly.

use crate::error::{CoreError, Result};
use crate::fock::basis::FockBasis;
use crate::fock::onebody::{OneBosonMatrix, OneBosonVector};
use crate::fock::operator::FockOperator;
use crate::scalar::{Scalar, C};

fn check_len<S: Scalar>(h: &OneBosonVector<S>, basis: &FockBasis<S>) -> Result<()> {
    if h.len() != basis.n_modes() {
        return Err(CoreError::ShapeMismatch {
            expected: basis.n_modes(),
            got: h.len(),
        });
    }
    Ok(())
}

/// Smeared creation operator `a*(h)`: maps grade n to n+1 with
/// `√(occupation+1)` factors; rows beyond the truncation are dropped.
pub fn creation_op<S: Scalar>(
    h: &OneBosonVector<S>,
    basis: &FockBasis<S>,
) -> Result<FockOperator<S>> {
    check_len(h, basis)?;
    let m = basis.n_modes();
    let mut triplets = Vec::new();
    for (col, state) in basis.states().iter().enumerate() {
        if state.total >= basis.n_max() {
            continue;
        }
        let mut occ = state.occupations.clone();
        for k in 0..m {
            let hk = h.amplitude(k);
            if hk.norm_sqr() == S::zero() {
                continue;
            }
            occ[k] += 1;
            let row = basis
                .index_of(&occ)
                .expect("raised state lies in the truncated basis");
            let factor = S::of(occ[k] as f64).sqrt();
            triplets.push((row, col, hk.scale(factor)));
            occ[k] -= 1;
        }
    }
    Ok(FockOperator::from_triplets(basis.dim(), triplets))
}

/// Smeared annihilation operator `a(h)`, the adjoint of `a*(h)`;
/// antilinear in `h` and kills the vacuum.
pub fn annihilation_op<S: Scalar>(
    h: &OneBosonVector<S>,
    basis: &FockBasis<S>,
) -> Result<FockOperator<S>> {
    check_len(h, basis)?;
    let m = basis.n_modes();
    let mut triplets = Vec::new();
    for (col, state) in basis.states().iter().enumerate() {
        let mut occ = state.occupations.clone();
        for k in 0..m {
            if occ[k] == 0 {
                continue;
            }
            let hk = h.amplitude(k);
            if hk.norm_sqr() == S::zero() {
                continue;
            }
            let factor = S::of(occ[k] as f64).sqrt();
            occ[k] -= 1;
            let row = basis.index_of(&occ).expect("lowered state exists");
            triplets.push((row, col, hk.conj().scale(factor)));
            occ[k] += 1;
        }
    }
    Ok(FockOperator::from_triplets(basis.dim(), triplets))
}

/// Additive second quantization of a real diagonal one-boson operator:
/// diagonal in the occupation basis with entries `Σ_k occ_k · diag_k`.
pub fn dgamma<S: Scalar>(diag: &[S], basis: &FockBasis<S>) -> FockOperator<S> {
    assert_eq!(diag.len(), basis.n_modes());
    let entries: Vec<S> = basis
        .states()
        .iter()
        .map(|st| {
            st.occupations
                .iter()
                .zip(diag)
                .fold(S::zero(), |acc, (&o, &d)| acc + S::of(o as f64) * d)
        })
        .collect();
    FockOperator::from_real_diag(&entries)
}

/// Photon number operator `N_f = dΓ(1)`.
pub fn number_op<S: Scalar>(basis: &FockBasis<S>) -> FockOperator<S> {
    dgamma(&vec![S::one(); basis.n_modes()], basis)
}

/// Multiplicative second quantization `Γ(b)` of a one-boson contraction
/// (or unitary): acts as `b ⊗ … ⊗ b` on each grade, fixes the vacuum.
///
/// Rejects operators with `σ_max > 1 + tol` that are not unitary.
pub fn gamma<S: Scalar>(b: &OneBosonMatrix<S>, basis: &FockBasis<S>) -> Result<FockOperator<S>> {
    if b.dim() != basis.n_modes() {
        return Err(CoreError::ShapeMismatch {
            expected: basis.n_modes(),
            got: b.dim(),
        });
    }
    let sigma = b.sigma_max();
    let contraction_ok =
        b.is_contraction_flagged() || sigma <= S::one() + S::of(crate::tol::CONTRACTION_SLACK);
    if !contraction_ok && !b.is_unitary(S::of(1e-8)) {
        return Err(CoreError::NotContraction {
            sigma: sigma.to_f64_lossy(),
        });
    }

    let m = basis.n_modes();
    let dim = basis.dim();
    // creation operators smeared with the columns of b, built once
    let mut col_creators: Vec<Option<FockOperator<S>>> = Vec::with_capacity(m);
    for k in 0..m {
        let col = b.column(k);
        if col.norm_sqr() == S::zero() {
            col_creators.push(None);
        } else {
            col_creators.push(Some(creation_op(&col, basis)?));
        }
    }

    // column j of Γ(b): Π_k a*(b e_k)^{n_k} Ω / √(Π n_k!)
    let mut triplets = Vec::new();
    let mut work = vec![C::new(S::zero(), S::zero()); dim];
    let mut next = vec![C::new(S::zero(), S::zero()); dim];
    for (col, state) in basis.states().iter().enumerate() {
        work.iter_mut().for_each(|z| *z = C::new(S::zero(), S::zero()));
        work[basis.vacuum_index()] = C::new(S::one(), S::zero());
        let mut norm_factor = S::one();
        let mut dead = false;
        for (k, &nk) in state.occupations.iter().enumerate() {
            if nk == 0 {
                continue;
            }
            match &col_creators[k] {
                None => {
                    dead = true;
                    break;
                }
                Some(ck) => {
                    for rep in 1..=nk {
                        ck.apply(&work, &mut next);
                        std::mem::swap(&mut work, &mut next);
                        norm_factor *= S::of(rep as f64);
                    }
                }
            }
        }
        if dead {
            continue;
        }
        let scale = S::one() / norm_factor.sqrt();
        for (row, z) in work.iter().enumerate() {
            if z.norm_sqr() != S::zero() {
                triplets.push((row, col, z.scale(scale)));
            }
        }
    }
    Ok(FockOperator::from_triplets(dim, triplets))
}
