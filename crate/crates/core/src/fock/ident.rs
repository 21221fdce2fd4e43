//! The identification map gathering the bosons of a two-factor product
//! state into a single Fock space.
//!
//! On occupation states it acts as
//! `I(|m⟩ ⊗ |n⟩) = √(Π_k C(m_k+n_k, n_k)) |m+n⟩`,
//! which is the multilinear extension of collecting creation operators.
//! For factors living on disjoint mode subsets every binomial factor is 1
//! and the map is an exact isometry on product states.

use crate::error::{CoreError, Result};
use crate::fock::basis::FockBasis;
use crate::scalar::{Scalar, C};

/// Linear map from `F(basis_a) ⊗ F(basis_b)` into `F(combined)`.
#[derive(Debug, Clone)]
pub struct Identification<S: Scalar> {
    basis_a: FockBasis<S>,
    basis_b: FockBasis<S>,
    combined: FockBasis<S>,
    map_a: Vec<usize>,
    map_b: Vec<usize>,
}

fn validate_map<S: Scalar>(
    part: &FockBasis<S>,
    combined: &FockBasis<S>,
    map: &[usize],
) -> Result<()> {
    if map.len() != part.n_modes() {
        return Err(CoreError::ShapeMismatch {
            expected: part.n_modes(),
            got: map.len(),
        });
    }
    let mut seen = vec![false; combined.n_modes()];
    for (j, &cj) in map.iter().enumerate() {
        if cj >= combined.n_modes() {
            return Err(CoreError::InvalidInput(format!(
                "mode map entry {cj} out of range"
            )));
        }
        if seen[cj] {
            return Err(CoreError::InvalidInput("mode map not injective".into()));
        }
        seen[cj] = true;
        let km = part.mode_basis().mode(j).momentum;
        let kc = combined.mode_basis().mode(cj).momentum;
        if (km - kc).abs() > S::of(1e-12) * km.abs().max(S::one()) {
            return Err(CoreError::InvalidInput(format!(
                "mode {j} momentum differs from combined mode {cj}"
            )));
        }
    }
    Ok(())
}

impl<S: Scalar> Identification<S> {
    /// Factors on disjoint mode-index subsets of the combined basis.
    /// `map_a[j]` is the combined index of part-a mode `j`, likewise `map_b`.
    pub fn disjoint(
        basis_a: FockBasis<S>,
        basis_b: FockBasis<S>,
        combined: FockBasis<S>,
        map_a: Vec<usize>,
        map_b: Vec<usize>,
    ) -> Result<Self> {
        validate_map(&basis_a, &combined, &map_a)?;
        validate_map(&basis_b, &combined, &map_b)?;
        for a in &map_a {
            if map_b.contains(a) {
                return Err(CoreError::InvalidInput(
                    "mode subsets of the two factors overlap".into(),
                ));
            }
        }
        Ok(Self {
            basis_a,
            basis_b,
            combined,
            map_a,
            map_b,
        })
    }

    /// Both factors over the same mode set as the combined basis
    /// (the general boson-collecting map; binomial factors apply).
    pub fn same_modes(
        basis_a: FockBasis<S>,
        basis_b: FockBasis<S>,
        combined: FockBasis<S>,
    ) -> Result<Self> {
        let m = combined.n_modes();
        if basis_a.n_modes() != m || basis_b.n_modes() != m {
            return Err(CoreError::ShapeMismatch {
                expected: m,
                got: basis_a.n_modes(),
            });
        }
        let map: Vec<usize> = (0..m).collect();
        validate_map(&basis_a, &combined, &map)?;
        validate_map(&basis_b, &combined, &map)?;
        Ok(Self {
            basis_a,
            basis_b,
            combined,
            map_a: map.clone(),
            map_b: map,
        })
    }

    pub fn combined(&self) -> &FockBasis<S> {
        &self.combined
    }

    pub fn basis_a(&self) -> &FockBasis<S> {
        &self.basis_a
    }

    pub fn basis_b(&self) -> &FockBasis<S> {
        &self.basis_b
    }

    /// Apply to a product state. Errors with the offending occupation total
    /// when a nonzero component would exceed the combined truncation.
    pub fn apply(&self, phi: &[C<S>], psi: &[C<S>]) -> Result<Vec<C<S>>> {
        if phi.len() != self.basis_a.dim() {
            return Err(CoreError::ShapeMismatch {
                expected: self.basis_a.dim(),
                got: phi.len(),
            });
        }
        if psi.len() != self.basis_b.dim() {
            return Err(CoreError::ShapeMismatch {
                expected: self.basis_b.dim(),
                got: psi.len(),
            });
        }
        let mc = self.combined.n_modes();
        let mut out = vec![C::new(S::zero(), S::zero()); self.combined.dim()];
        let mut occ = vec![0u32; mc];
        for (ia, za) in phi.iter().enumerate() {
            if za.norm_sqr() == S::zero() {
                continue;
            }
            let sa = &self.basis_a.state(ia).occupations;
            for (ib, zb) in psi.iter().enumerate() {
                if zb.norm_sqr() == S::zero() {
                    continue;
                }
                let sb = &self.basis_b.state(ib).occupations;
                occ.iter_mut().for_each(|o| *o = 0);
                for (j, &o) in sa.iter().enumerate() {
                    occ[self.map_a[j]] += o;
                }
                for (j, &o) in sb.iter().enumerate() {
                    occ[self.map_b[j]] += o;
                }
                let total: u32 = occ.iter().sum();
                if total > self.combined.n_max() {
                    return Err(CoreError::OccupationOverflow {
                        total,
                        n_max: self.combined.n_max(),
                    });
                }
                let idx = self
                    .combined
                    .index_of(&occ)
                    .expect("merged occupation lies in the combined basis");
                // √(Π_k C(m_k + n_k, n_k)); equals 1 for disjoint supports
                let mut factor = S::one();
                for (j, &na) in sa.iter().enumerate() {
                    if na == 0 {
                        continue;
                    }
                    let cj = self.map_a[j];
                    let nb = occ[cj] - na;
                    if nb > 0 {
                        factor *= binom_s::<S>(na + nb, nb);
                    }
                }
                out[idx] += *za * *zb * C::new(factor.sqrt(), S::zero());
            }
        }
        Ok(out)
    }
}

fn binom_s<S: Scalar>(n: u32, k: u32) -> S {
    let k = k.min(n - k);
    let mut acc = S::one();
    for i in 0..k {
        acc = acc * S::of((n - i) as f64) / S::of((i + 1) as f64);
    }
    acc
}
