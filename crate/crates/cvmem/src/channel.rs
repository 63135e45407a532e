//! Gaussian channels `(K, M, c)` and the constructors used by the protocol.
//!
//! A channel acts on a state as `Σ → KΣKᵀ + M`, `D → KD + c`. It is a
//! completely positive (CP) map iff `M + iΩ - iKΩKᵀ ⪰ 0`.

use nalgebra::{DMatrix, DVector};
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg;
use crate::state::{omega, GaussianState, POSITIVITY_TOL, SYMMETRY_TOL};

/// A Gaussian channel, stored as the triple `(K, M, c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianChannel {
    k: DMatrix<f64>,
    m: DMatrix<f64>,
    c: DVector<f64>,
}

impl GaussianChannel {
    /// Basic checked constructor: square matching shapes, `M` symmetric and
    /// positive semidefinite (within tolerance). Does **not** require the
    /// map to be CP; use [`GaussianChannel::new_cp`] for that.
    pub fn new(k: DMatrix<f64>, m: DMatrix<f64>, c: DVector<f64>) -> Result<Self> {
        let dim = c.len();
        if dim == 0 || !dim.is_multiple_of(2) || k.shape() != (dim, dim) || m.shape() != (dim, dim) {
            return Err(Error::DimensionMismatch {
                expected: dim / 2,
                got: k.nrows() / 2,
            });
        }
        let asym = linalg::max_asymmetry(&m);
        if asym > SYMMETRY_TOL {
            return Err(Error::NotSymmetric {
                what: "noise matrix M",
                max_asymmetry: asym,
            });
        }
        let min_eig = linalg::min_eig_symmetric(&m);
        if min_eig < -POSITIVITY_TOL {
            return Err(Error::NotPositiveSemidefinite {
                what: "noise matrix M",
                min_eig,
            });
        }
        Ok(GaussianChannel { k, m, c })
    }

    /// Checked constructor that additionally enforces complete positivity,
    /// `M + iΩ - iKΩKᵀ ⪰ -tol`.
    pub fn new_cp(k: DMatrix<f64>, m: DMatrix<f64>, c: DVector<f64>) -> Result<Self> {
        let ch = Self::new(k, m, c)?;
        let slack = ch.cp_slack();
        if slack < -POSITIVITY_TOL {
            return Err(Error::NotPositiveSemidefinite {
                what: "M + iΩ - iKΩKᵀ",
                min_eig: slack,
            });
        }
        Ok(ch)
    }

    pub fn n_modes(&self) -> usize {
        self.c.len() / 2
    }

    pub fn k(&self) -> &DMatrix<f64> {
        &self.k
    }

    pub fn m(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn c(&self) -> &DVector<f64> {
        &self.c
    }

    /// Minimum eigenvalue of the CP condition matrix `M + iΩ - iKΩKᵀ`.
    pub fn cp_slack(&self) -> f64 {
        let om = omega(self.n_modes());
        let im = &om - &self.k * &om * self.k.transpose();
        linalg::min_eig_hermitian(&self.m, &im)
    }

    pub fn is_cp(&self) -> bool {
        self.cp_slack() >= -POSITIVITY_TOL
    }

    /// Apply the channel: `Σ' = KΣKᵀ + M`, `D' = KD + c`.
    pub fn apply(&self, st: &GaussianState) -> Result<GaussianState> {
        if st.n_modes() != self.n_modes() {
            return Err(Error::DimensionMismatch {
                expected: self.n_modes(),
                got: st.n_modes(),
            });
        }
        let cov = &self.k * st.cov() * self.k.transpose() + &self.m;
        let disp = &self.k * st.disp() + &self.c;
        Ok(GaussianState::from_parts(cov, disp))
    }

    /// Composition `self ∘ inner` (apply `inner` first):
    /// `K = K_o K_i`, `M = K_o M_i K_oᵀ + M_o`, `c = K_o c_i + c_o`.
    pub fn compose(&self, inner: &GaussianChannel) -> Result<GaussianChannel> {
        if self.n_modes() != inner.n_modes() {
            return Err(Error::DimensionMismatch {
                expected: self.n_modes(),
                got: inner.n_modes(),
            });
        }
        Ok(GaussianChannel {
            k: &self.k * &inner.k,
            m: linalg::symmetrize(&(&self.k * &inner.m * self.k.transpose() + &self.m)),
            c: &self.k * &inner.c + &self.c,
        })
    }
}

/// The identity channel on `n` modes.
pub fn identity(n_modes: usize) -> GaussianChannel {
    GaussianChannel {
        k: DMatrix::identity(2 * n_modes, 2 * n_modes),
        m: DMatrix::zeros(2 * n_modes, 2 * n_modes),
        c: DVector::zeros(2 * n_modes),
    }
}

/// Photon loss with transmissivity `η ∈ [0, 1]`: a beamsplitter mixing the
/// mode with vacuum, `K = √η·𝟙`, `M = (1-η)·𝟙`, `c = 0`.
pub fn photon_loss(eta: f64) -> Result<GaussianChannel> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::invalid(format!(
            "photon-loss transmissivity eta={eta} outside [0, 1]"
        )));
    }
    Ok(GaussianChannel {
        k: DMatrix::identity(2, 2) * eta.sqrt(),
        m: DMatrix::identity(2, 2) * (1.0 - eta),
        c: DVector::zeros(2),
    })
}

/// Quantum-limited phase-insensitive amplifier with gain `ν ≥ 1`:
/// `K = √ν·𝟙`, `M = (ν-1)·𝟙`, `c = 0`. Sits exactly on the CP boundary.
pub fn amplifier(nu: f64) -> Result<GaussianChannel> {
    if nu.is_nan() || nu < 1.0 {
        return Err(Error::invalid(format!("amplifier gain nu={nu} below 1")));
    }
    Ok(GaussianChannel {
        k: DMatrix::identity(2, 2) * nu.sqrt(),
        m: DMatrix::identity(2, 2) * (nu - 1.0),
        c: DVector::zeros(2),
    })
}

/// The balanced (50:50) beamsplitter on two modes: a symplectic channel
/// (`M = 0`, `c = 0`) mapping `x₁ → (x₁+x₂)/√2`, `x₂ → (x₁-x₂)/√2` and
/// identically on the p quadratures. Output port 1 carries the “+”
/// combination.
pub fn balanced_beamsplitter() -> GaussianChannel {
    let b = FRAC_1_SQRT_2;
    #[rustfmt::skip]
    let k = DMatrix::from_row_slice(4, 4, &[
        b,  b, 0.0, 0.0,
        b, -b, 0.0, 0.0,
        0.0, 0.0, b,  b,
        0.0, 0.0, b, -b,
    ]);
    GaussianChannel {
        k,
        m: DMatrix::zeros(4, 4),
        c: DVector::zeros(4),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::SQRT_2;

    #[test]
    fn identity_channel_is_a_fixed_point() {
        let st = GaussianState::coherent(1.3, -0.7);
        let out = identity(1).apply(&st).unwrap();
        assert_eq!(out.cov(), st.cov());
        assert_eq!(out.disp(), st.disp());
    }

    #[test]
    fn unit_parameters_give_identity_channels() {
        for ch in [photon_loss(1.0).unwrap(), amplifier(1.0).unwrap()] {
            assert_eq!(ch.k(), identity(1).k());
            assert_eq!(ch.m(), identity(1).m());
        }
    }

    #[test]
    fn photon_loss_parameters() {
        let ch = photon_loss(0.25).unwrap();
        assert_relative_eq!(ch.k(), &(DMatrix::identity(2, 2) * 0.5), epsilon = 1e-15);
        assert_relative_eq!(ch.m(), &(DMatrix::identity(2, 2) * 0.75), epsilon = 1e-15);

        // complete erasure at η = 0
        let ch = photon_loss(0.0).unwrap();
        assert_eq!(ch.k(), &DMatrix::zeros(2, 2));
        assert_eq!(ch.m(), &DMatrix::identity(2, 2));

        assert!(photon_loss(1.2).is_err());
        assert!(photon_loss(-0.1).is_err());
    }

    #[test]
    fn photon_loss_fixes_vacuum_and_contracts_displacement() {
        let vac = GaussianState::vacuum();
        let out = photon_loss(0.5).unwrap().apply(&vac).unwrap();
        assert_relative_eq!(out.cov(), &DMatrix::identity(2, 2), epsilon = 1e-15);
        assert_relative_eq!(out.disp(), &DVector::zeros(2), epsilon = 1e-15);

        // η = 0.64 on |α = 1⟩: D → (0.8·√2, 0), Σ stays 𝟙
        let st = GaussianState::coherent(1.0, 0.0);
        let out = photon_loss(0.64).unwrap().apply(&st).unwrap();
        assert_relative_eq!(out.disp()[0], 0.8 * SQRT_2, epsilon = 1e-15);
        assert_relative_eq!(out.disp()[1], 0.0);
        assert_relative_eq!(out.cov(), &DMatrix::identity(2, 2), epsilon = 1e-15);
    }

    #[test]
    fn amplifier_sits_on_cp_boundary() {
        let ch = amplifier(2.0).unwrap();
        assert_relative_eq!(ch.k(), &(DMatrix::identity(2, 2) * SQRT_2), epsilon = 1e-15);
        assert_relative_eq!(ch.m(), &DMatrix::identity(2, 2), epsilon = 1e-15);
        assert!(amplifier(0.9).is_err());

        // det M = (det K - 1)² exactly for any gain
        for nu in [1.0, 1.5, 3.0, 10.0] {
            let ch = amplifier(nu).unwrap();
            let det_k = ch.k().determinant();
            let det_m = ch.m().determinant();
            assert_relative_eq!(det_m, (det_k - 1.0).powi(2), epsilon = 1e-10);
            assert!(ch.is_cp());
        }
    }

    #[test]
    fn beamsplitter_is_symplectic_and_self_inverse() {
        let bs = balanced_beamsplitter();
        let om = omega(2);
        let kokt = bs.k() * &om * bs.k().transpose();
        assert_relative_eq!(kokt, om, epsilon = 1e-14);

        // applying it twice restores any state
        let st = GaussianState::coherent(0.5, -1.0).tensor(&GaussianState::coherent(2.0, 0.3));
        let once = bs.apply(&st).unwrap();
        let twice = bs.apply(&once).unwrap();
        assert_relative_eq!(twice.cov(), st.cov(), epsilon = 1e-14);
        assert_relative_eq!(twice.disp(), st.disp(), epsilon = 1e-14);
    }

    #[test]
    fn beamsplitter_means_on_coherent_inputs() {
        // ⟨x̂_E⟩ = α_x + β_x on port 1, ⟨p̂_E⟩ = α_p - β_p on port 2
        let (ax, ap, bx, bp) = (0.7, -0.2, 0.4, 1.1);
        let st = GaussianState::coherent(ax, ap).tensor(&GaussianState::coherent(bx, bp));
        let out = balanced_beamsplitter().apply(&st).unwrap();
        assert_relative_eq!(out.disp()[0], ax + bx, epsilon = 1e-14);
        assert_relative_eq!(out.disp()[3], ap - bp, epsilon = 1e-14);
        // Σ stays 𝟙₄ on coherent inputs
        assert_relative_eq!(out.cov(), &DMatrix::identity(4, 4), epsilon = 1e-14);
    }

    #[test]
    fn composition_matches_sequential_application() {
        let ch1 = photon_loss(0.7).unwrap();
        let ch2 = amplifier(1.4).unwrap();
        let st = GaussianState::coherent(1.0, -2.0);
        let sequential = ch2.apply(&ch1.apply(&st).unwrap()).unwrap();
        let composed = ch2.compose(&ch1).unwrap().apply(&st).unwrap();
        assert_relative_eq!(sequential.cov(), composed.cov(), epsilon = 1e-12);
        assert_relative_eq!(sequential.disp(), composed.disp(), epsilon = 1e-12);
    }

    #[test]
    fn loss_composes_multiplicatively() {
        let (a, b) = (0.7, 0.5);
        let lhs = photon_loss(a).unwrap().compose(&photon_loss(b).unwrap()).unwrap();
        let rhs = photon_loss(a * b).unwrap();
        assert_relative_eq!(lhs.k(), rhs.k(), epsilon = 1e-12);
        assert_relative_eq!(lhs.m(), rhs.m(), epsilon = 1e-12);
    }

    #[test]
    fn amplified_loss_gives_identity_k_and_doubled_noise() {
        let eta = 0.8;
        let ch = amplifier(1.0 / eta)
            .unwrap()
            .compose(&photon_loss(eta).unwrap())
            .unwrap();
        assert_relative_eq!(ch.k(), &DMatrix::identity(2, 2), epsilon = 1e-12);
        let expect = DMatrix::identity(2, 2) * (2.0 * (1.0 - eta) / eta);
        assert_relative_eq!(ch.m(), &expect, epsilon = 1e-12);
    }

    #[test]
    fn compose_identity_is_neutral() {
        let ch = photon_loss(0.3).unwrap();
        let out = identity(1).compose(&ch).unwrap();
        assert_relative_eq!(out.k(), ch.k(), epsilon = 1e-15);
        assert_relative_eq!(out.m(), ch.m(), epsilon = 1e-15);
        assert_relative_eq!(out.c(), ch.c(), epsilon = 1e-15);
    }

    #[test]
    fn cp_output_states_stay_bona_fide() {
        let st = GaussianState::coherent(0.9, 0.1);
        for ch in [photon_loss(0.4).unwrap(), amplifier(2.5).unwrap()] {
            let out = ch.apply(&st).unwrap();
            assert!(out.is_bona_fide());
        }
    }

    #[test]
    fn non_psd_noise_is_rejected() {
        let k = DMatrix::identity(2, 2);
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -0.5]);
        assert!(matches!(
            GaussianChannel::new(k, m, DVector::zeros(2)),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn new_cp_rejects_noiseless_attenuation() {
        // K = 0.5·𝟙 with M = 0 is not a physical channel.
        let ch = GaussianChannel::new_cp(
            DMatrix::identity(2, 2) * 0.5,
            DMatrix::zeros(2, 2),
            DVector::zeros(2),
        );
        assert!(ch.is_err());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let st2 = GaussianState::vacuum().tensor(&GaussianState::vacuum());
        assert!(matches!(
            photon_loss(0.5).unwrap().apply(&st2),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(identity(2).compose(&identity(1)).is_err());
    }
}
