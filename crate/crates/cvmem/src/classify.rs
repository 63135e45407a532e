//! Channel classification: completely positive (CP), Gaussian
//! incompatibility breaking (gIB), entanglement breaking (EB).
//!
//! For one mode the three conditions reduce to determinant inequalities
//! (using `KΩKᵀ = Ω·det K` and `M + iκΩ ⪰ 0 ⇔ det M ≥ κ²`):
//!
//! * CP:  `det M ≥ (det K - 1)²`
//! * gIB: `det M ≥ (det K)²`
//! * EB:  `det M ≥ (det K + 1)²`
//!
//! For `n > 1` modes, CP and gIB are decided through the minimum eigenvalue
//! of the corresponding Hermitian condition matrix. The multi-mode EB
//! criterion requires exhibiting a split `M = M₁ + M₂` with `M₁ + iΩ ⪰ 0`
//! and `M₂ - iKΩKᵀ ⪰ 0`; deciding that feasibility problem is out of scope,
//! so EB is reported as undecided for `n > 1`.

use rand::Rng as _;
use rand_distr::StandardNormal;

use nalgebra::{DMatrix, DVector};

use crate::channel::GaussianChannel;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rng::Rng;
use crate::state::{omega, POSITIVITY_TOL, SYMMETRY_TOL};

/// Classification flags with their decision margins.
///
/// For one mode the slacks are determinant differences (`det M` minus the
/// respective threshold); for `n > 1` they are minimum eigenvalues of the
/// condition matrices. `is_eb`/`slack_eb` are `None` when the EB question is
/// undecided (multi-mode channels). The EB and gIB flags are only meaningful
/// when `is_cp` is true.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelClassification {
    pub is_cp: bool,
    pub is_gib: bool,
    pub is_eb: Option<bool>,
    pub slack_cp: f64,
    pub slack_gib: f64,
    pub slack_eb: Option<f64>,
}

/// Classify a channel against the CP/gIB/EB criteria.
pub fn classify(ch: &GaussianChannel) -> Result<ChannelClassification> {
    let asym = linalg::max_asymmetry(ch.m());
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric { what: "noise matrix M", max_asymmetry: asym });
    }
    let min_eig_m = linalg::min_eig_symmetric(ch.m());
    if min_eig_m < -POSITIVITY_TOL {
        return Err(Error::NotPositiveSemidefinite { what: "noise matrix M", min_eig: min_eig_m });
    }

    let n = ch.n_modes();
    if n == 1 {
        let det_k = ch.k().determinant();
        let det_m = ch.m().determinant();
        let slack_cp = det_m - (det_k - 1.0).powi(2);
        let slack_gib = det_m - det_k.powi(2);
        let slack_eb = det_m - (det_k + 1.0).powi(2);
        Ok(ChannelClassification {
            is_cp: slack_cp >= -POSITIVITY_TOL,
            is_gib: slack_gib >= -POSITIVITY_TOL,
            is_eb: Some(slack_eb >= -POSITIVITY_TOL),
            slack_cp,
            slack_gib,
            slack_eb: Some(slack_eb),
        })
    } else {
        let om = omega(n);
        let kokt = ch.k() * &om * ch.k().transpose();
        let slack_cp = linalg::min_eig_hermitian(ch.m(), &(&om - &kokt));
        let slack_gib = linalg::min_eig_hermitian(ch.m(), &(-&kokt));
        Ok(ChannelClassification {
            is_cp: slack_cp >= -POSITIVITY_TOL,
            is_gib: slack_gib >= -POSITIVITY_TOL,
            is_eb: None,
            slack_cp,
            slack_gib,
            slack_eb: None,
        })
    }
}

fn rotation(theta: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()])
}

/// Random symmetric positive definite 2×2 matrix with the given determinant:
/// a rotated `diag(u, det/u)` with a mild random eccentricity.
fn random_spd_with_det(det: f64, rng: &mut Rng) -> DMatrix<f64> {
    let theta = rng.random::<f64>() * std::f64::consts::TAU;
    let ecc = (rng.random::<f64>() - 0.5).exp(); // eccentricity in e^[-1/2, 1/2]
    let u = det.sqrt() * ecc;
    let d = DMatrix::from_row_slice(2, 2, &[u, 0.0, 0.0, det / u]);
    let q = rotation(theta);
    linalg::symmetrize(&(&q * d * q.transpose()))
}

/// Random 2×2 matrix with the given determinant: rotation · squeeze ·
/// rotation, scaled to the target determinant.
fn random_k_with_det(det: f64, rng: &mut Rng) -> DMatrix<f64> {
    let t = (rng.random::<f64>() - 0.5).exp();
    let sq = DMatrix::from_row_slice(2, 2, &[t, 0.0, 0.0, 1.0 / t]);
    let u = rotation(rng.random::<f64>() * std::f64::consts::TAU);
    let v = rotation(rng.random::<f64>() * std::f64::consts::TAU);
    let unimodular = u * sq * v;
    unimodular * det.abs().sqrt() * if det < 0.0 { -1.0 } else { 1.0 }
}

/// Sample a random single-mode CP channel (not necessarily gIB or EB):
/// `det K` uniform in `[-1.5, 1.5]`, `det M` between the CP threshold and
/// four times it, random shapes, Gaussian displacement offset.
pub fn random_cp_channel(rng: &mut Rng) -> GaussianChannel {
    let det_k = (rng.random::<f64>() - 0.5) * 3.0;
    let floor = (det_k - 1.0).powi(2);
    let det_m = (floor + 1e-6) * (1.0 + 3.0 * rng.random::<f64>());
    let k = random_k_with_det(det_k, rng);
    let m = random_spd_with_det(det_m, rng);
    let c = DVector::from_column_slice(&[rng.sample(StandardNormal), rng.sample(StandardNormal)]);
    GaussianChannel::new_cp(k, m, c).expect("sampled channel satisfies the CP bound")
}

/// Sample a random single-mode CP **non-gIB** channel, the regime where a
/// recalibration plan exists: `det K` uniform in `(0.5, 1.5]`, `det M`
/// uniform (with a safety margin) in `((det K - 1)², det K²)`.
pub fn random_cp_non_gib_channel(rng: &mut Rng) -> GaussianChannel {
    let det_k = 0.5 + rng.random::<f64>();
    let lo = (det_k - 1.0).powi(2);
    let hi = det_k * det_k;
    // stay strictly inside the CP/gIB window so classification is unambiguous
    let frac = 0.02 + 0.96 * rng.random::<f64>();
    let det_m = lo + frac * (hi - lo);
    let k = random_k_with_det(det_k, rng);
    let m = random_spd_with_det(det_m, rng);
    let c = DVector::from_column_slice(&[rng.sample(StandardNormal), rng.sample(StandardNormal)]);
    GaussianChannel::new_cp(k, m, c).expect("sampled channel satisfies the CP bound")
}
