//! Recalibration synthesis for CP non-gIB memories.
//!
//! Given a single-mode CP channel `(K, M, c)` that is **not** Gaussian
//! incompatibility breaking, build pre/post Gaussian channels `G₁`, `G₂`
//! such that `G₂ ∘ M ∘ G₁` maps every coherent input to a state with
//! covariance `(2+λ)·𝟙` and unchanged displacement, where
//! `λ = √(det M / det K²) < 1` is the symplectic eigenvalue of
//! `A = K⁻¹MK⁻ᵀ`. With the honest beamsplitter-plus-homodyne measurement
//! this achieves a witness score of `(3+λ)/2 < 2`.
//!
//! Construction: Williamson-factor `A = S⁻¹·λ𝟙·S⁻ᵀ`, then
//! `G₁ = (S⁻¹, 0, 0)` and `G₂ = (SK⁻¹, 𝟙, -SK⁻¹c)`.

use nalgebra::{DMatrix, DVector};

use crate::channel::GaussianChannel;
use crate::classify::classify;
use crate::error::{Error, Result};
use crate::linalg;
use crate::state::GaussianState;
use crate::williamson::williamson_1mode;

/// A synthesized pre/post-processing pair with its predicted performance.
#[derive(Debug, Clone, PartialEq)]
pub struct RecalibrationPlan {
    /// Pre-processing channel `G₁ = (S⁻¹, 0, 0)` (a symplectic unitary).
    pub g1: GaussianChannel,
    /// Post-processing channel `G₂ = (SK⁻¹, 𝟙, -SK⁻¹c)`.
    pub g2: GaussianChannel,
    /// Symplectic eigenvalue `λ < 1` of `K⁻¹MK⁻ᵀ`.
    pub lam: f64,
    /// `Tr Σ^{(α')} = 2(1+λ) + 2`, strictly below 6.
    pub predicted_trace: f64,
    /// Expected witness score `(Tr Σ^{(α')} + 2)/4 = (3+λ)/2`.
    pub predicted_witness: f64,
}

/// Determinant threshold below which `K` is treated as singular.
const SINGULAR_TOL: f64 = 1e-12;

/// Noise threshold below which the memory is treated as unitary (`M = 0`).
const ZERO_NOISE_TOL: f64 = 1e-12;

/// Synthesize the recalibration plan for a single-mode CP non-gIB memory.
///
/// Errors: non-single-mode or non-CP input, gIB input (no plan exists),
/// singular `K`. A CP non-gIB input mathematically implies `det K > 1/2`
/// and `λ < 1`; violations of either are internal-consistency errors.
pub fn synthesize_recalibration(mem: &GaussianChannel) -> Result<RecalibrationPlan> {
    if mem.n_modes() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: mem.n_modes() });
    }
    let cls = classify(mem)?;
    if !cls.is_cp {
        return Err(Error::NotPositiveSemidefinite {
            what: "M + iΩ - iKΩKᵀ (memory is not CP)",
            min_eig: cls.slack_cp,
        });
    }
    if cls.is_gib {
        return Err(Error::GibChannel { slack_gib: cls.slack_gib });
    }

    let det_k = mem.k().determinant();
    if det_k.abs() < SINGULAR_TOL {
        return Err(Error::SingularK);
    }
    // CP ∧ non-gIB forces det K² > det M ≥ (det K - 1)², hence det K > 1/2.
    if det_k <= 0.5 {
        return Err(Error::InternalAssertion(format!(
            "det K = {det_k} ≤ 1/2 for a CP non-gIB channel"
        )));
    }
    let k_inv = mem.k().clone().try_inverse().ok_or(Error::SingularK)?;

    let (lam, s_inv, s) = if mem.m().amax() <= ZERO_NOISE_TOL {
        // Unitary memory (M = 0): the Williamson input A = K⁻¹MK⁻ᵀ degenerates,
        // but the construction's λ → 0 limit is plain inversion, G₂ = (K⁻¹, 𝟙, -K⁻¹c).
        (0.0, DMatrix::identity(2, 2), DMatrix::identity(2, 2))
    } else {
        let a = linalg::symmetrize(&(&k_inv * mem.m() * k_inv.transpose()));
        let w = williamson_1mode(&a)?;
        let s = w.s();
        (w.lam, w.s_inv, s)
    };
    if lam >= 1.0 {
        return Err(Error::InternalAssertion(format!(
            "symplectic eigenvalue λ = {lam} ≥ 1 for a non-gIB channel"
        )));
    }

    let g1 = GaussianChannel::new(s_inv, DMatrix::zeros(2, 2), DVector::zeros(2))?;
    let k2 = &s * &k_inv;
    let c2 = -(&k2 * mem.c());
    let g2 = GaussianChannel::new(k2, DMatrix::identity(2, 2), c2)?;
    if !g1.is_cp() || !g2.is_cp() {
        return Err(Error::InternalAssertion(
            "synthesized G₁/G₂ failed the CP check".into(),
        ));
    }

    let predicted_trace = 2.0 * (1.0 + lam) + 2.0;
    let predicted_witness = (predicted_trace + 2.0) / 4.0;
    if predicted_trace >= 6.0 {
        return Err(Error::InternalAssertion(format!(
            "predicted trace {predicted_trace} ≥ 6"
        )));
    }

    // Verify on a probe coherent state: the composed channel must produce
    // Σ = (2+λ)·𝟙 with the displacement left untouched.
    let composed = g2.compose(mem)?.compose(&g1)?;
    let probe = GaussianState::coherent(0.37, -1.21);
    let out = composed.apply(&probe)?;
    let target_cov = DMatrix::identity(2, 2) * (2.0 + lam);
    if (out.cov() - &target_cov).amax() > 1e-8 || (out.disp() - probe.disp()).amax() > 1e-8 {
        return Err(Error::InternalAssertion(
            "recalibrated channel does not reproduce (2+λ)·𝟙 with unbiased displacement".into(),
        ));
    }

    Ok(RecalibrationPlan { g1, g2, lam, predicted_trace, predicted_witness })
}
