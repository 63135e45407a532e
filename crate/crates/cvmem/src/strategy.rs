//! Eve's measurement strategies.
//!
//! Two shapes exist, mirroring the operational split between genuine quantum
//! memories and measure-and-prepare ones:
//!
//! * [`JointStrategy`]: the α state passes through `pre ∘ memory ∘ post`
//!   (in time order), survives as a quantum system until β arrives, and the
//!   two are measured jointly (balanced beamsplitter, homodyne `x` on the
//!   “+” port and `p` on the “−” port, affine rescale).
//! * [`OneWayLocc`]: the α state is measured immediately and destroyed,
//!   leaving only a [`ClassicalRecord`] of plain numbers; the estimate for
//!   `(ξ_x, ξ_p)` is produced later from that record and the β state alone.
//!
//! The one-way shape is enforced by the interface itself: `measure_alpha`
//! takes the α state **by value** and returns a record that can only hold
//! `f64` data, and `estimate` receives just the record and β. There is no
//! access path from the estimation phase back to the α system.
//!
//! ```
//! use cvmem::{chunk_rng, eb_prior_mean_strategy, EveStrategy, GaussianState};
//!
//! let strategy = eb_prior_mean_strategy();
//! let EveStrategy::OneWayLocc(locc) = &strategy else { unreachable!() };
//! let mut rng = chunk_rng(1, 0);
//! let alpha = GaussianState::coherent(0.1, 0.2);
//! let record = locc.measure_alpha(alpha, &mut rng);
//! let beta = GaussianState::coherent(-0.3, 0.0);
//! let (xi_x, xi_p) = locc.estimate(&record, beta, &mut rng);
//! assert_eq!((xi_x, xi_p), (0.0, 0.0));
//! ```
//!
//! Attempting to touch the α state after the record is produced does not
//! compile — the state was moved into `measure_alpha`:
//!
//! ```compile_fail
//! use cvmem::{chunk_rng, eb_shrinkage_strategy, EveStrategy, GaussianState};
//!
//! let strategy = eb_shrinkage_strategy(2.0, 2.0).unwrap();
//! let EveStrategy::OneWayLocc(locc) = &strategy else { unreachable!() };
//! let mut rng = chunk_rng(1, 0);
//! let alpha = GaussianState::coherent(0.1, 0.2);
//! let record = locc.measure_alpha(alpha, &mut rng);
//! let cheat = alpha.disp(); // ERROR: `alpha` was moved when the record was made
//! ```
//!
//! Nor can an estimate closure smuggle the state across the classical gap —
//! a record is built from `f64`s only:
//!
//! ```compile_fail
//! use cvmem::{ClassicalRecord, GaussianState};
//!
//! let alpha = GaussianState::coherent(0.1, 0.2);
//! let record = ClassicalRecord::new(vec![alpha]); // ERROR: expected Vec<f64>
//! ```

use std::f64::consts::SQRT_2;
use std::sync::Arc;

use crate::channel::{amplifier, balanced_beamsplitter, identity, photon_loss, GaussianChannel};
use crate::error::{Error, Result};
use crate::measurement::{sample_heterodyne, sample_quadratures, Quadrature};
use crate::recalibrate::synthesize_recalibration;
use crate::rng::Rng;
use crate::state::GaussianState;

/// Classical data produced by measuring the α system: plain numbers only.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalRecord {
    values: Vec<f64>,
}

impl ClassicalRecord {
    pub fn new(values: Vec<f64>) -> Self {
        ClassicalRecord { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// A measure-α-first, classically-communicate, measure-β-later strategy.
///
/// `measure_alpha` consumes the α state; `estimate` sees only the classical
/// record and the β state. See the module docs for the shape guarantees.
pub trait OneWayLocc: Send + Sync {
    fn measure_alpha(&self, alpha: GaussianState, rng: &mut Rng) -> ClassicalRecord;

    fn estimate(&self, record: &ClassicalRecord, beta: GaussianState, rng: &mut Rng)
        -> (f64, f64);
}

/// The joint measurement closing a [`JointStrategy`]: optionally process β,
/// mix the two arms on the balanced beamsplitter, homodyne `x` on port 1 and
/// `p` on port 2, rescale both outcomes.
#[derive(Debug, Clone)]
pub struct JointMeasurement {
    pub beta_channel: Option<GaussianChannel>,
    pub scale: f64,
}

/// A strategy that keeps the α system quantum until β arrives.
#[derive(Debug, Clone)]
pub struct JointStrategy {
    pub pre: GaussianChannel,
    pub memory: GaussianChannel,
    pub post: GaussianChannel,
    pub measurement: JointMeasurement,
}

impl JointStrategy {
    /// Storage phase: the α state passes through `pre → memory → post`.
    /// Happens before β exists.
    pub fn store_alpha(&self, alpha: &GaussianState) -> Result<GaussianState> {
        self.post.apply(&self.memory.apply(&self.pre.apply(alpha)?)?)
    }

    /// Measurement phase: β through the β-arm channel, balanced
    /// beamsplitter, homodyne `x` on port 1 and `p` on port 2, rescale.
    pub fn measure(
        &self,
        stored: &GaussianState,
        beta: GaussianState,
        rng: &mut Rng,
    ) -> Result<(f64, f64)> {
        let processed_beta = match &self.measurement.beta_channel {
            Some(ch) => ch.apply(&beta)?,
            None => beta,
        };
        let mixed = balanced_beamsplitter().apply(&stored.tensor(&processed_beta))?;
        let v = sample_quadratures(&mixed, &[(0, Quadrature::X), (1, Quadrature::P)], rng)?;
        Ok((self.measurement.scale * v[0], self.measurement.scale * v[1]))
    }
}

/// A strategy for Eve: either joint (quantum memory in use) or one-way LOCC
/// (the operational shadow of an entanglement-breaking memory).
#[derive(Clone)]
#[allow(clippy::large_enum_variant)] // strategies are built once per run
pub enum EveStrategy {
    Joint(JointStrategy),
    OneWayLocc(Arc<dyn OneWayLocc>),
}

impl std::fmt::Debug for EveStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EveStrategy::Joint(js) => f.debug_tuple("Joint").field(js).finish(),
            EveStrategy::OneWayLocc(_) => f.write_str("OneWayLocc(..)"),
        }
    }
}

/// The honest strategy for a perfect memory: identity channels, balanced
/// beamsplitter, homodyne `x̂_E` on port 1 and `p̂_E` on port 2. Outcomes are
/// already unbiased for `(α_x+β_x, α_p-β_p)` — the √2 of the displacement
/// convention cancels against the beamsplitter — with variance 1/2 each,
/// so the expected score is exactly 1.
pub fn honest_strategy() -> EveStrategy {
    EveStrategy::Joint(JointStrategy {
        pre: identity(1),
        memory: identity(1),
        post: identity(1),
        measurement: JointMeasurement { beta_channel: None, scale: 1.0 },
    })
}

/// The strategy tailored to a photon-loss memory of efficiency `η`: amplify
/// the stored arm by `ν ∈ [1, 1/η]`, attenuate β to the matching total
/// transmissivity `ην`, mix, homodyne, and rescale by `1/√(ην)`. Unbiased,
/// with expected score exactly `1/η` for every admissible `ν`.
pub fn tailored_loss_strategy(eta: f64, nu: f64) -> Result<EveStrategy> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::invalid(format!("eta={eta} must lie in (0, 1]")));
    }
    if !(1.0..=1.0 / eta + 1e-12).contains(&nu) {
        return Err(Error::invalid(format!(
            "nu={nu} must lie in [1, 1/eta] = [1, {}]",
            1.0 / eta
        )));
    }
    let eta_nu = (eta * nu).min(1.0);
    Ok(EveStrategy::Joint(JointStrategy {
        pre: identity(1),
        memory: photon_loss(eta)?,
        post: amplifier(nu)?,
        measurement: JointMeasurement {
            beta_channel: Some(photon_loss(eta_nu)?),
            scale: 1.0 / eta_nu.sqrt(),
        },
    }))
}

/// The generic strategy for an arbitrary CP non-gIB single-mode memory:
/// wrap it in the synthesized recalibration pair and run the honest
/// measurement. Expected score `(3+λ)/2 < 2`.
pub fn generic_recalibrated_strategy(mem: GaussianChannel) -> Result<EveStrategy> {
    let plan = synthesize_recalibration(&mem)?;
    Ok(EveStrategy::Joint(JointStrategy {
        pre: plan.g1,
        memory: mem,
        post: plan.g2,
        measurement: JointMeasurement { beta_channel: None, scale: 1.0 },
    }))
}

/// Optimal one-way LOCC strategy under Gaussian priors: heterodyne each
/// state and shrink the estimate toward the prior mean by the posterior
/// factor `σ²/(1+σ²)`. Attains the entanglement-breaking bound
/// `σ_α²/(1+σ_α²) + σ_β²/(1+σ_β²)`.
pub fn eb_shrinkage_strategy(sigma_a: f64, sigma_b: f64) -> Result<EveStrategy> {
    if !(sigma_a > 0.0 && sigma_b > 0.0) {
        return Err(Error::invalid(format!(
            "prior widths must be positive (got {sigma_a}, {sigma_b})"
        )));
    }
    let shrink = |s: f64| s * s / (1.0 + s * s);
    Ok(EveStrategy::OneWayLocc(Arc::new(ShrinkageStrategy {
        shrink_a: shrink(sigma_a),
        shrink_b: shrink(sigma_b),
    })))
}

/// Degenerate one-way LOCC strategy that ignores both states and returns the
/// prior means (zero for the centered priors used here). Expected score
/// `σ_α² + σ_β²` under Gaussian priors.
pub fn eb_prior_mean_strategy() -> EveStrategy {
    EveStrategy::OneWayLocc(Arc::new(PriorMeanStrategy))
}

struct ShrinkageStrategy {
    shrink_a: f64,
    shrink_b: f64,
}

impl OneWayLocc for ShrinkageStrategy {
    fn measure_alpha(&self, alpha: GaussianState, rng: &mut Rng) -> ClassicalRecord {
        // heterodyne estimates D = √2·α, so divide by √2 for amplitude units
        let (dx, dp) = sample_heterodyne(&alpha, 0, rng).expect("single-mode heterodyne");
        ClassicalRecord::new(vec![
            self.shrink_a * dx / SQRT_2,
            self.shrink_a * dp / SQRT_2,
        ])
    }

    fn estimate(
        &self,
        record: &ClassicalRecord,
        beta: GaussianState,
        rng: &mut Rng,
    ) -> (f64, f64) {
        let (dx, dp) = sample_heterodyne(&beta, 0, rng).expect("single-mode heterodyne");
        let bx = self.shrink_b * dx / SQRT_2;
        let bp = self.shrink_b * dp / SQRT_2;
        (record.values()[0] + bx, record.values()[1] - bp)
    }
}

struct PriorMeanStrategy;

impl OneWayLocc for PriorMeanStrategy {
    fn measure_alpha(&self, _alpha: GaussianState, _rng: &mut Rng) -> ClassicalRecord {
        ClassicalRecord::new(Vec::new())
    }

    fn estimate(
        &self,
        _record: &ClassicalRecord,
        _beta: GaussianState,
        _rng: &mut Rng,
    ) -> (f64, f64) {
        (0.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::chunk_rng;

    #[test]
    fn parameter_validation() {
        assert!(tailored_loss_strategy(0.0, 1.0).is_err());
        assert!(tailored_loss_strategy(1.1, 1.0).is_err());
        assert!(tailored_loss_strategy(0.8, 0.9).is_err());
        assert!(tailored_loss_strategy(0.8, 1.3).is_err()); // ν > 1/η
        assert!(tailored_loss_strategy(0.8, 1.25).is_ok());
        assert!(eb_shrinkage_strategy(0.0, 1.0).is_err());
        assert!(generic_recalibrated_strategy(photon_loss(0.3).unwrap()).is_err());
    }

    #[test]
    fn honest_strategy_is_unbiased_per_round() {
        let EveStrategy::Joint(js) = honest_strategy() else { unreachable!() };
        let mut rng = chunk_rng(31, 0);
        let (ax, ap, bx, bp) = (1.2, -0.4, 0.3, 0.9);
        let n = 100_000;
        let mut sx = 0.0;
        let mut sp = 0.0;
        for _ in 0..n {
            let stored = js.store_alpha(&GaussianState::coherent(ax, ap)).unwrap();
            let (xi_x, xi_p) =
                js.measure(&stored, GaussianState::coherent(bx, bp), &mut rng).unwrap();
            sx += xi_x - (ax + bx);
            sp += xi_p - (ap - bp);
        }
        let se = (0.5f64 / n as f64).sqrt();
        assert!((sx / n as f64).abs() < 5.0 * se);
        assert!((sp / n as f64).abs() < 5.0 * se);
    }

    #[test]
    fn prior_mean_strategy_always_answers_zero() {
        let EveStrategy::OneWayLocc(s) = eb_prior_mean_strategy() else { unreachable!() };
        let mut rng = chunk_rng(32, 0);
        let rec = s.measure_alpha(GaussianState::coherent(5.0, -5.0), &mut rng);
        assert!(rec.values().is_empty());
        let xi = s.estimate(&rec, GaussianState::coherent(3.0, 3.0), &mut rng);
        assert_eq!(xi, (0.0, 0.0));
    }

    #[test]
    fn shrinkage_record_carries_two_floats() {
        let EveStrategy::OneWayLocc(s) = eb_shrinkage_strategy(2.0, 2.0).unwrap() else {
            unreachable!()
        };
        let mut rng = chunk_rng(33, 0);
        let rec = s.measure_alpha(GaussianState::coherent(1.0, 1.0), &mut rng);
        assert_eq!(rec.values().len(), 2);
    }
}
