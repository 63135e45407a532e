//! Phase-space simulation and certification toolkit for continuous-variable
//! quantum memories.
//!
//! A quantum memory deserves the name only if it cannot be replaced by a
//! measure-and-prepare — entanglement breaking (EB) — channel. This crate
//! simulates a measurement-device-independent test of that property: Alice
//! sends two random coherent states `|α⟩` and, after the storage delay,
//! `|β⟩`; the untrusted provider returns estimates `(ξ_x, ξ_p)` of
//! `(α_x + β_x, α_p - β_p)` and is scored by the squared error
//! `W = (ξ_x - α_x - β_x)² + (ξ_p - α_p + β_p)²`. Every EB memory obeys
//! `⟨W⟩ ≥ σ_α²/(1+σ_α²) + σ_β²/(1+σ_β²)` for Gaussian input priors, while a
//! perfect memory reaches `⟨W⟩ = 1` and any non-incompatibility-breaking
//! Gaussian memory can be recalibrated below 2 — so a sufficiently low
//! score certifies the memory as non-EB.
//!
//! Module map:
//!
//! * [`state`] / [`channel`] / [`measurement`] / [`williamson`] — Gaussian
//!   phase-space core: states `(Σ, D)`, channels `(K, M, c)`, homodyne and
//!   heterodyne sampling, single-mode Williamson factors.
//! * [`classify`] / [`recalibrate`] — the CP/gIB/EB decision procedures and
//!   the recalibration synthesizer for CP non-gIB memories.
//! * [`prior`] / [`strategy`] / [`protocol`] — input priors, honest and
//!   adversarial strategies, round simulation, deterministic Monte Carlo.
//! * [`bounds`] — the EB bound and the prior Fisher-information layer.
//! * [`rng`] / [`quad`] — seeded splittable generators, Kahan summation,
//!   adaptive Simpson quadrature.

pub mod bounds;
pub mod channel;
pub mod classify;
pub mod error;
mod linalg;
pub mod measurement;
pub mod prior;
pub mod protocol;
pub mod quad;
pub mod recalibrate;
pub mod rng;
pub mod state;
pub mod strategy;
pub mod williamson;

pub use bounds::{eb_bound, equivalent_sigma, fisher_gaussian, fisher_smoothflat, smooth_indicator, FisherMatrix};
pub use channel::{amplifier, balanced_beamsplitter, identity, photon_loss, GaussianChannel};
pub use classify::{classify, random_cp_channel, random_cp_non_gib_channel, ChannelClassification};
pub use error::{Error, Result};
pub use measurement::{sample_heterodyne, sample_homodyne, sample_quadratures, Quadrature};
pub use prior::Prior;
pub use protocol::{estimate_witness, run_round, Round, RunSpec, WitnessEstimate};
pub use quad::adaptive_simpson;
pub use recalibrate::{synthesize_recalibration, RecalibrationPlan};
pub use rng::{chunk_rng, chunk_seed, splitmix64, KahanSum, Rng};
pub use state::{omega, GaussianState, SymplecticForm, POSITIVITY_TOL};
pub use strategy::{
    eb_prior_mean_strategy, eb_shrinkage_strategy, generic_recalibrated_strategy,
    honest_strategy, tailored_loss_strategy, ClassicalRecord, EveStrategy, JointMeasurement,
    JointStrategy, OneWayLocc,
};
pub use williamson::{sqrtm_2x2, williamson_1mode, WilliamsonFactors};
