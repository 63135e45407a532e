//! The certification protocol: round simulation and the Monte Carlo runner.
//!
//! One round: Alice draws `α ∼ prior_a`, sends `|α⟩`; Eve's strategy acts on
//! it (channels for joint strategies, an immediate measurement for one-way
//! LOCC ones); only then Alice draws `β ∼ prior_b` and sends `|β⟩`; Eve
//! outputs `(ξ_x, ξ_p)` and the round scores
//!
//! ```text
//!   W = (ξ_x - (α_x + β_x))² + (ξ_p - (α_p - β_p))².
//! ```
//!
//! The runner splits `rounds` into chunks of `chunk_size`; chunk `i` draws
//! from `chunk_rng(seed, i)` and accumulates `(Σ W, Σ W², count)` with
//! compensated summation. Chunks may execute on any number of threads;
//! aggregation folds the per-chunk triples in chunk order, so the result is
//! bit-identical for a fixed `(seed, rounds, chunk_size)` triple regardless
//! of scheduling.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::prior::Prior;
use crate::rng::{chunk_rng, KahanSum, Rng};
use crate::state::GaussianState;
use crate::strategy::EveStrategy;

/// One protocol round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Round {
    pub alpha: (f64, f64),
    pub beta: (f64, f64),
    pub xi: (f64, f64),
    pub score: f64,
}

/// Simulate a single round of the protocol.
pub fn run_round(
    strategy: &EveStrategy,
    prior_a: &Prior,
    prior_b: &Prior,
    rng: &mut Rng,
) -> Result<Round> {
    let alpha = prior_a.sample(rng);
    let alpha_state = GaussianState::coherent(alpha.0, alpha.1);

    let (beta, xi) = match strategy {
        EveStrategy::Joint(js) => {
            // the α arm is stored (pre → memory → post) before β exists
            let stored = js.store_alpha(&alpha_state)?;
            let beta = prior_b.sample(rng);
            let beta_state = GaussianState::coherent(beta.0, beta.1);
            (beta, js.measure(&stored, beta_state, rng)?)
        }
        EveStrategy::OneWayLocc(locc) => {
            // measuring α consumes it; only the classical record survives
            let record = locc.measure_alpha(alpha_state, rng);
            let beta = prior_b.sample(rng);
            let beta_state = GaussianState::coherent(beta.0, beta.1);
            (beta, locc.estimate(&record, beta_state, rng))
        }
    };

    let ex = xi.0 - (alpha.0 + beta.0);
    let ep = xi.1 - (alpha.1 - beta.1);
    Ok(Round { alpha, beta, xi, score: ex * ex + ep * ep })
}

/// Parameters of a Monte Carlo run. Results depend only on this triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSpec {
    pub rounds: u64,
    pub seed: u64,
    pub chunk_size: u64,
}

impl RunSpec {
    pub fn new(rounds: u64, seed: u64, chunk_size: u64) -> Result<Self> {
        if rounds == 0 {
            return Err(Error::invalid("rounds must be positive"));
        }
        if chunk_size == 0 {
            return Err(Error::invalid("chunk size must be positive"));
        }
        Ok(RunSpec { rounds, seed, chunk_size })
    }
}

/// Monte Carlo estimate of the witness mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessEstimate {
    pub mean: f64,
    /// Standard error of the mean: sample standard deviation over √n.
    pub stderr: f64,
    pub n: u64,
}

#[derive(Debug, Clone, Copy)]
struct ChunkStats {
    sum: f64,
    sumsq: f64,
    count: u64,
}

fn run_chunk(
    strategy: &EveStrategy,
    prior_a: &Prior,
    prior_b: &Prior,
    seed: u64,
    chunk_index: u64,
    len: u64,
) -> Result<ChunkStats> {
    let mut rng = chunk_rng(seed, chunk_index);
    let mut sum = KahanSum::new();
    let mut sumsq = KahanSum::new();
    for _ in 0..len {
        let round = run_round(strategy, prior_a, prior_b, &mut rng)?;
        sum.add(round.score);
        sumsq.add(round.score * round.score);
    }
    Ok(ChunkStats { sum: sum.value(), sumsq: sumsq.value(), count: len })
}

/// Estimate `⟨W⟩` over `spec.rounds` rounds. Deterministic in
/// `(seed, rounds, chunk_size)`; chunks run in parallel.
pub fn estimate_witness(
    strategy: &EveStrategy,
    prior_a: &Prior,
    prior_b: &Prior,
    spec: &RunSpec,
) -> Result<WitnessEstimate> {
    let n_chunks = spec.rounds.div_ceil(spec.chunk_size);
    let chunks: Vec<ChunkStats> = (0..n_chunks)
        .into_par_iter()
        .map(|i| {
            let start = i * spec.chunk_size;
            let len = spec.chunk_size.min(spec.rounds - start);
            run_chunk(strategy, prior_a, prior_b, spec.seed, i, len)
        })
        .collect::<Result<_>>()?;

    // fold in chunk order — independent of which thread ran which chunk
    let mut sum = KahanSum::new();
    let mut sumsq = KahanSum::new();
    let mut n = 0u64;
    for ch in &chunks {
        sum.add(ch.sum);
        sumsq.add(ch.sumsq);
        n += ch.count;
    }
    let nf = n as f64;
    let mean = sum.value() / nf;
    let var = if n > 1 {
        ((sumsq.value() - nf * mean * mean) / (nf - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(WitnessEstimate { mean, stderr: (var / nf).sqrt(), n })
}
