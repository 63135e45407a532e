//! Homodyne and heterodyne measurement sampling.
//!
//! Outcomes are drawn in quadrature units: a homodyne of quadrature `q`
//! returns a Gaussian sample with mean `D_q` and variance `Σ_qq / 2` (the
//! factor 1/2 converts the anticommutator-normalized covariance to a
//! measured variance; coherent states give 1/2).
//!
//! Heterodyne (double homodyne) is realized operationally: mix the mode with
//! vacuum on a balanced beamsplitter, homodyne `x` on the “+” port and `p`
//! on the “−” port, rescale both by √2. The two outcomes are drawn jointly
//! from the distribution of the commuting pair, so correlated covariances
//! are handled exactly.

use nalgebra::DMatrix;
use rand::Rng as _;
use rand_distr::StandardNormal;
use std::f64::consts::SQRT_2;

use crate::channel::balanced_beamsplitter;
use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::state::GaussianState;

/// Which quadrature a homodyne detector measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    X,
    P,
}

impl Quadrature {
    fn index(self, mode: usize, n_modes: usize) -> usize {
        match self {
            Quadrature::X => mode,
            Quadrature::P => n_modes + mode,
        }
    }
}

/// Jointly sample a set of pairwise-commuting quadratures.
///
/// Commutation requires that no mode contributes both its `x` and its `p`;
/// the outcomes then follow a multivariate Gaussian with mean `D` restricted
/// to the selection and covariance `Σ/2` restricted likewise.
pub fn sample_quadratures(
    st: &GaussianState,
    selection: &[(usize, Quadrature)],
    rng: &mut Rng,
) -> Result<Vec<f64>> {
    let n = st.n_modes();
    let mut indices = Vec::with_capacity(selection.len());
    for &(mode, quad) in selection {
        if mode >= n {
            return Err(Error::invalid(format!(
                "mode index {mode} out of range for {n}-mode state"
            )));
        }
        indices.push(quad.index(mode, n));
    }
    for (a, &(mode_a, _)) in selection.iter().enumerate() {
        for &(mode_b, _) in &selection[a + 1..] {
            if mode_a == mode_b {
                return Err(Error::invalid(format!(
                    "quadratures x and p of mode {mode_a} do not commute"
                )));
            }
        }
    }

    let k = indices.len();
    let mut cov = DMatrix::zeros(k, k);
    for (a, &i) in indices.iter().enumerate() {
        for (b, &j) in indices.iter().enumerate() {
            cov[(a, b)] = st.cov()[(i, j)] * 0.5;
        }
    }
    let chol = cov
        .cholesky()
        .ok_or(Error::NotPositiveDefinite { what: "measured covariance" })?;
    let z: Vec<f64> = (0..k).map(|_| rng.sample(StandardNormal)).collect();
    let correlated = chol.l() * DMatrix::from_column_slice(k, 1, &z);
    Ok(indices
        .iter()
        .enumerate()
        .map(|(a, &i)| st.disp()[i] + correlated[(a, 0)])
        .collect())
}

/// Homodyne one quadrature of one mode: `N(D_q, Σ_qq/2)`.
pub fn sample_homodyne(
    st: &GaussianState,
    mode: usize,
    quadrature: Quadrature,
    rng: &mut Rng,
) -> Result<f64> {
    // single quadrature: avoid the Cholesky machinery in the hot path
    let n = st.n_modes();
    if mode >= n {
        return Err(Error::invalid(format!(
            "mode index {mode} out of range for {n}-mode state"
        )));
    }
    let i = quadrature.index(mode, n);
    let var = st.cov()[(i, i)] * 0.5;
    if var <= 0.0 {
        return Err(Error::NotPositiveDefinite { what: "measured variance" });
    }
    let z: f64 = rng.sample(StandardNormal);
    Ok(st.disp()[i] + var.sqrt() * z)
}

/// Heterodyne a mode: returns an unbiased estimate of `(D_x, D_p)`, each
/// outcome carrying variance `(Σ_qq + 1)/2`.
pub fn sample_heterodyne(st: &GaussianState, mode: usize, rng: &mut Rng) -> Result<(f64, f64)> {
    let reduced = st.reduced(mode)?;
    let joint = reduced.tensor(&GaussianState::vacuum());
    let mixed = balanced_beamsplitter().apply(&joint)?;
    let v = sample_quadratures(&mixed, &[(0, Quadrature::X), (1, Quadrature::P)], rng)?;
    Ok((SQRT_2 * v[0], SQRT_2 * v[1]))
}
