//! Gaussian states in phase space.
//!
//! An `n`-mode Gaussian state is stored as its covariance matrix `Σ` and
//! displacement vector `D` in **xxpp ordering**: quadrature index `i < n` is
//! `x̂_i`, index `n + i` is `p̂_i`.
//!
//! Conventions (fixed once, globally):
//! * `Σ_ij = ⟨{Δr̂_i, Δr̂_j}⟩`, so coherent states have `Σ = 𝟙` and a homodyne
//!   measurement of quadrature `q` has variance `Σ_qq / 2` (coherent states
//!   measure with variance 1/2).
//! * A coherent state `|α⟩` has `D = √2·(α_x, α_p)`.
//! * The bona fide condition is `Σ + iΩ ⪰ 0` with `Ω = [[0, -𝟙], [𝟙, 0]]`.

use nalgebra::{DMatrix, DVector};
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::linalg;

/// Minimum-eigenvalue threshold used for every positivity check in the crate
/// (`bona fide`, CP, gIB). Double-precision accumulation over the small
/// Hermitian eigenproblems involved stays well inside this margin.
pub const POSITIVITY_TOL: f64 = 1e-9;

/// Entry-wise tolerance for symmetry checks.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// The symplectic form `Ω` of `n` modes in xxpp ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    n_modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Self {
        let mut m = DMatrix::zeros(2 * n_modes, 2 * n_modes);
        for i in 0..n_modes {
            m[(i, n_modes + i)] = -1.0;
            m[(n_modes + i, i)] = 1.0;
        }
        SymplecticForm { n_modes, matrix: m }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

/// Convenience: the `2n×2n` matrix of `Ω`.
pub fn omega(n_modes: usize) -> DMatrix<f64> {
    SymplecticForm::new(n_modes).matrix.clone()
}

/// An `n`-mode Gaussian state `(Σ, D)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    cov: DMatrix<f64>,
    disp: DVector<f64>,
}

impl GaussianState {
    /// Checked constructor: validates shape, symmetry of `Σ` and the bona
    /// fide condition `Σ + iΩ ⪰ -tol`.
    pub fn new(cov: DMatrix<f64>, disp: DVector<f64>) -> Result<Self> {
        let dim = disp.len();
        if dim == 0 || !dim.is_multiple_of(2) || cov.shape() != (dim, dim) {
            return Err(Error::DimensionMismatch {
                expected: dim / 2,
                got: cov.nrows() / 2,
            });
        }
        let asym = linalg::max_asymmetry(&cov);
        if asym > SYMMETRY_TOL {
            return Err(Error::NotSymmetric {
                what: "covariance matrix",
                max_asymmetry: asym,
            });
        }
        let state = GaussianState { cov, disp };
        let slack = state.bona_fide_slack();
        if slack < -POSITIVITY_TOL {
            return Err(Error::NotPositiveSemidefinite {
                what: "Σ + iΩ",
                min_eig: slack,
            });
        }
        Ok(state)
    }

    /// Internal constructor for states produced by trusted operations
    /// (channel application, tensor products); skips the eigenvalue check.
    pub(crate) fn from_parts(cov: DMatrix<f64>, disp: DVector<f64>) -> Self {
        debug_assert_eq!(cov.nrows(), disp.len());
        GaussianState { cov, disp }
    }

    /// The coherent state `|α⟩` with `α = α_x + i·α_p`: `Σ = 𝟙`,
    /// `D = √2·(α_x, α_p)`.
    pub fn coherent(alpha_x: f64, alpha_p: f64) -> Self {
        GaussianState {
            cov: DMatrix::identity(2, 2),
            disp: DVector::from_column_slice(&[SQRT_2 * alpha_x, SQRT_2 * alpha_p]),
        }
    }

    /// The single-mode vacuum (a coherent state with `α = 0`).
    pub fn vacuum() -> Self {
        Self::coherent(0.0, 0.0)
    }

    pub fn n_modes(&self) -> usize {
        self.disp.len() / 2
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    pub fn disp(&self) -> &DVector<f64> {
        &self.disp
    }

    /// Minimum eigenvalue of `Σ + iΩ`; the state is bona fide when this is
    /// `≥ -POSITIVITY_TOL`.
    pub fn bona_fide_slack(&self) -> f64 {
        let om = omega(self.n_modes());
        linalg::min_eig_hermitian(&self.cov, &om)
    }

    pub fn is_bona_fide(&self) -> bool {
        self.bona_fide_slack() >= -POSITIVITY_TOL
    }

    /// Tensor product `self ⊗ other`, keeping xxpp ordering: the x block of
    /// the result is `(x_self…, x_other…)`, then the p block likewise.
    pub fn tensor(&self, other: &GaussianState) -> GaussianState {
        let (na, nb) = (self.n_modes(), other.n_modes());
        let n = na + nb;
        let mut cov = DMatrix::zeros(2 * n, 2 * n);
        let mut disp = DVector::zeros(2 * n);
        // Interleave block indices: mode i of `self` stays mode i, mode j of
        // `other` becomes mode na + j.
        let map_a = |q: usize| if q < na { q } else { n + (q - na) };
        let map_b = |q: usize| if q < nb { na + q } else { n + na + (q - nb) };
        for i in 0..2 * na {
            disp[map_a(i)] = self.disp[i];
            for j in 0..2 * na {
                cov[(map_a(i), map_a(j))] = self.cov[(i, j)];
            }
        }
        for i in 0..2 * nb {
            disp[map_b(i)] = other.disp[i];
            for j in 0..2 * nb {
                cov[(map_b(i), map_b(j))] = other.cov[(i, j)];
            }
        }
        GaussianState::from_parts(cov, disp)
    }

    /// The single-mode reduced state (marginal) of `mode`.
    pub fn reduced(&self, mode: usize) -> Result<GaussianState> {
        let n = self.n_modes();
        if mode >= n {
            return Err(Error::invalid(format!(
                "mode index {mode} out of range for {n}-mode state"
            )));
        }
        let idx = [mode, n + mode];
        let mut cov = DMatrix::zeros(2, 2);
        let mut disp = DVector::zeros(2);
        for (a, &i) in idx.iter().enumerate() {
            disp[a] = self.disp[i];
            for (b, &j) in idx.iter().enumerate() {
                cov[(a, b)] = self.cov[(i, j)];
            }
        }
        Ok(GaussianState::from_parts(cov, disp))
    }
}
