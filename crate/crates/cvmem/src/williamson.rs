//! Single-mode Williamson decomposition.
//!
//! Any symmetric positive definite 2×2 matrix `A` can be symplectically
//! diagonalized as `A = S⁻¹·λ𝟙·S⁻ᵀ` with symplectic `S` (for one mode,
//! symplectic ⇔ `det S = 1`) and symplectic eigenvalue `λ = √det A`.
//! The factor is obtained in closed form: `S⁻¹ = A^{1/2}/√λ`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;
use crate::state::SYMMETRY_TOL;

/// Result of [`williamson_1mode`]: `λ` and `S⁻¹` with `det S⁻¹ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WilliamsonFactors {
    pub lam: f64,
    pub s_inv: DMatrix<f64>,
}

/// Principal square root of a symmetric positive definite 2×2 matrix, via
/// the trace/determinant identity `A^{1/2} = (A + √det A·𝟙)/√(tr A + 2√det A)`.
/// Exact for SPD 2×2, no eigensolver needed.
pub fn sqrtm_2x2(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_spd_2x2(a)?;
    let s = a.determinant().sqrt();
    let t = (a.trace() + 2.0 * s).sqrt();
    Ok((a + DMatrix::identity(2, 2) * s) / t)
}

fn check_spd_2x2(a: &DMatrix<f64>) -> Result<()> {
    if a.shape() != (2, 2) {
        return Err(Error::DimensionMismatch { expected: 1, got: a.nrows() / 2 });
    }
    let asym = linalg::max_asymmetry(a);
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric { what: "matrix A", max_asymmetry: asym });
    }
    // SPD for 2×2 ⇔ tr > 0 and det > 0
    if a.determinant() <= 0.0 || a.trace() <= 0.0 {
        return Err(Error::NotPositiveDefinite { what: "matrix A" });
    }
    Ok(())
}

/// Williamson decomposition of a symmetric positive definite 2×2 matrix:
/// `λ = √det A`, `S⁻¹ = A^{1/2}/√λ`, so that `S⁻¹·λ𝟙·S⁻ᵀ = A`.
pub fn williamson_1mode(a: &DMatrix<f64>) -> Result<WilliamsonFactors> {
    check_spd_2x2(a)?;
    let lam = a.determinant().sqrt();
    let s_inv = sqrtm_2x2(a)? / lam.sqrt();
    Ok(WilliamsonFactors { lam, s_inv })
}

impl WilliamsonFactors {
    /// `S⁻¹·λ𝟙·S⁻ᵀ`, for reconstruction checks.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.s_inv * self.s_inv.transpose() * self.lam
    }

    /// `S = (S⁻¹)⁻¹`.
    pub fn s(&self) -> DMatrix<f64> {
        // det S⁻¹ = 1, so the inverse always exists
        self.s_inv.clone().try_inverse().expect("S⁻¹ is unimodular")
    }
}
