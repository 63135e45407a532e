//! Small dense-matrix helpers shared across the crate.
//!
//! The positivity conditions in this toolkit are all stated on Hermitian
//! matrices of the form `R + i·C` with `R` real symmetric and `C` real
//! antisymmetric. Instead of pulling in a complex eigensolver we use the
//! standard real embedding
//!
//! ```text
//!   R + i·C  ⪰  0   ⇔   [[R, -C], [C, R]]  ⪰  0
//! ```
//!
//! whose eigenvalues are those of `R + i·C`, each with doubled multiplicity.

use nalgebra::DMatrix;

/// Largest absolute entry of `m - mᵀ`.
pub fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Replace `m` by its symmetric part `(m + mᵀ)/2`.
pub fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// Minimum eigenvalue of the real symmetric matrix `m`.
pub fn min_eig_symmetric(m: &DMatrix<f64>) -> f64 {
    m.clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Minimum eigenvalue of the Hermitian matrix `re + i·im`, computed through
/// the real embedding `[[re, -im], [im, re]]`.
///
/// `re` must be symmetric and `im` antisymmetric; this is not re-checked here.
pub fn min_eig_hermitian(re: &DMatrix<f64>, im: &DMatrix<f64>) -> f64 {
    let n = re.nrows();
    assert_eq!(re.shape(), (n, n));
    assert_eq!(im.shape(), (n, n));
    let mut emb = DMatrix::<f64>::zeros(2 * n, 2 * n);
    emb.view_mut((0, 0), (n, n)).copy_from(re);
    emb.view_mut((n, n), (n, n)).copy_from(re);
    emb.view_mut((0, n), (n, n)).copy_from(&(-im));
    emb.view_mut((n, 0), (n, n)).copy_from(im);
    min_eig_symmetric(&emb)
}
