//! The entanglement-breaking bound and the prior Fisher-information layer.
//!
//! Any strategy available to an entanglement-breaking memory factors into a
//! one-way LOCC measurement, and Bayesian Cramér-Rao bounds on displacement
//! estimation then lower-bound the witness score:
//!
//! ```text
//!   ⟨W⟩ ≥ σ_α²/(1+σ_α²) + σ_β²/(1+σ_β²)
//! ```
//!
//! The prior enters through its Fisher information matrix
//! `F_ij = ∫ P (∂_i log P)(∂_j log P)`, which is diagonal for factorized
//! priors: `(2/σ²)·𝟙` for the Gaussian family and `(π²/(lδ))·𝟙` for the
//! smoothed-flat family. Matching `π²/(lδ) = 2/σ²` makes a smoothed-flat
//! prior bound-equivalent to a Gaussian one of width `σ = √(2lδ)/π`.

use nalgebra::Matrix2;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Diagonal 2×2 prior Fisher information matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherMatrix {
    matrix: Matrix2<f64>,
}

impl FisherMatrix {
    fn diagonal(f: f64) -> Self {
        FisherMatrix { matrix: Matrix2::new(f, 0.0, 0.0, f) }
    }

    pub fn matrix(&self) -> &Matrix2<f64> {
        &self.matrix
    }

    /// Fisher information of the x-quadrature marginal.
    pub fn f_x(&self) -> f64 {
        self.matrix[(0, 0)]
    }

    /// Fisher information of the p-quadrature marginal.
    pub fn f_p(&self) -> f64 {
        self.matrix[(1, 1)]
    }
}

/// Minimum witness score achievable by an entanglement-breaking memory under
/// Gaussian priors of widths `σ_α`, `σ_β`:
/// `σ_α²/(1+σ_α²) + σ_β²/(1+σ_β²)`. Monotone in both arguments, supremum 2.
pub fn eb_bound(sigma_a: f64, sigma_b: f64) -> Result<f64> {
    if sigma_a < 0.0 || sigma_b < 0.0 {
        return Err(Error::invalid(format!(
            "prior widths must be nonnegative (got {sigma_a}, {sigma_b})"
        )));
    }
    let term = |s: f64| s * s / (1.0 + s * s);
    Ok(term(sigma_a) + term(sigma_b))
}

/// Fisher information matrix of the Gaussian prior
/// `P(α) = exp(-|α|²/σ²)/(πσ²)`: `diag(2/σ², 2/σ²)`.
pub fn fisher_gaussian(sigma: f64) -> Result<FisherMatrix> {
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(Error::invalid(format!("sigma={sigma} must be positive")));
    }
    Ok(FisherMatrix::diagonal(2.0 / (sigma * sigma)))
}

/// Smoothed indicator of the interval `[-l/2, l/2]` with transition width
/// `δ ∈ (0, l]`: 1 deep inside, 0 outside, half-sine ramps of width `δ`
/// centered on the edges.
pub fn smooth_indicator(x: f64, l: f64, delta: f64) -> Result<f64> {
    check_smooth_flat_params(l, delta)?;
    let lo_out = -0.5 * l - 0.5 * delta;
    let lo_in = -0.5 * l + 0.5 * delta;
    let hi_in = 0.5 * l - 0.5 * delta;
    let hi_out = 0.5 * l + 0.5 * delta;
    Ok(if x <= lo_out {
        0.0
    } else if x <= lo_in {
        0.5 + 0.5 * (PI / delta * (x + 0.5 * l)).sin()
    } else if x <= hi_in {
        1.0
    } else if x <= hi_out {
        0.5 - 0.5 * (PI / delta * (x - 0.5 * l)).sin()
    } else {
        0.0
    })
}

/// Fisher information matrix of the smoothed-flat prior
/// `(1/l²)·I_{δ,l}(α_x)·I_{δ,l}(α_p)`: `diag(π²/(lδ), π²/(lδ))`.
/// Diverges as `δ → 0`.
pub fn fisher_smoothflat(l: f64, delta: f64) -> Result<FisherMatrix> {
    check_smooth_flat_params(l, delta)?;
    Ok(FisherMatrix::diagonal(PI * PI / (l * delta)))
}

/// Width of the Gaussian prior with the same Fisher information as the
/// smoothed-flat prior `(l, δ)`: solves `π²/(lδ) = 2/σ²`, i.e.
/// `σ = √(2lδ)/π` (for `δ = l` this is `σ = √2·l/π`).
pub fn equivalent_sigma(l: f64, delta: f64) -> Result<f64> {
    check_smooth_flat_params(l, delta)?;
    Ok((2.0 * l * delta).sqrt() / PI)
}

fn check_smooth_flat_params(l: f64, delta: f64) -> Result<()> {
    if !l.is_finite() || l <= 0.0 {
        return Err(Error::invalid(format!("l={l} must be positive")));
    }
    if !(delta > 0.0 && delta <= l) {
        return Err(Error::invalid(format!("delta={delta} must lie in (0, l={l}]")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::SQRT_2;

    #[test]
    fn eb_bound_values() {
        assert_eq!(eb_bound(0.0, 0.0).unwrap(), 0.0);
        assert_relative_eq!(eb_bound(2.0, 2.0).unwrap(), 1.6, epsilon = 1e-15);
        // wide-prior limit tends to 2
        assert!((eb_bound(1e6, 1e6).unwrap() - 2.0).abs() < 1e-11);
        assert!(eb_bound(-1.0, 1.0).is_err());
    }

    #[test]
    fn eb_bound_is_symmetric_monotone_and_below_two() {
        let grid = [0.0, 0.3, 1.0, 2.0, 7.0, 100.0];
        for &a in &grid {
            for &b in &grid {
                let v = eb_bound(a, b).unwrap();
                assert_relative_eq!(v, eb_bound(b, a).unwrap(), epsilon = 1e-15);
                assert!(v < 2.0);
                if a > 0.0 {
                    assert!(v > eb_bound(a - 0.1, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn gaussian_fisher_values() {
        let f = fisher_gaussian(1.0).unwrap();
        assert_eq!((f.f_x(), f.f_p()), (2.0, 2.0));
        let f = fisher_gaussian(SQRT_2).unwrap();
        assert_relative_eq!(f.f_x(), 1.0, epsilon = 1e-15);
        assert!(fisher_gaussian(0.0).is_err());
    }

    #[test]
    fn smooth_indicator_shape() {
        let (l, delta) = (3.0, 1.0);
        // deep interior
        assert_eq!(smooth_indicator(0.0, l, delta).unwrap(), 1.0);
        // edge midpoints sit at 1/2
        assert_relative_eq!(smooth_indicator(l / 2.0, l, delta).unwrap(), 0.5, epsilon = 1e-15);
        assert_relative_eq!(smooth_indicator(-l / 2.0, l, delta).unwrap(), 0.5, epsilon = 1e-15);
        // outside the support
        assert_eq!(smooth_indicator(l / 2.0 + delta, l, delta).unwrap(), 0.0);
        assert_eq!(smooth_indicator(-(l / 2.0 + delta), l, delta).unwrap(), 0.0);
        // range check on a grid
        let mut x = -3.0;
        while x <= 3.0 {
            let v = smooth_indicator(x, l, delta).unwrap();
            assert!((0.0..=1.0).contains(&v));
            x += 0.01;
        }
        assert!(smooth_indicator(0.0, l, 4.0).is_err());
        assert!(smooth_indicator(0.0, l, 0.0).is_err());
    }

    #[test]
    fn smooth_indicator_is_continuous_across_branch_points() {
        let (l, delta) = (2.0, 0.7);
        let eps = 1e-9;
        for edge in [
            -0.5 * l - 0.5 * delta,
            -0.5 * l + 0.5 * delta,
            0.5 * l - 0.5 * delta,
            0.5 * l + 0.5 * delta,
        ] {
            let below = smooth_indicator(edge - eps, l, delta).unwrap();
            let above = smooth_indicator(edge + eps, l, delta).unwrap();
            assert!((below - above).abs() < 1e-7, "jump at {edge}");
        }
    }

    #[test]
    fn smooth_flat_fisher_values() {
        let f = fisher_smoothflat(std::f64::consts::PI, std::f64::consts::PI).unwrap();
        assert_relative_eq!(f.f_x(), 1.0, epsilon = 1e-15);
        let f = fisher_smoothflat(std::f64::consts::PI, std::f64::consts::PI / 2.0).unwrap();
        assert_relative_eq!(f.f_x(), 2.0, epsilon = 1e-15);
        assert!(fisher_smoothflat(1.0, 2.0).is_err());
    }

    #[test]
    fn equivalent_sigma_round_trip() {
        // defining property: the two Fisher matrices coincide
        for (l, delta) in [(1.0, 0.5), (3.0, 3.0), (PI, PI), (10.0, 0.1)] {
            let sigma = equivalent_sigma(l, delta).unwrap();
            let fg = fisher_gaussian(sigma).unwrap();
            let ff = fisher_smoothflat(l, delta).unwrap();
            assert_relative_eq!(fg.f_x(), ff.f_x(), max_relative = 1e-12);
        }
        // at δ = l the width reduces to √2·l/π
        let sigma = equivalent_sigma(PI, PI).unwrap();
        assert_relative_eq!(sigma, SQRT_2, epsilon = 1e-15);
    }
}
