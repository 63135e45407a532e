//! Input priors for the coherent amplitudes α and β.
//!
//! Both families are centered and factorize over the two quadratures:
//!
//! * `Gaussian {σ}`: `P(α) = exp(-|α|²/σ²)/(πσ²)`, so each quadrature is
//!   `N(0, σ²/2)`.
//! * `SmoothFlat {l, δ}`: density `(1/l²)·I_{δ,l}(α_x)·I_{δ,l}(α_p)` with
//!   the smoothed indicator of the interval `[-l/2, l/2]`.

use rand::Rng as _;
use rand_distr::StandardNormal;

use crate::bounds::{equivalent_sigma, smooth_indicator};
use crate::error::{Error, Result};
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Prior {
    Gaussian { sigma: f64 },
    SmoothFlat { l: f64, delta: f64 },
}

impl Prior {
    pub fn gaussian(sigma: f64) -> Result<Self> {
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::invalid(format!("prior width sigma={sigma} must be positive")));
        }
        Ok(Prior::Gaussian { sigma })
    }

    pub fn smooth_flat(l: f64, delta: f64) -> Result<Self> {
        if !l.is_finite() || l <= 0.0 {
            return Err(Error::invalid(format!("prior size l={l} must be positive")));
        }
        if !(delta > 0.0 && delta <= l) {
            return Err(Error::invalid(format!(
                "prior smoothing delta={delta} must lie in (0, l={l}]"
            )));
        }
        Ok(Prior::SmoothFlat { l, delta })
    }

    /// Draw `(α_x, α_p)`.
    pub fn sample(&self, rng: &mut Rng) -> (f64, f64) {
        match *self {
            Prior::Gaussian { sigma } => {
                let s = sigma / std::f64::consts::SQRT_2;
                let zx: f64 = rng.sample(StandardNormal);
                let zp: f64 = rng.sample(StandardNormal);
                (s * zx, s * zp)
            }
            Prior::SmoothFlat { l, delta } => {
                (sample_smooth_flat(l, delta, rng), sample_smooth_flat(l, delta, rng))
            }
        }
    }

    /// Width of the Gaussian prior whose Fisher information matches this
    /// prior: `σ` itself for Gaussian, `√(2lδ)/π` for SmoothFlat.
    pub fn fisher_equivalent_sigma(&self) -> f64 {
        match *self {
            Prior::Gaussian { sigma } => sigma,
            Prior::SmoothFlat { l, delta } => {
                equivalent_sigma(l, delta).expect("validated at construction")
            }
        }
    }
}

/// Rejection sampling from the uniform envelope on `[-(l+δ)/2, (l+δ)/2]`;
/// the acceptance ratio is `l/(l+δ) ≥ 1/2`, so two iterations are expected.
fn sample_smooth_flat(l: f64, delta: f64, rng: &mut Rng) -> f64 {
    let half_support = 0.5 * (l + delta);
    loop {
        let x = (2.0 * rng.random::<f64>() - 1.0) * half_support;
        let accept = smooth_indicator(x, l, delta).expect("validated at construction");
        if rng.random::<f64>() < accept {
            return x;
        }
    }
}
