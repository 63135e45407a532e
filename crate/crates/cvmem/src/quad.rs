//! Adaptive Simpson quadrature, used as the independent numerical oracle for
//! the Fisher-information formulas and prior normalization checks.

/// Integrate `f` over `[a, b]` with the adaptive Simpson rule to absolute
/// tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 50)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn integrates_polynomials_exactly() {
        let v = adaptive_simpson(&|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12);
        // ∫ x³-2x+1 dx over [-1,3] = [x⁴/4 - x² + x] = 14.25 - (-1.75) = 16
        assert_relative_eq!(v, 16.0, epsilon = 1e-10);
    }

    #[test]
    fn integrates_gaussian_density() {
        let sigma: f64 = 1.3;
        let f = move |x: f64| (-x * x / (sigma * sigma)).exp() / (sigma * std::f64::consts::PI.sqrt());
        let v = adaptive_simpson(&f, -8.0 * sigma, 8.0 * sigma, 1e-9);
        assert_relative_eq!(v, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn handles_oscillatory_integrands() {
        let v = adaptive_simpson(&|x| x.sin(), 0.0, std::f64::consts::PI, 1e-10);
        assert_relative_eq!(v, 2.0, epsilon = 1e-9);
    }
}
