//! The Weinstein kernel `Lambda(lambda, x) = e^{-i <x', lambda'>} j_alpha(x_{d+1} lambda_{d+1})`,
//! the joint eigenfunction playing the role of the complex exponential, and a
//! finite-difference check of its derivative bounds.

use crate::error::{Error, Result};
use crate::params::AlphaParam;
use crate::special::bessel_j_normalized;
use num_complex::Complex64;

/// A spectral point `lambda = (lambda', lambda_{d+1})` with complex entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPoint {
    components: Vec<Complex64>,
}

impl SpectralPoint {
    pub fn new(components: Vec<Complex64>) -> Result<Self> {
        if components.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::validation("spectral point entries must be finite"));
        }
        Ok(SpectralPoint { components })
    }

    pub fn from_real(coords: &[f64]) -> Self {
        SpectralPoint {
            components: coords.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    /// Purely imaginary point `i s u` along a real direction `u`.
    pub fn imaginary(scale: f64, direction: &[f64]) -> Self {
        SpectralPoint {
            components: direction
                .iter()
                .map(|&u| Complex64::new(0.0, scale * u))
                .collect(),
        }
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Euclidean norm of the vector of imaginary parts.
    pub fn imag_norm(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.im * c.im)
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_real(&self) -> bool {
        self.components.iter().all(|c| c.im == 0.0)
    }

    /// The reflection `(-lambda', lambda_{d+1})`.
    pub fn reflected(&self) -> SpectralPoint {
        let mut components = self.components.clone();
        let n = components.len();
        for c in components.iter_mut().take(n - 1) {
            *c = -*c;
        }
        SpectralPoint { components }
    }
}

/// Evaluate the kernel at a complex spectral point and a real spatial point
/// with `x_{d+1} >= 0`.
pub fn weinstein_kernel(p: &AlphaParam, lam: &SpectralPoint, x: &[f64]) -> Result<Complex64> {
    if lam.len() != p.axes() || x.len() != p.axes() {
        return Err(Error::validation(format!(
            "kernel expects {} components, got lambda: {}, x: {}",
            p.axes(),
            lam.len(),
            x.len()
        )));
    }
    let last = p.axes() - 1;
    if x[last] < 0.0 {
        return Err(Error::validation("x_{d+1} must be nonnegative"));
    }
    let mut phase = Complex64::new(0.0, 0.0);
    for j in 0..last {
        phase += lam.components()[j] * x[j];
    }
    let osc = (Complex64::new(0.0, -1.0) * phase).exp();
    let j = bessel_j_normalized(p.alpha(), lam.components()[last] * x[last])?;
    Ok(osc * j)
}

/// Report of a derivative-bound check: `lhs = |D^nu Lambda|` by finite
/// differences, `rhs = ||x||^{|nu|} e^{||x|| ||Im lambda||}`.
#[derive(Debug, Clone)]
pub struct DerivativeBoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
    /// Estimated finite-difference error (from step halving).
    pub fd_error: f64,
}

/// Check `|D_lambda^nu Lambda(lambda, x)| <= ||x||^{|nu|} e^{||x|| ||Im lambda||}`
/// by central finite differences in the spectral variable, `|nu| <= 2`.
///
/// The derivative is computed at steps `h` and `h/2`; if the two disagree by
/// more than 5% of the bound the step is rejected with a numerical-quality
/// error.
pub fn kernel_derivative_bound_check(
    p: &AlphaParam,
    nu: &[usize],
    lam: &SpectralPoint,
    x: &[f64],
    h: f64,
) -> Result<DerivativeBoundReport> {
    if nu.len() != p.axes() {
        return Err(Error::validation("multi-index length must be d + 1"));
    }
    let order: usize = nu.iter().sum();
    if order > 2 {
        return Err(Error::validation(
            "finite-difference bound checks are limited to |nu| <= 2",
        ));
    }
    if !(h > 0.0) || h > 0.5 {
        return Err(Error::numerical(format!(
            "step h = {h} outside the sensible range (0, 0.5]"
        )));
    }
    let x_norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let rhs = x_norm.powi(order as i32) * (x_norm * lam.imag_norm()).exp();

    let d_coarse = fd_derivative(p, nu, lam, x, h)?;
    let d_fine = fd_derivative(p, nu, lam, x, h / 2.0)?;
    let fd_error = (d_coarse - d_fine).norm() / 3.0; // second-order Richardson gap
    if order > 0 && fd_error > 0.05 * rhs.max(f64::MIN_POSITIVE) {
        return Err(Error::numerical(format!(
            "finite-difference error {fd_error:.3e} exceeds 5% of the bound {rhs:.3e}; \
             adjust the step (h = {h})"
        )));
    }
    let lhs = d_fine.norm();
    Ok(DerivativeBoundReport {
        lhs,
        rhs,
        ok: lhs <= rhs * 1.05 + 1e-12,
        fd_error,
    })
}

/// Central finite differences for `D^nu Lambda` with `|nu| <= 2`, stepping
/// along the real direction of each complex spectral coordinate (legitimate
/// for entire functions).
fn fd_derivative(
    p: &AlphaParam,
    nu: &[usize],
    lam: &SpectralPoint,
    x: &[f64],
    h: f64,
) -> Result<Complex64> {
    let eval = |shift: &[(usize, f64)]| -> Result<Complex64> {
        let mut components = lam.components().to_vec();
        for &(j, dh) in shift {
            components[j] += Complex64::new(dh, 0.0);
        }
        weinstein_kernel(p, &SpectralPoint { components }, x)
    };
    let active: Vec<usize> = (0..nu.len()).filter(|&j| nu[j] > 0).collect();
    match active.as_slice() {
        [] => eval(&[]),
        [j] if nu[*j] == 1 => {
            let plus = eval(&[(*j, h)])?;
            let minus = eval(&[(*j, -h)])?;
            Ok((plus - minus) / (2.0 * h))
        }
        [j] if nu[*j] == 2 => {
            let plus = eval(&[(*j, h)])?;
            let mid = eval(&[])?;
            let minus = eval(&[(*j, -h)])?;
            Ok((plus - 2.0 * mid + minus) / (h * h))
        }
        [j, k] => {
            let pp = eval(&[(*j, h), (*k, h)])?;
            let pm = eval(&[(*j, h), (*k, -h)])?;
            let mp = eval(&[(*j, -h), (*k, h)])?;
            let mm = eval(&[(*j, -h), (*k, -h)])?;
            Ok((pp - pm - mp + mm) / (4.0 * h * h))
        }
        _ => Err(Error::validation("unsupported multi-index")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    fn param(alpha: f64) -> AlphaParam {
        AlphaParam::new(alpha, 1).unwrap()
    }

    #[test]
    fn kernel_is_one_at_origin() {
        let p = param(0.5);
        let lam = SpectralPoint::new(vec![Complex64::new(2.0, 1.0), Complex64::new(-4.0, 0.5)])
            .unwrap();
        let v = weinstein_kernel(&p, &lam, &[0.0, 0.0]).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn kernel_closed_form_half_order() {
        // alpha = 1/2, lambda = (1,1), x = (pi/2, pi):
        // e^{-i pi/2} * sin(pi)/pi = 0
        let p = param(0.5);
        let lam = SpectralPoint::from_real(&[1.0, 1.0]);
        let v = weinstein_kernel(&p, &lam, &[std::f64::consts::FRAC_PI_2, std::f64::consts::PI])
            .unwrap();
        assert!(v.norm() < 1e-15);
        // and at x = (pi/2, pi/2): e^{-i pi/2} * sin(pi/2)/(pi/2) = -i 2/pi
        let v2 = weinstein_kernel(&p, &lam, &[std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2])
            .unwrap();
        let want = Complex64::new(0.0, -2.0 / std::f64::consts::PI);
        assert!((v2 - want).norm() < 1e-14);
    }

    #[test]
    fn kernel_bounded_by_one_for_real_arguments() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for &alpha in &[-0.4, 0.0, 0.5, 1.5] {
            let p = param(alpha);
            for _ in 0..200 {
                let lam = SpectralPoint::from_real(&[
                    rng.gen_range(-10.0..10.0),
                    rng.gen_range(0.0..10.0),
                ]);
                let x = [rng.gen_range(-10.0..10.0), rng.gen_range(0.0..10.0)];
                let v = weinstein_kernel(&p, &lam, &x).unwrap();
                assert!(v.norm() <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn kernel_symmetry_in_real_arguments() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let p = param(0.5);
        for _ in 0..100 {
            let a = [rng.gen_range(-5.0..5.0), rng.gen_range(0.1..5.0)];
            let b = [rng.gen_range(-5.0..5.0), rng.gen_range(0.1..5.0)];
            let v1 = weinstein_kernel(&p, &SpectralPoint::from_real(&a), &b).unwrap();
            let v2 = weinstein_kernel(&p, &SpectralPoint::from_real(&b), &a).unwrap();
            assert!((v1 - v2).norm() <= 1e-12 * v1.norm().max(1.0));
        }
    }

    #[test]
    fn kernel_reflection_identity() {
        // Lambda(lambda, -x) = Lambda(-lambda, x) with -x = (-x', x_{d+1})
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let p = param(1.5);
        for _ in 0..100 {
            let lam = SpectralPoint::new(vec![
                Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-2.0..2.0)),
                Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-2.0..2.0)),
            ])
            .unwrap();
            let x = [rng.gen_range(-4.0..4.0), rng.gen_range(0.0..4.0)];
            let reflected_x = [-x[0], x[1]];
            let v1 = weinstein_kernel(&p, &lam, &reflected_x).unwrap();
            let neg_lam = SpectralPoint::new(
                lam.components().iter().map(|c| -c).collect::<Vec<_>>(),
            )
            .unwrap();
            // full sign flip equals first-block flip by evenness of j
            let v2 = weinstein_kernel(&p, &neg_lam, &x).unwrap();
            assert!((v1 - v2).norm() <= 1e-12 * v1.norm().max(1.0));
        }
    }

    #[test]
    fn kernel_exponential_bound_complex() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for &alpha in &[0.0, 0.5, 1.5] {
            let p = param(alpha);
            for _ in 0..300 {
                let lam = SpectralPoint::new(vec![
                    Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-3.0..3.0)),
                    Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-3.0..3.0)),
                ])
                .unwrap();
                let x = [rng.gen_range(-3.0..3.0), rng.gen_range(0.0..3.0)];
                let x_norm = (x[0] * x[0] + x[1] * x[1]).sqrt();
                let v = weinstein_kernel(&p, &lam, &x).unwrap();
                let bound = (x_norm * lam.imag_norm()).exp();
                assert!(
                    v.norm() <= bound * (1.0 + 1e-10),
                    "alpha={alpha}: |Lambda| = {} > bound {}",
                    v.norm(),
                    bound
                );
            }
        }
    }

    #[test]
    fn kernel_is_laplacian_eigenfunction() {
        // (d^2/dx1^2 + d^2/dx2^2 + (2a+1)/x2 d/dx2) Lambda = -||lambda||^2 Lambda
        // by central differences in x at an interior point
        let p = param(0.5);
        let lam = SpectralPoint::from_real(&[1.3, 2.1]);
        let x = [0.4, 0.9];
        let h = 1e-4;
        let k = |x1: f64, x2: f64| weinstein_kernel(&p, &lam, &[x1, x2]).unwrap();
        let centre = k(x[0], x[1]);
        let dxx = (k(x[0] + h, x[1]) - 2.0 * centre + k(x[0] - h, x[1])) / (h * h);
        let dyy = (k(x[0], x[1] + h) - 2.0 * centre + k(x[0], x[1] - h)) / (h * h);
        let dy = (k(x[0], x[1] + h) - k(x[0], x[1] - h)) / (2.0 * h);
        let lap = dxx + dyy + dy * (2.0 * p.alpha() + 1.0) / x[1];
        let want = -centre * (1.3f64 * 1.3 + 2.1 * 2.1);
        assert!(
            (lap - want).norm() <= 1e-4 * want.norm(),
            "eigenvalue residual {}",
            (lap - want).norm() / want.norm()
        );
    }

    #[test]
    fn derivative_bound_order_zero_reduces_to_kernel_bound() {
        let p = param(0.5);
        let lam = SpectralPoint::new(vec![Complex64::new(1.0, 0.7), Complex64::new(2.0, -0.4)])
            .unwrap();
        let rep = kernel_derivative_bound_check(&p, &[0, 0], &lam, &[1.0, 0.5], 1e-3).unwrap();
        assert!(rep.ok);
        assert!(rep.lhs <= rep.rhs);
    }

    #[test]
    fn derivative_bound_first_order_matches_exact_factor() {
        // d/dlambda_1 Lambda = -i x_1 Lambda, so |d Lambda| = |x_1| |Lambda| <= ||x||
        let p = param(0.5);
        let lam = SpectralPoint::from_real(&[0.8, 1.1]);
        let x = [0.9, 1.4];
        let rep = kernel_derivative_bound_check(&p, &[1, 0], &lam, &x, 1e-4).unwrap();
        let exact = (weinstein_kernel(&p, &lam, &x).unwrap() * Complex64::new(0.0, -x[0]))
            .norm();
        assert!(rep.ok);
        assert!((rep.lhs - exact).abs() < 1e-6);
        // second derivative in the last spectral coordinate
        let rep2 = kernel_derivative_bound_check(&p, &[0, 2], &lam, &x, 1e-3).unwrap();
        assert!(rep2.ok);
        // mixed derivative
        let rep3 = kernel_derivative_bound_check(&p, &[1, 1], &lam, &x, 1e-3).unwrap();
        assert!(rep3.ok);
    }

    #[test]
    fn derivative_bound_at_origin_is_degenerate_but_ok() {
        let p = param(0.5);
        let lam = SpectralPoint::from_real(&[1.0, 1.0]);
        let rep = kernel_derivative_bound_check(&p, &[1, 0], &lam, &[0.0, 0.0], 1e-4).unwrap();
        assert!(rep.ok);
        assert!(rep.lhs <= 1e-10 && rep.rhs == 0.0);
    }

    #[test]
    fn derivative_bound_rejects_bad_steps() {
        let p = param(0.5);
        let lam = SpectralPoint::from_real(&[1.0, 1.0]);
        assert!(kernel_derivative_bound_check(&p, &[1, 0], &lam, &[1.0, 1.0], 0.9).is_err());
        assert!(kernel_derivative_bound_check(&p, &[3, 0], &lam, &[1.0, 1.0], 1e-3).is_err());
    }

    #[test]
    fn rejects_negative_last_coordinate() {
        let p = param(0.5);
        let lam = SpectralPoint::from_real(&[1.0, 1.0]);
        assert!(weinstein_kernel(&p, &lam, &[1.0, -0.5]).is_err());
    }

    #[test]
    fn spectral_point_helpers() {
        let pt = SpectralPoint::imaginary(3.0, &[0.6, 0.8]);
        assert_abs_diff_eq!(pt.imag_norm(), 3.0, epsilon = 1e-15);
        assert!(!pt.is_real());
        let refl = SpectralPoint::from_real(&[2.0, 5.0]).reflected();
        assert_eq!(refl.components()[0], Complex64::new(-2.0, 0.0));
        assert_eq!(refl.components()[1], Complex64::new(5.0, 0.0));
    }
}
