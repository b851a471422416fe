//! Gamma and normalized Bessel evaluation, plus the normalization constants
//! of the transform calculus.
//!
//! The normalized Bessel function used throughout is
//!
//! ```text
//! j_a(z) = Gamma(a+1) * sum_k (-1)^k (z/2)^{2k} / (k! Gamma(a+k+1))
//!        = Gamma(a+1) * (2/z)^a * J_a(z),
//! ```
//!
//! an even entire function with `j_a(0) = 1` and `|j_a(x)| <= 1` on the real
//! line for `a > -1/2`.
//!
//! Evaluation strategy: the power series is used for small arguments and for
//! complex arguments. On the real axis beyond the series range the alternating
//! series loses all precision to cancellation (the largest term grows like
//! `e^|z|`), so real arguments are routed through a Steed continued-fraction
//! evaluation of `J_a`. Complex arguments keep the series with a guarded
//! working range; the error there is of order `eps * e^{|Re z|}` against a
//! value of order `e^{|Im z|}`, which is ample for spectral points whose real
//! part stays moderate.

use crate::error::{Error, Result};
use crate::params::AlphaParam;
use num_complex::Complex64;

/// Crossover from the power series to the continued-fraction branch (real axis).
const SERIES_REAL_MAX: f64 = 12.0;
/// Certified range for real arguments.
pub const BESSEL_REAL_RANGE: f64 = 4000.0;
/// Certified range for complex arguments (power series).
pub const BESSEL_COMPLEX_RANGE: f64 = 60.0;

const MAX_SERIES_TERMS: usize = 500;

// Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's set).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEF: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
];

/// Natural logarithm of the Gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(format!("log_gamma requires x > 0, got {x}")));
    }
    let mut acc = LANCZOS_COEF[0];
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x - 1.0 + k as f64);
    }
    let t = x + LANCZOS_G - 0.5;
    let half_log_two_pi = 0.918_938_533_204_672_74; // ln(2 pi)/2
    Ok(half_log_two_pi + (x - 0.5) * t.ln() - t + acc.ln())
}

/// Gamma function for `x > 0`.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(log_gamma(x)?.exp())
}

/// Inversion constant `C_{alpha,d} = 1 / ((2 pi)^d 2^{2 alpha} Gamma(alpha+1)^2)`,
/// computed in log space.
pub fn inversion_constant(p: &AlphaParam) -> f64 {
    let a = p.alpha();
    let d = p.d() as f64;
    let log_c = -d * (2.0 * std::f64::consts::PI).ln()
        - 2.0 * a * std::f64::consts::LN_2
        - 2.0 * log_gamma(a + 1.0).expect("alpha + 1 > 1/2");
    log_c.exp()
}

/// Prefactor `Gamma(alpha+1) / (sqrt(pi) Gamma(alpha+1/2))` of the generalized
/// translation; the reciprocal of `int_0^pi sin^{2 alpha} theta dtheta`.
pub fn translation_constant(alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha <= -0.5 {
        return Err(Error::domain(format!(
            "translation constant requires alpha > -1/2, got {alpha}"
        )));
    }
    let log_c = log_gamma(alpha + 1.0)? - 0.5 * std::f64::consts::PI.ln() - log_gamma(alpha + 0.5)?;
    Ok(log_c.exp())
}

/// Total measure of the half sphere, `sigma_alpha(S^d_+) = int_0^pi sin^{2a+1} = sqrt(pi) Gamma(a+1) / Gamma(a+3/2)`
/// for `d = 1`.
pub fn half_circle_measure(alpha: f64) -> Result<f64> {
    if alpha <= -0.5 {
        return Err(Error::domain("alpha must be > -1/2"));
    }
    Ok((0.5 * std::f64::consts::PI.ln() + log_gamma(alpha + 1.0)? - log_gamma(alpha + 1.5)?).exp())
}

/// Normalized Bessel function `j_alpha(z)` for complex `z`.
///
/// Real arguments are certified for `|z| <= 4000`; truly complex arguments for
/// `|z| <= 60`. Outside these a range error is returned.
pub fn bessel_j_normalized(alpha: f64, z: Complex64) -> Result<Complex64> {
    if !(alpha > -0.5) {
        return Err(Error::domain(format!(
            "normalized Bessel requires alpha > -1/2, got {alpha}"
        )));
    }
    if z.im == 0.0 {
        return bessel_j_real(alpha, z.re).map(|v| Complex64::new(v, 0.0));
    }
    let r = z.norm();
    if r > BESSEL_COMPLEX_RANGE {
        return Err(Error::range(
            format!(
                "complex Bessel argument |z| = {r:.3} exceeds working range {BESSEL_COMPLEX_RANGE}"
            ),
            Some(BESSEL_COMPLEX_RANGE),
        ));
    }
    Ok(series_complex(alpha, z))
}

/// Normalized Bessel function `j_alpha(x)` on the real axis.
pub fn bessel_j_real(alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > -0.5) {
        return Err(Error::domain(format!(
            "normalized Bessel requires alpha > -1/2, got {alpha}"
        )));
    }
    let ax = x.abs();
    if !ax.is_finite() || ax > BESSEL_REAL_RANGE {
        return Err(Error::range(
            format!("real Bessel argument |x| = {ax:.3} exceeds working range {BESSEL_REAL_RANGE}"),
            Some(BESSEL_REAL_RANGE),
        ));
    }
    if ax <= SERIES_REAL_MAX {
        return Ok(series_real(alpha, ax));
    }
    // j_a(x) = Gamma(a+1) (2/x)^a J_a(x)
    let j = bessel_jnu_steed(alpha, ax)?;
    let scale = (log_gamma(alpha + 1.0)? + alpha * (2.0 / ax).ln()).exp();
    Ok(scale * j)
}

/// Power series with term recurrence `c_{k+1} = -c_k (z/2)^2 / ((k+1)(a+k+1))`,
/// compensated summation, term-ratio stopping.
fn series_complex(alpha: f64, z: Complex64) -> Complex64 {
    let q = -(z * z) * 0.25;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut comp = Complex64::new(0.0, 0.0);
    let growth_k = (0.5 * z.norm()) as usize;
    for k in 0..MAX_SERIES_TERMS {
        term = term * q / ((k as f64 + 1.0) * (alpha + k as f64 + 1.0));
        // Kahan step
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if k > growth_k && term.norm() < 1e-18 * sum.norm().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    sum
}

fn series_real(alpha: f64, x: f64) -> f64 {
    let q = -x * x * 0.25;
    let mut term = 1.0f64;
    let mut sum = term;
    let mut comp = 0.0f64;
    let growth_k = (0.5 * x) as usize;
    for k in 0..MAX_SERIES_TERMS {
        term *= q / ((k as f64 + 1.0) * (alpha + k as f64 + 1.0));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if k > growth_k && term.abs() < 1e-18 * sum.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    sum
}

/// `J_nu(x)` for `nu > -1/2`, `x >= 2`, by Steed's method: CF1 for `J'/J`,
/// downward recurrence to an order `mu <= x`, CF2 for `(J'+iY')/(J+iY)` and
/// the Wronskian `J Y' - J' Y = 2/(pi x)` to fix the normalization.
fn bessel_jnu_steed(nu: f64, x: f64) -> Result<f64> {
    if nu < 0.0 {
        // stable downward recurrence from positive orders
        let j2 = bessel_jnu_steed(nu + 2.0, x)?;
        let j1 = bessel_jnu_steed(nu + 1.0, x)?;
        return Ok(2.0 * (nu + 1.0) / x * j1 - j2);
    }
    const EPS: f64 = 1.0e-16;
    const FPMIN: f64 = 1.0e-300;
    const MAXIT: usize = 20000;

    let nl = ((nu - x + 1.5).floor() as i64).max(0) as usize;
    let xmu = nu - nl as f64;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / std::f64::consts::PI;

    // CF1: h = J'_nu / J_nu, isign tracks the sign of J_nu
    let mut isign = 1.0f64;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0f64;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::numerical(format!(
            "Bessel CF1 failed to converge at nu={nu}, x={x}"
        )));
    }

    // downward recurrence from nu to xmu with an unnormalized seed
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl_seed = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // CF2 at order xmu (complex Lentz)
    let a0 = 0.25 - xmu * xmu;
    let mut p = -0.5 * xi;
    let mut q = 1.0f64;
    let br = 2.0 * x;
    let mut bi = 2.0f64;
    let mut fct = a0 * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    let mut a = a0;
    converged = false;
    for i in 2..MAXIT {
        a += 2.0 * (i as f64 - 1.0);
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        let temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::numerical(format!(
            "Bessel CF2 failed to converge at nu={nu}, x={x}"
        )));
    }
    let gam = (p - f) / q;
    let mut rjmu = (w / ((p - f) * gam + q)).sqrt();
    if rjl < 0.0 {
        rjmu = -rjmu;
    }
    Ok(rjl_seed * (rjmu / rjl))
}
