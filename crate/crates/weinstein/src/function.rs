//! Built-in closed-form test functions and the evaluation trait used by
//! translation and convolution quadratures.

use crate::error::{Error, Result};
use crate::params::AlphaParam;
use crate::poly::EvenPolynomial;
use crate::special::log_gamma;
use num_complex::Complex64;
use std::str::FromStr;

/// Closed-form function specifications. These are the functions the command
/// line can synthesize and the ones operations evaluate exactly off-grid.
#[derive(Debug, Clone)]
pub enum FunctionSpec {
    /// `exp(-a ||x||^2)`, `a > 0`.
    Gaussian { a: f64 },
    /// Smooth bump `exp(-eta / (1 - (||x||/radius)^2))` inside its radius,
    /// identically zero outside.
    Bump { radius: f64, eta: f64 },
    /// The heat kernel at time `t` (depends on `alpha` and `d` at evaluation).
    Heat { t: f64 },
    /// `P(x) exp(-a ||x||^2)` with an even-in-last-variable polynomial.
    PolyGauss { poly: EvenPolynomial<f64>, a: f64 },
}

impl FunctionSpec {
    pub fn gaussian(a: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::validation(format!("gaussian width must be positive, got {a}")));
        }
        Ok(FunctionSpec::Gaussian { a })
    }

    pub fn bump(radius: f64) -> Result<Self> {
        Self::bump_with_sharpness(radius, 1.0)
    }

    pub fn bump_with_sharpness(radius: f64, eta: f64) -> Result<Self> {
        if !(radius > 0.0) || !(eta > 0.0) {
            return Err(Error::validation(
                "bump radius and sharpness must be positive",
            ));
        }
        Ok(FunctionSpec::Bump { radius, eta })
    }

    pub fn heat(t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::domain(format!("heat time must be positive, got {t}")));
        }
        Ok(FunctionSpec::Heat { t })
    }

    pub fn poly_gauss(poly: EvenPolynomial<f64>, a: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::validation("gaussian width must be positive"));
        }
        Ok(FunctionSpec::PolyGauss { poly, a })
    }

    /// Pointwise evaluation (all built-ins are real-valued).
    pub fn eval(&self, p: &AlphaParam, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        match self {
            FunctionSpec::Gaussian { a } => (-a * r2).exp(),
            FunctionSpec::Bump { radius, eta } => {
                let s = r2 / (radius * radius);
                if s < 1.0 {
                    (-eta / (1.0 - s)).exp()
                } else {
                    0.0
                }
            }
            FunctionSpec::Heat { t } => heat_kernel_value(p, *t, r2),
            FunctionSpec::PolyGauss { poly, a } => poly.evaluate_f64(x) * (-a * r2).exp(),
        }
    }

    /// Declared compact-support radius, when the function has one.
    pub fn support_radius(&self) -> Option<f64> {
        match self {
            FunctionSpec::Bump { radius, .. } => Some(*radius),
            _ => None,
        }
    }

    /// A short description used as a default label.
    pub fn describe(&self) -> String {
        match self {
            FunctionSpec::Gaussian { a } => format!("gaussian:a={a}"),
            FunctionSpec::Bump { radius, eta } => {
                if (*eta - 1.0).abs() < 1e-15 {
                    format!("bump:R={radius}")
                } else {
                    format!("bump:R={radius},eta={eta}")
                }
            }
            FunctionSpec::Heat { t } => format!("heat:t={t}"),
            FunctionSpec::PolyGauss { a, .. } => format!("poly-gauss:a={a}"),
        }
    }

    /// An extent per axis that captures the function to roughly machine
    /// precision (used for default grids).
    pub fn suggested_extent(&self, p: &AlphaParam) -> f64 {
        match self {
            FunctionSpec::Gaussian { a } => (40.0 / a).sqrt(),
            FunctionSpec::Bump { radius, .. } => radius * 1.25 + 1.0,
            FunctionSpec::Heat { t } => 2.0 * (40.0 * t).sqrt().max(12.0 * t.sqrt()),
            FunctionSpec::PolyGauss { a, poly } => {
                ((40.0 + 2.0 * poly.degree() as f64) / a).sqrt()
            }
        }
        .max(1.0 + p.alpha().max(0.0) * 0.0)
    }
}

/// Heat kernel value from the squared radius:
/// `E_t(x) = 2 / (pi^{d/2} Gamma(a+1) (4t)^{a+1+d/2}) * exp(-||x||^2 / (4t))`.
pub fn heat_kernel_value(p: &AlphaParam, t: f64, r2: f64) -> f64 {
    let a = p.alpha();
    let d = p.d() as f64;
    let log_norm = std::f64::consts::LN_2
        - 0.5 * d * std::f64::consts::PI.ln()
        - log_gamma(a + 1.0).expect("alpha > -1/2")
        - (a + 1.0 + 0.5 * d) * (4.0 * t).ln();
    (log_norm - r2 / (4.0 * t)).exp()
}

impl FromStr for FunctionSpec {
    type Err = Error;

    /// Parse CLI-style specs: `gaussian:a=1`, `bump:R=1`, `bump:R=2,eta=0.5`,
    /// `heat:t=0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut kv = std::collections::HashMap::new();
        for part in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::validation(format!("bad function parameter {part:?}")))?;
            let val: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::validation(format!("bad numeric value {v:?}")))?;
            kv.insert(k.trim().to_string(), val);
        }
        match name.trim() {
            "gaussian" => FunctionSpec::gaussian(*kv.get("a").unwrap_or(&1.0)),
            "bump" => FunctionSpec::bump_with_sharpness(
                *kv.get("R").or_else(|| kv.get("r")).unwrap_or(&1.0),
                *kv.get("eta").unwrap_or(&1.0),
            ),
            "heat" => FunctionSpec::heat(*kv.get("t").unwrap_or(&0.25)),
            other => Err(Error::validation(format!(
                "unknown function spec {other:?} (expected gaussian, bump, heat or poly-gauss)"
            ))),
        }
    }
}

/// Pointwise-evaluable function used by the quadrature routes of translation
/// and convolution.
pub trait Evaluate: Sync {
    fn eval_at(&self, p: &AlphaParam, x: &[f64]) -> Complex64;
    /// Radius outside which the function is exactly zero, when known.
    fn eval_support_radius(&self) -> Option<f64> {
        None
    }
}

impl Evaluate for FunctionSpec {
    fn eval_at(&self, p: &AlphaParam, x: &[f64]) -> Complex64 {
        Complex64::new(self.eval(p, x), 0.0)
    }
    fn eval_support_radius(&self) -> Option<f64> {
        self.support_radius()
    }
}

/// Adapter for closures.
pub struct FnEval<F>(pub F);

impl<F: Fn(&[f64]) -> Complex64 + Sync> Evaluate for FnEval<F> {
    fn eval_at(&self, _p: &AlphaParam, x: &[f64]) -> Complex64 {
        (self.0)(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn parses_spec_strings() {
        let p = AlphaParam::new(0.5, 1).unwrap();
        let g: FunctionSpec = "gaussian:a=2".parse().unwrap();
        assert_abs_diff_eq!(g.eval(&p, &[1.0, 0.0]), (-2.0f64).exp(), epsilon = 1e-15);
        let b: FunctionSpec = "bump:R=2".parse().unwrap();
        assert_eq!(b.support_radius(), Some(2.0));
        assert_eq!(b.eval(&p, &[3.0, 0.1]), 0.0);
        let h: FunctionSpec = "heat:t=0.25".parse().unwrap();
        assert!(matches!(h, FunctionSpec::Heat { .. }));
        assert!("warp:x=1".parse::<FunctionSpec>().is_err());
        assert!("gaussian:a=-1".parse::<FunctionSpec>().is_err());
    }

    #[test]
    fn bump_is_zero_outside_and_positive_inside() {
        let p = AlphaParam::new(0.0, 1).unwrap();
        let b = FunctionSpec::bump(1.0).unwrap();
        assert_eq!(b.eval(&p, &[1.0, 0.0001]), 0.0);
        assert!(b.eval(&p, &[0.5, 0.5]) > 0.0);
        assert_abs_diff_eq!(b.eval(&p, &[0.0, 0.0]), (-1.0f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn heat_kernel_peak_values() {
        // frozen: E_t(0) at t = 1/4, d = 1
        let cases = [
            (0.0, 1.1283791670955125739),
            (0.5, 1.2732395447351626862),
            (1.5, 0.8488263631567751241),
        ];
        for (alpha, want) in cases {
            let p = AlphaParam::new(alpha, 1).unwrap();
            assert_abs_diff_eq!(heat_kernel_value(&p, 0.25, 0.0), want, epsilon = 1e-13);
        }
    }
}
