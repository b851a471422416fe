//! Polynomials on `R^{d+1}` that are even in the last variable, with exact
//! arithmetic, the exact Weinstein Laplacian on monomials, and the
//! generalized-harmonicity test.
//!
//! Coefficients are generic: `BigRational` when exactness is wanted (the
//! harmonicity decision is then exact), `f64` otherwise.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, FromPrimitive, One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

/// Coefficient ring used by [`EvenPolynomial`].
pub trait Coefficient:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Mul<Output = Self>
{
    fn from_integer(n: i64) -> Self;
    fn to_float(&self) -> f64;
    /// Whether a Laplacian coefficient counts as zero, relative to `scale`
    /// (the largest input coefficient). Exact rings ignore the scale.
    fn negligible(&self, scale: f64) -> bool;
}

impl Coefficient for f64 {
    fn from_integer(n: i64) -> Self {
        n as f64
    }
    fn to_float(&self) -> f64 {
        *self
    }
    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE)
    }
}

impl Coefficient for BigRational {
    fn from_integer(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_float(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

/// A polynomial with multi-index coefficient map, even in the last variable.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenPolynomial<C: Coefficient> {
    dims: usize,
    terms: BTreeMap<Vec<usize>, C>,
}

impl<C: Coefficient> EvenPolynomial<C> {
    pub fn new(dims: usize, terms: impl IntoIterator<Item = (Vec<usize>, C)>) -> Result<Self> {
        if dims < 2 {
            return Err(Error::validation("polynomials need at least 2 variables (d >= 1)"));
        }
        let mut map: BTreeMap<Vec<usize>, C> = BTreeMap::new();
        for (nu, c) in terms {
            if nu.len() != dims {
                return Err(Error::validation(format!(
                    "multi-index length {} does not match dims {dims}",
                    nu.len()
                )));
            }
            if nu[dims - 1] % 2 != 0 {
                return Err(Error::validation(
                    "polynomial must be even in the last variable (even last exponent)",
                ));
            }
            let entry = map.entry(nu).or_insert_with(C::zero);
            *entry = entry.clone() + c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(EvenPolynomial { dims, terms: map })
    }

    pub fn constant(dims: usize, c: C) -> Result<Self> {
        Self::new(dims, [(vec![0; dims], c)])
    }

    pub fn zero_poly(dims: usize) -> Self {
        EvenPolynomial {
            dims,
            terms: BTreeMap::new(),
        }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|nu| nu.iter().sum::<usize>())
            .max()
            .unwrap_or(0)
    }

    /// The common total degree, when the polynomial is homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|nu| nu.iter().sum::<usize>());
        let first = it.next()?;
        if it.all(|l| l == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.to_float().abs())
            .fold(0.0f64, f64::max)
    }

    /// Exact Weinstein Laplacian: on a monomial `x^nu`,
    /// `sum_j nu_j (nu_j - 1) x^{nu - 2 e_j} + (2 alpha + 1) nu_{d+1} x^{nu - 2 e_{d+1}}`.
    pub fn weinstein_laplacian(&self, alpha: &C) -> Self {
        let two_alpha_plus_one =
            alpha.clone() * C::from_integer(2) + C::one();
        let mut out: BTreeMap<Vec<usize>, C> = BTreeMap::new();
        let mut add_term = |nu: Vec<usize>, c: C| {
            if c.is_zero() {
                return;
            }
            let entry = out.entry(nu).or_insert_with(C::zero);
            *entry = entry.clone() + c;
        };
        for (nu, c) in &self.terms {
            for j in 0..self.dims {
                let m = nu[j];
                if m >= 2 {
                    let mut target = nu.clone();
                    target[j] -= 2;
                    let factor = C::from_integer((m * (m - 1)) as i64);
                    add_term(target, c.clone() * factor);
                }
            }
            let m = nu[self.dims - 1];
            if m >= 2 {
                let mut target = nu.clone();
                target[self.dims - 1] -= 2;
                let factor = two_alpha_plus_one.clone() * C::from_integer(m as i64);
                add_term(target, c.clone() * factor);
            }
        }
        out.retain(|_, c| !c.is_zero());
        EvenPolynomial {
            dims: self.dims,
            terms: out,
        }
    }

    /// Evaluate at a point with coordinates in the coefficient ring.
    pub fn evaluate(&self, x: &[C]) -> Result<C> {
        if x.len() != self.dims {
            return Err(Error::validation("point dimension mismatch"));
        }
        let mut acc = C::zero();
        for (nu, c) in &self.terms {
            let mut term = c.clone();
            for (xi, &e) in x.iter().zip(nu.iter()) {
                for _ in 0..e {
                    term = term * xi.clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Evaluate at a floating-point location.
    pub fn evaluate_f64(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (nu, c) in &self.terms {
            let mut term = c.to_float();
            for (xi, &e) in x.iter().zip(nu.iter()) {
                term *= xi.powi(e as i32);
            }
            acc += term;
        }
        acc
    }

    /// Convert coefficients to floating point.
    pub fn to_real(&self) -> EvenPolynomial<f64> {
        EvenPolynomial {
            dims: self.dims,
            terms: self
                .terms
                .iter()
                .map(|(nu, c)| (nu.clone(), c.to_float()))
                .collect(),
        }
    }
}

/// Decide whether a homogeneous polynomial is a generalized spherical
/// harmonic, i.e. annihilated by the Weinstein Laplacian. Exact when the
/// coefficient ring is exact; with `f64` coefficients a relative tolerance of
/// `1e-12` against the largest input coefficient is applied.
pub fn is_generalized_harmonic<C: Coefficient>(p: &EvenPolynomial<C>, alpha: &C) -> Result<bool> {
    if p.homogeneous_degree().is_none() {
        return Err(Error::validation(
            "harmonicity is defined for homogeneous polynomials",
        ));
    }
    let scale = p.max_abs_coeff();
    let lap = p.weinstein_laplacian(alpha);
    Ok(lap.terms.values().all(|c| c.negligible(scale)))
}

/// One term of the JSON polynomial form: `{"nu": [..], "coeff": 1.5}` or
/// `{"nu": [..], "coeff": "3/2"}`.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct PolyTermJson {
    pub nu: Vec<usize>,
    pub coeff: serde_json::Value,
}

/// A polynomial parsed from JSON: exact when every coefficient was an integer
/// or a rational string, floating point otherwise.
#[derive(Debug, Clone)]
pub enum ParsedPolynomial {
    Rational(EvenPolynomial<BigRational>),
    Real(EvenPolynomial<f64>),
}

impl ParsedPolynomial {
    pub fn to_real(&self) -> EvenPolynomial<f64> {
        match self {
            ParsedPolynomial::Rational(p) => p.to_real(),
            ParsedPolynomial::Real(p) => p.clone(),
        }
    }
}

fn rational_from_value(v: &serde_json::Value) -> Option<BigRational> {
    match v {
        serde_json::Value::Number(n) => {
            let i = n.as_i64()?;
            Some(BigRational::from_integer(BigInt::from(i)))
        }
        serde_json::Value::String(s) => parse_rational(s).ok(),
        _ => None,
    }
}

/// Parse `"p/q"` or an integer string into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let make_err = || Error::validation(format!("cannot parse rational from {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| make_err())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| make_err())?;
        if d.is_zero() {
            return Err(Error::validation("rational with zero denominator"));
        }
        Ok(BigRational::new(n, d))
    } else if let Ok(n) = BigInt::from_str(s) {
        Ok(BigRational::from_integer(n))
    } else {
        Err(make_err())
    }
}

/// Parse the JSON list-of-terms form. Returns the exact variant whenever
/// every coefficient is an integer or a rational string.
pub fn parse_polynomial_terms(dims: usize, terms: &[PolyTermJson]) -> Result<ParsedPolynomial> {
    let mut rational: Vec<(Vec<usize>, BigRational)> = Vec::new();
    let mut all_rational = true;
    for t in terms {
        match rational_from_value(&t.coeff) {
            Some(r) => rational.push((t.nu.clone(), r)),
            None => {
                all_rational = false;
                break;
            }
        }
    }
    if all_rational {
        return Ok(ParsedPolynomial::Rational(EvenPolynomial::new(
            dims, rational,
        )?));
    }
    let mut real: Vec<(Vec<usize>, f64)> = Vec::new();
    for t in terms {
        let c = match &t.coeff {
            serde_json::Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::validation("bad numeric coefficient"))?,
            serde_json::Value::String(s) => parse_rational(s)?
                .to_f64()
                .ok_or_else(|| Error::validation("rational does not fit in f64"))?,
            other => {
                return Err(Error::validation(format!(
                    "coefficient must be a number or rational string, got {other}"
                )))
            }
        };
        real.push((t.nu.clone(), c));
    }
    Ok(ParsedPolynomial::Real(EvenPolynomial::new(dims, real)?))
}

/// Serialize a real polynomial into the JSON list-of-terms form.
pub fn polynomial_terms_json(p: &EvenPolynomial<f64>) -> Vec<PolyTermJson> {
    p.terms()
        .map(|(nu, c)| PolyTermJson {
            nu: nu.clone(),
            coeff: serde_json::json!(c),
        })
        .collect()
}

/// Convenience: the degree-2 generalized harmonic `(2 alpha + 2) x_1^2 - x_{d+1}^2`.
pub fn degree_two_harmonic(alpha_num: i64, alpha_den: i64, dims: usize) -> Result<EvenPolynomial<BigRational>> {
    let alpha = BigRational::new(BigInt::from(alpha_num), BigInt::from(alpha_den));
    let two = BigRational::from_i64(2).unwrap();
    let lead = alpha * two.clone() + two;
    let mut e1 = vec![0usize; dims];
    e1[0] = 2;
    let mut elast = vec![0usize; dims];
    elast[dims - 1] = 2;
    EvenPolynomial::new(dims, [(e1, lead), (elast, -BigRational::one())])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rejects_odd_last_exponent() {
        assert!(EvenPolynomial::<f64>::new(2, [(vec![0, 1], 1.0)]).is_err());
        assert!(EvenPolynomial::<f64>::new(2, [(vec![3, 2], 1.0)]).is_ok());
    }

    #[test]
    fn laplacian_of_linear_term_vanishes() {
        let p = EvenPolynomial::<BigRational>::new(2, [(vec![1, 0], rat(1, 1))]).unwrap();
        assert!(p.weinstein_laplacian(&rat(1, 2)).is_zero());
    }

    #[test]
    fn laplacian_of_last_variable_squared() {
        // x_2^2 -> 2 + (2a+1)*2 = 4a + 4; symbolic oracle: second derivative
        // gives 2, the singular term gives (2a+1)*2.
        let p = EvenPolynomial::<BigRational>::new(2, [(vec![0, 2], rat(1, 1))]).unwrap();
        let lap = p.weinstein_laplacian(&rat(1, 2));
        let want = EvenPolynomial::new(2, [(vec![0, 0], rat(6, 1))]).unwrap(); // 4*(1/2)+4 = 6
        assert_eq!(lap, want);
        // generic alpha = 1/3: 4/3 + 4 = 16/3
        let lap2 = p.weinstein_laplacian(&rat(1, 3));
        let want2 = EvenPolynomial::new(2, [(vec![0, 0], rat(16, 3))]).unwrap();
        assert_eq!(lap2, want2);
    }

    #[test]
    fn degree_two_harmonic_is_annihilated() {
        // (2a+2) x_1^2 - x_2^2: laplacian = 2(2a+2) - (4a+4) = 0 exactly
        for (n, d) in [(1i64, 2i64), (0, 1), (3, 2), (7, 5)] {
            let p = degree_two_harmonic(n, d, 2).unwrap();
            assert!(is_generalized_harmonic(&p, &rat(n, d)).unwrap());
        }
    }

    #[test]
    fn norm_squared_is_not_harmonic() {
        // |x|^2 = x_1^2 + x_2^2: laplacian = 2(d+1) + 2(2a+1) = 2d + 4a + 4 > 0
        let p = EvenPolynomial::<BigRational>::new(
            2,
            [(vec![2, 0], rat(1, 1)), (vec![0, 2], rat(1, 1))],
        )
        .unwrap();
        let lap = p.weinstein_laplacian(&rat(1, 2));
        let want = EvenPolynomial::new(2, [(vec![0, 0], rat(8, 1))]).unwrap(); // 2*1 + 4*(1/2) + 4
        assert_eq!(lap, want);
        assert!(!is_generalized_harmonic(&p, &rat(1, 2)).unwrap());
    }

    #[test]
    fn constants_are_harmonic() {
        let p = EvenPolynomial::<BigRational>::constant(2, rat(5, 3)).unwrap();
        assert!(is_generalized_harmonic(&p, &rat(1, 2)).unwrap());
    }

    #[test]
    fn harmonicity_requires_homogeneity() {
        let p = EvenPolynomial::<BigRational>::new(
            2,
            [(vec![0, 0], rat(1, 1)), (vec![2, 0], rat(1, 1))],
        )
        .unwrap();
        assert!(is_generalized_harmonic(&p, &rat(1, 2)).is_err());
    }

    #[test]
    fn evaluation_matches_arithmetic() {
        let p = degree_two_harmonic(1, 2, 2).unwrap();
        // alpha = 1/2: 3 x1^2 - x2^2 at (1,1) = 2
        let v = p.evaluate(&[rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(v, rat(2, 1));
        assert_eq!(p.evaluate_f64(&[1.0, 1.0]), 2.0);
        let one = EvenPolynomial::<f64>::constant(2, 1.0).unwrap();
        assert_eq!(one.evaluate_f64(&[17.0, 0.3]), 1.0);
    }

    #[test]
    fn homogeneous_scaling_is_exact() {
        let p = degree_two_harmonic(3, 2, 2).unwrap();
        let l = p.homogeneous_degree().unwrap();
        assert_eq!(l, 2);
        for c in [rat(2, 1), rat(-3, 7), rat(11, 4)] {
            let x = [rat(2, 3), rat(5, 2)];
            let scaled: Vec<BigRational> = x.iter().map(|xi| c.clone() * xi.clone()).collect();
            let lhs = p.evaluate(&scaled).unwrap();
            let mut cl = BigRational::one();
            for _ in 0..l {
                cl *= c.clone();
            }
            let rhs = cl * p.evaluate(&x).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn laplacian_is_linear_and_scale_covariant() {
        // Delta_W(P(c .))(x) = c^2 (Delta_W P)(c x) for homogeneous P
        let p = EvenPolynomial::<BigRational>::new(
            2,
            [(vec![2, 2], rat(2, 1)), (vec![4, 0], rat(-1, 3))],
        )
        .unwrap();
        let alpha = rat(1, 2);
        let lap = p.weinstein_laplacian(&alpha);
        let c = rat(3, 2);
        let x = [rat(1, 4), rat(2, 1)];
        let cx: Vec<BigRational> = x.iter().map(|xi| c.clone() * xi.clone()).collect();
        // scale the polynomial: P(c.) has coefficients c^{|nu|} c_nu
        let scaled = EvenPolynomial::new(
            2,
            p.terms().map(|(nu, cf)| {
                let l: usize = nu.iter().sum();
                let mut cl = BigRational::one();
                for _ in 0..l {
                    cl *= c.clone();
                }
                (nu.clone(), cl * cf.clone())
            }),
        )
        .unwrap();
        let lhs = scaled.weinstein_laplacian(&alpha).evaluate(&x).unwrap();
        let rhs = c.clone() * c.clone() * lap.evaluate(&cx).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_round_trip_and_rational_detection() {
        let terms = vec![
            PolyTermJson {
                nu: vec![2, 0],
                coeff: serde_json::json!("3/1"),
            },
            PolyTermJson {
                nu: vec![0, 2],
                coeff: serde_json::json!(-1),
            },
        ];
        match parse_polynomial_terms(2, &terms).unwrap() {
            ParsedPolynomial::Rational(p) => {
                assert!(is_generalized_harmonic(&p, &rat(1, 2)).unwrap());
            }
            ParsedPolynomial::Real(_) => panic!("expected exact parse"),
        }
        let real_terms = vec![PolyTermJson {
            nu: vec![2, 0],
            coeff: serde_json::json!(1.5),
        }];
        assert!(matches!(
            parse_polynomial_terms(2, &real_terms).unwrap(),
            ParsedPolynomial::Real(_)
        ));
    }

    #[test]
    fn real_coefficient_tolerance() {
        // floating-point harmonic with a negligible perturbation
        let p = EvenPolynomial::<f64>::new(2, [(vec![2, 0], 3.0 + 1e-15), (vec![0, 2], -1.0)]).unwrap();
        assert!(is_generalized_harmonic(&p, &0.5).unwrap());
        let q = EvenPolynomial::<f64>::new(2, [(vec![2, 0], 3.001), (vec![0, 2], -1.0)]).unwrap();
        assert!(!is_generalized_harmonic(&q, &0.5).unwrap());
    }
}
