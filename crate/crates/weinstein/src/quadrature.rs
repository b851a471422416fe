//! One-dimensional quadrature rules: Gauss-Legendre, Gauss-Jacobi and
//! composite trapezoid. Gaussian nodes and weights come from the Golub-Welsch
//! eigenvalue method on the symmetric Jacobi matrix.

use crate::error::{Error, Result};
use nalgebra::DMatrix;

/// Nodes and weights of an n-point rule on some interval.
#[derive(Debug, Clone)]
pub struct Rule1d {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn golub_welsch(diag: &[f64], offdiag: &[f64], mu0: f64) -> Rule1d {
    let n = diag.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = offdiag[i];
            m[(i + 1, i)] = offdiag[i];
        }
    }
    let eig = m.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v = eig.eigenvectors.column(i)[0];
            (eig.eigenvalues[i], mu0 * v * v)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Rule1d {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// n-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Result<Rule1d> {
    if n < 1 {
        return Err(Error::validation("Gauss-Legendre needs n >= 1"));
    }
    if n == 1 {
        return Ok(Rule1d {
            nodes: vec![0.0],
            weights: vec![2.0],
        });
    }
    let diag = vec![0.0; n];
    let offdiag: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    Ok(golub_welsch(&diag, &offdiag, 2.0))
}

/// n-point Gauss-Jacobi rule on `[-1, 1]` for the weight `(1-x)^a (1+x)^b`,
/// `a, b > -1`.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Result<Rule1d> {
    if n < 2 {
        return Err(Error::validation("Gauss-Jacobi needs n >= 2"));
    }
    if !(a > -1.0) || !(b > -1.0) {
        return Err(Error::domain(format!(
            "Gauss-Jacobi exponents must be > -1, got a={a}, b={b}"
        )));
    }
    let mut diag = Vec::with_capacity(n);
    let mut offdiag = Vec::with_capacity(n - 1);
    diag.push((b - a) / (a + b + 2.0));
    for k in 1..n {
        let k = k as f64;
        let denom = 2.0 * k + a + b;
        // ratio before sqrt: the factors can be pairwise negative for a+b < -1
        let ratio = k * (k + a) * (k + b) * (k + a + b) / ((denom + 1.0) * (denom - 1.0));
        offdiag.push(2.0 / denom * ratio.sqrt());
        diag.push((b * b - a * a) / (denom * (denom + 2.0)));
    }
    // mu0 = int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
    let mu0 = ((a + b + 1.0) * std::f64::consts::LN_2
        + crate::special::log_gamma(a + 1.0)?
        + crate::special::log_gamma(b + 1.0)?
        - crate::special::log_gamma(a + b + 2.0)?)
    .exp();
    Ok(golub_welsch(&diag, &offdiag, mu0))
}

/// Composite trapezoid rule with n uniformly spaced nodes on `[lo, hi]`,
/// endpoints included.
pub fn trapezoid(n: usize, lo: f64, hi: f64) -> Result<Rule1d> {
    if n < 2 {
        return Err(Error::validation("trapezoid needs n >= 2"));
    }
    let h = (hi - lo) / (n - 1) as f64;
    let nodes: Vec<f64> = (0..n).map(|i| lo + i as f64 * h).collect();
    let mut weights = vec![h; n];
    weights[0] = 0.5 * h;
    weights[n - 1] = 0.5 * h;
    Ok(Rule1d { nodes, weights })
}

/// Affine map of a `[-1,1]` rule onto `[lo, hi]`.
pub fn map_to_interval(rule: &Rule1d, lo: f64, hi: f64) -> Rule1d {
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    Rule1d {
        nodes: rule.nodes.iter().map(|x| half * x + mid).collect(),
        weights: rule.weights.iter().map(|w| half * w).collect(),
    }
}
