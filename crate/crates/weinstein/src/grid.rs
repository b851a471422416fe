//! Weighted quadrature grids for the measure `x_{d+1}^{2 alpha + 1} dx` on
//! truncated boxes of the half-space, sampled functions on those grids, and
//! the half-sphere grid used by angular coefficients.
//!
//! Box grids are tensor products: each of the first `d` axes covers
//! `[-X_j, X_j]` symmetrically, the last axis covers `(0, X_{d+1}]` with the
//! weight factor folded into its quadrature weights exactly at every node.
//! Values are stored row-major (first axis slowest).

use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::params::AlphaParam;
use crate::quadrature::{self, Rule1d};
use num_complex::Complex64;
use std::sync::Arc;

/// Quadrature rule tag for a grid axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisRule {
    Trapezoid,
    GaussLegendre,
    /// Nodes and weights supplied externally (e.g. loaded from a file).
    Custom,
}

/// One axis of a box grid.
#[derive(Debug, Clone)]
pub struct Axis {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub extent: f64,
    pub rule: AxisRule,
}

impl Axis {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Mean node spacing.
    pub fn spacing(&self) -> f64 {
        let n = self.nodes.len();
        if n < 2 {
            return 0.0;
        }
        (self.nodes[n - 1] - self.nodes[0]) / (n - 1) as f64
    }
}

/// Tensor quadrature grid over a truncated box of the half-space.
#[derive(Debug, Clone)]
pub struct BoxGrid {
    param: AlphaParam,
    axes: Vec<Axis>,
}

/// Build a box grid. The first `d` axes are symmetric about zero, the last
/// axis lives on `(0, X]` with strictly positive nodes and carries the
/// measure weight `x^{2 alpha + 1}`.
pub fn build_box_grid(
    p: &AlphaParam,
    extents: &[f64],
    counts: &[usize],
    rule: AxisRule,
) -> Result<Arc<BoxGrid>> {
    if extents.len() != p.axes() || counts.len() != p.axes() {
        return Err(Error::validation(format!(
            "expected {} extents and counts, got {} and {}",
            p.axes(),
            extents.len(),
            counts.len()
        )));
    }
    if extents.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::validation("extents must be positive"));
    }
    if counts.iter().any(|&n| n < 8) {
        return Err(Error::validation("need at least 8 nodes per axis"));
    }
    let mut axes = Vec::with_capacity(p.axes());
    for j in 0..p.axes() {
        let x = extents[j];
        let n = counts[j];
        let last = j == p.axes() - 1;
        let base: Rule1d = match (rule, last) {
            (AxisRule::GaussLegendre, false) => {
                quadrature::map_to_interval(&quadrature::gauss_legendre(n)?, -x, x)
            }
            (AxisRule::GaussLegendre, true) => {
                quadrature::map_to_interval(&quadrature::gauss_legendre(n)?, 0.0, x)
            }
            (AxisRule::Trapezoid, false) => quadrature::trapezoid(n, -x, x)?,
            (AxisRule::Trapezoid, true) => {
                // keep the first node off the weight singularity at 0
                let h = x / n as f64;
                let nodes: Vec<f64> = (1..=n).map(|i| i as f64 * h).collect();
                let mut weights = vec![h; n];
                weights[n - 1] = 0.5 * h;
                Rule1d { nodes, weights }
            }
            (AxisRule::Custom, _) => {
                return Err(Error::validation(
                    "custom rule tags only arise from deserialized grids",
                ))
            }
        };
        let mut axis = Axis {
            nodes: base.nodes,
            weights: base.weights,
            extent: x,
            rule,
        };
        if last {
            for (w, &node) in axis.weights.iter_mut().zip(axis.nodes.iter()) {
                *w *= node.powf(p.weight_exponent());
            }
        }
        axes.push(axis);
    }
    let grid = BoxGrid { param: *p, axes };
    grid.validate()?;
    Ok(Arc::new(grid))
}

impl BoxGrid {
    /// Assemble a grid from explicit axes (deserialization path).
    pub fn from_axes(param: AlphaParam, axes: Vec<Axis>) -> Result<Arc<BoxGrid>> {
        let grid = BoxGrid { param, axes };
        grid.validate()?;
        Ok(Arc::new(grid))
    }

    fn validate(&self) -> Result<()> {
        if self.axes.len() != self.param.axes() {
            return Err(Error::validation("axis count must equal d + 1"));
        }
        for (j, axis) in self.axes.iter().enumerate() {
            if axis.nodes.len() != axis.weights.len() || axis.nodes.is_empty() {
                return Err(Error::validation(format!("axis {j}: bad node/weight arrays")));
            }
            if axis.nodes.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::validation(format!(
                    "axis {j}: nodes must be strictly increasing"
                )));
            }
            if axis.weights.iter().any(|&w| w < 0.0) {
                return Err(Error::validation(format!("axis {j}: negative weight")));
            }
        }
        let last = &self.axes[self.axes.len() - 1];
        if last.nodes[0] <= 0.0 {
            return Err(Error::validation("last-axis nodes must be strictly positive"));
        }
        Ok(())
    }

    pub fn param(&self) -> &AlphaParam {
        &self.param
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn axis(&self, j: usize) -> &Axis {
        &self.axes[j]
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len()).collect()
    }

    pub fn node_count(&self) -> usize {
        self.axes.iter().map(|a| a.len()).product()
    }

    /// Coordinates of the node with row-major flat index `flat`.
    pub fn coords_into(&self, mut flat: usize, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.axes.len());
        for j in (0..self.axes.len()).rev() {
            let n = self.axes[j].len();
            out[j] = self.axes[j].nodes[flat % n];
            flat /= n;
        }
    }

    pub fn coords(&self, flat: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.axes.len()];
        self.coords_into(flat, &mut out);
        out
    }

    /// Quadrature weight (measure already folded in) of a node.
    pub fn weight_at(&self, mut flat: usize) -> f64 {
        let mut w = 1.0;
        for j in (0..self.axes.len()).rev() {
            let n = self.axes[j].len();
            w *= self.axes[j].weights[flat % n];
            flat /= n;
        }
        w
    }

    /// Largest Euclidean node norm the box can contain.
    pub fn max_radius(&self) -> f64 {
        self.axes
            .iter()
            .map(|a| {
                let hi = a.nodes[a.len() - 1].abs();
                let lo = a.nodes[0].abs();
                hi.max(lo).powi(2)
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Coarsest node spacing over all axes.
    pub fn max_spacing(&self) -> f64 {
        self.axes
            .iter()
            .map(|a| a.spacing())
            .fold(0.0f64, f64::max)
    }

    /// True if the two grids have identical parameters and axes.
    pub fn same_layout(&self, other: &BoxGrid) -> bool {
        self.param == other.param
            && self.shape() == other.shape()
            && self
                .axes
                .iter()
                .zip(other.axes.iter())
                .all(|(a, b)| a.nodes == b.nodes && a.weights == b.weights)
    }
}

/// Complex samples of a function on a box grid.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    grid: Arc<BoxGrid>,
    values: Vec<Complex64>,
    support_radius: Option<f64>,
    label: String,
    closed_form: Option<FunctionSpec>,
}

impl SampledFunction {
    /// Wrap explicit values. The declared support radius, when given, must be
    /// honored by the values: nodes outside the radius carry exact zeros.
    pub fn new(
        grid: Arc<BoxGrid>,
        values: Vec<Complex64>,
        support_radius: Option<f64>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if values.len() != grid.node_count() {
            return Err(Error::validation(format!(
                "value count {} does not match grid node count {}",
                values.len(),
                grid.node_count()
            )));
        }
        if let Some(r) = support_radius {
            if !(r >= 0.0) {
                return Err(Error::validation("support radius must be nonnegative"));
            }
        }
        let f = SampledFunction {
            grid,
            values,
            support_radius,
            label: label.into(),
            closed_form: None,
        };
        f.check_support()?;
        Ok(f)
    }

    /// Sample a built-in closed-form function; keeps the closed form attached
    /// so that later operations (translation, convolution) can evaluate it
    /// off-grid without interpolation.
    pub fn from_spec(grid: Arc<BoxGrid>, spec: &FunctionSpec, label: impl Into<String>) -> Result<Self> {
        let p = *grid.param();
        let n = grid.node_count();
        let mut values = Vec::with_capacity(n);
        let mut buf = vec![0.0; grid.axes().len()];
        for flat in 0..n {
            grid.coords_into(flat, &mut buf);
            values.push(Complex64::new(spec.eval(&p, &buf), 0.0));
        }
        Ok(SampledFunction {
            grid,
            values,
            support_radius: spec.support_radius(),
            label: label.into(),
            closed_form: Some(spec.clone()),
        })
    }

    /// Sample an arbitrary function.
    pub fn from_fn(
        grid: Arc<BoxGrid>,
        f: impl Fn(&[f64]) -> Complex64,
        support_radius: Option<f64>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let n = grid.node_count();
        let mut values = Vec::with_capacity(n);
        let mut buf = vec![0.0; grid.axes().len()];
        for flat in 0..n {
            grid.coords_into(flat, &mut buf);
            values.push(f(&buf));
        }
        SampledFunction::new(grid, values, support_radius, label)
    }

    pub fn zero(grid: Arc<BoxGrid>) -> Self {
        let n = grid.node_count();
        SampledFunction {
            grid,
            values: vec![Complex64::new(0.0, 0.0); n],
            support_radius: None,
            label: "zero".into(),
            closed_form: None,
        }
    }

    fn check_support(&self) -> Result<()> {
        if let Some(r) = self.support_radius {
            let mut buf = vec![0.0; self.grid.axes().len()];
            for flat in 0..self.values.len() {
                if self.values[flat] != Complex64::new(0.0, 0.0) {
                    self.grid.coords_into(flat, &mut buf);
                    let norm = buf.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > r {
                        return Err(Error::validation(format!(
                            "declared support radius {r} violated at node with norm {norm:.6}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> &Arc<BoxGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut Vec<Complex64> {
        &mut self.values
    }

    pub fn support_radius(&self) -> Option<f64> {
        self.support_radius
    }

    pub fn set_support_radius(&mut self, r: Option<f64>) -> Result<()> {
        self.support_radius = r;
        self.check_support()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn closed_form(&self) -> Option<&FunctionSpec> {
        self.closed_form.as_ref()
    }

    pub fn clear_closed_form(&mut self) {
        self.closed_form = None;
    }

    /// Quadrature approximation of the integral against the weighted measure.
    pub fn integrate(&self) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut comp = Complex64::new(0.0, 0.0);
        for (flat, v) in self.values.iter().enumerate() {
            let term = v * self.grid.weight_at(flat);
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        sum
    }

    /// Weighted `L^p` norm; `p = f64::INFINITY` gives the max norm.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::domain(format!("lp_norm requires p >= 1, got {p}")));
        }
        if p.is_infinite() {
            return Ok(self
                .values
                .iter()
                .map(|v| v.norm())
                .fold(0.0f64, f64::max));
        }
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (flat, v) in self.values.iter().enumerate() {
            let term = v.norm().powf(p) * self.grid.weight_at(flat);
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        Ok(sum.powf(1.0 / p))
    }

    /// Pointwise linear combination `a*self + b*other` on a shared grid.
    pub fn linear_combination(&self, a: Complex64, other: &SampledFunction, b: Complex64) -> Result<SampledFunction> {
        if !Arc::ptr_eq(&self.grid, &other.grid) && !self.grid.same_layout(&other.grid) {
            return Err(Error::validation("grids differ"));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(SampledFunction {
            grid: self.grid.clone(),
            values,
            support_radius: match (self.support_radius, other.support_radius) {
                (Some(r1), Some(r2)) => Some(r1.max(r2)),
                _ => None,
            },
            label: format!("lin({}, {})", self.label, other.label),
            closed_form: None,
        })
    }

    pub fn scaled(&self, a: Complex64) -> SampledFunction {
        SampledFunction {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| a * v).collect(),
            support_radius: self.support_radius,
            label: self.label.clone(),
            closed_form: None,
        }
    }

    /// Sup norm of the pointwise difference.
    pub fn sup_distance(&self, other: &SampledFunction) -> Result<f64> {
        if self.values.len() != other.values.len() {
            return Err(Error::validation("value lengths differ"));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max))
    }
}

/// Quadrature nodes on the half sphere `S^d_+` with the weight
/// `t_{d+1}^{2 alpha + 1}` folded into the weights. Only `d = 1` (half
/// circle) is supported.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    param: AlphaParam,
    directions: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

/// Build the half-circle grid: directions `(cos phi, sin phi)`, `phi` in
/// `(0, pi)`, weights exact for the measure `sin^{2 alpha + 1} phi dphi`
/// via a Gauss-Jacobi rule in `u = cos phi`.
pub fn build_sphere_grid(p: &AlphaParam, resolution: usize) -> Result<SphereGrid> {
    if p.d() != 1 {
        return Err(Error::validation(format!(
            "sphere grids are implemented for d = 1 only, got d = {}",
            p.d()
        )));
    }
    if resolution < 16 {
        return Err(Error::validation("sphere resolution must be >= 16"));
    }
    // sin^{2a+1} phi dphi = (1 - u^2)^a du under u = cos phi
    let rule = quadrature::gauss_jacobi(resolution, p.alpha(), p.alpha())?;
    let mut directions = Vec::with_capacity(resolution);
    let mut weights = Vec::with_capacity(resolution);
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        let s = (1.0 - u * u).max(0.0).sqrt();
        if s <= 0.0 {
            continue;
        }
        directions.push(vec![u, s]);
        weights.push(w);
    }
    Ok(SphereGrid {
        param: *p,
        directions,
        weights,
    })
}

impl SphereGrid {
    pub fn param(&self) -> &AlphaParam {
        &self.param
    }

    pub fn directions(&self) -> &[Vec<f64>] {
        &self.directions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Total measure of the half sphere under this rule.
    pub fn total_measure(&self) -> f64 {
        self.weights.iter().sum()
    }
}
