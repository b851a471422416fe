//! Weinstein transform calculus on the half-space `R^d x (0, inf)`.
//!
//! The library provides the weighted measure and quadrature grids, the
//! Weinstein kernel and transform (with analytic continuation to complex
//! spectral points), the generalized translation and convolution, the heat
//! semigroup, exact harmonic-polynomial checks, and a Paley-Wiener analyzer
//! that certifies and recovers the support radius of compactly supported
//! functions from the exponential growth of their transform.
//!
//! A narrative guide with runnable examples lives in `book/`; its code blocks
//! are compiled as doc-tests through [`guide`].

pub mod checks;
pub mod error;
pub mod function;
pub mod grid;
pub mod guide;
pub mod heat;
pub mod interpolate;
pub mod io;
pub mod kernel;
pub mod paley_wiener;
pub mod params;
pub mod poly;
pub mod quadrature;
pub mod special;
pub mod transform;
pub mod translation;

pub use error::{Error, Result};
pub use function::FunctionSpec;
pub use grid::{AxisRule, BoxGrid, SampledFunction, SphereGrid};
pub use kernel::SpectralPoint;
pub use params::AlphaParam;
pub use poly::EvenPolynomial;
