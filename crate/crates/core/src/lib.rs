//! Path-like integrals of length on directed surfaces.
//!
//! A directed surface is a surface with two orthogonal vector fields whose
//! flows give chart coordinates `(x, y)`, with metric
//! `g = h'(x)^2 dx^2 + f'(x)^2 dy^2`. Paths from `p` to `q` are
//! concatenations of flow segments; summing the length of every such path
//! over the stratified path space gives a closed form in terms of the
//! continuous binomial coefficient `{t brace a}` and Bessel-Clifford
//! functions.
//!
//! Module map:
//!
//! - [`special_fn`]: Bessel-Clifford functions `C_nu(z)` by series and by
//!   contour quadrature, plus growth bounds.
//! - [`cbinom`]: continuous binomial coefficients, derivatives and the
//!   auxiliary integral `V(s, t)`.
//! - [`geometry`]: metric profiles, the named surface registry, curvature,
//!   geodesic residuals and path lengths.
//! - [`path_space`]: direction configurations, simplex volumes and the
//!   stratum volumes of the path space.
//! - [`length_integral`]: per-configuration length integrals and the
//!   closed-form total with its corollaries.
//! - [`oracle`]: brute-force Monte Carlo and nested quadrature used to
//!   certify the closed forms.
//! - [`validate`]: named invariant suites used by the CLI.

// `!(x > 0.0)` rejects NaN along with non-positive values; reference
// constants keep every digit they were computed with
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cbinom;
mod error;
pub mod geometry;
pub mod length_integral;
pub mod numeric;
pub mod oracle;
pub mod path_space;
pub mod special_fn;
pub mod validate;

pub use error::{Error, Result};
