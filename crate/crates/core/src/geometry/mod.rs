//! Metrics of the form `g = h'(x)^2 dx^2 + f'(x)^2 dy^2`.
//!
//! The chart coordinate `x` is the one the metric coefficients depend on;
//! direction 1 flows along `x` and direction 2 along `y`. A segment in
//! direction 1 from `x` of duration `tau` has length `h(x + tau) - h(x)`,
//! and a segment in direction 2 at abscissa `x` has length `f'(x) tau`.
//!
//! Surfaces are looked up by name in a [`SurfaceRegistry`]; see
//! [`presets`] for the built-in ones.

pub mod presets;

use std::fmt;
use std::sync::Arc;

use crate::path_space::Configuration;
use crate::{Error, Result};

pub use presets::{preset, preset_with, SurfaceFactory, SurfaceRegistry};

/// An open interval `(lo, hi)`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    /// `count` interior points used to spot-check profile invariants.
    pub fn sample_points(&self, count: usize) -> Vec<f64> {
        let (lo, hi) = match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => (self.lo, self.hi),
            (true, false) => (self.lo, self.lo + 10.0),
            (false, true) => (self.hi - 10.0, self.hi),
            (false, false) => (-10.0, 10.0),
        };
        (0..count)
            .map(|i| lo + (hi - lo) * (i as f64 + 0.5) / count as f64)
            .collect()
    }
}

/// The functions `h`, `f` and their derivatives that define a metric.
///
/// Second and third derivatives are optional; when absent, central finite
/// differences of the lower derivative are used.
pub trait Profile: Send + Sync {
    fn h(&self, x: f64) -> f64;
    fn dh(&self, x: f64) -> f64;
    fn d2h(&self, _x: f64) -> Option<f64> {
        None
    }
    fn f(&self, x: f64) -> f64;
    fn df(&self, x: f64) -> f64;
    fn d2f(&self, _x: f64) -> Option<f64> {
        None
    }
    fn d3f(&self, _x: f64) -> Option<f64> {
        None
    }
    fn domain(&self) -> Interval;
    /// Whether `f` is a polynomial of degree at most two.
    fn f_is_quadratic(&self) -> bool {
        false
    }
}

/// How the surface's natural coordinates map onto the chart `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisOrder {
    /// Surface `(u, v)` is chart `(x, y)`.
    Direct,
    /// Surface `(u, v)` is chart `(v, u)`: the metric depends on the second
    /// surface coordinate (the hyperbolic half-plane).
    Swapped,
}

/// A point in chart coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub x: f64,
    pub y: f64,
}

impl ChartPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

const CHECK_POINTS: usize = 16;
const CHECK_REL_TOL: f64 = 1e-6;

/// A validated, immutable metric profile.
#[derive(Clone)]
pub struct MetricProfile {
    name: String,
    inner: Arc<dyn Profile>,
    axes: AxisOrder,
}

impl fmt::Debug for MetricProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricProfile")
            .field("name", &self.name)
            .field("domain", &self.inner.domain())
            .field("axes", &self.axes)
            .finish()
    }
}

fn fd_step(x: f64) -> f64 {
    f64::EPSILON.cbrt() * x.abs().max(1.0)
}

fn central_difference(g: impl Fn(f64) -> f64, x: f64) -> f64 {
    let e = fd_step(x);
    (g(x + e) - g(x - e)) / (2.0 * e)
}

impl MetricProfile {
    /// Wraps `profile`, checking on sample points of its domain that `h` and
    /// `f` are strictly increasing and that `dh`, `df` agree with finite
    /// differences of `h`, `f`.
    pub fn new(
        name: impl Into<String>,
        profile: Arc<dyn Profile>,
        axes: AxisOrder,
    ) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidProfile {
            name: name.clone(),
            reason,
        };
        for x in profile.domain().sample_points(CHECK_POINTS) {
            let dh = profile.dh(x);
            let df = profile.df(x);
            if !(dh > 0.0) || !(df > 0.0) {
                return Err(invalid(format!(
                    "h and f must be strictly increasing; h'({x}) = {dh}, f'({x}) = {df}"
                )));
            }
            for (label, exact, fd) in [
                ("h'", dh, central_difference(|u| profile.h(u), x)),
                ("f'", df, central_difference(|u| profile.f(u), x)),
            ] {
                if (exact - fd).abs() > CHECK_REL_TOL * exact.abs() {
                    return Err(invalid(format!(
                        "{label}({x}) = {exact} disagrees with finite difference {fd}"
                    )));
                }
            }
        }
        Ok(Self {
            name,
            inner: profile,
            axes,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Interval {
        self.inner.domain()
    }

    pub fn axes(&self) -> AxisOrder {
        self.axes
    }

    pub fn f_is_quadratic(&self) -> bool {
        self.inner.f_is_quadratic()
    }

    pub fn h(&self, x: f64) -> f64 {
        self.inner.h(x)
    }

    pub fn dh(&self, x: f64) -> f64 {
        self.inner.dh(x)
    }

    pub fn d2h(&self, x: f64) -> f64 {
        self.inner
            .d2h(x)
            .unwrap_or_else(|| central_difference(|u| self.inner.dh(u), x))
    }

    pub fn f(&self, x: f64) -> f64 {
        self.inner.f(x)
    }

    pub fn df(&self, x: f64) -> f64 {
        self.inner.df(x)
    }

    pub fn d2f(&self, x: f64) -> f64 {
        self.inner
            .d2f(x)
            .unwrap_or_else(|| central_difference(|u| self.inner.df(u), x))
    }

    pub fn d3f(&self, x: f64) -> f64 {
        self.inner
            .d3f(x)
            .unwrap_or_else(|| central_difference(|u| self.d2f(u), x))
    }

    /// Chart point for a point given in the surface's natural coordinates.
    pub fn chart_point(&self, u: f64, v: f64) -> ChartPoint {
        match self.axes {
            AxisOrder::Direct => ChartPoint::new(u, v),
            AxisOrder::Swapped => ChartPoint::new(v, u),
        }
    }

    /// Inverse of [`MetricProfile::chart_point`].
    pub fn surface_point(&self, p: ChartPoint) -> (f64, f64) {
        match self.axes {
            AxisOrder::Direct => (p.x, p.y),
            AxisOrder::Swapped => (p.y, p.x),
        }
    }

    pub fn check_in_domain(&self, x: f64) -> Result<()> {
        if self.domain().contains(x) {
            Ok(())
        } else {
            let d = self.domain();
            Err(Error::domain(format!(
                "x = {x} outside the chart domain ({}, {}) of '{}'",
                d.lo, d.hi, self.name
            )))
        }
    }
}

/// Lengths `(h(x1) - h(x0), f'(x0) (y1 - y0))` of the two flow lines from
/// `(x0, y0)`.
pub fn flow_lengths(
    profile: &MetricProfile,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
) -> Result<(f64, f64)> {
    profile.check_in_domain(x0)?;
    profile.check_in_domain(x1)?;
    if x1 < x0 || y1 < y0 {
        return Err(Error::domain(format!(
            "flow lines run forward: need x1 >= x0 and y1 >= y0, got x: {x0} -> {x1}, y: {y0} -> {y1}"
        )));
    }
    Ok((profile.h(x1) - profile.h(x0), profile.df(x0) * (y1 - y0)))
}

/// Gaussian curvature `-(1 / (h' f')) (f'' / h')'` at abscissa `x`.
pub fn gauss_curvature(profile: &MetricProfile, x: f64) -> Result<f64> {
    profile.check_in_domain(x)?;
    let dh = profile.dh(x);
    let df = profile.df(x);
    if !(dh > 0.0) || !(df > 0.0) {
        return Err(Error::InvalidProfile {
            name: profile.name().to_string(),
            reason: format!("h'({x}) = {dh}, f'({x}) = {df} must be positive"),
        });
    }
    let ratio_derivative = (profile.d3f(x) * dh - profile.d2f(x) * profile.d2h(x)) / (dh * dh);
    Ok(-ratio_derivative / (dh * df))
}

/// Left-hand sides of the geodesic equations at the jet
/// `(x, x', x'', y', y'')`.
pub fn geodesic_residual(
    profile: &MetricProfile,
    x: f64,
    dx: f64,
    ddx: f64,
    dy: f64,
    ddy: f64,
) -> Result<(f64, f64)> {
    profile.check_in_domain(x)?;
    let dh = profile.dh(x);
    let df = profile.df(x);
    let d2f = profile.d2f(x);
    let first = ddx + profile.d2h(x) / dh * dx * dx - d2f * df / (dh * dh) * dy * dy;
    let second = ddy + 2.0 * d2f / df * dx * dy;
    Ok((first, second))
}

/// Length of the indirect path from `p` with configuration `config` and
/// segment durations `durations`.
pub fn path_length(
    profile: &MetricProfile,
    config: &Configuration,
    durations: &[f64],
    p: ChartPoint,
) -> Result<f64> {
    if durations.len() != config.len() {
        return Err(Error::domain(format!(
            "{} durations for a configuration of length {}",
            durations.len(),
            config.len()
        )));
    }
    if config.k() != 2 {
        return Err(Error::Unsupported(
            "path lengths need two directions".into(),
        ));
    }
    profile.check_in_domain(p.x)?;
    let mut x = p.x;
    let mut length = 0.0;
    for (segment, (&direction, &tau)) in config.word().iter().zip(durations).enumerate() {
        if tau < 0.0 || !tau.is_finite() {
            return Err(Error::domain(format!(
                "segment {segment} has duration {tau}"
            )));
        }
        if direction == 1 {
            let end = x + tau;
            if !profile.domain().contains(end) {
                return Err(Error::SegmentOutOfDomain { segment, x: end });
            }
            length += profile.h(end) - profile.h(x);
            x = end;
        } else {
            length += profile.df(x) * tau;
        }
    }
    Ok(length)
}
