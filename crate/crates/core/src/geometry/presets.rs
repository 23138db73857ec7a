//! Built-in surfaces and the name-keyed registry that selects them.
//!
//! | name         | h          | f           | chart domain | curvature |
//! |--------------|------------|-------------|--------------|-----------|
//! | `euclidean`  | `x`        | `x`         | real line    | 0         |
//! | `linear`     | `|v1| u`   | `|v2| u`    | real line    | 0         |
//! | `polar`      | `r`        | `r^2 / 2`   | `(0, inf)`   | 0         |
//! | `sphere`     | `theta`    | `-cos theta`| `(0, pi)`    | 1         |
//! | `hyperbolic` | `ln y`     | `ln y`      | `(0, inf)`   | -1        |
//!
//! Only strict monotonicity of `h` and `f` is enforced. The sphere and
//! half-plane profiles take negative values on part of their domain, which
//! none of the formulas care about.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use super::{AxisOrder, Interval, MetricProfile, Profile};
use crate::{Error, Result};

/// Builds a [`MetricProfile`] from numeric parameters.
pub trait SurfaceFactory: Send + Sync {
    fn name(&self) -> &'static str;
    /// Number of parameters `build` expects.
    fn arity(&self) -> usize {
        0
    }
    fn build(&self, params: &[f64]) -> Result<MetricProfile>;
}

/// Surfaces selectable by name.
pub struct SurfaceRegistry {
    factories: BTreeMap<&'static str, Box<dyn SurfaceFactory>>,
}

impl SurfaceRegistry {
    pub fn empty() -> Self {
        Self {
            factories: BTreeMap::new(),
        }
    }

    /// The five built-in surfaces.
    pub fn builtin() -> Self {
        let mut registry = Self::empty();
        registry.register(Box::new(Fixed::new("euclidean", || Arc::new(Euclidean))));
        registry.register(Box::new(LinearFactory));
        registry.register(Box::new(Fixed::new("polar", || Arc::new(Polar))));
        registry.register(Box::new(Fixed::new("sphere", || Arc::new(Sphere))));
        registry.register(Box::new(Fixed::with_axes(
            "hyperbolic",
            AxisOrder::Swapped,
            || Arc::new(Hyperbolic),
        )));
        registry
    }

    /// Adds or replaces the factory registered under `factory.name()`.
    pub fn register(&mut self, factory: Box<dyn SurfaceFactory>) {
        self.factories.insert(factory.name(), factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.factories.keys().copied()
    }

    pub fn get(&self, name: &str) -> Result<&dyn SurfaceFactory> {
        self.factories
            .get(name)
            .map(|f| f.as_ref())
            .ok_or_else(|| Error::UnknownSurface(name.to_string()))
    }

    pub fn build(&self, name: &str, params: &[f64]) -> Result<MetricProfile> {
        let factory = self.get(name)?;
        if params.len() != factory.arity() {
            return Err(Error::domain(format!(
                "surface '{name}' takes {} parameters, got {}",
                factory.arity(),
                params.len()
            )));
        }
        factory.build(params)
    }
}

fn builtin_registry() -> &'static SurfaceRegistry {
    static REGISTRY: OnceLock<SurfaceRegistry> = OnceLock::new();
    REGISTRY.get_or_init(SurfaceRegistry::builtin)
}

/// A parameterless built-in surface by name.
pub fn preset(name: &str) -> Result<MetricProfile> {
    builtin_registry().build(name, &[])
}

/// A built-in surface with parameters, e.g. `linear` with `[a, b, c, d]`.
pub fn preset_with(name: &str, params: &[f64]) -> Result<MetricProfile> {
    builtin_registry().build(name, params)
}

struct Fixed {
    name: &'static str,
    axes: AxisOrder,
    make: fn() -> Arc<dyn Profile>,
}

impl Fixed {
    fn new(name: &'static str, make: fn() -> Arc<dyn Profile>) -> Self {
        Self::with_axes(name, AxisOrder::Direct, make)
    }

    fn with_axes(name: &'static str, axes: AxisOrder, make: fn() -> Arc<dyn Profile>) -> Self {
        Self { name, axes, make }
    }
}

impl SurfaceFactory for Fixed {
    fn name(&self) -> &'static str {
        self.name
    }

    fn build(&self, _params: &[f64]) -> Result<MetricProfile> {
        MetricProfile::new(self.name, (self.make)(), self.axes)
    }
}

struct LinearFactory;

impl SurfaceFactory for LinearFactory {
    fn name(&self) -> &'static str {
        "linear"
    }

    fn arity(&self) -> usize {
        4
    }

    /// `[a, b, c, d]` are the constant fields `X1 = (a, b)`, `X2 = (c, d)`.
    fn build(&self, params: &[f64]) -> Result<MetricProfile> {
        let [a, b, c, d] = params else {
            return Err(Error::domain("linear takes four parameters a, b, c, d"));
        };
        let det = a * d - b * c;
        let scale = a.hypot(*b) * c.hypot(*d);
        if !(det.abs() > 1e-12 * scale) {
            return Err(Error::domain(format!(
                "linear fields ({a}, {b}) and ({c}, {d}) are linearly dependent"
            )));
        }
        let profile = Linear {
            first: a.hypot(*b),
            second: c.hypot(*d),
        };
        MetricProfile::new("linear", Arc::new(profile), AxisOrder::Direct)
    }
}

struct Euclidean;

impl Profile for Euclidean {
    fn h(&self, x: f64) -> f64 {
        x
    }
    fn dh(&self, _x: f64) -> f64 {
        1.0
    }
    fn d2h(&self, _x: f64) -> Option<f64> {
        Some(0.0)
    }
    fn f(&self, x: f64) -> f64 {
        x
    }
    fn df(&self, _x: f64) -> f64 {
        1.0
    }
    fn d2f(&self, _x: f64) -> Option<f64> {
        Some(0.0)
    }
    fn d3f(&self, _x: f64) -> Option<f64> {
        Some(0.0)
    }
    fn domain(&self) -> Interval {
        Interval::REAL_LINE
    }
    fn f_is_quadratic(&self) -> bool {
        true
    }
}

/// Flow lengths scale with the norms of the two constant fields.
struct Linear {
    first: f64,
    second: f64,
}

impl Profile for Linear {
    fn h(&self, u: f64) -> f64 {
        self.first * u
    }
    fn dh(&self, _u: f64) -> f64 {
        self.first
    }
    fn d2h(&self, _u: f64) -> Option<f64> {
        Some(0.0)
    }
    fn f(&self, u: f64) -> f64 {
        self.second * u
    }
    fn df(&self, _u: f64) -> f64 {
        self.second
    }
    fn d2f(&self, _u: f64) -> Option<f64> {
        Some(0.0)
    }
    fn d3f(&self, _u: f64) -> Option<f64> {
        Some(0.0)
    }
    fn domain(&self) -> Interval {
        Interval::REAL_LINE
    }
    fn f_is_quadratic(&self) -> bool {
        true
    }
}

struct Polar;

impl Profile for Polar {
    fn h(&self, r: f64) -> f64 {
        r
    }
    fn dh(&self, _r: f64) -> f64 {
        1.0
    }
    fn d2h(&self, _r: f64) -> Option<f64> {
        Some(0.0)
    }
    fn f(&self, r: f64) -> f64 {
        0.5 * r * r
    }
    fn df(&self, r: f64) -> f64 {
        r
    }
    fn d2f(&self, _r: f64) -> Option<f64> {
        Some(1.0)
    }
    fn d3f(&self, _r: f64) -> Option<f64> {
        Some(0.0)
    }
    fn domain(&self) -> Interval {
        Interval::new(0.0, f64::INFINITY)
    }
    fn f_is_quadratic(&self) -> bool {
        true
    }
}

struct Sphere;

impl Profile for Sphere {
    fn h(&self, theta: f64) -> f64 {
        theta
    }
    fn dh(&self, _theta: f64) -> f64 {
        1.0
    }
    fn d2h(&self, _theta: f64) -> Option<f64> {
        Some(0.0)
    }
    fn f(&self, theta: f64) -> f64 {
        -theta.cos()
    }
    fn df(&self, theta: f64) -> f64 {
        theta.sin()
    }
    fn d2f(&self, theta: f64) -> Option<f64> {
        Some(theta.cos())
    }
    fn d3f(&self, theta: f64) -> Option<f64> {
        Some(-theta.sin())
    }
    fn domain(&self) -> Interval {
        Interval::new(0.0, PI)
    }
}

struct Hyperbolic;

impl Profile for Hyperbolic {
    fn h(&self, y: f64) -> f64 {
        y.ln()
    }
    fn dh(&self, y: f64) -> f64 {
        1.0 / y
    }
    fn d2h(&self, y: f64) -> Option<f64> {
        Some(-1.0 / (y * y))
    }
    fn f(&self, y: f64) -> f64 {
        y.ln()
    }
    fn df(&self, y: f64) -> f64 {
        1.0 / y
    }
    fn d2f(&self, y: f64) -> Option<f64> {
        Some(-1.0 / (y * y))
    }
    fn d3f(&self, y: f64) -> Option<f64> {
        Some(2.0 / (y * y * y))
    }
    fn domain(&self) -> Interval {
        Interval::new(0.0, f64::INFINITY)
    }
}
