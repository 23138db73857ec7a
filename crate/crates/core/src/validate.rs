//! Named invariant suites with a deterministic text report.
//!
//! Each suite is a [`Suite`] registered by name in a [`SuiteRegistry`]. A
//! suite returns a list of [`Check`]s, each an observed residual compared
//! against a tolerance. Reports contain no timings or thread-dependent data,
//! so the same options always render the same bytes.

use std::fmt::Write as _;

use rand::Rng;

use crate::cbinom::{
    cbinom_bc, cbinom_bound, cbinom_dt, cbinom_series, cbinom_shifted, half_identity_residual,
    pde_residual, v_integral, v_integral_expanded,
};
use crate::geometry::{
    gauss_curvature, geodesic_residual, path_length, preset, preset_with, ChartPoint, MetricProfile,
};
use crate::length_integral::{
    config_length_integral, corollary_average_form, corollary_growth_bound, lemma_closed_form,
    metric_recovery, stratified_length_sum, theorem_length_integral, theorem_length_integral_alt,
    LemmaParams, LengthIntegralInput,
};
use crate::oracle::{
    mc_config_integral, mc_monomial_integral, mc_total_integral, permutation_volume_check,
    quad_config_integral, quad_lemma_recursive, quadrature::integrate, rng, McConfig,
};
use crate::path_space::{
    enumerate_configs, gamma_config_volume, simplex_volume, two_direction_configs,
    vol_gamma_single_field, Configuration, MultiIndex,
};
use crate::special_fn::{
    bc, bc_bound, bc_contour, bc_recurrence_residual, default_contour_radius, SeriesPolicy,
};
use crate::{Error, Result};

/// Options shared by every suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub mc_samples: usize,
    /// Multiplies every tolerance; 1 runs the suites as designed.
    pub tol_scale: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: 0xC0FFEE,
            mc_samples: 100_000,
            tol_scale: 1.0,
        }
    }
}

impl SuiteOptions {
    fn mc(&self) -> Result<McConfig> {
        McConfig::new(self.mc_samples, self.seed, McConfig::default().chunk)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    AtMost,
    AtLeast,
}

/// One property: `observed` must be at most (or at least) `tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub detail: Option<String>,
}

impl Check {
    pub fn at_most(name: impl Into<String>, observed: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            tolerance,
            comparison: Comparison::AtMost,
            detail: None,
        }
    }

    pub fn at_least(name: impl Into<String>, observed: f64, tolerance: f64) -> Self {
        Self {
            comparison: Comparison::AtLeast,
            ..Self::at_most(name, observed, tolerance)
        }
    }

    /// Runs `compute`, turning an error into a failed check.
    fn try_at_most(name: &str, tolerance: f64, compute: impl FnOnce() -> Result<f64>) -> Self {
        match compute() {
            Ok(v) => Self::at_most(name, v, tolerance),
            Err(e) => Self {
                detail: Some(e.to_string()),
                ..Self::at_most(name, f64::NAN, tolerance)
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.observed.is_finite()
            && match self.comparison {
                Comparison::AtMost => self.observed <= self.tolerance,
                Comparison::AtLeast => self.observed >= self.tolerance,
            }
    }
}

/// A named group of checks.
pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, opts: &SuiteOptions) -> Vec<Check>;
}

/// Results of one or more suites, in run order.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub options: SuiteOptions,
    pub sections: Vec<(String, Vec<Check>)>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.sections
            .iter()
            .all(|(_, checks)| checks.iter().all(Check::passed))
    }

    pub fn counts(&self) -> (usize, usize) {
        let checks = self.sections.iter().flat_map(|(_, c)| c);
        let total = checks.clone().count();
        (checks.filter(|c| c.passed()).count(), total)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let o = &self.options;
        let _ = writeln!(
            out,
            "seed={} mc-samples={} tol-scale={}",
            o.seed, o.mc_samples, o.tol_scale
        );
        for (name, checks) in &self.sections {
            let _ = writeln!(out, "[{name}]");
            for c in checks {
                let op = match c.comparison {
                    Comparison::AtMost => "<=",
                    Comparison::AtLeast => ">=",
                };
                let verdict = if c.passed() { "PASS" } else { "FAIL" };
                let _ = write!(
                    out,
                    "{verdict} {} observed={:.3e} {op} {:.3e}",
                    c.name, c.observed, c.tolerance
                );
                if let Some(d) = &c.detail {
                    let _ = write!(out, " ({d})");
                }
                out.push('\n');
            }
            let passed = checks.iter().filter(|c| c.passed()).count();
            let _ = writeln!(out, "{name}: {passed}/{} passed", checks.len());
        }
        let (passed, total) = self.counts();
        let _ = writeln!(out, "overall: {passed}/{total} passed");
        out
    }
}

/// Suites selectable by name, run in registration order by `all`.
pub struct SuiteRegistry {
    suites: Vec<Box<dyn Suite>>,
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        Self { suites: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(SpecialFnSuite));
        r.register(Box::new(CbinomSuite));
        r.register(Box::new(GeometrySuite));
        r.register(Box::new(PathSpaceSuite));
        r.register(Box::new(LengthIntegralSuite));
        r.register(Box::new(OracleSuite));
        r
    }

    /// Adds a suite, replacing any suite of the same name in place.
    pub fn register(&mut self, suite: Box<dyn Suite>) {
        match self.suites.iter().position(|s| s.name() == suite.name()) {
            Some(i) => self.suites[i] = suite,
            None => self.suites.push(suite),
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.suites.iter().map(|s| s.name())
    }

    /// Runs the suite called `name`, or every suite for `all`.
    pub fn run(&self, name: &str, opts: &SuiteOptions) -> Result<Report> {
        let selected: Vec<&dyn Suite> = if name == "all" {
            self.suites.iter().map(|s| s.as_ref()).collect()
        } else {
            let suite = self
                .suites
                .iter()
                .find(|s| s.name() == name)
                .ok_or_else(|| Error::InvalidConfiguration(format!("unknown suite '{name}'")))?;
            vec![suite.as_ref()]
        };
        let sections = selected
            .into_iter()
            .map(|s| {
                let mut checks = s.run(opts);
                for c in &mut checks {
                    c.tolerance *= opts.tol_scale;
                }
                (s.name().to_string(), checks)
            })
            .collect();
        Ok(Report {
            options: *opts,
            sections,
        })
    }
}

fn rel_diff(x: f64, y: f64) -> f64 {
    if x == y {
        0.0
    } else {
        (x - y).abs() / x.abs().max(y.abs())
    }
}

/// Largest value of `f` over `items`; any error aborts.
fn max_over<T>(
    items: impl IntoIterator<Item = T>,
    mut f: impl FnMut(T) -> Result<f64>,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for item in items {
        let v = f(item)?;
        if v.is_nan() {
            return Ok(f64::NAN);
        }
        worst = worst.max(v);
    }
    Ok(worst)
}

/// The five built-in surfaces with a base point for each, in chart
/// coordinates. The base points leave room for budgets up to 2.5 along
/// direction 1 inside every chart domain.
pub fn reference_surfaces() -> Vec<(MetricProfile, ChartPoint)> {
    let linear = preset_with("linear", &[1.0, 0.5, -0.3, 2.0]).expect("independent fields");
    vec![
        (
            preset("euclidean").expect("builtin"),
            ChartPoint::new(0.0, 0.0),
        ),
        (linear, ChartPoint::new(-0.4, 0.1)),
        (preset("polar").expect("builtin"), ChartPoint::new(1.0, 0.0)),
        (
            preset("sphere").expect("builtin"),
            ChartPoint::new(0.3, 0.2),
        ),
        (
            preset("hyperbolic").expect("builtin"),
            ChartPoint::new(1.0, 0.0),
        ),
    ]
}

/// Curvature each reference surface should have.
pub fn expected_curvature(name: &str) -> Option<f64> {
    match name {
        "euclidean" | "linear" | "polar" => Some(0.0),
        "sphere" => Some(1.0),
        "hyperbolic" => Some(-1.0),
        _ => None,
    }
}

fn input_at(profile: &MetricProfile, p: ChartPoint, a: f64, s: f64) -> Result<LengthIntegralInput> {
    LengthIntegralInput::from_budgets(profile.clone(), p, a, a + s)
}

const Z_GRID: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 10.0];

struct SpecialFnSuite;

impl Suite for SpecialFnSuite {
    fn name(&self) -> &'static str {
        "special-fn"
    }

    fn run(&self, _opts: &SuiteOptions) -> Vec<Check> {
        let policy = SeriesPolicy::default();
        let grid = || (0..=6u32).flat_map(|n| Z_GRID.map(|z| (n, z)));
        vec![
            Check::try_at_most("series-vs-contour", 1e-9, || {
                max_over(grid(), |(n, z)| {
                    Ok(rel_diff(
                        bc(n, z)?,
                        bc_contour(n, z, default_contour_radius(n, z), 256)?,
                    ))
                })
            }),
            Check::try_at_most("recurrence", 1e-10, || {
                max_over(grid(), |(n, z)| {
                    Ok(bc_recurrence_residual(n, z, &policy)?.abs() / bc(n, z)?)
                })
            }),
            Check::try_at_most("derivative", 1e-6, || {
                let h = 1e-5;
                max_over(grid(), |(n, z)| {
                    let fd = (bc(n, z + h)? - bc(n, z - h)?) / (2.0 * h);
                    Ok(rel_diff(fd, bc(n + 1, z)?))
                })
            }),
            Check::try_at_most("bound-dominates", 0.0, || {
                max_over(
                    (0..=8u32).flat_map(|n| [0.1, 0.5, 1.0, 3.0, 10.0, 40.0].map(|z| (n, z))),
                    |(n, z)| Ok((bc(n, z)? / bc_bound(n, z)? - 1.0).max(0.0)),
                )
            }),
        ]
    }
}

struct CbinomSuite;

/// 400 points `(t, a)` with `0 <= a <= t <= 20`.
pub fn wedge_grid() -> Vec<(f64, f64)> {
    (1..=20)
        .flat_map(|i| {
            let t = f64::from(i);
            (0..20).map(move |j| (t, t * f64::from(j) / 19.0))
        })
        .collect()
}

impl Suite for CbinomSuite {
    fn name(&self) -> &'static str {
        "cbinom"
    }

    fn run(&self, _opts: &SuiteOptions) -> Vec<Check> {
        let policy = SeriesPolicy::default();
        let st = [(0.5, 0.5), (1.0, 1.0), (2.0, 3.0), (4.0, 0.7), (0.3, 6.0)];
        vec![
            Check::try_at_most("series-vs-bessel-clifford", 1e-12, || {
                max_over(wedge_grid(), |(t, a)| {
                    Ok(rel_diff(cbinom_series(t, a, &policy)?, cbinom_bc(t, a)?))
                })
            }),
            Check::try_at_most("symmetry", 1e-13, || {
                max_over(wedge_grid(), |(t, a)| {
                    Ok(rel_diff(cbinom_bc(t, a)?, cbinom_bc(t, t - a)?))
                })
            }),
            Check::try_at_most("boundary-2-plus-t", 1e-13, || {
                max_over((0..=20).map(f64::from), |t| {
                    Ok(rel_diff(cbinom_bc(t, 0.0)?, 2.0 + t)
                        .max(rel_diff(cbinom_bc(t, t)?, 2.0 + t)))
                })
            }),
            Check::try_at_most("pde-second-order", 0.1, || {
                // halving h should divide the residual by four
                max_over(st, |(t, s)| {
                    let r1 = pde_residual(t, s, 0.04)?;
                    let r2 = pde_residual(t, s, 0.02)?;
                    Ok((r1 / r2 / 4.0 - 1.0).abs())
                })
            }),
            Check::try_at_most("v-forms-agree", 1e-12, || {
                max_over(st, |(t, s)| {
                    Ok(rel_diff(v_integral(s, t)?, v_integral_expanded(s, t)?))
                })
            }),
            Check::try_at_most("half-identity", 1e-12, || {
                max_over(st, |(t, s)| {
                    Ok(half_identity_residual(s, t)?.abs() / (s * cbinom_shifted(t, s)?))
                })
            }),
            Check::try_at_most("v-vs-quadrature", 1e-8, || {
                max_over(st, |(t, s)| {
                    let q = integrate(
                        |u| cbinom_dt(t, u, 1).unwrap_or(f64::NAN),
                        0.0,
                        s,
                        1e-14,
                        1e-12,
                    )?;
                    Ok(rel_diff(q.value, v_integral(s, t)?))
                })
            }),
            Check::try_at_most("bound-dominates", 0.0, || {
                max_over(st, |(t, s)| {
                    Ok((cbinom_shifted(t, s)? / cbinom_bound(t, s)? - 1.0).max(0.0))
                })
            }),
        ]
    }
}

struct GeometrySuite;

impl Suite for GeometrySuite {
    fn name(&self) -> &'static str {
        "geometry"
    }

    fn run(&self, _opts: &SuiteOptions) -> Vec<Check> {
        let mut checks = Vec::new();
        for (profile, p) in reference_surfaces() {
            let name = profile.name().to_string();
            let expected = expected_curvature(&name).unwrap_or(f64::NAN);
            checks.push(Check::try_at_most(
                &format!("curvature-{name}"),
                1e-9,
                || {
                    max_over(profile.domain().sample_points(20), |x| {
                        Ok((gauss_curvature(&profile, x)? - expected).abs())
                    })
                },
            ));
            checks.push(Check::try_at_most(
                &format!("geodesic-{name}"),
                1e-10,
                || {
                    // gamma_2 constant and h(gamma_1(s)) = c0 s + c1
                    max_over(profile.domain().sample_points(20), |x| {
                        let dx = 0.8 / profile.dh(x);
                        let ddx = -profile.d2h(x) * dx * dx / profile.dh(x);
                        let (r1, r2) = geodesic_residual(&profile, x, dx, ddx, 0.0, 0.0)?;
                        Ok(r1.abs().max(r2.abs()))
                    })
                },
            ));
            checks.push(Check::try_at_most(
                &format!("path-split-{name}"),
                1e-13,
                || {
                    let whole = path_length(
                        &profile,
                        &Configuration::new(vec![1, 2, 1], 2)?,
                        &[0.5, 0.8, 0.4],
                        p,
                    )?;
                    let split = path_length(
                        &profile,
                        &Configuration::new(vec![1, 2, 1, 2, 1], 2)?,
                        &[0.5, 0.8, 0.15, 0.0, 0.25],
                        p,
                    )?;
                    Ok(rel_diff(whole, split))
                },
            ));
        }
        checks
    }
}

struct PathSpaceSuite;

impl Suite for PathSpaceSuite {
    fn name(&self) -> &'static str {
        "path-space"
    }

    fn run(&self, opts: &SuiteOptions) -> Vec<Check> {
        vec![
            Check::try_at_most("config-count", 0.0, || {
                max_over(
                    (2..=4u8).flat_map(|k| (0..=5usize).map(move |n| (k, n))),
                    |(k, n)| {
                        let expected = usize::from(k) * (usize::from(k) - 1).pow(n as u32);
                        Ok((enumerate_configs(n, k).len() as f64 - expected as f64).abs())
                    },
                )
            }),
            Check::try_at_most("subsimplex-compatibility", 1e-10, || {
                let t = 1.7;
                max_over(
                    (1..=8usize).flat_map(|n| (0..n).map(move |m| (n, m))),
                    |(n, m)| {
                        let q = integrate(
                            |s| simplex_volume(m, s) * simplex_volume(n - 1 - m, t - s),
                            0.0,
                            t,
                            1e-15,
                            1e-13,
                        )?;
                        Ok(rel_diff(q.value, simplex_volume(n, t)))
                    },
                )
            }),
            Check::try_at_most("single-field-2e", 1e-13, || {
                Ok(rel_diff(
                    vol_gamma_single_field(2, 1.0)?,
                    2.0 * std::f64::consts::E,
                ))
            }),
            Check::try_at_most("strata-sum-within-tail", 1.0, || {
                max_over([(2.0, 1.0), (3.0, 0.5), (5.0, 2.5)], |(t, a)| {
                    let s = t - a;
                    let partial: f64 = two_direction_configs(41)
                        .iter()
                        .map(|c| gamma_config_volume(c, a, s))
                        .sum::<Result<f64>>()?;
                    let target = cbinom_bc(t, a)?;
                    let tail = crate::numeric::tail_bound(21, |m| {
                        4.0 * crate::numeric::pow_over_factorial(a, m as i64 - 1)
                            * crate::numeric::pow_over_factorial(s, m as i64)
                    });
                    Ok((partial - target).abs() / (tail + 4.0 * f64::EPSILON * target))
                })
            }),
            Check::try_at_most("permutation-invariance-sigma", 3.0, || {
                let mc = opts.mc()?;
                let r = permutation_volume_check(4, 1, 0.8, 2.0, &[2, 4, 0, 1, 3], &mc)?;
                let exact = simplex_volume(1, 0.8) * simplex_volume(2, 1.2);
                let z = |e: crate::oracle::Estimate| (e.value - exact).abs() / e.std_error;
                Ok(z(r.plain).max(z(r.permuted)))
            }),
        ]
    }
}

struct LengthIntegralSuite;

impl Suite for LengthIntegralSuite {
    fn name(&self) -> &'static str {
        "length-integral"
    }

    fn run(&self, opts: &SuiteOptions) -> Vec<Check> {
        let budgets = [(0.5, 0.5), (1.0, 2.0), (2.0, 1.0), (2.0, 2.0)];
        let surfaces = reference_surfaces();
        let mut checks = Vec::new();
        checks.push(Check::try_at_most("stratified-sum", 1e-10, || {
            max_over(
                surfaces.iter().flat_map(|sp| budgets.map(|b| (sp, b))),
                |((profile, p), (a, s))| {
                    let i = input_at(profile, *p, a, s)?;
                    Ok(rel_diff(
                        stratified_length_sum(&i, 25)?.value,
                        theorem_length_integral(&i)?.value,
                    ))
                },
            )
        }));
        checks.push(Check::try_at_most("displayed-vs-alt-form", 1e-12, || {
            max_over(
                surfaces.iter().flat_map(|sp| budgets.map(|b| (sp, b))),
                |((profile, p), (a, s))| {
                    let i = input_at(profile, *p, a, s)?;
                    Ok(rel_diff(
                        theorem_length_integral_alt(&i)?.value,
                        theorem_length_integral(&i)?.value,
                    ))
                },
            )
        }));
        checks.push(Check::try_at_most("euclidean-reduction", 1e-13, || {
            let (profile, p) = &surfaces[0];
            max_over(budgets, |(a, s)| {
                let i = input_at(profile, *p, a, s)?;
                Ok(rel_diff(
                    theorem_length_integral(&i)?.value,
                    (a + s) * cbinom_bc(a + s, a)?,
                ))
            })
        }));
        for (profile, p) in &surfaces {
            let name = profile.name();
            if profile.f_is_quadratic() {
                checks.push(Check::try_at_most(
                    &format!("average-form-{name}"),
                    1e-12,
                    || {
                        max_over(budgets, |(a, s)| {
                            let i = input_at(profile, *p, a, s)?;
                            Ok(rel_diff(
                                corollary_average_form(&i)?,
                                theorem_length_integral(&i)?.value,
                            ))
                        })
                    },
                ));
            } else {
                // the average form is exact only for quadratic f
                let c = Check::try_at_most("", 0.0, || {
                    let i = input_at(profile, *p, 1.0, 1.0)?;
                    let one_two = path_length(
                        profile,
                        &Configuration::new(vec![1, 2], 2)?,
                        &[1.0, 1.0],
                        *p,
                    )?;
                    let two_one = path_length(
                        profile,
                        &Configuration::new(vec![2, 1], 2)?,
                        &[1.0, 1.0],
                        *p,
                    )?;
                    let average = 0.5 * (one_two + two_one) * cbinom_bc(2.0, 1.0)?;
                    Ok(rel_diff(average, theorem_length_integral(&i)?.value))
                });
                checks.push(Check {
                    detail: c.detail,
                    ..Check::at_least(format!("average-form-differs-{name}"), c.observed, 1e-6)
                });
            }
        }
        checks.push(Check::try_at_most("growth-bound-dominates", 0.0, || {
            let mut rng = rng::stream(opts.seed, 0xB0, 0);
            let mut worst: f64 = 0.0;
            for (profile, p) in &surfaces {
                for _ in 0..100 {
                    let a = 0.05 + 2.0 * rng.gen::<f64>();
                    let s = 0.05 + 2.0 * rng.gen::<f64>();
                    let i = input_at(profile, *p, a, s)?;
                    let v = theorem_length_integral(&i)?.value.abs();
                    worst = worst.max((v / corollary_growth_bound(&i)? - 1.0).max(0.0));
                }
            }
            Ok(worst)
        }));
        checks.push(Check::try_at_most("metric-recovery", 1e-10, || {
            max_over(
                surfaces.iter().flat_map(|sp| budgets.map(|b| (sp, b))),
                |((profile, p), (a, s))| {
                    let i = input_at(profile, *p, a, s)?;
                    let v = theorem_length_integral(&i)?.value;
                    Ok(rel_diff(metric_recovery(&i, v)?, profile.h(p.x + a)))
                },
            )
        }));
        checks.push(Check::try_at_most("monte-carlo-3-sigma", 1.0, || {
            let mc = opts.mc()?;
            let (profile, p) = &surfaces[3];
            let i = input_at(profile, *p, 0.8, 0.9)?;
            let exact = theorem_length_integral(&i)?.value;
            let est = mc_total_integral(&i, 6, &mc)?;
            Ok((est.value - exact).abs() / (3.0 * est.abs_error_estimate + est.truncation_bound))
        }));
        checks
    }
}

struct OracleSuite;

impl Suite for OracleSuite {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn run(&self, opts: &SuiteOptions) -> Vec<Check> {
        let surfaces = reference_surfaces();
        let sphere = &surfaces[3];
        let stratum = Configuration::new(vec![2, 1, 2, 1], 2).expect("valid");
        vec![
            Check::try_at_most("reproducible", 0.0, || {
                let mc = opts.mc()?.with_samples(opts.mc_samples.min(20_000));
                let i = input_at(&sphere.0, sphere.1, 1.0, 1.5)?;
                let x = mc_config_integral(&i, &stratum, &mc)?;
                let y = mc_config_integral(&i, &stratum, &mc)?;
                Ok((x.value - y.value).abs() + (x.abs_error_estimate - y.abs_error_estimate).abs())
            }),
            Check::try_at_most("constant-integrand-unbiased", 1e-12, || {
                // flat metric: every path has length a + s
                let mc = opts.mc()?.with_samples(opts.mc_samples.min(20_000));
                let (profile, p) = &surfaces[0];
                let i = input_at(profile, *p, 1.2, 0.9)?;
                let est = mc_config_integral(&i, &stratum, &mc)?;
                Ok(rel_diff(
                    est.value,
                    2.1 * gamma_config_volume(&stratum, 1.2, 0.9)?,
                ))
            }),
            Check::try_at_most("stratum-vs-closed-form-3-sigma", 3.0, || {
                let mc = opts.mc()?;
                let i = input_at(&sphere.0, sphere.1, 1.0, 1.5)?;
                let est = mc_config_integral(&i, &stratum, &mc)?;
                Ok((est.value - config_length_integral(&i, &stratum)?).abs()
                    / est.abs_error_estimate)
            }),
            Check::try_at_most("monomial-3-sigma", 3.0, || {
                let mc = opts.mc()?;
                let indices = [
                    vec![0, 1],
                    vec![2, 0, 1],
                    vec![1, 1, 1, 0],
                    vec![0, 3, 0, 0, 0],
                ];
                max_over(indices, |e| {
                    let index = MultiIndex::new(e)?;
                    let est = mc_monomial_integral(&index, 1.5, &mc)?;
                    let exact = crate::path_space::monomial_simplex_integral(&index, 1.5);
                    Ok((est.value - exact).abs() / est.std_error)
                })
            }),
            Check::try_at_most("lemma-recursive-quadrature", 1e-8, || {
                let cases = [(1, 0u32), (2, 1), (2, 2)];
                max_over(cases, |(m, r)| {
                    let p = LemmaParams {
                        m,
                        a: 0.5,
                        b: 2.0,
                        lambda: 0.7,
                        k1: 1,
                        k2: 2,
                        r,
                        shift: 0.25,
                    };
                    let closed = lemma_closed_form(&p, f64::exp)?;
                    Ok(rel_diff(
                        quad_lemma_recursive(&p, &f64::exp, 1e-10)?,
                        closed,
                    ))
                })
            }),
            Check::try_at_most("stratum-quadrature", 1e-6, || {
                let i = input_at(&sphere.0, sphere.1, 1.1, 0.7)?;
                max_over(two_direction_configs(7), |c| {
                    let q = quad_config_integral(&i, &c, 1e-9)?;
                    let exact = config_length_integral(&i, &c)?;
                    Ok(if exact == 0.0 {
                        q.value.abs()
                    } else {
                        rel_diff(q.value, exact)
                    })
                })
            }),
        ]
    }
}
