//! Bessel-Clifford functions of the first kind,
//!
//! ```text
//! C_nu(z) = sum_{n >= 0} z^n / (n! Gamma(1 + n + nu)),
//! ```
//!
//! for integer order `nu >= 0` and real `z >= 0`. Two independent routes are
//! provided: the power series and the trapezoidal rule on the circle
//! `|xi| = r` applied to `exp(xi + z / xi) / xi^(n + 1)`. For `z > 0` every
//! `C_n(z)` is bounded by `exp(2 sqrt z) / z^(n / 2)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::numeric::{factorial, ln_factorial};
use crate::{Error, Result};

/// Order above which `1 / nu!` underflows and terms are tracked in log space.
const MAX_DIRECT_ORDER: u32 = 170;

/// Truncation control for every infinite series in the crate.
///
/// Summation stops at the first term whose magnitude is below
/// `abs_tol + rel_tol * |partial sum|` (that term is included), or after
/// `max_terms` terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPolicy {
    max_terms: usize,
    rel_tol: f64,
    abs_tol: f64,
}

impl SeriesPolicy {
    pub fn new(max_terms: usize, rel_tol: f64, abs_tol: f64) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::InvalidPolicy("max_terms must be at least 1".into()));
        }
        if !(rel_tol > 0.0) || !(abs_tol > 0.0) {
            return Err(Error::InvalidPolicy(format!(
                "tolerances must be positive (rel_tol = {rel_tol}, abs_tol = {abs_tol})"
            )));
        }
        Ok(Self {
            max_terms,
            rel_tol,
            abs_tol,
        })
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    /// Whether a term of magnitude `term` ends the summation.
    pub fn stops_at(&self, term: f64, partial: f64) -> bool {
        term.abs() < self.abs_tol + self.rel_tol * partial.abs()
    }
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        Self {
            max_terms: 500,
            rel_tol: 1e-15,
            abs_tol: 1e-300,
        }
    }
}

/// Why a series summation ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Tolerance,
    MaxTerms,
}

/// Outcome of a policy-controlled summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms_used: usize,
    pub stop: StopReason,
}

/// Sums `term(n)` for `n = 0, 1, ...` under `policy`.
///
/// `term` returns the value to add and the magnitude the stopping rule
/// should look at (these differ when a term is itself a sum of parts).
pub fn sum_series(policy: &SeriesPolicy, mut term: impl FnMut(usize) -> (f64, f64)) -> SeriesSum {
    let mut value = 0.0;
    for n in 0..policy.max_terms {
        let (t, magnitude) = term(n);
        value += t;
        if policy.stops_at(magnitude, value) {
            return SeriesSum {
                value,
                terms_used: n + 1,
                stop: StopReason::Tolerance,
            };
        }
    }
    SeriesSum {
        value,
        terms_used: policy.max_terms,
        stop: StopReason::MaxTerms,
    }
}

/// A series evaluation of `C_nu(z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BCValue {
    pub value: f64,
    pub terms_used: usize,
    /// Set when the summation hit `max_terms` before the tolerance.
    pub truncated: bool,
}

fn check_argument(z: f64) -> Result<()> {
    if !z.is_finite() || z < 0.0 {
        return Err(Error::domain(format!(
            "Bessel-Clifford argument must be finite and >= 0, got {z}"
        )));
    }
    Ok(())
}

/// `C_nu(z)` by its power series.
///
/// Successive terms are generated by the ratio
/// `z / ((n + 1)(n + 1 + nu))`, starting from `1 / nu!`.
pub fn bc_series(nu: u32, z: f64, policy: &SeriesPolicy) -> Result<BCValue> {
    check_argument(z)?;
    if nu > MAX_DIRECT_ORDER {
        return bc_series_log(nu, z, policy);
    }
    let nu_f = f64::from(nu);
    let mut term = 1.0 / factorial(nu);
    let sum = sum_series(policy, |n| {
        if n > 0 {
            let k = n as f64;
            term *= z / (k * (k + nu_f));
        }
        (term, term)
    });
    finish(sum)
}

// Large orders: the leading factor 1/nu! underflows, so terms are carried
// relative to it and the stopping rule is applied to log-magnitudes.
fn bc_series_log(nu: u32, z: f64, policy: &SeriesPolicy) -> Result<BCValue> {
    let ln_scale = -ln_factorial(nu);
    let ln_abs = policy.abs_tol().ln();
    let nu_f = f64::from(nu);
    let mut ratio = 1.0;
    let mut scaled = 0.0;
    for n in 0..policy.max_terms() {
        if n > 0 {
            let k = n as f64;
            ratio *= z / (k * (k + nu_f));
        }
        scaled += ratio;
        let small_rel = ratio < policy.rel_tol() * scaled;
        let small_abs = ratio == 0.0 || ratio.ln() + ln_scale < ln_abs;
        if small_rel || small_abs {
            return finish(SeriesSum {
                value: (scaled.ln() + ln_scale).exp(),
                terms_used: n + 1,
                stop: StopReason::Tolerance,
            });
        }
    }
    finish(SeriesSum {
        value: (scaled.ln() + ln_scale).exp(),
        terms_used: policy.max_terms(),
        stop: StopReason::MaxTerms,
    })
}

fn finish(sum: SeriesSum) -> Result<BCValue> {
    if !sum.value.is_finite() {
        return Err(Error::SeriesOverflow {
            terms: sum.terms_used,
        });
    }
    match sum.stop {
        StopReason::Tolerance => Ok(BCValue {
            value: sum.value,
            terms_used: sum.terms_used,
            truncated: false,
        }),
        StopReason::MaxTerms => Err(Error::SeriesNotConverged {
            partial: sum.value,
            terms: sum.terms_used,
        }),
    }
}

/// Series value of `C_nu(z)` under the default policy.
pub fn bc(nu: u32, z: f64) -> Result<f64> {
    bc_series(nu, z, &SeriesPolicy::default()).map(|v| v.value)
}

/// `z C_{nu+2}(z) + (nu + 1) C_{nu+1}(z) - C_nu(z)`, which vanishes
/// identically.
pub fn bc_recurrence_residual(nu: u32, z: f64, policy: &SeriesPolicy) -> Result<f64> {
    let c0 = bc_series(nu, z, policy)?.value;
    let c1 = bc_series(nu + 1, z, policy)?.value;
    let c2 = bc_series(nu + 2, z, policy)?.value;
    Ok(z * c2 + f64::from(nu + 1) * c1 - c0)
}

/// Largest imaginary residue accepted from the contour quadrature.
pub const CONTOUR_IMAG_LIMIT: f64 = 1e-10;

/// `C_n(z)` from the Cauchy integral over `|xi| = radius`, by the
/// `quad_points`-point trapezoidal rule.
pub fn bc_contour(n: u32, z: f64, radius: f64, quad_points: usize) -> Result<f64> {
    check_argument(z)?;
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::domain(format!(
            "contour radius must be > 0, got {radius}"
        )));
    }
    if quad_points < 16 {
        return Err(Error::domain(format!(
            "contour quadrature needs at least 16 points, got {quad_points}"
        )));
    }
    let power = -(i32::try_from(n).map_err(|_| Error::domain("order too large"))?);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..quad_points {
        let theta = 2.0 * PI * k as f64 / quad_points as f64;
        let xi = Complex64::from_polar(radius, theta);
        acc += (xi + z / xi).exp() * xi.powi(power);
    }
    acc /= quad_points as f64;
    if acc.im.abs() > CONTOUR_IMAG_LIMIT {
        return Err(Error::ContourInconsistent { imag: acc.im });
    }
    Ok(acc.re)
}

/// Contour radius minimising the Cauchy estimate `e^(r + z / r) / r^n`:
/// the saddle `(n + sqrt(n^2 + 4 z)) / 2`, or 1 when `n = z = 0`. Away from
/// the saddle the integrand dwarfs the result and cancellation leaves an
/// imaginary residue.
pub fn default_contour_radius(n: u32, z: f64) -> f64 {
    let n = f64::from(n);
    let r = 0.5 * (n + (n * n + 4.0 * z).sqrt());
    if r > 0.0 {
        r
    } else {
        1.0
    }
}

/// `exp(2 sqrt z) / z^(n / 2)`, an upper bound for `C_n(z)` when `z > 0`.
pub fn bc_bound(n: u32, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("growth bound needs z > 0, got {z}")));
    }
    Ok((2.0 * z.sqrt() - 0.5 * f64::from(n) * z.ln()).exp())
}
