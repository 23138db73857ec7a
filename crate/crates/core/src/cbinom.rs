//! Continuous binomial coefficients.
//!
//! The public convention is `(total, part) = (t, a)`:
//!
//! ```text
//! {t brace a} = 2 sum_n (a(t-a))^n / n!^2 + t sum_n (a(t-a))^n / ((n+1)! n!)
//!             = 2 C_0(a(t-a)) + t C_1(a(t-a)).
//! ```
//!
//! The derivative, `V` and bound helpers are stated for the shifted form
//! `{t + s brace s}`, i.e. total `t + s` and part `s`. To move between the two
//! set `s = a` and `t_shifted = t - a`.

use crate::special_fn::{bc, sum_series, SeriesPolicy, StopReason};
use crate::{Error, Result};

/// `{t brace a}` by its defining double series. Accepts any real arguments.
pub fn cbinom_series(t: f64, a: f64, policy: &SeriesPolicy) -> Result<f64> {
    if !t.is_finite() || !a.is_finite() {
        return Err(Error::domain(
            "continuous binomial arguments must be finite",
        ));
    }
    let z = a * (t - a);
    // z^n / n!^2 and z^n / ((n+1)! n!)
    let mut even = 1.0;
    let mut odd = 1.0;
    let sum = sum_series(policy, |n| {
        if n > 0 {
            let k = n as f64;
            even *= z / (k * k);
            odd *= z / (k * (k + 1.0));
        }
        let first = 2.0 * even;
        let second = t * odd;
        (first + second, first.abs() + second.abs())
    });
    if !sum.value.is_finite() {
        return Err(Error::SeriesOverflow {
            terms: sum.terms_used,
        });
    }
    match sum.stop {
        StopReason::Tolerance => Ok(sum.value),
        StopReason::MaxTerms => Err(Error::SeriesNotConverged {
            partial: sum.value,
            terms: sum.terms_used,
        }),
    }
}

/// `a (t - a)`, checked to lie in the wedge `0 <= a <= t`. A complement that
/// is negative only by rounding is clamped to zero.
fn wedge_argument(t: f64, a: f64) -> Result<f64> {
    let slack = 4.0 * f64::EPSILON * t.abs().max(1.0);
    if !t.is_finite() || !a.is_finite() || a < 0.0 || t - a < -slack {
        return Err(Error::domain(format!(
            "need 0 <= a <= t for the Bessel-Clifford form, got t = {t}, a = {a}"
        )));
    }
    Ok((a * (t - a)).max(0.0))
}

/// `{t brace a} = 2 C_0(a(t-a)) + t C_1(a(t-a))` for `0 <= a <= t`.
pub fn cbinom_bc(t: f64, a: f64) -> Result<f64> {
    let z = wedge_argument(t, a)?;
    Ok(2.0 * bc(0, z)? + t * bc(1, z)?)
}

fn check_shifted(t: f64, s: f64) -> Result<()> {
    if !t.is_finite() || !s.is_finite() || t < 0.0 || s < 0.0 {
        return Err(Error::domain(format!(
            "need s, t >= 0, got t = {t}, s = {s}"
        )));
    }
    Ok(())
}

/// `{t + s brace s}`.
pub fn cbinom_shifted(t: f64, s: f64) -> Result<f64> {
    check_shifted(t, s)?;
    let z = s * t;
    Ok(2.0 * bc(0, z)? + (t + s) * bc(1, z)?)
}

/// `d^n/dt^n {t + s brace s} = s^(n-1) (2s + n) C_n(st) + (t + s) s^n C_(n+1)(st)`
/// for `n >= 1`. Use [`cbinom_shifted`] for `n = 0`.
pub fn cbinom_dt(t: f64, s: f64, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain(
            "derivative order must be >= 1; use cbinom_shifted for n = 0",
        ));
    }
    check_shifted(t, s)?;
    let z = s * t;
    let n_i = i32::try_from(n).map_err(|_| Error::domain("derivative order too large"))?;
    Ok(s.powi(n_i - 1) * (2.0 * s + f64::from(n)) * bc(n, z)?
        + (t + s) * s.powi(n_i) * bc(n + 1, z)?)
}

/// `V(s, t) = int_0^s d/dt {t + u brace u} du = 2s(s+1) C_2(st) + s^2 (t+s) C_3(st)`.
///
/// In debug builds the value is cross-checked against the equivalent form
/// `2 s^2 C_2(st) + s^3 C_3(st) + s C_1(st)`.
pub fn v_integral(s: f64, t: f64) -> Result<f64> {
    check_shifted(t, s)?;
    let z = s * t;
    let c2 = bc(2, z)?;
    let c3 = bc(3, z)?;
    let value = 2.0 * s * (s + 1.0) * c2 + s * s * (t + s) * c3;
    debug_assert!({
        let alt = v_integral_expanded(s, t)?;
        (value - alt).abs() <= 1e-12 * value.abs().max(1e-300)
    });
    Ok(value)
}

/// The expanded form `2 s^2 C_2(st) + s^3 C_3(st) + s C_1(st)` of `V(s, t)`.
pub fn v_integral_expanded(s: f64, t: f64) -> Result<f64> {
    check_shifted(t, s)?;
    let z = s * t;
    Ok(2.0 * s * s * bc(2, z)? + s * s * s * bc(3, z)? + s * bc(1, z)?)
}

/// `(s/2){t+s brace s} - (t/2) V(s,t) - s (C_1(st) + s C_2(st))`, which
/// vanishes identically.
pub fn half_identity_residual(s: f64, t: f64) -> Result<f64> {
    check_shifted(t, s)?;
    let z = s * t;
    let lhs = 0.5 * s * cbinom_shifted(t, s)? - 0.5 * t * v_integral(s, t)?;
    Ok(lhs - s * (bc(1, z)? + s * bc(2, z)?))
}

/// `(sqrt s + sqrt t)^2 / sqrt(st) * exp(2 sqrt(st))`, an upper bound for
/// `{t + s brace s}` when `s, t > 0`.
pub fn cbinom_bound(t: f64, s: f64) -> Result<f64> {
    if !(t > 0.0) || !(s > 0.0) || !t.is_finite() || !s.is_finite() {
        return Err(Error::domain(format!(
            "bound needs s, t > 0, got t = {t}, s = {s}"
        )));
    }
    let root = (s * t).sqrt();
    Ok((s.sqrt() + t.sqrt()).powi(2) / root * (2.0 * root).exp())
}

/// Central-difference mixed derivative `d^2/dt ds {t+s brace s}` minus
/// `{t+s brace s}`; the identity makes this `O(h^2)`.
pub fn pde_residual(t: f64, s: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) || t < h || s < h {
        return Err(Error::domain(format!(
            "need t, s >= h > 0, got t = {t}, s = {s}, h = {h}"
        )));
    }
    let f = cbinom_shifted;
    let mixed =
        (f(t + h, s + h)? - f(t + h, s - h)? - f(t - h, s + h)? + f(t - h, s - h)?) / (4.0 * h * h);
    Ok(mixed - f(t, s)?)
}
