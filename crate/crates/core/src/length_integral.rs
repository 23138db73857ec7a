//! The integral of path length over the space of indirect paths.
//!
//! For `p = (x0, y0)`, `q = (x1, y1)` with `a = x1 - x0`, `s = y1 - y0` and
//! `t = a + s`, write `Dh = h(x1) - h(x0)`, `Df = f(x1) - f(x0)`,
//! `B = {t brace a}` and `W = V(s, a)`. Then
//!
//! ```text
//! int l = Dh B + (f'(x1) + f'(x0)) (s/2 B - a/2 W) + Df W.
//! ```
//!
//! [`config_length_integral`] gives the contribution of a single
//! configuration; summed over all configurations these reproduce the total.

use rayon::prelude::*;

use crate::cbinom::{cbinom_bc, v_integral};
use crate::geometry::{path_length, ChartPoint, MetricProfile};
use crate::numeric::{pairwise_sum, pow_over_factorial, tail_bound};
use crate::path_space::Configuration;
use crate::special_fn::bc;
use crate::{Error, Result};

const INFLUENCE_TOL: f64 = 1e-12;

/// Endpoints and total time of a length integral, in chart coordinates.
#[derive(Debug, Clone)]
pub struct LengthIntegralInput {
    profile: MetricProfile,
    p: ChartPoint,
    q: ChartPoint,
    t: f64,
}

impl LengthIntegralInput {
    /// Checks that `q` is reached from `p` in time `t`: `a, s >= 0`,
    /// `a + s = t`, and both abscissae lie in the chart domain.
    pub fn new(profile: MetricProfile, p: ChartPoint, q: ChartPoint, t: f64) -> Result<Self> {
        let (a, s) = (q.x - p.x, q.y - p.y);
        if ![p.x, p.y, q.x, q.y, t].iter().all(|v| v.is_finite()) {
            return Err(Error::domain("endpoints and time must be finite"));
        }
        if a < 0.0 || s < 0.0 {
            return Err(Error::domain(format!(
                "q is not downstream of p: x1 - x0 = {a}, y1 - y0 = {s}"
            )));
        }
        if (a + s - t).abs() > INFLUENCE_TOL * t.abs().max(1.0) {
            return Err(Error::domain(format!(
                "q is not influenced at time {t}: x1 - x0 + y1 - y0 = {}",
                a + s
            )));
        }
        profile.check_in_domain(p.x)?;
        profile.check_in_domain(q.x)?;
        Ok(Self { profile, p, q, t })
    }

    /// Same as [`LengthIntegralInput::new`] with `p`, `q` in the surface's own
    /// coordinates.
    pub fn from_surface(
        profile: MetricProfile,
        p: (f64, f64),
        q: (f64, f64),
        t: f64,
    ) -> Result<Self> {
        let p = profile.chart_point(p.0, p.1);
        let q = profile.chart_point(q.0, q.1);
        Self::new(profile, p, q, t)
    }

    /// The endpoint reached from chart point `p` after spending `a` along
    /// direction 1 and `t - a` along direction 2.
    pub fn from_budgets(profile: MetricProfile, p: ChartPoint, a: f64, t: f64) -> Result<Self> {
        let q = ChartPoint::new(p.x + a, p.y + (t - a));
        Self::new(profile, p, q, t)
    }

    pub fn profile(&self) -> &MetricProfile {
        &self.profile
    }

    pub fn p(&self) -> ChartPoint {
        self.p
    }

    pub fn q(&self) -> ChartPoint {
        self.q
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Time spent along direction 1, `x1 - x0`.
    pub fn a(&self) -> f64 {
        self.q.x - self.p.x
    }

    /// Time spent along direction 2, `y1 - y0`.
    pub fn s(&self) -> f64 {
        self.q.y - self.p.y
    }

    fn increments(&self) -> Increments {
        let pr = &self.profile;
        let (x0, x1) = (self.p.x, self.q.x);
        Increments {
            dh: pr.h(x1) - pr.h(x0),
            df: pr.f(x1) - pr.f(x0),
            df0: pr.df(x0),
            df1: pr.df(x1),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Increments {
    dh: f64,
    df: f64,
    df0: f64,
    df1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    TruncatedSum,
    MonteCarlo,
    Quadrature,
}

/// A value with its error estimate.
///
/// For [`Method::MonteCarlo`] `abs_error_estimate` is one standard error and
/// `truncation_bound` bounds the configurations left out. For
/// [`Method::TruncatedSum`] both fields hold the truncation bound. Closed
/// forms carry zero for both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub truncation_bound: f64,
    pub configs_used: usize,
    pub method: Method,
}

impl IntegralResult {
    pub fn closed_form(value: f64) -> Self {
        Self {
            value,
            abs_error_estimate: 0.0,
            truncation_bound: 0.0,
            configs_used: 0,
            method: Method::ClosedForm,
        }
    }
}

/// Parameters of the recurrence
/// `I_0 = lambda a^k1/k1! b^k2/k2!`,
/// `I_m(a, b) = int_0^a int_0^b I_(m-1) + b^(m+r)/(m+r)! int_0^a x^(m-1)/(m-1)! f'(K + x) dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaParams {
    pub m: u32,
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
    pub k1: u32,
    pub k2: u32,
    pub r: u32,
    pub shift: f64,
}

impl LemmaParams {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::domain("recurrence index m must be >= 1"));
        }
        if !(self.a > 0.0) || !(self.b > 0.0) || !self.a.is_finite() || !self.b.is_finite() {
            return Err(Error::domain(format!(
                "need a, b > 0, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        if !self.lambda.is_finite() || !self.shift.is_finite() {
            return Err(Error::domain("lambda and K must be finite"));
        }
        Ok(())
    }
}

/// Closed form of the recurrence:
/// `lambda a^(k1+m)/(k1+m)! b^(k2+m)/(k2+m)! + a^(m-1)/(m-1)! b^(m+r)/(m+r)! (f(K+a) - f(K))`.
pub fn lemma_closed_form(params: &LemmaParams, f: impl Fn(f64) -> f64) -> Result<f64> {
    params.validate()?;
    let LemmaParams {
        m,
        a,
        b,
        lambda,
        k1,
        k2,
        r,
        shift,
    } = *params;
    let m = i64::from(m);
    let base = lambda
        * pow_over_factorial(a, i64::from(k1) + m)
        * pow_over_factorial(b, i64::from(k2) + m);
    let forcing = pow_over_factorial(a, m - 1)
        * pow_over_factorial(b, m + i64::from(r))
        * (f(shift + a) - f(shift));
    Ok(base + forcing)
}

/// Contributions of the four configurations with `m >= 1` segment pairs:
/// lengths `2m` starting with 1 and with 2, then `2m + 1` starting with 1
/// and with 2. Terms with a negative factorial argument are zero.
fn stratum_terms(inc: &Increments, a: f64, s: f64, m: usize) -> [f64; 4] {
    let m = m as i64;
    let pa = |k: i64| pow_over_factorial(a, k);
    let ps = |k: i64| pow_over_factorial(s, k);
    let even_1 =
        inc.dh * pa(m - 1) * ps(m - 1) + inc.df1 * pa(m - 1) * ps(m) + inc.df * pa(m - 2) * ps(m);
    let even_2 =
        inc.dh * pa(m - 1) * ps(m - 1) + inc.df0 * pa(m - 1) * ps(m) + inc.df * pa(m - 2) * ps(m);
    let odd_1 = inc.dh * pa(m) * ps(m - 1) + inc.df * pa(m - 1) * ps(m);
    let odd_2 = inc.dh * pa(m - 1) * ps(m)
        + (inc.df1 + inc.df0) * pa(m - 1) * ps(m + 1)
        + inc.df * pa(m - 2) * ps(m + 1);
    [even_1, even_2, odd_1, odd_2]
}

/// Integral of length over the paths with configuration `config`.
///
/// The formulas are polynomial in `a` and `s` and are evaluated as written
/// at the boundary `a = 0` or `s = 0`. Single-segment configurations always
/// contribute zero, so the sum over configurations stays equal to the
/// closed-form total there as well.
pub fn config_length_integral(input: &LengthIntegralInput, config: &Configuration) -> Result<f64> {
    config.require_two_directions()?;
    let len = config.len();
    let m = len / 2;
    if m == 0 {
        return Ok(0.0);
    }
    let terms = stratum_terms(&input.increments(), input.a(), input.s(), m);
    let slot = match (len % 2, config.first()) {
        (0, 1) => 0,
        (0, _) => 1,
        (_, 1) => 2,
        _ => 3,
    };
    Ok(terms[slot])
}

/// `Dh B + (f'(x1) + f'(x0)) (s/2 B - a/2 W) + Df W`.
pub fn theorem_length_integral(input: &LengthIntegralInput) -> Result<IntegralResult> {
    let (a, s) = (input.a(), input.s());
    let inc = input.increments();
    let b = cbinom_bc(input.t(), a)?;
    let w = v_integral(s, a)?;
    let value = inc.dh * b + (inc.df1 + inc.df0) * (0.5 * s * b - 0.5 * a * w) + inc.df * w;
    Ok(IntegralResult::closed_form(value))
}

/// The same total with `s/2 B - a/2 W` replaced by `s (C_1(as) + s C_2(as))`.
pub fn theorem_length_integral_alt(input: &LengthIntegralInput) -> Result<IntegralResult> {
    let (a, s) = (input.a(), input.s());
    let inc = input.increments();
    let z = a * s;
    let b = cbinom_bc(input.t(), a)?;
    let w = v_integral(s, a)?;
    let half = s * (bc(1, z)? + s * bc(2, z)?);
    Ok(IntegralResult::closed_form(
        inc.dh * b + (inc.df1 + inc.df0) * half + inc.df * w,
    ))
}

/// Sum of [`config_length_integral`] over every configuration of length at
/// most `2 max_half_length + 1`, with a bound on the omitted terms.
pub fn stratified_length_sum(
    input: &LengthIntegralInput,
    max_half_length: usize,
) -> Result<IntegralResult> {
    if max_half_length == 0 {
        return Err(Error::domain("need at least one configuration pair"));
    }
    let inc = input.increments();
    let (a, s) = (input.a(), input.s());
    let values: Vec<f64> = (1..=max_half_length)
        .into_par_iter()
        .map(|m| stratum_terms(&inc, a, s, m))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let tail = truncation_tail(input, max_half_length);
    Ok(IntegralResult {
        value: pairwise_sum(&values),
        abs_error_estimate: tail,
        truncation_bound: tail,
        configs_used: 4 * max_half_length + 2,
        method: Method::TruncatedSum,
    })
}

/// Bound on the summed magnitude of every configuration longer than
/// `2 max_half_length + 1`.
pub fn truncation_tail(input: &LengthIntegralInput, max_half_length: usize) -> f64 {
    let inc = input.increments();
    let (a, s) = (input.a(), input.s());
    tail_bound(max_half_length + 1, |m| {
        stratum_terms(&inc, a, s, m).iter().map(|v| v.abs()).sum()
    })
}

/// `1/2 (l(1,2) + l(2,1)) {t brace a}`, which equals the total exactly when
/// `f` is quadratic.
pub fn corollary_average_form(input: &LengthIntegralInput) -> Result<f64> {
    let profile = input.profile();
    if !profile.f_is_quadratic() {
        return Err(Error::Unsupported(format!(
            "the average form needs a quadratic f; '{}' does not declare one",
            profile.name()
        )));
    }
    let (a, s) = (input.a(), input.s());
    let one_two = Configuration::new(vec![1, 2], 2)?;
    let two_one = Configuration::new(vec![2, 1], 2)?;
    let l12 = path_length(profile, &one_two, &[a, s], input.p())?;
    let l21 = path_length(profile, &two_one, &[s, a], input.p())?;
    Ok(0.5 * (l12 + l21) * cbinom_bc(input.t(), a)?)
}

/// Upper bound on `|int l|` from the growth of the Bessel-Clifford functions:
///
/// ```text
/// [ (1 + sqrt(s/a))^2 (a Dh + s Df) / sqrt(as)
///   + (sqrt(s/a) + s/a) (f'(x1) + f'(x0)) + 2 Df / a ] exp(2 sqrt(as))
/// ```
pub fn corollary_growth_bound(input: &LengthIntegralInput) -> Result<f64> {
    let (a, s) = (input.a(), input.s());
    if !(a > 0.0) || !(s > 0.0) {
        return Err(Error::domain(format!(
            "growth bound needs a, s > 0, got a = {a}, s = {s}"
        )));
    }
    let inc = input.increments();
    let root = (a * s).sqrt();
    let ratio = s / a;
    let bracket = (1.0 + ratio.sqrt()).powi(2) * (a * inc.dh + s * inc.df) / root
        + (ratio.sqrt() + ratio) * (inc.df1 + inc.df0)
        + 2.0 * inc.df / a;
    Ok(bracket * (2.0 * root).exp())
}

/// Solves the total for `h(x1)` given an observed value of the integral;
/// `h(x0)`, `f` and `f'` are taken from the profile.
pub fn metric_recovery(input: &LengthIntegralInput, observed: f64) -> Result<f64> {
    let (a, s) = (input.a(), input.s());
    let inc = input.increments();
    let b = cbinom_bc(input.t(), a)?;
    let w = v_integral(s, a)?;
    let known = (inc.df1 + inc.df0) * (0.5 * s * b - 0.5 * a * w) + inc.df * w;
    Ok(input.profile().h(input.p().x) + (observed - known) / b)
}
