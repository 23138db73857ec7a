//! Brute-force estimates used to certify the closed forms.
//!
//! Monte Carlo integrals over path-space strata sample each direction's
//! durations uniformly from a simplex and evaluate the literal path
//! length. Nested quadrature does the same deterministically for short
//! configurations, and evaluates the recurrence behind the closed-form
//! coefficients directly from its definition.
//!
//! Sampling is split into fixed-size chunks, each with its own counter-based
//! stream (see [`rng`]), and chunk statistics are merged in chunk order, so
//! an estimate depends only on `(seed, chunk, samples)`.

pub mod quadrature;
pub mod rng;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::geometry::path_length;
use crate::length_integral::{
    truncation_tail, IntegralResult, LemmaParams, LengthIntegralInput, Method,
};
use crate::numeric::{pairwise_sum, pow_over_factorial};
use crate::path_space::{
    gamma_config_volume, simplex_volume, two_direction_configs, Configuration, MultiIndex,
};
use crate::{Error, Result};
use quadrature::try_integrate;

/// Sample count, seed and chunk size of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
    pub chunk: usize,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            samples: 100_000,
            seed: 0xC0FFEE,
            chunk: 4096,
        }
    }
}

impl McConfig {
    pub fn new(samples: usize, seed: u64, chunk: usize) -> Result<Self> {
        let mc = Self {
            samples,
            seed,
            chunk,
        };
        mc.validate()?;
        Ok(mc)
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_samples(self, samples: usize) -> Self {
        Self { samples, ..self }
    }

    fn validate(&self) -> Result<()> {
        if self.samples < 2 || self.chunk == 0 {
            return Err(Error::InvalidConfiguration(format!(
                "need at least 2 samples and a positive chunk size, got {} and {}",
                self.samples, self.chunk
            )));
        }
        if self.samples.div_ceil(self.chunk) > u32::MAX as usize {
            return Err(Error::InvalidConfiguration("too many chunks".into()));
        }
        Ok(())
    }
}

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            std_error: self.std_error * factor.abs(),
        }
    }

    /// Whether `target` lies within `k` standard errors, with a floor of a
    /// few ulps for zero-variance integrands.
    pub fn agrees_with(&self, target: f64, k: f64) -> bool {
        let slack = k * self.std_error + 1e-12 * target.abs().max(self.value.abs());
        (self.value - target).abs() <= slack
    }
}

/// Count, mean and sum of squared deviations of a batch of samples.
#[derive(Debug, Clone, Copy)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    const EMPTY: Moments = Moments {
        count: 0.0,
        mean: 0.0,
        m2: 0.0,
    };

    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.count;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0.0 {
            return other;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + delta * other.count / count,
            m2: self.m2 + other.m2 + delta * delta * self.count * other.count / count,
        }
    }

    fn estimate(self) -> Estimate {
        let variance = if self.count > 1.0 {
            self.m2 / (self.count - 1.0)
        } else {
            0.0
        };
        Estimate {
            value: self.mean,
            std_error: (variance / self.count).sqrt(),
        }
    }
}

/// Mean of `draw` over `mc.samples` draws on the streams of `task`.
fn sample_mean(
    mc: &McConfig,
    task: u32,
    draw: impl Fn(&mut ChaCha8Rng) -> Result<f64> + Sync,
) -> Result<Estimate> {
    mc.validate()?;
    let chunks = mc.samples.div_ceil(mc.chunk);
    let per_chunk: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = rng::stream(mc.seed, task, c as u32);
            let len = mc.chunk.min(mc.samples - c * mc.chunk);
            let mut moments = Moments::EMPTY;
            for _ in 0..len {
                moments.push(draw(&mut rng)?);
            }
            Ok(moments)
        })
        .collect::<Result<_>>()?;
    Ok(per_chunk
        .into_iter()
        .fold(Moments::EMPTY, Moments::merge)
        .estimate())
}

/// `n` sorted uniforms on `[0, t]`: a uniform point `0 <= l_1 <= ... <= l_n <= t`.
pub fn sample_simplex(n: usize, t: f64, rng: &mut impl Rng) -> Vec<f64> {
    let mut points: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * t).collect();
    points.sort_unstable_by(f64::total_cmp);
    points
}

/// Gaps `l_1, l_2 - l_1, ..., t - l_n` between sorted cut points.
fn gaps(cuts: &[f64], t: f64, out: &mut Vec<f64>) {
    let mut prev = 0.0;
    for &c in cuts {
        out.push(c - prev);
        prev = c;
    }
    out.push(t - prev);
}

/// Segment durations for `config` from the cut points of each direction's
/// budget simplex, in the order the segments are traversed.
fn interleave(config: &Configuration, first: &[f64], second: &[f64]) -> Vec<f64> {
    let (mut i, mut j) = (0, 0);
    config
        .word()
        .iter()
        .map(|&d| {
            if d == 1 {
                i += 1;
                first[i - 1]
            } else {
                j += 1;
                second[j - 1]
            }
        })
        .collect()
}

/// Stream index of a configuration, unique among two-direction words.
fn config_task(config: &Configuration) -> u32 {
    2 * (config.len() as u32 - 1) + u32::from(config.first() - 1)
}

/// Monte Carlo estimate of the length integral over the stratum of
/// `config`: the mean path length under uniform durations, times the
/// stratum volume. Configurations with an empty stratum give exactly zero.
pub fn mc_config_integral(
    input: &LengthIntegralInput,
    config: &Configuration,
    mc: &McConfig,
) -> Result<IntegralResult> {
    let (a, s) = (input.a(), input.s());
    let volume = gamma_config_volume(config, a, s)?;
    if volume == 0.0 {
        return Ok(IntegralResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            truncation_bound: 0.0,
            configs_used: 1,
            method: Method::MonteCarlo,
        });
    }
    let n1 = config.count(1);
    let n2 = config.count(2);
    let profile = input.profile();
    let p = input.p();
    let estimate = sample_mean(mc, config_task(config), |rng| {
        let mut first = Vec::with_capacity(n1);
        let mut second = Vec::with_capacity(n2);
        if n1 > 0 {
            gaps(&sample_simplex(n1 - 1, a, rng), a, &mut first);
        }
        if n2 > 0 {
            gaps(&sample_simplex(n2 - 1, s, rng), s, &mut second);
        }
        path_length(profile, config, &interleave(config, &first, &second), p)
    })?
    .scaled(volume);
    Ok(IntegralResult {
        value: estimate.value,
        abs_error_estimate: estimate.std_error,
        truncation_bound: 0.0,
        configs_used: 1,
        method: Method::MonteCarlo,
    })
}

/// Sum of [`mc_config_integral`] over every configuration of length at most
/// `2 max_half_length + 1`. The standard errors add in quadrature and
/// `truncation_bound` bounds the omitted configurations.
pub fn mc_total_integral(
    input: &LengthIntegralInput,
    max_half_length: usize,
    mc: &McConfig,
) -> Result<IntegralResult> {
    if max_half_length == 0 {
        return Err(Error::domain("need at least one configuration pair"));
    }
    let configs = two_direction_configs(2 * max_half_length + 1);
    let parts: Vec<IntegralResult> = configs
        .par_iter()
        .map(|c| mc_config_integral(input, c, mc))
        .collect::<Result<_>>()?;
    let values: Vec<f64> = parts.iter().map(|r| r.value).collect();
    let variances: Vec<f64> = parts.iter().map(|r| r.abs_error_estimate.powi(2)).collect();
    Ok(IntegralResult {
        value: pairwise_sum(&values),
        abs_error_estimate: pairwise_sum(&variances).sqrt(),
        truncation_bound: truncation_tail(input, max_half_length),
        configs_used: configs.len(),
        method: Method::MonteCarlo,
    })
}

/// Monte Carlo estimate of `int_{Delta_n^t} s^I / I! d gamma_n`.
pub fn mc_monomial_integral(index: &MultiIndex, t: f64, mc: &McConfig) -> Result<Estimate> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("need t > 0, got {t}")));
    }
    let n = index.dimension();
    let estimate = sample_mean(mc, 0, |rng| {
        let mut durations = Vec::with_capacity(n + 1);
        gaps(&sample_simplex(n, t, rng), t, &mut durations);
        Ok(index.eval_normalized(&durations))
    })?;
    Ok(estimate.scaled(simplex_volume(n, t)))
}

/// Hit-or-miss volumes of the face `Delta_m^s x Delta_(n-1-m)^(t-s)` of
/// `Delta_n^t` and of its image under a coordinate permutation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PermutationCheck {
    pub plain: Estimate,
    pub permuted: Estimate,
}

/// Estimates both volumes by sampling `n - 1` free coordinates uniformly in
/// `[0, t]^(n-1)`.
///
/// The plain face is `0 <= l_1 <= ... <= l_m <= s <= l_(m+2) <= ... <= l_n <= t`
/// in cut-point coordinates. Its image under `sigma`, acting on durations
/// by `(sigma s)_j = s_sigma(j)`, is the set of durations with
/// `sum_(sigma(j) <= m) s_j = s`; it is sampled in duration coordinates with
/// one index from each side of that split solved for.
pub fn permutation_volume_check(
    n: usize,
    m: usize,
    s: f64,
    t: f64,
    sigma: &[usize],
    mc: &McConfig,
) -> Result<PermutationCheck> {
    if m >= n || !(0.0..=t).contains(&s) || !t.is_finite() {
        return Err(Error::domain(format!(
            "need 0 <= m < n and 0 <= s <= t, got n = {n}, m = {m}, s = {s}, t = {t}"
        )));
    }
    let mut seen = vec![false; n + 1];
    if sigma.len() != n + 1
        || sigma
            .iter()
            .any(|&i| i > n || std::mem::replace(&mut seen[i], true))
    {
        return Err(Error::domain(format!(
            "{sigma:?} is not a permutation of 0..={n}"
        )));
    }
    let box_volume = t.powi(n as i32 - 1);
    let free = n - 1;

    let plain = sample_mean(mc, 0, |rng| {
        let mut prev = 0.0;
        for k in 0..free {
            let l = rng.gen::<f64>() * t;
            // the fixed coordinate l_(m+1) = s sits between positions m and m+1
            if k == m {
                if s < prev {
                    return Ok(0.0);
                }
                prev = s;
            }
            if l < prev {
                return Ok(0.0);
            }
            prev = l;
        }
        Ok(if free == m && s < prev { 0.0 } else { 1.0 })
    })?;

    let inside: Vec<bool> = sigma.iter().map(|&i| i <= m).collect();
    let solved_in = inside
        .iter()
        .position(|&b| b)
        .expect("m + 1 indices map inside");
    let solved_out = inside
        .iter()
        .position(|&b| !b)
        .expect("m < n leaves an index outside");
    let permuted = sample_mean(mc, 1, |rng| {
        let (mut sum_in, mut sum_out) = (0.0, 0.0);
        #[allow(clippy::needless_range_loop)]
        for j in 0..=n {
            if j == solved_in || j == solved_out {
                continue;
            }
            let v = rng.gen::<f64>() * t;
            if inside[j] {
                sum_in += v;
            } else {
                sum_out += v;
            }
        }
        Ok(if sum_in <= s && sum_out <= t - s {
            1.0
        } else {
            0.0
        })
    })?;

    Ok(PermutationCheck {
        plain: plain.scaled(box_volume),
        permuted: permuted.scaled(box_volume),
    })
}

/// Longest configuration accepted by [`quad_config_integral`].
pub const QUAD_MAX_LEN: usize = 9;

/// Nested adaptive quadrature of the literal path length over the stratum
/// of `config`, in cut-point coordinates of each direction's simplex.
/// `rel_tol` is split evenly across the nesting levels.
pub fn quad_config_integral(
    input: &LengthIntegralInput,
    config: &Configuration,
    rel_tol: f64,
) -> Result<IntegralResult> {
    if config.len() > QUAD_MAX_LEN {
        return Err(Error::Unsupported(format!(
            "nested quadrature is limited to configurations of length <= {QUAD_MAX_LEN}"
        )));
    }
    let (a, s) = (input.a(), input.s());
    let empty = IntegralResult {
        value: 0.0,
        abs_error_estimate: 0.0,
        truncation_bound: 0.0,
        configs_used: 1,
        method: Method::Quadrature,
    };
    if gamma_config_volume(config, a, s)? == 0.0 {
        return Ok(empty);
    }
    let n1 = config.count(1);
    let n2 = config.count(2);
    let d1 = n1.saturating_sub(1);
    let d2 = n2.saturating_sub(1);
    let levels = (d1 + d2).max(1);
    let tol = rel_tol / levels as f64;
    let nest = Nest {
        input,
        config,
        d1,
        d2,
        n1,
        n2,
        tol,
    };
    let mut cuts = Vec::with_capacity(d1 + d2);
    let value = nest.level(&mut cuts)?;
    Ok(IntegralResult {
        value,
        abs_error_estimate: rel_tol * value.abs(),
        ..empty
    })
}

struct Nest<'a> {
    input: &'a LengthIntegralInput,
    config: &'a Configuration,
    d1: usize,
    d2: usize,
    n1: usize,
    n2: usize,
    tol: f64,
}

impl Nest<'_> {
    fn level(&self, cuts: &mut Vec<f64>) -> Result<f64> {
        let k = cuts.len();
        let (a, s) = (self.input.a(), self.input.s());
        if k == self.d1 + self.d2 {
            let mut first = Vec::with_capacity(self.n1);
            let mut second = Vec::with_capacity(self.n2);
            if self.n1 > 0 {
                gaps(&cuts[..self.d1], a, &mut first);
            }
            if self.n2 > 0 {
                gaps(&cuts[self.d1..], s, &mut second);
            }
            let durations = interleave(self.config, &first, &second);
            return path_length(
                self.input.profile(),
                self.config,
                &durations,
                self.input.p(),
            );
        }
        let (lo, hi) = if k < self.d1 {
            (if k == 0 { 0.0 } else { cuts[k - 1] }, a)
        } else {
            (if k == self.d1 { 0.0 } else { cuts[k - 1] }, s)
        };
        let q = try_integrate(
            |l| {
                cuts.push(l);
                let v = self.level(cuts);
                cuts.pop();
                v
            },
            lo,
            hi,
            1e-300,
            self.tol,
        )?;
        Ok(q.value)
    }
}

/// Largest recurrence index accepted by [`quad_lemma_recursive`].
pub const LEMMA_MAX_M: u32 = 4;

/// Evaluates the recurrence of [`LemmaParams`] literally, as nested
/// double integrals of the previous term plus the forcing integral of
/// `df = f'`, with `rel_tol` split across the `2m` nesting levels.
pub fn quad_lemma_recursive(
    params: &LemmaParams,
    df: &(dyn Fn(f64) -> f64 + Sync),
    rel_tol: f64,
) -> Result<f64> {
    params.validate()?;
    if params.m > LEMMA_MAX_M {
        return Err(Error::Unsupported(format!(
            "recursive quadrature is limited to m <= {LEMMA_MAX_M}"
        )));
    }
    let tol = rel_tol / (2 * params.m) as f64;
    recurrence(params, df, params.m, params.a, params.b, tol)
}

fn recurrence(
    p: &LemmaParams,
    df: &(dyn Fn(f64) -> f64 + Sync),
    m: u32,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<f64> {
    if m == 0 {
        return Ok(p.lambda
            * pow_over_factorial(x, i64::from(p.k1))
            * pow_over_factorial(y, i64::from(p.k2)));
    }
    let previous = try_integrate(
        |u| Ok(try_integrate(|v| recurrence(p, df, m - 1, u, v, tol), 0.0, y, 1e-300, tol)?.value),
        0.0,
        x,
        1e-300,
        tol,
    )?
    .value;
    let m_i = i64::from(m);
    let forcing = try_integrate(
        |u| Ok(pow_over_factorial(u, m_i - 1) * df(p.shift + u)),
        0.0,
        x,
        1e-300,
        tol,
    )?
    .value;
    Ok(previous + pow_over_factorial(y, m_i + i64::from(p.r)) * forcing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::preset;
    use crate::length_integral::{config_length_integral, lemma_closed_form};
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_4;

    fn cfg(word: &[u8]) -> Configuration {
        Configuration::new(word.to_vec(), 2).unwrap()
    }

    fn input(name: &str, p: (f64, f64), q: (f64, f64), t: f64) -> LengthIntegralInput {
        LengthIntegralInput::from_surface(preset(name).unwrap(), p, q, t).unwrap()
    }

    #[test]
    fn simplex_samples_are_sorted_and_bounded() {
        let mut rng = rng::stream(1, 0, 0);
        assert!(sample_simplex(0, 2.0, &mut rng).is_empty());
        let mut total = 0.0;
        for _ in 0..20_000 {
            let v = sample_simplex(5, 2.0, &mut rng);
            assert!(v.windows(2).all(|w| w[0] <= w[1]));
            assert!(v.iter().all(|&x| (0.0..=2.0).contains(&x)));
            total += sample_simplex(1, 2.0, &mut rng)[0];
        }
        assert!((total / 20_000.0 - 1.0).abs() < 3.0 * (1.0 / 3.0f64).sqrt() / 20_000f64.sqrt());
    }

    #[test]
    fn strata_split_matches_segment_constraints() {
        // durations of direction-1 segments sum to a, direction-2 to s
        let (a, s) = (0.7, 1.9);
        let mut rng = rng::stream(3, 0, 0);
        for word in [
            &[1u8, 2, 1, 2][..],
            &[2, 1, 2, 1, 2],
            &[1, 2, 1, 2, 1],
            &[2, 1],
        ] {
            let c = cfg(word);
            let (n1, n2) = (c.count(1), c.count(2));
            let mut first = Vec::new();
            let mut second = Vec::new();
            gaps(&sample_simplex(n1 - 1, a, &mut rng), a, &mut first);
            gaps(&sample_simplex(n2 - 1, s, &mut rng), s, &mut second);
            let d = interleave(&c, &first, &second);
            let sum_1: f64 = d
                .iter()
                .zip(c.word())
                .filter(|(_, &w)| w == 1)
                .map(|(x, _)| x)
                .sum();
            let sum_2: f64 = d
                .iter()
                .zip(c.word())
                .filter(|(_, &w)| w == 2)
                .map(|(x, _)| x)
                .sum();
            assert_relative_eq!(sum_1, a, max_relative = 1e-14);
            assert_relative_eq!(sum_2, s, max_relative = 1e-14);
            assert!(d.iter().all(|&x| x >= 0.0));
            // |c| = 2m: both factors have dimension m - 1; |c| = 2m + 1: leading one has m
            let m = c.len() / 2;
            let lead = if c.first() == 1 { n1 } else { n2 };
            assert_eq!(lead - 1, if c.len().is_multiple_of(2) { m - 1 } else { m });
        }
    }

    #[test]
    fn config_examples() {
        let mc = McConfig::default();
        let e = input("euclidean", (0.0, 0.0), (1.0, 1.0), 2.0);
        let r = mc_config_integral(&e, &cfg(&[1, 2]), &mc).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-14);
        let polar = input("polar", (1.0, 0.0), (2.0, 1.0), 2.0);
        let r = mc_config_integral(&polar, &cfg(&[2, 1]), &mc).unwrap();
        assert!(Estimate {
            value: r.value,
            std_error: r.abs_error_estimate
        }
        .agrees_with(2.0, 3.0));
        let sphere = input("sphere", (FRAC_PI_4, 0.0), (FRAC_PI_4 + 0.5, 0.5), 1.0);
        let c = cfg(&[1, 2, 1]);
        let r = mc_config_integral(&sphere, &c, &mc).unwrap();
        let exact = config_length_integral(&sphere, &c).unwrap();
        assert!(r.abs_error_estimate > 0.0);
        assert!(
            (r.value - exact).abs() <= 3.0 * r.abs_error_estimate,
            "{} vs {exact}",
            r.value
        );
        assert_eq!(
            mc_config_integral(&sphere, &cfg(&[1]), &mc).unwrap().value,
            0.0
        );
    }

    #[test]
    fn estimates_are_reproducible() {
        let mc = McConfig::new(10_000, 9, 1000).unwrap();
        let i = input("hyperbolic", (0.0, 1.0), (1.0, 2.0), 2.0);
        let c = cfg(&[2, 1, 2, 1]);
        assert_eq!(
            mc_config_integral(&i, &c, &mc).unwrap(),
            mc_config_integral(&i, &c, &mc).unwrap()
        );
        let other = mc_config_integral(&i, &c, &mc.with_seed(10)).unwrap();
        assert_ne!(other.value, mc_config_integral(&i, &c, &mc).unwrap().value);
        assert!(McConfig::new(1, 0, 10).is_err());
        assert!(McConfig::new(100, 0, 0).is_err());
    }

    #[test]
    fn total_moves_less_than_tail_bound() {
        let mc = McConfig::new(20_000, 5, 4096).unwrap();
        let i = input("sphere", (0.6, 0.0), (1.4, 0.9), 1.7);
        let one = mc_total_integral(&i, 1, &mc).unwrap();
        let two = mc_total_integral(&i, 2, &mc).unwrap();
        let noise = 3.0 * (one.abs_error_estimate.powi(2) + two.abs_error_estimate.powi(2)).sqrt();
        assert!((two.value - one.value).abs() <= one.truncation_bound + noise);
        assert_eq!(two.configs_used, 10);
    }

    #[test]
    fn permutation_examples() {
        let mc = McConfig::default();
        let id = [0, 1, 2];
        let r = permutation_volume_check(2, 0, 1.0, 2.0, &id, &mc).unwrap();
        assert!(
            r.plain.agrees_with(1.0, 3.0) && r.permuted.agrees_with(1.0, 3.0),
            "{r:?}"
        );
        let r = permutation_volume_check(2, 0, 1.0, 2.0, &[1, 0, 2], &mc).unwrap();
        assert!(r.permuted.agrees_with(1.0, 3.0), "{r:?}");
        let r = permutation_volume_check(3, 1, 1.0, 3.0, &[3, 1, 0, 2], &mc).unwrap();
        assert!(
            r.plain.agrees_with(2.0, 3.0) && r.permuted.agrees_with(2.0, 3.0),
            "{r:?}"
        );
        assert!(permutation_volume_check(3, 1, 1.0, 3.0, &[0, 0, 1, 2], &mc).is_err());
        assert!(permutation_volume_check(3, 3, 1.0, 3.0, &[0, 1, 2, 3], &mc).is_err());
    }

    #[test]
    fn quadrature_matches_closed_form_strata() {
        let i = input("sphere", (0.4, 0.0), (1.3, 1.2), 2.1);
        for len in 1..=7 {
            for first in [1, 2] {
                let c = Configuration::alternating(first, len).unwrap();
                let q = quad_config_integral(&i, &c, 1e-10).unwrap();
                let exact = config_length_integral(&i, &c).unwrap();
                assert!(
                    (q.value - exact).abs() <= 1e-9 * exact.abs().max(1e-12),
                    "{c}: {} vs {exact}",
                    q.value
                );
            }
        }
        assert!(
            quad_config_integral(&i, &Configuration::alternating(1, 10).unwrap(), 1e-8).is_err()
        );
    }

    #[test]
    fn lemma_recursion_examples() {
        let base = LemmaParams {
            m: 1,
            a: 0.8,
            b: 1.4,
            lambda: 0.0,
            k1: 0,
            k2: 0,
            r: 1,
            shift: 0.3,
        };
        let v = quad_lemma_recursive(&base, &f64::exp, 1e-12).unwrap();
        assert_relative_eq!(
            v,
            1.4f64.powi(2) / 2.0 * (1.1f64.exp() - 0.3f64.exp()),
            max_relative = 1e-10
        );
        let p = LemmaParams {
            m: 2,
            a: 1.0,
            b: 1.0,
            r: 0,
            shift: 0.0,
            ..base
        };
        let v = quad_lemma_recursive(&p, &f64::exp, 1e-10).unwrap();
        assert_relative_eq!(
            v,
            lemma_closed_form(&p, f64::exp).unwrap(),
            max_relative = 1e-8
        );
        let p = LemmaParams {
            m: 2,
            lambda: 1.0,
            k1: 1,
            k2: 0,
            r: 2,
            a: 0.9,
            b: 1.3,
            ..base
        };
        let v = quad_lemma_recursive(&p, &|_| 0.0, 1e-10).unwrap();
        assert_relative_eq!(
            v,
            0.9f64.powi(3) * 1.3f64.powi(2) / 12.0,
            max_relative = 1e-8
        );
        assert!(quad_lemma_recursive(&LemmaParams { m: 5, ..p }, &|_| 0.0, 1e-8).is_err());
    }
}
