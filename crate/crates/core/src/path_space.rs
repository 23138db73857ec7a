//! Direction configurations, simplex volumes and path-space volumes.
//!
//! A configuration is a word over the direction labels `1..=k` with no two
//! adjacent labels equal. For two directions, a path with configuration `c`
//! from `p` to `q` spends a total of `a = x1 - x0` in direction 1 and
//! `s = y1 - y0` in direction 2, so its durations split into one simplex per
//! direction and the stratum volume is a product of simplex volumes.

use std::fmt;

use crate::cbinom::cbinom_bc;
use crate::numeric::{factorial, pow_over_factorial};
use crate::{Error, Result};

/// A flow direction label.
pub type Direction = u8;

/// A word of direction labels with no adjacent repeats.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    word: Vec<Direction>,
    k: Direction,
}

impl Configuration {
    pub fn new(word: Vec<Direction>, k: Direction) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidConfiguration(
                "need at least one direction".into(),
            ));
        }
        if word.is_empty() {
            return Err(Error::InvalidConfiguration("configuration is empty".into()));
        }
        if let Some(bad) = word.iter().find(|&&d| d == 0 || d > k) {
            return Err(Error::InvalidConfiguration(format!(
                "label {bad} outside 1..={k}"
            )));
        }
        if let Some(i) = word.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfiguration(format!(
                "labels {} and {} repeat direction {}",
                i,
                i + 1,
                word[i]
            )));
        }
        Ok(Self { word, k })
    }

    /// The two-direction word of length `len` starting with `first`.
    pub fn alternating(first: Direction, len: usize) -> Result<Self> {
        if first != 1 && first != 2 {
            return Err(Error::InvalidConfiguration(format!(
                "alternating words start with 1 or 2, got {first}"
            )));
        }
        let word = (0..len)
            .map(|i| if i % 2 == 0 { first } else { 3 - first })
            .collect();
        Self::new(word, 2)
    }

    pub fn word(&self) -> &[Direction] {
        &self.word
    }

    pub fn k(&self) -> Direction {
        self.k
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn first(&self) -> Direction {
        self.word[0]
    }

    /// Number of segments flowing along `direction`.
    pub fn count(&self, direction: Direction) -> usize {
        self.word.iter().filter(|&&d| d == direction).count()
    }

    pub(crate) fn require_two_directions(&self) -> Result<()> {
        if self.k == 2 {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "stratum formulas are for k = 2, configuration has k = {}",
                self.k
            )))
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// All configurations in `D(n, k)`, i.e. of length `n + 1`, in lexicographic
/// order.
pub fn enumerate_configs(n: usize, k: Direction) -> Vec<Configuration> {
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n + 1);
    fn extend(word: &mut Vec<Direction>, len: usize, k: Direction, out: &mut Vec<Configuration>) {
        if word.len() == len {
            out.push(Configuration {
                word: word.clone(),
                k,
            });
            return;
        }
        for d in 1..=k {
            if word.last() != Some(&d) {
                word.push(d);
                extend(word, len, k, out);
                word.pop();
            }
        }
    }
    extend(&mut word, n + 1, k, &mut out);
    out
}

/// Every two-direction configuration of length `1..=max_len`, ordered by
/// length and then by starting direction.
pub fn two_direction_configs(max_len: usize) -> Vec<Configuration> {
    (1..=max_len)
        .flat_map(|len| [1, 2].map(|first| Configuration::alternating(first, len).expect("valid")))
        .collect()
}

/// `vol(Delta_n^t) = t^n / n!`.
pub fn simplex_volume(n: usize, t: f64) -> f64 {
    pow_over_factorial(t, n as i64)
}

/// `vol(Delta_n^t)` extended by `vol(Delta_{-1}^t) = [t == 0]`, the volume of
/// the (empty) set of durations of a direction that is never used.
fn simplex_volume_signed(n: i64, t: f64) -> f64 {
    if n < 0 {
        if t == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        pow_over_factorial(t, n)
    }
}

/// Exponents `(i_0, ..., i_n)` of a monomial in the durations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiIndex {
    exponents: Vec<u32>,
}

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::domain("multi-index needs at least one entry"));
        }
        Ok(Self { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Simplex dimension `n` (one less than the number of entries).
    pub fn dimension(&self) -> usize {
        self.exponents.len() - 1
    }

    pub fn total(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// `I! = i_0! ... i_n!`.
    pub fn factorial(&self) -> f64 {
        self.exponents.iter().map(|&i| factorial(i)).product()
    }

    /// `s^I / I!` for durations `s`.
    pub fn eval_normalized(&self, durations: &[f64]) -> f64 {
        debug_assert_eq!(durations.len(), self.exponents.len());
        self.exponents
            .iter()
            .zip(durations)
            .map(|(&i, &s)| pow_over_factorial(s, i64::from(i)))
            .product()
    }
}

/// `int_{Delta_n^t} s^I / I! d gamma_n = t^(|I| + n) / (|I| + n)!`.
pub fn monomial_simplex_integral(index: &MultiIndex, t: f64) -> f64 {
    pow_over_factorial(t, i64::from(index.total()) + index.dimension() as i64)
}

/// Volume of the stratum of paths with configuration `config` that spend
/// `a` in direction 1 and `s` in direction 2.
///
/// With `n1` segments along direction 1 and `n2` along direction 2 this is
/// `vol(Delta_{n1-1}^a) vol(Delta_{n2-1}^s)`; a direction that never occurs
/// contributes 1 when its budget is zero and 0 otherwise.
pub fn gamma_config_volume(config: &Configuration, a: f64, s: f64) -> Result<f64> {
    config.require_two_directions()?;
    if a < 0.0 || s < 0.0 || !a.is_finite() || !s.is_finite() {
        return Err(Error::domain(format!(
            "budgets must be >= 0, got a = {a}, s = {s}"
        )));
    }
    let n1 = config.count(1) as i64;
    let n2 = config.count(2) as i64;
    Ok(simplex_volume_signed(n1 - 1, a) * simplex_volume_signed(n2 - 1, s))
}

/// `vol(Gamma_{p,q}(t)) = {t brace a}` for the coordinate plane, `0 <= a <= t`.
///
/// At the boundary `a = 0` or `a = t` this is `2 + t`, following the series
/// definition even though only a single one-direction path is realised.
pub fn vol_gamma_plane(t: f64, a: f64) -> Result<f64> {
    cbinom_bc(t, a)
}

/// `k e^((k-1) t)`: the path-space volume when all `k` fields coincide.
pub fn vol_gamma_single_field(k: u32, t: f64) -> Result<f64> {
    if k == 0 || t < 0.0 || !t.is_finite() {
        return Err(Error::domain(format!(
            "need k >= 1 and t >= 0, got k = {k}, t = {t}"
        )));
    }
    Ok(f64::from(k) * (f64::from(k - 1) * t).exp())
}

/// `{t brace (t - t0) / (1 - lambda)}`: the path-space volume for the pair of
/// fields `X, lambda X` and `q = phi(p, t0)`.
pub fn vol_gamma_lambda(t: f64, t0: f64, lambda: f64) -> Result<f64> {
    if lambda == 1.0 {
        return Err(Error::domain("lambda = 1 makes the two fields identical"));
    }
    if ![t, t0, lambda].iter().all(|v| v.is_finite()) {
        return Err(Error::domain("arguments must be finite"));
    }
    let budget = (t0 - lambda * t) / (1.0 - lambda);
    let slack = 8.0 * f64::EPSILON * t.abs().max(t0.abs()).max(1.0);
    if budget < -slack || budget > t + slack {
        return Err(Error::NotInfluenced { t, budget });
    }
    let complement = ((t - t0) / (1.0 - lambda)).clamp(0.0, t.max(0.0));
    cbinom_bc(t, complement)
}
