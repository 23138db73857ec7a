//! Small numeric helpers shared across modules.

/// `n!` as a float. Exact for `n <= 22`, overflows to infinity past 170.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * f64::from(k))
}

/// `ln(n!)` by direct summation; used when `n!` overflows.
pub fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| f64::from(k).ln()).sum()
}

/// `x^k / k!` with the conventions `0^0 = 1` and `x^k / k! = 0` for `k < 0`.
///
/// Computed as a running product of `x / i` so large `k` never overflows
/// an intermediate factorial.
pub fn pow_over_factorial(x: f64, k: i64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    let mut acc = 1.0;
    for i in 1..=k {
        acc *= x / i as f64;
    }
    acc
}

/// Pairwise summation in a fixed tree order, so the result depends only on
/// the input order and not on how the values were produced.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let (lo, hi) = values.split_at(n / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

/// Sums `|term(m)|` for `m = first, first + 1, ...` until terms fall below
/// `1e-300` or decay geometrically, then bounds the rest by the geometric
/// series of the last observed ratio.
///
/// Intended for series whose terms are eventually monotonically decreasing
/// with decreasing ratios (factorial-type decay).
pub fn tail_bound(first: usize, mut term: impl FnMut(usize) -> f64) -> f64 {
    let mut total = 0.0;
    let mut prev = term(first).abs();
    total += prev;
    let mut m = first + 1;
    loop {
        let cur = term(m).abs();
        total += cur;
        if cur == 0.0 && prev == 0.0 {
            return total;
        }
        if m > first + 4 && cur < prev {
            let ratio = cur / prev;
            if ratio < 0.5 {
                // remaining terms are dominated by cur * (r + r^2 + ...)
                return total + cur * ratio / (1.0 - ratio);
            }
        }
        if cur < 1e-300 && m > first + 4 {
            return total;
        }
        prev = cur;
        m += 1;
        if m > first + 100_000 {
            return f64::INFINITY;
        }
    }
}
