//! Riemann zeta and power-sum tails by Euler–Maclaurin summation.

use crate::error::{ModelError, Result};
use crate::scalar::{compensated_sum, Scalar};

/// B_{2j} / (2j)! for j = 1..10.
const BERNOULLI_OVER_FACT: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
];

/// Σ_{k ≥ a} k^{−s} together with the size of the first omitted
/// Euler–Maclaurin term. For 0 < s < 1 this is the analytically continued
/// Hurwitz value ζ(s, a).
pub fn power_tail_sum<T: Scalar>(s: T, a: T) -> (T, T) {
    let half = T::lit(0.5);
    let mut acc = a.powf(T::one() - s) / (s - T::one()) + half * a.powf(-s);
    let inv_a2 = (a * a).recip();
    // (s)_{2j-1} a^{-s-2j+1}
    let mut rising = s;
    let mut pow = a.powf(-s - T::one());
    let mut last = T::zero();
    for (j, &b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        let term = T::lit(b) * rising * pow;
        if j + 1 == BERNOULLI_OVER_FACT.len() {
            last = term.abs();
            break;
        }
        acc = acc + term;
        let k = T::of_u64(2 * j as u64 + 1);
        rising = rising * (s + k) * (s + k + T::one());
        pow = pow * inv_a2;
    }
    (acc, last)
}

/// Riemann ζ(s) for s > 0, s ≠ 1.
///
/// Direct summation of the first N − 1 terms plus the Euler–Maclaurin tail from
/// N; N doubles until the first omitted correction is below 1e−13 (relative to
/// max(1, |ζ|)).
pub fn riemann_zeta<T: Scalar>(s: T) -> Result<T> {
    if !(s > T::zero()) || s == T::one() || !s.is_finite() {
        return Err(ModelError::domain("riemann_zeta", format!("s = {s} must be positive and != 1")));
    }
    let mut n: u64 = 16;
    loop {
        let head = compensated_sum((1..n).map(|k| T::of_u64(k).powf(-s)));
        let (tail, bound) = power_tail_sum(s, T::of_u64(n));
        let value = head + tail;
        if bound <= T::lit(1e-13) * value.abs().max(T::one()) || n >= 1 << 16 {
            return Ok(value);
        }
        n *= 2;
    }
}

/// Exact Σ_{k=1}^{n−1} k^{−s} and its large-n form n^{1−s}/(1−s) + ζ(s),
/// for 0 < s < 1 and n ≥ 2.
pub fn harmonic_partial_asymptote<T: Scalar>(s: T, n: u64) -> Result<(T, T)> {
    if !(s > T::zero() && s < T::one()) || n < 2 {
        return Err(ModelError::domain(
            "harmonic_partial_asymptote",
            format!("need 0 < s < 1 and n >= 2 (s = {s}, n = {n})"),
        ));
    }
    let exact = compensated_sum((1..n).map(|k| T::of_u64(k).powf(-s)));
    let asymptote = T::of_u64(n).powf(T::one() - s) / (T::one() - s) + riemann_zeta(s)?;
    Ok((exact, asymptote))
}
