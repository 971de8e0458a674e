//! Log-gamma and gamma ratios.
//!
//! `ln_gamma` uses a Lanczos sum (g = 7, 9 terms) on (0, 10) and the Stirling
//! series with eight Bernoulli corrections beyond. Arguments below 1/2 are
//! lifted with lnΓ(x) = lnΓ(x + 1) − ln x.

use crate::error::{ModelError, Result};
use crate::scalar::Scalar;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// B_{2k} / (2k (2k − 1)) for k = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const STIRLING_MIN: f64 = 10.0;

fn stirling_correction<T: Scalar>(x: T) -> T {
    let inv = x.recip();
    let inv2 = inv * inv;
    let mut acc = T::zero();
    for &c in STIRLING.iter().rev() {
        acc = acc * inv2 + T::lit(c);
    }
    acc * inv
}

fn lanczos<T: Scalar>(x: T) -> T {
    let z = x - T::one();
    let mut a = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a = a + T::lit(c) / (z + T::of_u64(i as u64));
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    let half = T::lit(0.5);
    half * (T::TAU()).ln() + (z + half) * t.ln() - t + a.ln()
}

pub(crate) fn ln_gamma_unchecked<T: Scalar>(x: T) -> T {
    if x == T::one() || x == T::lit(2.0) {
        return T::zero();
    }
    if x < T::lit(0.5) {
        return ln_gamma_unchecked(x + T::one()) - x.ln();
    }
    if x < T::lit(STIRLING_MIN) {
        return lanczos(x);
    }
    let half = T::lit(0.5);
    (x - half) * x.ln() - x + half * T::TAU().ln() + stirling_correction(x)
}

/// Natural logarithm of Γ(x) for x > 0.
pub fn ln_gamma<T: Scalar>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(ModelError::domain("ln_gamma", format!("x = {x} must be positive and finite")));
    }
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_ratio_unchecked<T: Scalar>(m: T, p: T) -> T {
    let x = m - p;
    let lim = T::lit(STIRLING_MIN);
    if x >= lim && m >= lim {
        // Stirling difference keeps full relative accuracy when both
        // arguments are large and close.
        let half = T::lit(0.5);
        -p * m.ln() + (x - half) * (-p / m).ln_1p() + p + stirling_correction(x)
            - stirling_correction(m)
    } else {
        ln_gamma_unchecked(x) - ln_gamma_unchecked(m)
    }
}

/// ln(Γ(m − p) / Γ(m)).
pub fn ln_gamma_ratio<T: Scalar>(m: T, p: T) -> Result<T> {
    if !(m - p > T::zero()) || !(m > T::zero()) {
        return Err(ModelError::domain("gamma_ratio", format!("need m > 0 and m - p > 0 (m = {m}, p = {p})")));
    }
    Ok(ln_gamma_ratio_unchecked(m, p))
}

/// Γ(m − p) / Γ(m), evaluated in log space.
pub fn gamma_ratio<T: Scalar>(m: T, p: T) -> Result<T> {
    ln_gamma_ratio(m, p).map(T::exp)
}
