//! Generalized binomial coefficients and the terminating Gauss series.

use num_traits::{FromPrimitive, Num};

use crate::error::{ModelError, Result};
use crate::scalar::Scalar;

fn from_u64<T: FromPrimitive>(n: u64) -> T {
    T::from_u64(n).expect("integer representable")
}

/// p(p − 1)…(p − s + 1) / s!.
pub fn gen_binomial<T: Num + Clone + FromPrimitive>(p: T, s: u64) -> T {
    let mut acc = T::one();
    for i in 0..s {
        acc = acc * (p.clone() - from_u64(i)) / from_u64(i + 1);
    }
    acc
}

/// ₂F₁(a, −s; c; x) = Σ_{m=0}^{s} (a)_m (−s)_m / ((c)_m m!) x^m, summed in
/// natural order with Kahan compensation. Works in any field (the
/// compensation term stays zero under exact arithmetic).
pub fn hyp2f1_terminating<T: Num + Clone + FromPrimitive>(a: T, s: u64, c: T, x: T) -> Result<T> {
    let mut term = T::one();
    let mut sum = T::one();
    let mut comp = T::zero();
    for m in 0..s {
        let mf: T = from_u64(m);
        let cm = c.clone() + mf.clone();
        if cm.is_zero() {
            return Err(ModelError::Pole { m });
        }
        let neg_s_m = mf.clone() - from_u64(s);
        term = term * (a.clone() + mf.clone()) * neg_s_m / (cm * (mf + T::one())) * x.clone();
        let y = term.clone() - comp.clone();
        let t = sum.clone() + y.clone();
        comp = (t.clone() - sum) - y;
        sum = t;
    }
    Ok(sum)
}

/// Terminating ₂F₁ with the log-magnitude cross-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2f1Eval<T> {
    pub value: T,
    /// Sum recomputed from per-term ln|t_m| and signs (only for s above
    /// [`CROSS_CHECK_MIN_S`]).
    pub cross_check: Option<T>,
}

impl<T: Scalar> Hyp2f1Eval<T> {
    pub fn relative_disagreement(&self) -> T {
        match self.cross_check {
            Some(alt) => {
                let scale = self.value.abs().max(alt.abs());
                if scale == T::zero() {
                    T::zero()
                } else {
                    (self.value - alt).abs() / scale
                }
            }
            None => T::zero(),
        }
    }
}

pub const CROSS_CHECK_MIN_S: u64 = 150;

/// Floating-point evaluation; for s > 150 the series is also summed from
/// log-magnitudes, shifted by the largest one, and reported alongside.
pub fn hyp2f1_terminating_checked<T: Scalar>(a: T, s: u64, c: T, x: T) -> Result<Hyp2f1Eval<T>> {
    let value = hyp2f1_terminating(a, s, c, x)?;
    if s <= CROSS_CHECK_MIN_S {
        return Ok(Hyp2f1Eval { value, cross_check: None });
    }
    let mut logs = Vec::with_capacity(s as usize + 1);
    let mut ln_mag = T::zero();
    let mut negative = false;
    logs.push((ln_mag, negative));
    for m in 0..s {
        let mf = T::of_u64(m);
        let factors = [a + mf, mf - T::of_u64(s), x, (c + mf).recip(), (mf + T::one()).recip()];
        for f in factors {
            if f == T::zero() {
                // every later term vanishes too
                ln_mag = T::neg_infinity();
            } else {
                ln_mag = ln_mag + f.abs().ln();
                negative ^= f < T::zero();
            }
        }
        logs.push((ln_mag, negative));
    }
    let peak = logs.iter().map(|&(l, _)| l).fold(T::neg_infinity(), T::max);
    let mut pos = crate::scalar::CompensatedSum::new();
    let mut neg = crate::scalar::CompensatedSum::new();
    for &(l, n) in &logs {
        let v = (l - peak).exp();
        if n {
            neg.add(v);
        } else {
            pos.add(v);
        }
    }
    let alt = (pos.value() - neg.value()) * peak.exp();
    Ok(Hyp2f1Eval { value, cross_check: Some(alt) })
}
