//! Truncated formal power series.

use std::ops::{Add, Mul};

use num_traits::{Num, Zero};

use crate::error::{ModelError, Result};

/// Truncation order used when callers do not pick one.
pub const DEFAULT_ORDER: usize = 256;

/// c₀ + c₁z + … + c_N z^N (N = `order()`).
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Num + Clone> PowerSeries<T> {
    /// Panics on an empty coefficient vector.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least the constant term");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![T::zero(); order + 1] }
    }

    /// The series z, truncated at `order` ≥ 1.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order.max(1));
        s.coeffs[1] = T::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Re-truncate (or zero-pad) to `order`.
    pub fn truncate(mut self, order: usize) -> Self {
        self.coeffs.resize(order + 1, T::zero());
        self
    }

    /// Product truncated at `order`.
    pub fn mul_truncated(&self, other: &Self, order: usize) -> Self {
        let mut out = vec![T::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coeffs: out }
    }

    /// Horner evaluation at a point.
    pub fn eval(&self, z: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * z.clone() + c.clone())
    }
}

impl<T: Num + Clone> Add for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn add(self, rhs: Self) -> PowerSeries<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PowerSeries { coeffs: (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect() }
    }
}

impl<T: Num + Clone> Mul for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    /// Truncated at the smaller of the two orders.
    fn mul(self, rhs: Self) -> PowerSeries<T> {
        self.mul_truncated(rhs, self.order().min(rhs.order()))
    }
}

/// Coefficients of outer(inner(z)) up to z^order by truncated Horner
/// composition. `outer` is taken as the polynomial it stores; when `inner`
/// has a nonzero constant term the result is exact for that polynomial and an
/// approximation of any longer series `outer` was cut from.
pub fn series_compose<T: Num + Clone>(
    outer: &PowerSeries<T>,
    inner: &PowerSeries<T>,
    order: usize,
) -> Result<PowerSeries<T>> {
    if order > inner.order() {
        return Err(ModelError::OrderOverflow { requested: order, available: inner.order() });
    }
    let mut acc = PowerSeries::zero(order);
    for c in outer.coeffs.iter().rev() {
        acc = acc.mul_truncated(inner, order);
        acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
    }
    Ok(acc)
}

impl<T: Num + Clone> PowerSeries<T> {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn max_abs_diff(a: &PowerSeries<f64>, b: &PowerSeries<f64>) -> f64 {
        let n = a.order().max(b.order());
        (0..=n).map(|k| (a.coeff(k) - b.coeff(k)).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn identity_outer_returns_inner() {
        let inner = PowerSeries::new(vec![0.25, -1.0, 3.0, 0.5]);
        let out = series_compose(&PowerSeries::identity(1), &inner, 3).unwrap();
        assert_eq!(out, inner);
    }

    #[test]
    fn square_of_scaled_z() {
        let a = 0.7;
        let outer = PowerSeries::new(vec![0.0, 0.0, 1.0]);
        let inner = PowerSeries::new(vec![0.0, a, 0.0, 0.0, 0.0]);
        let out = series_compose(&outer, &inner, 4).unwrap();
        assert_eq!(out.coeffs(), &[0.0, 0.0, a * a, 0.0, 0.0]);
    }

    #[test]
    fn order_overflow() {
        let inner = PowerSeries::new(vec![0.0, 1.0]);
        let err = series_compose(&PowerSeries::identity(1), &inner, 5).unwrap_err();
        assert_eq!(err, ModelError::OrderOverflow { requested: 5, available: 1 });
    }

    #[test]
    fn exact_rational_composition() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // (1 + z)^2 ∘ (z/2 + z²) = 1 + z + (9/4) z² + z³ + z⁴
        let outer = PowerSeries::new(vec![r(1, 1), r(2, 1), r(1, 1)]);
        let inner = PowerSeries::new(vec![r(0, 1), r(1, 2), r(1, 1), r(0, 1), r(0, 1)]);
        let out = series_compose(&outer, &inner, 4).unwrap();
        assert_eq!(out.coeffs(), &[r(1, 1), r(1, 1), r(9, 4), r(1, 1), r(1, 1)]);
    }

    fn poly(max_deg: usize) -> impl Strategy<Value = PowerSeries<f64>> {
        prop::collection::vec(-1.0_f64..1.0, 1..=max_deg + 1).prop_map(PowerSeries::new)
    }

    proptest! {
        #[test]
        fn composition_respects_products(f in poly(8), g in poly(8), h in poly(8)) {
            let order = 8;
            let mut h = h.truncate(order);
            // keep the inner constant inside [0, 1)
            h = PowerSeries::new({
                let mut c = h.into_coeffs();
                c[0] = c[0].abs() * 0.99;
                c
            });
            let fg = f.mul_truncated(&g, 16);
            let lhs = series_compose(&fg, &h, order).unwrap();
            let rhs = series_compose(&f, &h, order)
                .unwrap()
                .mul_truncated(&series_compose(&g, &h, order).unwrap(), order);
            let scale = lhs.coeffs().iter().fold(1.0_f64, |m, c| m.max(c.abs()));
            prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-12 * scale);
        }

        #[test]
        fn composition_matches_pointwise_evaluation(f in poly(6), h in poly(6)) {
            // inner without constant term: truncation is exact in z up to order,
            // so evaluating at a tiny z sees only the retained coefficients
            let mut hc = h.truncate(30).into_coeffs();
            hc[0] = 0.0;
            let h = PowerSeries::new(hc);
            let comp = series_compose(&f, &h, 30).unwrap();
            let z = 0.05;
            prop_assert!((comp.eval(z) - f.eval(h.eval(z))).abs() < 1e-12);
        }
    }
}
