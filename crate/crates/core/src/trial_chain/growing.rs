use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::scalar::Scalar;
use crate::specfun::ln_gamma_unchecked;

/// Chain with success probabilities 1 − q/n^γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowingChainParams<T> {
    q: T,
    gamma: T,
}

impl<T: Scalar> GrowingChainParams<T> {
    /// Requires 0 < q < 1 and γ > 0.
    pub fn new(q: T, gamma: T) -> Result<Self> {
        if !(q > T::zero() && q < T::one()) {
            return Err(ModelError::domain("growing_chain", format!("q = {q} must lie in (0, 1)")));
        }
        if !(gamma > T::zero()) || !gamma.is_finite() {
            return Err(ModelError::domain("growing_chain", format!("gamma = {gamma} must be finite and > 0")));
        }
        Ok(Self { q, gamma })
    }

    pub fn q(&self) -> T {
        self.q
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    /// ln P{X ≥ m} = (m − 1) ln q − γ ln Γ(m).
    pub fn ln_tail(&self, m: u64) -> T {
        assert!(m >= 1, "support starts at 1");
        T::of_u64(m - 1) * self.q.ln() - self.gamma * ln_gamma_unchecked(T::of_u64(m))
    }

    /// P{X ≥ m} = q^{m−1}/Γ(m)^γ.
    pub fn tail(&self, m: u64) -> T {
        self.ln_tail(m).exp()
    }

    /// ln P{X = n} = ln P{X ≥ n} + ln(1 − q/n^γ).
    pub fn ln_pmf(&self, n: u64) -> T {
        self.ln_tail(n) + (-self.q / T::of_u64(n).powf(self.gamma)).ln_1p()
    }

    /// P{X = n} = q^{n−1}/((n−1)!)^γ − q^n/(n!)^γ.
    pub fn pmf(&self, n: u64) -> T {
        self.ln_pmf(n).exp()
    }

    /// Smallest n maximizing the pmf, scanning until the pmf has been
    /// decreasing and the tail is negligible.
    pub fn mode(&self) -> u64 {
        let mut best = (1, self.ln_pmf(1));
        let mut n = 2;
        loop {
            let l = self.ln_pmf(n);
            if l > best.1 {
                best = (n, l);
            } else if self.ln_tail(n) < best.1 {
                return best.0;
            }
            n += 1;
        }
    }
}
