//! First-success time of independent trials whose success probability at
//! trial n is p/n^γ.
//!
//! γ = 0 gives the geometric law, γ = 1 the Sibuya law, 0 < γ < 1 light but
//! stretched tails, and γ > 1 an improper variable with P{X = ∞} > 0.
//! [`GrowingChainParams`] covers the companion case of success probabilities
//! 1 − q/n^γ that increase towards one.

mod asymptotic;
mod exact;
mod growing;
mod sampler;

pub use asymptotic::{ConstantEstimate, ExponentSign, NEAR_INTEGER_BAND};
pub use exact::{sibuya_ln_tail_closed, sibuya_tail_closed, PgfValue};
pub use growing::GrowingChainParams;
pub use sampler::{ChainSampler, SampleOutcome};

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::scalar::Scalar;

/// Default tolerance when deciding whether 1/γ is an integer.
pub const INTEGER_TOLERANCE: f64 = 1e-9;

/// Default iteration cap for samplers.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// Parameters (p, γ) of the decreasing-probability chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialChainParams<T> {
    p: T,
    gamma: T,
}

impl<T: Scalar> TrialChainParams<T> {
    /// Requires 0 < p < 1 and γ ≥ 0.
    pub fn new(p: T, gamma: T) -> Result<Self> {
        if !(p > T::zero() && p < T::one()) {
            return Err(ModelError::domain("trial_chain", format!("p = {p} must lie in (0, 1)")));
        }
        if !(gamma >= T::zero()) || !gamma.is_finite() {
            return Err(ModelError::domain("trial_chain", format!("gamma = {gamma} must be finite and >= 0")));
        }
        Ok(Self { p, gamma })
    }

    pub fn sibuya(p: T) -> Result<Self> {
        Self::new(p, T::one())
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    /// Success probability p/n^γ at trial n ≥ 1.
    #[inline]
    pub fn success_prob(&self, n: u64) -> T {
        if self.gamma == T::zero() {
            self.p
        } else {
            self.p / T::of_u64(n).powf(self.gamma)
        }
    }

    /// ln(1 − p/n^γ).
    #[inline]
    pub(crate) fn ln_failure(&self, n: u64) -> T {
        (-self.success_prob(n)).ln_1p()
    }

    pub fn regime(&self) -> RegimeTag {
        classify_regime(self.gamma, T::lit(INTEGER_TOLERANCE))
    }
}

/// Branch of the large-n behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeTag {
    /// γ = 0.
    Geometric,
    /// 0 < γ < 1, 1/γ not an integer.
    FractionalNonInteger,
    /// 0 < γ < 1, 1/γ an integer.
    FractionalInteger,
    /// γ = 1.
    Sibuya,
    /// γ > 1.
    Improper,
}

/// Total classification of γ ≥ 0; 1/γ counts as an integer when it is within
/// `integer_tolerance` of one. Negative γ is treated as 0.
pub fn classify_regime<T: Scalar>(gamma: T, integer_tolerance: T) -> RegimeTag {
    if gamma <= T::zero() {
        RegimeTag::Geometric
    } else if gamma == T::one() {
        RegimeTag::Sibuya
    } else if gamma > T::one() {
        RegimeTag::Improper
    } else {
        let inv = gamma.recip();
        if (inv - inv.round()).abs() <= integer_tolerance {
            RegimeTag::FractionalInteger
        } else {
            RegimeTag::FractionalNonInteger
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regime_examples() {
        let tol = INTEGER_TOLERANCE;
        assert_eq!(classify_regime(0.0, tol), RegimeTag::Geometric);
        assert_eq!(classify_regime(0.4, tol), RegimeTag::FractionalNonInteger);
        assert_eq!(classify_regime(0.5, tol), RegimeTag::FractionalInteger);
        assert_eq!(classify_regime(0.25, tol), RegimeTag::FractionalInteger);
        assert_eq!(classify_regime(1.0 / 3.0, tol), RegimeTag::FractionalInteger);
        assert_eq!(classify_regime(0.7, tol), RegimeTag::FractionalNonInteger);
        assert_eq!(classify_regime(1.0, tol), RegimeTag::Sibuya);
        assert_eq!(classify_regime(2.0, tol), RegimeTag::Improper);
        assert_eq!(classify_regime(0.5 + 1e-12, tol), RegimeTag::FractionalInteger);
        assert_eq!(classify_regime(0.5 + 1e-6, tol), RegimeTag::FractionalNonInteger);
    }

    #[test]
    fn params_validation() {
        assert!(TrialChainParams::new(0.0, 0.5).is_err());
        assert!(TrialChainParams::new(1.0, 0.5).is_err());
        assert!(TrialChainParams::new(0.5, -0.1).is_err());
        assert!(TrialChainParams::new(0.5, f64::NAN).is_err());
        let c = TrialChainParams::new(0.5, 2.0).unwrap();
        assert_eq!(c.success_prob(1), 0.5);
        assert_eq!(c.success_prob(2), 0.125);
    }
}
