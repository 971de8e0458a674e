use rand::distr::{Distribution, StandardUniform};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::scalar::{CompensatedSum, Scalar};

use super::exact::sibuya_ln_tail_closed;
use super::{RegimeTag, TrialChainParams};

/// Result of one simulated chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleOutcome {
    /// First success at trial n (1 ≤ n ≤ cap).
    Finite(u64),
    /// No success within `cap` trials.
    Censored(u64),
}

impl SampleOutcome {
    pub fn finite(self) -> Option<u64> {
        match self {
            SampleOutcome::Finite(n) => Some(n),
            SampleOutcome::Censored(_) => None,
        }
    }

    pub fn is_censored(self) -> bool {
        matches!(self, SampleOutcome::Censored(_))
    }
}

impl<T: Scalar> TrialChainParams<T>
where
    StandardUniform: Distribution<T>,
{
    /// Runs Bernoulli(p/k^γ) trials for k = 1, 2, … up to `cap`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, cap: u64) -> SampleOutcome {
        for k in 1..=cap {
            if rng.random::<T>() < self.success_prob(k) {
                return SampleOutcome::Finite(k);
            }
        }
        SampleOutcome::Censored(cap)
    }
}

/// Inverse-transform sampler with the same law as
/// [`TrialChainParams::sample`]: draw U, return the first n with
/// P{X > n} ≤ U, or `Censored` when U < P{X > cap}.
///
/// The survival probability at the cap is computed once. For γ = 1 the
/// search over n uses the closed-form Γ-ratio tail (O(log cap)); other γ walk
/// the log-tail from n = 1.
#[derive(Debug, Clone)]
pub struct ChainSampler<T> {
    params: TrialChainParams<T>,
    cap: u64,
    ln_survive_cap: T,
    closed_form: bool,
}

impl<T: Scalar> ChainSampler<T>
where
    StandardUniform: Distribution<T>,
{
    pub fn new(params: TrialChainParams<T>, cap: u64) -> Self {
        assert!(cap >= 1, "cap must be positive");
        let closed_form = params.regime() == RegimeTag::Sibuya;
        let ln_survive_cap = if closed_form {
            sibuya_ln_tail_closed(params.p(), cap + 1)
        } else {
            params.ln_tail(cap + 1)
        };
        Self { params, cap, ln_survive_cap, closed_form }
    }

    pub fn params(&self) -> &TrialChainParams<T> {
        &self.params
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// P{X > cap}: the expected censoring fraction.
    pub fn censor_prob(&self) -> T {
        self.ln_survive_cap.exp()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SampleOutcome {
        // U in (0, 1]
        let u = T::one() - rng.random::<T>();
        let ln_u = u.ln();
        if ln_u < self.ln_survive_cap {
            return SampleOutcome::Censored(self.cap);
        }
        if self.closed_form {
            let p = self.params.p();
            // smallest n in [1, cap] with ln P{X ≥ n + 1} ≤ ln U
            let (mut lo, mut hi) = (1_u64, self.cap);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if sibuya_ln_tail_closed(p, mid + 1) <= ln_u {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            return SampleOutcome::Finite(lo);
        }
        let mut acc = CompensatedSum::new();
        for n in 1..=self.cap {
            acc.add(self.params.ln_failure(n));
            if acc.value() <= ln_u {
                return SampleOutcome::Finite(n);
            }
        }
        SampleOutcome::Censored(self.cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::stream_rng;

    #[test]
    fn near_certain_success() {
        let c = TrialChainParams::new(1.0 - 1e-12, 0.0).unwrap();
        let mut rng = stream_rng(1, 0);
        for _ in 0..1000 {
            assert_eq!(c.sample(&mut rng, 10), SampleOutcome::Finite(1));
        }
        let s = ChainSampler::new(c, 10);
        for _ in 0..1000 {
            assert_eq!(s.sample(&mut rng), SampleOutcome::Finite(1));
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let c = TrialChainParams::new(0.5, 1.0).unwrap();
        let a: Vec<_> = {
            let mut r = stream_rng(42, 3);
            (0..50).map(|_| c.sample(&mut r, 1000)).collect()
        };
        let b: Vec<_> = {
            let mut r = stream_rng(42, 3);
            (0..50).map(|_| c.sample(&mut r, 1000)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn outcomes_respect_cap() {
        let c = TrialChainParams::new(0.1, 3.0).unwrap();
        let s = ChainSampler::new(c, 5);
        let mut rng = stream_rng(7, 0);
        for _ in 0..2000 {
            match s.sample(&mut rng) {
                SampleOutcome::Finite(n) => assert!((1..=5).contains(&n)),
                SampleOutcome::Censored(cap) => assert_eq!(cap, 5),
            }
            match c.sample(&mut rng, 5) {
                SampleOutcome::Finite(n) => assert!((1..=5).contains(&n)),
                SampleOutcome::Censored(cap) => assert_eq!(cap, 5),
            }
        }
    }

    #[test]
    fn closed_form_search_matches_walk() {
        // same uniform stream through both inversion routes
        let c = TrialChainParams::new(0.5, 1.0).unwrap();
        let fast = ChainSampler::new(c, 100_000);
        let walk = ChainSampler { closed_form: false, ln_survive_cap: c.ln_tail(100_001), ..fast.clone() };
        let mut r1 = stream_rng(9, 0);
        let mut r2 = stream_rng(9, 0);
        let mut mismatches = 0;
        for _ in 0..5000 {
            if fast.sample(&mut r1) != walk.sample(&mut r2) {
                mismatches += 1;
            }
        }
        // the two tails agree to ~1e-10, so a boundary disagreement is rare
        assert!(mismatches <= 1, "{mismatches}");
    }
}
