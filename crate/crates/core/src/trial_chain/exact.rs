//! Exact pmf, tail, improper mass and pgf.

use crate::error::{ModelError, Result};
use crate::pmf_table::PmfTable;
use crate::scalar::{CompensatedSum, Scalar};
use crate::specfun::{ln_gamma_ratio_unchecked, ln_gamma_unchecked, power_tail_sum};

use super::{RegimeTag, TrialChainParams};

/// Direct terms summed before switching to the analytic tail in
/// [`TrialChainParams::improper_mass`].
const IMPROPER_DIRECT_TERMS: u64 = 64;

/// Truncated pgf value with a bound on the omitted mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PgfValue<T> {
    pub value: T,
    /// z^order · P{X > order}.
    pub bound: T,
}

impl<T: Scalar> TrialChainParams<T> {
    /// ln P{X ≥ m} = Σ_{k<m} ln(1 − p/k^γ), accumulated left to right.
    pub fn ln_tail(&self, m: u64) -> T {
        if self.gamma == T::zero() {
            return T::of_u64(m.saturating_sub(1)) * (-self.p).ln_1p();
        }
        let mut acc = CompensatedSum::new();
        for k in 1..m {
            acc.add(self.ln_failure(k));
        }
        acc.value()
    }

    /// P{X ≥ m} = ∏_{k<m} (1 − p/k^γ); equals 1 at m = 1.
    pub fn tail(&self, m: u64) -> T {
        self.ln_tail(m).exp()
    }

    /// ln P{X = n}, n ≥ 1.
    pub fn ln_pmf(&self, n: u64) -> T {
        assert!(n >= 1, "support starts at 1");
        self.success_prob(n).ln() + self.ln_tail(n)
    }

    /// P{X = n} = p_n ∏_{k<n} (1 − p_k).
    pub fn pmf(&self, n: u64) -> T {
        self.ln_pmf(n).exp()
    }

    /// pmf(n + 1)/pmf(n) = (n/(n+1))^γ (1 − p/n^γ).
    pub fn step_ratio(&self, n: u64) -> T {
        let nf = T::of_u64(n);
        (nf / (nf + T::one())).powf(self.gamma) * (T::one() - self.success_prob(n))
    }

    /// ln pmf for n = 1..=n_max in one pass, with ln P{X > n_max} as tail.
    pub fn pmf_table(&self, n_max: u64) -> PmfTable<T> {
        let mut ln_probs = Vec::with_capacity(n_max as usize);
        let mut acc = CompensatedSum::new();
        for n in 1..=n_max {
            ln_probs.push(self.success_prob(n).ln() + acc.value());
            acc.add(self.ln_failure(n));
        }
        PmfTable { offset: 1, ln_probs, ln_tail: acc.value() }
    }

    /// ln P{X ≥ m} for m = 1..=m_max.
    pub fn ln_tail_table(&self, m_max: u64) -> Vec<T> {
        let mut out = Vec::with_capacity(m_max as usize);
        let mut acc = CompensatedSum::new();
        for m in 1..=m_max {
            out.push(acc.value());
            acc.add(self.ln_failure(m));
        }
        out
    }

    /// ln P{X = ∞} = Σ_k ln(1 − p/k^γ); −∞ for γ ≤ 1.
    ///
    /// The first terms are summed directly; beyond them
    /// Σ_{k≥K} ln(1 − p/k^γ) = −Σ_j (p^j/j) Σ_{k≥K} k^{−γj}.
    pub fn ln_improper_mass(&self) -> T {
        if self.gamma <= T::one() {
            return T::neg_infinity();
        }
        let mut acc = CompensatedSum::new();
        for k in 1..IMPROPER_DIRECT_TERMS {
            acc.add(self.ln_failure(k));
        }
        self.add_power_tail(&mut acc, true);
        acc.value()
    }

    /// P{X = ∞} = lim_n ∏_{k<n} (1 − p/k^γ) for γ > 1, 0 otherwise.
    pub fn improper_mass(&self) -> T {
        self.ln_improper_mass().exp()
    }

    /// exp(−Σ_k p/(k^γ − p)): the closed form obtained when the 1/j weights
    /// of the log expansion are dropped. Smaller than [`Self::improper_mass`];
    /// kept for comparison only.
    pub fn improper_mass_without_log_weights(&self) -> T {
        if self.gamma <= T::one() {
            return T::zero();
        }
        let p = self.p;
        let mut acc = CompensatedSum::new();
        for k in 1..IMPROPER_DIRECT_TERMS {
            acc.add(p / (T::of_u64(k).powf(self.gamma) - p));
        }
        self.add_power_tail(&mut acc, false);
        (-acc.value()).exp()
    }

    /// Adds ∓Σ_j w_j p^j Σ_{k≥K} k^{−γj} with w_j = 1/j (`log_weights`) or 1;
    /// the sign is negative for the log weights.
    fn add_power_tail(&self, acc: &mut CompensatedSum<T>, log_weights: bool) {
        let a = T::of_u64(IMPROPER_DIRECT_TERMS);
        let mut pj = T::one();
        for j in 1..=200u64 {
            pj = pj * self.p;
            let (h, _) = power_tail_sum(self.gamma * T::of_u64(j), a);
            let term = if log_weights { -pj * h / T::of_u64(j) } else { pj * h };
            acc.add(term);
            if term.abs() <= T::epsilon() * T::lit(1e-3) * acc.value().abs() {
                break;
            }
        }
    }

    fn ln_proper_mass(&self) -> Result<T> {
        if self.gamma <= T::one() {
            return Err(ModelError::domain(
                "conditional_pmf",
                format!("gamma = {} must exceed 1", self.gamma),
            ));
        }
        Ok((-(self.ln_improper_mass().exp_m1())).ln())
    }

    /// ln P{X = n | X < ∞}; γ > 1 only.
    pub fn ln_conditional_pmf(&self, n: u64) -> Result<T> {
        Ok(self.ln_pmf(n) - self.ln_proper_mass()?)
    }

    /// P{X = n | X < ∞}; γ > 1 only.
    pub fn conditional_pmf(&self, n: u64) -> Result<T> {
        self.ln_conditional_pmf(n).map(T::exp)
    }

    /// Conditional table, n = 1..=n_max, tail = P{n_max < X < ∞ | X < ∞}.
    pub fn conditional_pmf_table(&self, n_max: u64) -> Result<PmfTable<T>> {
        let shift = self.ln_proper_mass()?;
        let mut table = self.pmf_table(n_max);
        for l in &mut table.ln_probs {
            *l = *l - shift;
        }
        let beyond = table.ln_tail.exp() - self.improper_mass();
        table.ln_tail = beyond.max(T::zero()).ln() - shift;
        Ok(table)
    }

    /// Σ_{n ≤ order} zⁿ P{X = n} with the bound z^order · P{X > order}.
    pub fn evaluate_pgf(&self, z: T, order: u64) -> Result<PgfValue<T>> {
        if !(z >= T::zero() && z <= T::one()) {
            return Err(ModelError::domain("evaluate_pgf", format!("z = {z} outside [0, 1]")));
        }
        if z == T::zero() {
            return Ok(PgfValue { value: T::zero(), bound: T::zero() });
        }
        let table = self.pmf_table(order);
        let ln_z = z.ln();
        let value = table
            .ln_probs
            .iter()
            .enumerate()
            .map(|(i, l)| (*l + T::of_u64(i as u64 + 1) * ln_z).exp())
            .collect::<CompensatedSum<T>>()
            .value();
        let bound = (T::of_u64(order) * ln_z + table.ln_tail).exp();
        Ok(PgfValue { value, bound })
    }

    pub fn is_proper(&self) -> bool {
        self.regime() != RegimeTag::Improper
    }
}

/// ln P{X ≥ m} for the Sibuya law: ln Γ(m − p) − ln Γ(m) − ln Γ(1 − p).
pub fn sibuya_ln_tail_closed<T: Scalar>(p: T, m: u64) -> T {
    assert!(m >= 1, "support starts at 1");
    ln_gamma_ratio_unchecked(T::of_u64(m), p) - ln_gamma_unchecked(T::one() - p)
}

/// P{X ≥ m} = Γ(m − p)/(Γ(m) Γ(1 − p)) for the Sibuya law.
pub fn sibuya_tail_closed<T: Scalar>(p: T, m: u64) -> T {
    sibuya_ln_tail_closed(p, m).exp()
}
