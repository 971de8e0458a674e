//! Large-n shapes of the pmf for each regime and empirical constants.
//!
//! For 0 < γ < 1 the product ∏(1 − p/k^γ) behaves like
//! C · exp{−Σ_j (p^j/j) n^{1−γj}/(1−γj)} with j running over the powers for
//! which γj < 1; when γj = 1 for some j the harmonic sum contributes a power
//! of n instead. Constants are never derived symbolically; they are read off
//! as pmf/shape on a grid and certified by how flat that ratio is.

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::scalar::Scalar;
use crate::specfun::ln_gamma_unchecked;

use super::{RegimeTag, TrialChainParams};

/// Distance of 1/γ from an integer inside which both fractional branches are
/// tried by [`TrialChainParams::estimate_constant`].
pub const NEAR_INTEGER_BAND: f64 = 1e-2;

/// Sign in front of the exponent sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentSign {
    /// exp{−Σ…}: the decaying form consistent with the exact product.
    Decaying,
    /// exp{+Σ…}: kept only to demonstrate that it diverges.
    Growing,
}

/// Output of [`TrialChainParams::estimate_constant`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantEstimate<T> {
    pub branch: RegimeTag,
    /// pmf/shape at the largest grid point.
    pub constant: T,
    /// max/min − 1 of the ratio over the upper half of the grid.
    pub spread: T,
    /// (n, ln(pmf/shape)) for every grid point.
    pub ln_ratios: Vec<(u64, T)>,
    pub warning: Option<String>,
}

impl<T: Scalar> TrialChainParams<T> {
    /// Σ_{j=1}^{j_max} (p^j/j) n^{1−γj}/(1−γj).
    fn power_sum(&self, n: u64, j_max: u64) -> T {
        let nf = T::of_u64(n);
        let mut pj = T::one();
        let mut acc = T::zero();
        for j in 1..=j_max {
            pj = pj * self.p;
            let e = T::one() - self.gamma * T::of_u64(j);
            acc = acc + pj / T::of_u64(j) * nf.powf(e) / e;
        }
        acc
    }

    /// ln of the constant-free shape for the given branch.
    pub fn ln_asym_pmf_shape_for(&self, branch: RegimeTag, n: u64, sign: ExponentSign) -> Result<T> {
        if n < 2 {
            return Err(ModelError::domain("asym_pmf_shape", format!("n = {n} must be >= 2")));
        }
        let p = self.p;
        let g = self.gamma;
        let ln_n = T::of_u64(n).ln();
        let s = match sign {
            ExponentSign::Decaying => -T::one(),
            ExponentSign::Growing => T::one(),
        };
        let inv = g.recip();
        match branch {
            RegimeTag::Geometric => Err(ModelError::domain(
                "asym_pmf_shape",
                "gamma = 0 has an exact geometric law",
            )),
            RegimeTag::FractionalNonInteger => {
                let j_max = inv.floor().to_u64().unwrap_or(0);
                Ok(p.ln() - g * ln_n + s * self.power_sum(n, j_max))
            }
            RegimeTag::FractionalInteger => {
                let j = inv.round().to_u64().unwrap_or(1).max(1);
                let jf = T::of_u64(j);
                Ok(p.ln() - (g + p.powf(jf) / jf) * ln_n + s * self.power_sum(n, j - 1))
            }
            RegimeTag::Sibuya => Ok(p.ln() - (p + T::one()) * ln_n - ln_gamma_unchecked(T::one() - p)),
            RegimeTag::Improper => Ok(p.ln() - g * ln_n),
        }
    }

    /// ln shape of the branch selected by the parameters, decaying sign.
    pub fn ln_asym_pmf_shape(&self, n: u64) -> Result<T> {
        self.ln_asym_pmf_shape_for(self.regime(), n, ExponentSign::Decaying)
    }

    /// Constant-free asymptotic shape of the pmf (γ > 0, n ≥ 2).
    pub fn asym_pmf_shape(&self, n: u64) -> Result<T> {
        self.ln_asym_pmf_shape(n).map(T::exp)
    }

    /// ln of the probability the asymptote describes: the conditional pmf for
    /// γ > 1, the plain pmf otherwise.
    fn ln_target(&self, n: u64) -> Result<T> {
        if self.regime() == RegimeTag::Improper {
            self.ln_conditional_pmf(n)
        } else {
            Ok(self.ln_pmf(n))
        }
    }

    fn estimate_for(&self, branch: RegimeTag, grid: &[u64], sign: ExponentSign) -> Result<ConstantEstimate<T>> {
        let mut ln_ratios = Vec::with_capacity(grid.len());
        for &n in grid {
            ln_ratios.push((n, self.ln_target(n)? - self.ln_asym_pmf_shape_for(branch, n, sign)?));
        }
        let upper = &ln_ratios[grid.len() / 2..];
        let hi = upper.iter().map(|r| r.1).fold(T::neg_infinity(), T::max);
        let lo = upper.iter().map(|r| r.1).fold(T::infinity(), T::min);
        let spread = (hi - lo).exp_m1();
        let constant = ln_ratios.last().map(|r| r.1.exp()).unwrap_or_else(T::nan);
        Ok(ConstantEstimate { branch, constant, spread, ln_ratios, warning: None })
    }

    /// Estimate the asymptotic constant on an increasing grid (≥ 3 points,
    /// largest ≥ 1000), working with log ratios throughout.
    pub fn estimate_constant(&self, grid: &[u64]) -> Result<ConstantEstimate<T>> {
        self.estimate_constant_with(grid, ExponentSign::Decaying)
    }

    pub fn estimate_constant_with(&self, grid: &[u64], sign: ExponentSign) -> Result<ConstantEstimate<T>> {
        if grid.len() < 3 || grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] < 2 {
            return Err(ModelError::domain(
                "estimate_constant",
                "grid must hold at least 3 strictly increasing points >= 2",
            ));
        }
        if *grid.last().unwrap() < 1000 {
            return Err(ModelError::domain("estimate_constant", "largest grid point must be >= 1000"));
        }
        let branch = self.regime();
        let fractional = matches!(branch, RegimeTag::FractionalInteger | RegimeTag::FractionalNonInteger);
        let inv = self.gamma.recip();
        let dist = (inv - inv.round()).abs();
        let band = T::lit(NEAR_INTEGER_BAND);
        if fractional && branch == RegimeTag::FractionalNonInteger && dist <= band && inv.round() >= T::lit(2.0) {
            let a = self.estimate_for(RegimeTag::FractionalNonInteger, grid, sign)?;
            let b = self.estimate_for(RegimeTag::FractionalInteger, grid, sign)?;
            let mut best = if b.spread < a.spread { b } else { a };
            best.warning = Some(format!(
                "1/gamma = {inv} is within {dist} of an integer; reporting the {:?} branch, which stabilizes better",
                best.branch
            ));
            return Ok(best);
        }
        self.estimate_for(branch, grid, sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(p: f64, g: f64) -> TrialChainParams<f64> {
        TrialChainParams::new(p, g).unwrap()
    }

    #[test]
    fn geometric_has_no_shape() {
        assert!(chain(0.5, 0.0).asym_pmf_shape(10).is_err());
        assert!(chain(0.5, 0.5).asym_pmf_shape(1).is_err());
    }

    #[test]
    fn sibuya_constant_is_one() {
        let c = chain(0.5, 1.0);
        let n = 10_000;
        let ratio = c.pmf(n) / c.asym_pmf_shape(n).unwrap();
        assert!((ratio - 1.0).abs() < 1e-3);
        let est = c.estimate_constant(&[100, 1000, 10_000]).unwrap();
        assert!((est.constant - 1.0).abs() < 1e-3);
        assert!(est.spread < 1e-2);
    }

    #[test]
    fn fractional_branches_stabilize() {
        for &(p, g) in &[(0.5, 0.7), (0.5, 0.5)] {
            let c = chain(p, g);
            let r3 = c.ln_pmf(1000) - c.ln_asym_pmf_shape(1000).unwrap();
            let r4 = c.ln_pmf(10_000) - c.ln_asym_pmf_shape(10_000).unwrap();
            assert!((r4 - r3).exp_m1().abs() < 0.02, "p={p} g={g}");
        }
        let est = chain(0.5, 0.7).estimate_constant(&[1000, 3000, 10_000]).unwrap();
        assert!(est.spread < 0.05);
        assert!(est.warning.is_none());
    }

    #[test]
    fn improper_conditional_constant() {
        let est = chain(0.5, 2.0).estimate_constant(&[1000, 3000, 10_000]).unwrap();
        assert_eq!(est.branch, RegimeTag::Improper);
        assert!(est.constant.is_finite() && est.constant > 0.0);
        assert!(est.spread < 0.05);
    }

    #[test]
    fn growing_sign_diverges() {
        let c = chain(0.5, 0.7);
        let est = c.estimate_constant_with(&[1000, 3000, 10_000], ExponentSign::Growing).unwrap();
        assert!(est.spread > 10.0);
    }

    #[test]
    fn near_integer_reports_both() {
        // 1/γ = 2.004: formally non-integer
        let c = chain(0.5, 1.0 / 2.004);
        let est = c.estimate_constant(&[1000, 3000, 10_000]).unwrap();
        assert!(est.warning.is_some());
        assert!(est.spread < 0.05);
    }

    #[test]
    fn grid_validation() {
        let c = chain(0.5, 0.7);
        assert!(c.estimate_constant(&[10, 100]).is_err());
        assert!(c.estimate_constant(&[10, 100, 500]).is_err());
        assert!(c.estimate_constant(&[10, 1000, 100]).is_err());
    }
}
