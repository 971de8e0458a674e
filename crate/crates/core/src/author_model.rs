//! Total citations of one author.
//!
//! The pgf is ℛ(z) = 𝒫(Q(z)) with 𝒫(z) = 1 − (1 − z)^p the Sibuya pgf and
//! Q(z) = q/(1 − (1 − q)z) the geometric pgf, so
//! ℛ(z) = 1 − (1 − q)^p (1 − z)^p (1 − (1 − q)z)^{−p}. Coefficients are
//! available through four independent routes:
//!
//! * the terminating ₂F₁ closed form (default for s ≤ 150),
//! * a three-term recurrence from (1 − z)(1 − xz) f′ = p(x − 1) f with
//!   x = 1 − q (default beyond 150, and for whole tables),
//! * convolution of the two binomial expansions ([`AuthorModelParams::pmf_oracle`]),
//! * composition of the Taylor series of 𝒫 about q with Q − q
//!   ([`AuthorModelParams::pmf_by_composition`]).

use rand::distr::Distribution;
use rand::Rng;
use rand_distr::{Gamma, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::pmf_table::PmfTable;
use crate::scalar::{CompensatedSum, Scalar};
use crate::specfun::{gen_binomial, hyp2f1_terminating_checked, series_compose, PowerSeries, CROSS_CHECK_MIN_S};
use crate::trial_chain::{ChainSampler, SampleOutcome, TrialChainParams};

/// Above this s the default evaluation leaves the ₂F₁ route.
pub const HYPERGEOMETRIC_MAX_S: u64 = 150;

/// Relative disagreement between the two ₂F₁ summations that counts as
/// unstable.
pub const INSTABILITY_THRESHOLD: f64 = 1e-8;

/// q(1 − q)^k: probability of k cited papers.
pub fn paper_count_pmf<T: Scalar>(q: T, k: u64) -> T {
    q * (T::one() - q).powf(T::of_u64(k))
}

/// Coefficients of Q(z) = q/(1 − (1 − q)z) up to z^order.
pub fn paper_count_series<T: Scalar>(q: T, order: usize) -> PowerSeries<T> {
    PowerSeries::new((0..=order as u64).map(|k| paper_count_pmf(q, k)).collect())
}

/// (p, q): per-paper base probability and rejection probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuthorModelParams<T> {
    p: T,
    q: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuthorPmfMethod {
    /// ₂F₁ up to s = 150, recurrence beyond.
    Default,
    /// ₂F₁ for every s; errors if its two summations disagree.
    Hypergeometric,
    Recurrence,
    /// Binomial-expansion convolution.
    Oracle,
}

/// Total citations Y, or `Censored` when the simulation hit its cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CitationCountY {
    Count(u64),
    Censored(u64),
}

impl CitationCountY {
    pub fn count(self) -> Option<u64> {
        match self {
            CitationCountY::Count(n) => Some(n),
            CitationCountY::Censored(_) => None,
        }
    }
}

impl<T: Scalar> AuthorModelParams<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q)] {
            if !(v > T::zero() && v < T::one()) {
                return Err(ModelError::domain("author_model", format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        self.q
    }

    /// (1 − q)^p.
    fn scale(&self) -> T {
        (T::one() - self.q).powf(self.p)
    }

    /// P{Y = s} by the default route.
    pub fn pmf(&self, s: u64) -> Result<T> {
        self.pmf_with(s, AuthorPmfMethod::Default)
    }

    pub fn pmf_with(&self, s: u64, method: AuthorPmfMethod) -> Result<T> {
        if s == 0 {
            return Ok(T::one() - self.scale());
        }
        match method {
            AuthorPmfMethod::Default if s <= HYPERGEOMETRIC_MAX_S => self.pmf_hypergeometric(s),
            AuthorPmfMethod::Hypergeometric => self.pmf_hypergeometric(s),
            AuthorPmfMethod::Default | AuthorPmfMethod::Recurrence => {
                Ok(*self.recurrence_coeffs(s).last().unwrap())
            }
            AuthorPmfMethod::Oracle => Ok(self.pmf_oracle(s).prob(s).unwrap()),
        }
    }

    /// (1 − q)^p (−1)^{s+1} binom(p, s) ₂F₁(p, −s; 1 + p − s; 1 − q), s ≥ 1.
    fn pmf_hypergeometric(&self, s: u64) -> Result<T> {
        let p = self.p;
        let x = T::one() - self.q;
        let f = hyp2f1_terminating_checked(p, s, T::one() + p - T::of_u64(s), x)?;
        if s > CROSS_CHECK_MIN_S {
            let d = f.relative_disagreement();
            if d > T::lit(INSTABILITY_THRESHOLD) {
                return Err(ModelError::Instability { s, rel_diff: d.to_f64().unwrap_or(f64::NAN) });
            }
        }
        let sign = if s % 2 == 1 { T::one() } else { -T::one() };
        Ok(self.scale() * sign * gen_binomial(p, s) * f.value)
    }

    /// P{Y = s} for s = 0..=s_max via the three-term recurrence.
    fn recurrence_coeffs(&self, s_max: u64) -> Vec<T> {
        let p = self.p;
        let x = T::one() - self.q;
        let scale = self.scale();
        let mut out = Vec::with_capacity(s_max as usize + 1);
        out.push(T::one() - scale);
        // a_n: coefficients of (1 − z)^p (1 − xz)^{−p}
        let (mut prev, mut cur) = (T::one(), -p * self.q);
        for n in 1..=s_max {
            out.push(-scale * cur);
            let nf = T::of_u64(n);
            let next = (((T::one() + x) * nf + p * (x - T::one())) * cur - x * (nf - T::one()) * prev)
                / (nf + T::one());
            prev = cur;
            cur = next;
        }
        out
    }

    /// Table of P{Y = s}, s = 0..=s_max, by the default routes; tail is the
    /// remaining mass 1 − Σ.
    pub fn pmf_table(&self, s_max: u64) -> Result<PmfTable<T>> {
        let mut probs = self.recurrence_coeffs(s_max);
        for s in 1..=s_max.min(HYPERGEOMETRIC_MAX_S) {
            probs[s as usize] = self.pmf_hypergeometric(s)?;
        }
        Ok(table_with_remainder(probs))
    }

    /// Recurrence-only table; O(s_max).
    pub fn pmf_table_recurrence(&self, s_max: u64) -> PmfTable<T> {
        table_with_remainder(self.recurrence_coeffs(s_max))
    }

    /// Coefficients of ℛ(z) from the product of the binomial expansions of
    /// (1 − z)^p and (1 − (1 − q)z)^{−p}. Intended for s_max ≤ 200 (quadratic
    /// cost).
    pub fn pmf_oracle(&self, s_max: u64) -> PmfTable<T> {
        let n = s_max as usize;
        let p = self.p;
        let x = T::one() - self.q;
        let mut sib = Vec::with_capacity(n + 1);
        let mut neg = Vec::with_capacity(n + 1);
        let (mut c, mut d) = (T::one(), T::one());
        for k in 0..=s_max {
            sib.push(c);
            neg.push(d);
            let kf = T::of_u64(k);
            // (−1)^k binom(p, k) and (p)_k x^k / k!
            c = c * (kf - p) / (kf + T::one());
            d = d * (p + kf) / (kf + T::one()) * x;
        }
        let f = PowerSeries::new(sib).mul_truncated(&PowerSeries::new(neg), n);
        let scale = self.scale();
        let probs: Vec<T> = f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(s, &a)| if s == 0 { T::one() - scale } else { -scale * a })
            .collect();
        table_with_remainder(probs)
    }

    /// Coefficients of ℛ by composing the Taylor series of 𝒫 about q with
    /// Q(z) − q (zero constant term, so truncation at s_max is exact).
    pub fn pmf_by_composition(&self, s_max: usize) -> Result<PowerSeries<T>> {
        let p = self.p;
        let q = self.q;
        let one = T::one();
        let scale = self.scale();
        // 𝒫(q + w) = 1 − (1 − q)^p (1 − w/(1 − q))^p
        let mut outer = Vec::with_capacity(s_max + 1);
        outer.push(one - scale);
        let mut c = one;
        for k in 0..s_max as u64 {
            let kf = T::of_u64(k);
            c = c * (kf - p) / (kf + one) / (one - q);
            outer.push(-scale * c);
        }
        let inner: Vec<T> = (0..=s_max as u64)
            .map(|k| if k == 0 { T::zero() } else { paper_count_pmf(q, k) })
            .collect();
        series_compose(&PowerSeries::new(outer), &PowerSeries::new(inner), s_max)
    }

    /// (exact, asymptote) of 1 − ℛ(e^{−t}): the exact value
    /// (1 − q)^p (1 − e^{−t})^p (1 − (1 − q)e^{−t})^{−p} and ((1 − q)/q)^p t^p.
    pub fn laplace_tail(&self, t: T) -> Result<(T, T)> {
        if !(t > T::zero()) {
            return Err(ModelError::domain("laplace_tail", format!("t = {t} must be positive")));
        }
        let p = self.p;
        let q = self.q;
        let one_minus_e = -(-t).exp_m1();
        let denom = q + (T::one() - q) * one_minus_e;
        let exact = self.scale() * (one_minus_e / denom).powf(p);
        let asymptote = ((T::one() - q) / q).powf(p) * t.powf(p);
        Ok((exact, asymptote))
    }
}

fn table_with_remainder<T: Scalar>(probs: Vec<T>) -> PmfTable<T> {
    let total = probs.iter().copied().collect::<CompensatedSum<T>>().value();
    PmfTable::from_probs(0, &probs, (T::one() - total).max(T::zero()))
}

/// Y = G₁ + … + G_X with X Sibuya(p) and Gᵢ geometric on {0, 1, …}.
///
/// X is drawn by inversion (same law as the sequential trial chain); given X,
/// the sum of X geometrics is negative binomial and is drawn directly for
/// X ≤ 32 and as Poisson(Gamma(X, (1 − q)/q)) otherwise.
#[derive(Debug, Clone)]
pub struct AuthorSampler {
    chain: ChainSampler<f64>,
    q: f64,
    cap: u64,
}

const DIRECT_GEOMETRIC_MAX: u64 = 32;

impl AuthorSampler {
    pub fn new(params: AuthorModelParams<f64>, cap: u64) -> Self {
        let sib = TrialChainParams::sibuya(params.p()).expect("validated p");
        Self { chain: ChainSampler::new(sib, cap), q: params.q(), cap }
    }

    fn geometric<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let u = 1.0 - rng.random::<f64>();
        (u.ln() / (-self.q).ln_1p()).floor() as u64
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> CitationCountY {
        let x = match self.chain.sample(rng) {
            SampleOutcome::Finite(x) => x,
            SampleOutcome::Censored(_) => return CitationCountY::Censored(self.cap),
        };
        let y = if x <= DIRECT_GEOMETRIC_MAX {
            (0..x).map(|_| self.geometric(rng)).sum::<u64>()
        } else {
            let lambda = Gamma::new(x as f64, (1.0 - self.q) / self.q)
                .expect("positive shape and scale")
                .sample(rng);
            if lambda > 4.0 * self.cap as f64 + 100.0 {
                return CitationCountY::Censored(self.cap);
            }
            if lambda <= 0.0 {
                0
            } else {
                Poisson::new(lambda).expect("finite rate").sample(rng) as u64
            }
        };
        if y > self.cap {
            CitationCountY::Censored(self.cap)
        } else {
            CitationCountY::Count(y)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::stream_rng;

    fn model(p: f64, q: f64) -> AuthorModelParams<f64> {
        AuthorModelParams::new(p, q).unwrap()
    }

    #[test]
    fn paper_counts() {
        assert_eq!(paper_count_pmf(0.3_f64, 0), 0.3);
        assert!((paper_count_pmf(0.5_f64, 3) - 0.0625).abs() < 1e-16);
        let total: f64 = (0..200).map(|k| paper_count_pmf(0.4, k)).sum();
        assert!((total - 1.0).abs() < 1e-14);
        // pgf reproduced by the coefficient series
        let s = paper_count_series(0.4_f64, 200);
        let z = 0.7;
        assert!((s.eval(z) - 0.4 / (1.0 - 0.6 * z)).abs() < 1e-14);
    }

    #[test]
    fn first_cells() {
        let m = model(0.5, 0.5);
        assert!((m.pmf(0).unwrap() - (1.0 - 0.5_f64.sqrt())).abs() < 1e-15);
        assert!((m.pmf(1).unwrap() - 0.176_776_695_296_636_9).abs() < 1e-15);
        // mpmath Taylor coefficients of ℛ
        let frozen = [0.110_485_434_560_398_05, 0.071_815_532_464_258_73, 0.048_682_644_603_175_39];
        for (i, &v) in frozen.iter().enumerate() {
            assert!((m.pmf(i as u64 + 2).unwrap() - v).abs() < 1e-15);
        }
        let m = model(0.2, 0.8);
        assert!((m.pmf(7).unwrap() - 0.012_971_450_331_675_789).abs() < 1e-15);
        let m = model(0.8, 0.2);
        assert!((m.pmf(30).unwrap() - 0.001_732_587_284_616_805_2).abs() < 1e-15);
        let m = model(0.5, 0.5);
        assert!((m.pmf(100).unwrap() - 2.853_569_825_594_657e-4).abs() < 1e-16);
    }

    #[test]
    fn near_total_rejection() {
        let m = model(0.5, 1.0 - 1e-12);
        assert!((m.pmf(0).unwrap() - 1.0).abs() < 1e-5);
        for s in 1..20 {
            assert!(m.pmf(s).unwrap() < 1e-5);
        }
    }

    #[test]
    fn routes_agree() {
        for &p in &[0.2, 0.5, 0.8] {
            for &q in &[0.2, 0.5, 0.8] {
                let m = model(p, q);
                let oracle = m.pmf_oracle(200);
                let rec = m.pmf_table_recurrence(200);
                let comp = m.pmf_by_composition(200).unwrap();
                for s in 0..=200u64 {
                    let o = oracle.prob(s).unwrap();
                    let scale = o.max(1e-300);
                    assert!((rec.prob(s).unwrap() - o).abs() <= 1e-12 * scale.max(1e-3), "rec p={p} q={q} s={s}");
                    assert!((comp.coeff(s as usize) - o).abs() <= 1e-12, "comp p={p} q={q} s={s}");
                    if s <= 150 {
                        assert!((m.pmf(s).unwrap() - o).abs() <= 1e-12, "hyp p={p} q={q} s={s}");
                    }
                }
            }
        }
    }

    #[test]
    fn hypergeometric_route_beyond_150_is_checked() {
        let m = model(0.5, 0.5);
        let v = m.pmf_with(300, AuthorPmfMethod::Hypergeometric).unwrap();
        let r = m.pmf_with(300, AuthorPmfMethod::Recurrence).unwrap();
        assert!((v / r - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ordering() {
        for &p in &[0.2, 0.5, 0.8] {
            for &q in &[0.2, 0.5, 0.8] {
                let m = model(p, q);
                let t = m.pmf_table(100).unwrap();
                let (y0, y1) = (t.prob(0).unwrap(), t.prob(1).unwrap());
                assert!(y0 > y1, "p={p} q={q}");
                for s in 2..=100 {
                    assert!(y1 > t.prob(s).unwrap(), "p={p} q={q} s={s}");
                }
            }
        }
    }

    #[test]
    fn heavy_tail_and_exponent() {
        let m = model(0.5, 0.5);
        let t = m.pmf_table_recurrence(10_000);
        let mean_to = |s_max: u64| -> f64 { (1..=s_max).map(|s| s as f64 * t.prob(s).unwrap()).sum() };
        assert!(mean_to(10_000) > 2.0 * mean_to(1_000));
        let a = t.prob(1_000).unwrap() * 1_000f64.powf(1.5);
        let b = t.prob(10_000).unwrap() * 10_000f64.powf(1.5);
        assert!((a / b - 1.0).abs() < 0.05);
        // constant ((1 − q)/q)^p p/Γ(1 − p)
        let c = 0.5 / std::f64::consts::PI.sqrt();
        assert!((b / c - 1.0).abs() < 0.01);
    }

    #[test]
    fn laplace_examples() {
        let m = model(0.5, 0.5);
        let (e, a) = m.laplace_tail(1e-3).unwrap();
        assert!((e / a - 1.0).abs() < 1e-3);
        let (e, a) = m.laplace_tail(1e-6).unwrap();
        assert!((e / a - 1.0).abs() < 1e-6);
        let mut last = 0.0;
        for k in -6..2 {
            let (e, _) = m.laplace_tail(10f64.powi(k)).unwrap();
            assert!(e > last && e <= 1.0);
            last = e;
        }
        // 1 − ℛ(0) = (1 − q)^p
        let (e, _) = m.laplace_tail(60.0).unwrap();
        assert!((e - 0.5_f64.sqrt()).abs() < 1e-12);
        assert!(m.laplace_tail(0.0).is_err());
    }

    #[test]
    fn sampler_total_rejection() {
        let s = AuthorSampler::new(model(0.5, 1.0 - 1e-15), 1_000_000_000_000);
        let mut rng = stream_rng(4, 0);
        for _ in 0..1000 {
            assert_eq!(s.sample(&mut rng), CitationCountY::Count(0));
        }
    }
}
