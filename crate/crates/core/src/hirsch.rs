//! Law of the Hirsch index H when an author has a geometric number L of
//! cited papers, each with Sibuya(p) citations.
//!
//! With A(h) = P{paper cited ≥ h times} = Γ(h − p)/(Γ(h)Γ(1 − p)) and
//! ν(h) = (1 − q)A/(q + (1 − q)A), the event "exactly h papers have ≥ h
//! citations, the rest < h" has probability
//! Σ_{l≥h} q(1 − q)^l binom(l, h) A^h (1 − A)^{l−h} = (1 − ν)ν^h.
//! Since ν depends on h these values need not sum to one; see
//! [`HirschParams::normalization_deficit`].

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::montecarlo::par_draws;
use crate::scalar::{CompensatedSum, Scalar};
use crate::trial_chain::{sibuya_ln_tail_closed, sibuya_tail_closed, ChainSampler, SampleOutcome, TrialChainParams};

/// A(h) = P{per-paper citations ≥ h}; 1 for h ≤ 1.
pub fn at_least_prob<T: Scalar>(p: T, h: u64) -> T {
    if h == 0 {
        T::one()
    } else {
        sibuya_tail_closed(p, h)
    }
}

fn ln_at_least_prob<T: Scalar>(p: T, h: u64) -> T {
    if h == 0 {
        T::zero()
    } else {
        sibuya_ln_tail_closed(p, h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HirschMode {
    /// Some h has exactly h papers with ≥ h citations and the rest < h.
    PaperEvent,
    /// Largest h such that at least h papers have ≥ h citations.
    TrueHIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HirschOutcome {
    Index(u64),
    /// PaperEvent only: no h satisfies the event.
    NoMatch,
    /// Paper count above `max_papers`.
    Censored,
}

/// One simulated author.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HirschDraw {
    pub outcome: HirschOutcome,
    /// Papers whose citation count hit `max_citations`.
    pub censored_papers: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HirschCaps {
    pub max_papers: u64,
    pub max_citations: u64,
}

impl Default for HirschCaps {
    fn default() -> Self {
        Self { max_papers: 100_000, max_citations: 1_000_000 }
    }
}

/// Truncated direct sum with a bound on the omitted terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectSum<T> {
    pub value: T,
    /// Upper bound on Σ_{l > l_max}; infinite if the term ratio has not yet
    /// dropped below one.
    pub tail_bound: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HirschParams<T> {
    p: T,
    q: T,
}

impl<T: Scalar> HirschParams<T> {
    pub fn new(p: T, q: T) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q)] {
            if !(v > T::zero() && v < T::one()) {
                return Err(ModelError::domain("hirsch", format!("{name} = {v} must lie in (0, 1)")));
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

    /// (ln ν, ln(1 − ν)) at h ≥ 1.
    fn ln_nu_pair(&self, h: u64) -> (T, T) {
        let q = self.q;
        let ln_a = ln_at_least_prob(self.p, h);
        let ln_w = (-q).ln_1p() + ln_a;
        // ln(q + (1 − q)A)
        let ln_d = q.ln() + (ln_w - q.ln()).exp().ln_1p();
        (ln_w - ln_d, q.ln() - ln_d)
    }

    pub fn nu(&self, h: u64) -> Result<T> {
        if h == 0 {
            return Err(ModelError::domain("nu", "h must be at least 1"));
        }
        Ok(self.ln_nu_pair(h).0.exp())
    }

    /// ln P{H = h}; h = 0 gives ln q.
    pub fn ln_pmf(&self, h: u64) -> T {
        if h == 0 {
            return self.q.ln();
        }
        let (ln_nu, ln_one_minus) = self.ln_nu_pair(h);
        ln_one_minus + T::of_u64(h) * ln_nu
    }

    /// P{H = h} = (1 − ν(h))ν(h)^h, and q at h = 0.
    pub fn pmf(&self, h: u64) -> T {
        self.ln_pmf(h).exp()
    }

    /// Σ_{l=h}^{l_max} q(1 − q)^l binom(l, h) A^h (1 − A)^{l−h}.
    pub fn pmf_direct(&self, h: u64, l_max: u64) -> Result<DirectSum<T>> {
        if l_max < h {
            return Err(ModelError::domain("hirsch_pmf_direct", format!("l_max = {l_max} < h = {h}")));
        }
        let q = self.q;
        let a = at_least_prob(self.p, h);
        let fail = (T::one() - q) * (T::one() - a);
        let mut term = (q.ln() + T::of_u64(h) * ((-q).ln_1p() + ln_at_least_prob(self.p, h))).exp();
        let mut acc = CompensatedSum::new();
        for l in h..=l_max {
            acc.add(term);
            // t_{l+1}/t_l = (1 − q)(1 − A)(l + 1)/(l + 1 − h)
            term = term * fail * T::of_u64(l + 1) / T::of_u64(l + 1 - h);
        }
        let ratio = fail * T::of_u64(l_max + 2) / T::of_u64(l_max + 2 - h);
        let tail_bound = if term == T::zero() {
            T::zero()
        } else if ratio < T::one() {
            term / (T::one() - ratio)
        } else {
            T::infinity()
        };
        Ok(DirectSum { value: acc.value(), tail_bound })
    }

    /// (h, ln P{H = h}/(h ln h)) over an increasing grid with min ≥ 2.
    pub fn log_tail_diagnostic(&self, grid: &[u64]) -> Result<Vec<(u64, T)>> {
        if grid.is_empty() || grid[0] < 2 || grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ModelError::domain("log_tail_diagnostic", "grid must be strictly increasing with min ≥ 2"));
        }
        Ok(grid
            .iter()
            .map(|&h| {
                let hf = T::of_u64(h);
                (h, self.ln_pmf(h) / (hf * hf.ln()))
            })
            .collect())
    }

    /// 1 − q − Σ_{h=1}^{h_max} P{H = h}.
    pub fn normalization_deficit(&self, h_max: u64) -> Result<T> {
        if h_max == 0 {
            return Err(ModelError::domain("normalization_deficit", "h_max must be at least 1"));
        }
        let mut acc = CompensatedSum::new();
        acc.add(T::one() - self.q);
        for h in 1..=h_max {
            acc.add(-self.pmf(h));
        }
        Ok(acc.value())
    }
}

/// Classifies a citation multiset (sorted descending).
fn classify(sorted_desc: &[u64], mode: HirschMode) -> HirschOutcome {
    let l = sorted_desc.len() as u64;
    match mode {
        HirschMode::TrueHIndex => {
            let h = sorted_desc.iter().enumerate().take_while(|&(i, &c)| c > i as u64).count();
            HirschOutcome::Index(h as u64)
        }
        HirschMode::PaperEvent => {
            // #{c ≥ h} is non-increasing in h, so a fixed point is unique
            for h in 0..=l {
                let at_least = sorted_desc.iter().take_while(|&&c| c >= h).count() as u64;
                if at_least == h {
                    return HirschOutcome::Index(h);
                }
                if at_least < h {
                    break;
                }
            }
            HirschOutcome::NoMatch
        }
    }
}

/// Draws L ~ geometric(q) papers and their Sibuya(p) citation counts, then
/// classifies the multiset by `mode`.
///
/// A paper reaching `max_citations` is counted in `censored_papers` and kept
/// at the cap; the outcome is unaffected whenever the cap is at least L.
#[derive(Debug, Clone)]
pub struct HirschSimulator {
    q: f64,
    mode: HirschMode,
    caps: HirschCaps,
    citations: ChainSampler<f64>,
}

impl HirschSimulator {
    pub fn new(params: HirschParams<f64>, mode: HirschMode, caps: HirschCaps) -> Self {
        let sib = TrialChainParams::sibuya(params.p()).expect("validated p");
        Self { q: params.q(), mode, caps, citations: ChainSampler::new(sib, caps.max_citations) }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> HirschDraw {
        let u = 1.0 - rng.random::<f64>();
        let l = (u.ln() / (-self.q).ln_1p()).floor();
        if l > self.caps.max_papers as f64 {
            return HirschDraw { outcome: HirschOutcome::Censored, censored_papers: 0 };
        }
        let mut censored_papers = 0;
        let mut counts: Vec<u64> = (0..l as u64)
            .map(|_| match self.citations.sample(rng) {
                SampleOutcome::Finite(c) => c,
                SampleOutcome::Censored(c) => {
                    censored_papers += 1;
                    c
                }
            })
            .collect();
        counts.sort_unstable_by(|a, b| b.cmp(a));
        HirschDraw { outcome: classify(&counts, self.mode), censored_papers }
    }
}

/// Tallies of a simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HirschTally {
    pub draws: u64,
    /// counts[h] for h < counts.len().
    pub counts: Vec<u64>,
    /// Index outcomes at or beyond counts.len().
    pub beyond: u64,
    pub no_match: u64,
    pub censored: u64,
    pub censored_papers: u64,
}

impl HirschTally {
    pub fn freq(&self, h: usize) -> f64 {
        self.counts[h] as f64 / self.draws as f64
    }

    /// ½ Σ_h |freq(h) − pmf(h)| over the tabulated cells plus the untabulated
    /// mass on both sides.
    pub fn total_variation(&self, params: &HirschParams<f64>) -> f64 {
        let mut tv = 0.0;
        let mut model_mass = 0.0;
        for h in 0..self.counts.len() {
            let p = params.pmf(h as u64);
            model_mass += p;
            tv += (self.freq(h) - p).abs();
        }
        let rest = (self.beyond + self.no_match + self.censored) as f64 / self.draws as f64;
        tv += (rest - (1.0 - model_mass).max(0.0)).abs();
        0.5 * tv
    }
}

/// `count` simulated authors on seeded parallel streams.
pub fn simulate_tally(
    params: HirschParams<f64>,
    mode: HirschMode,
    caps: HirschCaps,
    count: u64,
    seed: u64,
    cells: usize,
) -> HirschTally {
    let sim = HirschSimulator::new(params, mode, caps);
    let draws = par_draws(count, seed, |rng| sim.sample(rng));
    let mut t = HirschTally {
        draws: count,
        counts: vec![0; cells],
        beyond: 0,
        no_match: 0,
        censored: 0,
        censored_papers: 0,
    };
    for d in draws {
        t.censored_papers += d.censored_papers;
        match d.outcome {
            HirschOutcome::Index(h) if (h as usize) < cells => t.counts[h as usize] += 1,
            HirschOutcome::Index(_) => t.beyond += 1,
            HirschOutcome::NoMatch => t.no_match += 1,
            HirschOutcome::Censored => t.censored += 1,
        }
    }
    t
}
