use citemodel::hirsch::simulate_tally;
use citemodel::montecarlo::{par_histogram, z_score};
use citemodel::{
    AuthorModel, AuthorSampler, ChainSampler, CitationCountY, Hirsch, HirschCaps, HirschMode, SampleOutcome, TrialChain,
};

// 99.9% quantile of chi-square with 20 degrees of freedom
const CHI2_20_999: f64 = 45.31;

/// Pearson chi-square over cells 1..=20 plus one pooled cell for the rest.
fn chi2_first_20(chain: &TrialChain, count: u64, seed: u64, literal: bool) -> f64 {
    // the literal loop runs to the cap on every censored draw
    let cap = if literal { 1000 } else { 1_000_000 };
    let sampler = ChainSampler::new(*chain, cap);
    let h = par_histogram(count, seed, 21, |rng| {
        let o = if literal { chain.sample(rng, cap) } else { sampler.sample(rng) };
        o.finite()
    });
    let mut stat = 0.0;
    let mut mass = 0.0;
    for n in 1..=20 {
        let p = chain.pmf(n as u64);
        mass += p;
        let e = p * count as f64;
        stat += (h.counts[n] as f64 - e).powi(2) / e;
    }
    let e = (1.0 - mass) * count as f64;
    stat += (h.overflow as f64 - e).powi(2) / e;
    stat
}

#[test]
fn chain_sampler_matches_pmf() {
    for (gamma, seed) in [(0.0, 11), (0.5, 12), (1.0, 13)] {
        let chain = TrialChain::new(0.5, gamma).unwrap();
        let stat = chi2_first_20(&chain, 1_000_000, seed, false);
        println!("gamma = {gamma}: chi2 = {stat:.2}");
        assert!(stat < CHI2_20_999, "gamma = {gamma}: chi2 = {stat}");
    }
}

#[test]
fn bernoulli_loop_matches_pmf() {
    for (gamma, seed) in [(0.5, 21), (1.0, 22), (2.0, 23)] {
        let chain = TrialChain::new(0.3, gamma).unwrap();
        let stat = chi2_first_20(&chain, 200_000, seed, true);
        assert!(stat < CHI2_20_999, "gamma = {gamma}: chi2 = {stat}");
    }
}

#[test]
fn first_trial_success_rate() {
    let chain = TrialChain::new(0.5, 0.0).unwrap();
    let sampler = ChainSampler::new(chain, 1000);
    let count = 1_000_000;
    let h = par_histogram(count, 31, 2, |rng| sampler.sample(rng).finite());
    let z = z_score(h.freq(1), 0.5, count);
    assert!(z.abs() < 4.0, "P(X = 1): freq {}, z = {z}", h.freq(1));
}

#[test]
fn censoring_matches_survival_at_cap() {
    let chain = TrialChain::new(0.2, 1.5).unwrap();
    let cap = 10_000;
    let sampler = ChainSampler::new(chain, cap);
    let mass = chain.improper_mass();
    let censor = sampler.censor_prob();
    // P{cap < X < inf} is below p/((gamma - 1) sqrt(cap)) up to a constant near 1
    assert!(censor >= mass);
    assert!(censor - mass <= 1.01 * 0.2 / (0.5 * (cap as f64).sqrt()), "{censor} vs {mass}");

    let count = 500_000;
    let h = par_histogram(count, 41, 1, |rng| match sampler.sample(rng) {
        SampleOutcome::Finite(_) => Some(0),
        SampleOutcome::Censored(c) => {
            assert_eq!(c, cap);
            None
        }
    });
    let frac = h.overflow as f64 / count as f64;
    let z = z_score(frac, censor, count);
    assert!(z.abs() < 4.0, "censored {frac} vs {censor}: z = {z}");
}

#[test]
fn author_zero_citations() {
    for (p, q, seed) in [(0.5, 0.5, 51), (0.2, 0.8, 52), (0.8, 0.2, 53)] {
        let m = AuthorModel::new(p, q).unwrap();
        let sampler = AuthorSampler::new(m, 1_000_000);
        let count = 400_000;
        let h = par_histogram(count, seed, 1, |rng| match sampler.sample(rng) {
            CitationCountY::Count(y) => Some(y),
            CitationCountY::Censored(_) => None,
        });
        let want = m.pmf(0).unwrap();
        let z = z_score(h.freq(0), want, count);
        assert!(z.abs() < 4.0, "(p, q) = ({p}, {q}): P(Y = 0) freq {} vs {want}, z = {z}", h.freq(0));
    }
}

#[test]
fn hirsch_simulation_modes() {
    let m = Hirsch::new(0.5, 0.5).unwrap();
    let caps = HirschCaps { max_papers: 10_000, max_citations: 100_000 };
    let paper = simulate_tally(m, HirschMode::PaperEvent, caps, 200_000, 61, 12);
    let tv_paper = paper.total_variation(&m);
    let truth = simulate_tally(m, HirschMode::TrueHIndex, caps, 200_000, 61, 12);
    let tv_true = truth.total_variation(&m);
    println!("total variation to the analytic law: paper event {tv_paper:.4}, true h-index {tv_true:.4}");
    println!("paper-event no-match fraction {:.4}", paper.no_match as f64 / paper.draws as f64);
    assert!(tv_paper < 0.01, "{tv_paper}");
    assert_eq!(truth.no_match, 0);
    // identical streams: both modes see the same authors, and h = 0 means no papers in either
    assert_eq!(paper.counts[0], truth.counts[0]);
    let z = z_score(paper.freq(0), m.pmf(0), paper.draws);
    assert!(z.abs() < 4.0, "P(H = 0): z = {z}");
}
