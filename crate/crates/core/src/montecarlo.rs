//! Seeded, reproducible Monte Carlo streams.
//!
//! Stream derivation: `ChaCha8Rng::seed_from_u64(seed)` followed by
//! `set_stream(index)`. Bulk runs split the draw count into chunks of
//! [`CHUNK`] draws and give chunk i stream i, so the output is the same for
//! any number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Draws per stream in [`par_draws`].
pub const CHUNK: u64 = 1 << 16;

/// Human-readable form of the derivation rule, echoed in CLI diagnostics.
pub const STREAM_DERIVATION: &str =
    "ChaCha8Rng::seed_from_u64(seed).set_stream(chunk_index), 65536 draws per chunk";

pub type StreamRng = ChaCha8Rng;

/// Independent stream `index` under `master_seed`.
pub fn stream_rng(master_seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// `count` draws of `draw`, chunked across streams and run in parallel; the
/// result order is draw order.
pub fn par_draws<O, F>(count: u64, master_seed: u64, draw: F) -> Vec<O>
where
    O: Send,
    F: Fn(&mut StreamRng) -> O + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    let parts: Vec<Vec<O>> = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(master_seed, i);
            let n = CHUNK.min(count - i * CHUNK);
            (0..n).map(|_| draw(&mut rng)).collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// Parallel histogram of `count` draws over cells 0..cells; draws mapped to
/// `None` or beyond the last cell are tallied as overflow.
pub fn par_histogram<F>(count: u64, master_seed: u64, cells: usize, draw: F) -> Histogram
where
    F: Fn(&mut StreamRng) -> Option<u64> + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(master_seed, i);
            let n = CHUNK.min(count - i * CHUNK);
            let mut h = Histogram::new(cells);
            for _ in 0..n {
                h.record(draw(&mut rng));
            }
            h
        })
        .reduce(|| Histogram::new(cells), Histogram::merge)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    pub counts: Vec<u64>,
    pub overflow: u64,
    pub total: u64,
}

impl Histogram {
    pub fn new(cells: usize) -> Self {
        Self { counts: vec![0; cells], overflow: 0, total: 0 }
    }

    pub fn record(&mut self, v: Option<u64>) {
        self.total += 1;
        match v.and_then(|v| usize::try_from(v).ok()).filter(|&v| v < self.counts.len()) {
            Some(i) => self.counts[i] += 1,
            None => self.overflow += 1,
        }
    }

    pub fn merge(mut self, other: Histogram) -> Histogram {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.overflow += other.overflow;
        self.total += other.total;
        self
    }

    pub fn freq(&self, cell: usize) -> f64 {
        self.counts[cell] as f64 / self.total as f64
    }
}

/// (observed − p)/SE for an observed frequency over `n` Bernoulli trials.
pub fn z_score(observed: f64, p: f64, n: u64) -> f64 {
    let se = (p * (1.0 - p) / n as f64).sqrt();
    if se == 0.0 {
        if observed == p {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (observed - p) / se
    }
}
