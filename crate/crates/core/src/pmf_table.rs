use serde::{Deserialize, Serialize};

use crate::scalar::{CompensatedSum, Scalar};

/// Probabilities for a contiguous run of support points, kept in log space,
/// plus the log of the mass lying beyond the last point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PmfTable<T> {
    /// Support value of the first entry.
    pub offset: u64,
    pub ln_probs: Vec<T>,
    /// ln of the remaining mass after the last entry (−∞ when none).
    pub ln_tail: T,
}

impl<T: Scalar> PmfTable<T> {
    pub fn from_probs(offset: u64, probs: &[T], tail: T) -> Self {
        Self { offset, ln_probs: probs.iter().map(|p| p.ln()).collect(), ln_tail: tail.ln() }
    }

    pub fn len(&self) -> usize {
        self.ln_probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ln_probs.is_empty()
    }

    /// Support value of the last entry.
    pub fn last_index(&self) -> u64 {
        self.offset + self.ln_probs.len() as u64 - 1
    }

    pub fn prob(&self, n: u64) -> Option<T> {
        n.checked_sub(self.offset)
            .and_then(|i| self.ln_probs.get(i as usize))
            .map(|l| l.exp())
    }

    pub fn ln_prob(&self, n: u64) -> Option<T> {
        n.checked_sub(self.offset).and_then(|i| self.ln_probs.get(i as usize)).copied()
    }

    pub fn tail(&self) -> T {
        self.ln_tail.exp()
    }

    /// (support value, probability) pairs.
    pub fn iter(&self) -> impl Iterator<Item = (u64, T)> + '_ {
        self.ln_probs.iter().enumerate().map(move |(i, l)| (self.offset + i as u64, l.exp()))
    }

    /// Compensated Σ probabilities + tail.
    pub fn total(&self) -> T {
        let mut acc: CompensatedSum<T> = self.ln_probs.iter().map(|l| l.exp()).collect();
        acc.add(self.tail());
        acc.value()
    }
}
