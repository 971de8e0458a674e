//! Special functions and truncated power series used throughout the crate.

mod gamma;
mod hypergeometric;
mod series;
mod zeta;

pub use gamma::{gamma_ratio, ln_gamma, ln_gamma_ratio};
pub(crate) use gamma::{ln_gamma_ratio_unchecked, ln_gamma_unchecked};
pub use hypergeometric::{
    gen_binomial, hyp2f1_terminating, hyp2f1_terminating_checked, Hyp2f1Eval, CROSS_CHECK_MIN_S,
};
pub use series::{series_compose, PowerSeries, DEFAULT_ORDER};
pub use zeta::{harmonic_partial_asymptote, power_tail_sum, riemann_zeta};
