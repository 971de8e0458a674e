//! Probability models for citation counts: trial chains with decaying
//! success probabilities (geometric through Sibuya to improper laws), the
//! compound law of an author's total citations, the law of the Hirsch
//! index, and empirical κ = N/h² analysis of citation tables.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix `f64`, which is what the CLI and the acceptance suite use.
//! Samplers draw `f64` uniforms from [`montecarlo`] streams.

pub mod author_model;
pub mod cli;
pub mod error;
pub mod hirsch;
pub mod montecarlo;
pub mod pmf_table;
pub mod scalar;
pub mod scientometrics;
pub mod specfun;
pub mod trial_chain;

pub use author_model::{AuthorModelParams, AuthorPmfMethod, AuthorSampler, CitationCountY};
pub use error::{ModelError, Result};
pub use hirsch::{HirschCaps, HirschMode, HirschOutcome, HirschParams};
pub use pmf_table::PmfTable;
pub use scalar::{CompensatedSum, Scalar};
pub use scientometrics::{AuthorRecord, Fixture, ReportTable};
pub use specfun::PowerSeries;
pub use trial_chain::{ChainSampler, GrowingChainParams, RegimeTag, SampleOutcome, TrialChainParams};

pub type Real = f64;
pub type TrialChain = TrialChainParams<f64>;
pub type GrowingChain = GrowingChainParams<f64>;
pub type AuthorModel = AuthorModelParams<f64>;
pub type Hirsch = HirschParams<f64>;
pub type Series = PowerSeries<f64>;
pub type Table = PmfTable<f64>;
pub type Report = ReportTable<f64>;

pub type TrialChain32 = TrialChainParams<f32>;
pub type AuthorModel32 = AuthorModelParams<f32>;
pub type Hirsch32 = HirschParams<f32>;
pub type Series32 = PowerSeries<f32>;
