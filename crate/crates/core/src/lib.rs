//! Recommendation/novelty urn model of web site visits.
//!
//! Users either follow recommendations, picking a site with probability
//! proportional to its current number of visitors, or, with probability
//! `ν`, discover a new site on their own. The number of unique visitors
//! per site then follows a Yule distribution with exponent
//! `α = (2 - ν) / (1 - ν)`.
//!
//! - [`yule`]: the closed-form distribution, the `ν ↔ α` mapping and an
//!   exact sampler.
//! - [`urn`]: the Monte Carlo simulator and an exact first-site oracle.
//! - [`estimator`]: log-log regression, Yule maximum likelihood, rank
//!   tables and Zipf fits.
//! - [`traces`]: access-log parsing and unique-visitor counting.
//! - [`cli`]: the `novelty` command line.
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability.

pub mod cli;
pub mod error;
pub mod estimator;
pub mod format;
pub mod histogram;
pub mod rng;
pub mod special;
pub mod traces;
pub mod urn;
pub mod yule;

pub use error::{Error, Result};
pub use estimator::{FitMethod, FitResult, NuImplied, RankTable};
pub use histogram::VisitHistogram;
pub use special::log_gamma;
pub use traces::{FormatSpec, TimeWindow, TraceRecord, TraceSummary};
pub use urn::{SimConfig, UrnState};
pub use yule::{alpha_from_nu, nu_from_alpha, NoveltyRate, PowerExponent, YuleDistribution};
