//! Exponent estimation from visitor-count data.
//!
//! Two estimators for the distribution exponent `α`:
//! [`fit_ols_loglog`], a least-squares line through the log-log
//! frequency plot with `R²` and a slope p-value, and [`fit_mle_yule`], the
//! maximum-likelihood fit of the discrete Yule law. [`rank_table`] and
//! [`fit_zipf`] cover the rank/frequency view of the same data.

mod mle;
mod ols;
mod rank;

use std::fmt;

pub use mle::{fit_mle_yule, yule_log_likelihood, yule_score, ALPHA_MAX, ALPHA_MIN};
pub use ols::{fit_ols_loglog, loglog_points, Binning};
pub use rank::{
    ccdf_points, default_zipf_range, fit_zipf, rank_table, rank_table_from_sites, write_ccdf_csv,
    RankRow, RankTable,
};

use crate::format::sig12;
use crate::yule::{nu_from_alpha, NoveltyRate, PowerExponent};

pub const FIT_HEADER: &str = "method,alpha,stderr,r2,pvalue,n_min,nu_implied,sample_size";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitMethod {
    OlsLogLog,
    MleYule,
}

impl FitMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            FitMethod::OlsLogLog => "ols_loglog",
            FitMethod::MleYule => "mle_yule",
        }
    }
}

/// Novelty rate implied by a fitted exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NuImplied {
    Rate(NoveltyRate),
    /// `α < 2`: no non-negative novelty rate reproduces the exponent.
    Inconsistent,
    /// The fitted quantity is not a distribution exponent (Zipf fits).
    NotApplicable,
}

impl NuImplied {
    pub fn from_alpha(alpha: f64) -> Self {
        match PowerExponent::new(alpha).and_then(nu_from_alpha) {
            Ok(nu) => NuImplied::Rate(nu),
            Err(_) => NuImplied::Inconsistent,
        }
    }

    pub fn rate(self) -> Option<f64> {
        match self {
            NuImplied::Rate(nu) => Some(nu.value()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub method: FitMethod,
    /// Slope magnitude: the distribution exponent, or the Zipf exponent
    /// for rank fits.
    pub alpha: f64,
    pub alpha_stderr: f64,
    pub r_squared: Option<f64>,
    pub p_value: Option<f64>,
    /// Lower cutoff on `n` (or on rank for Zipf fits).
    pub n_min: u64,
    pub nu_implied: NuImplied,
    /// Number of sites (or rank rows) the fit used.
    pub sample_size: u64,
}

impl FitResult {
    /// Smallest tenth strictly above the implied novelty rate, for
    /// statements of the form `nu < 0.1`.
    pub fn nu_upper_bound(&self) -> Option<f64> {
        self.nu_implied.rate().map(tenth_above)
    }
}

pub(crate) fn tenth_above(nu: f64) -> f64 {
    let mut k = (nu * 10.0).floor() as i64 - 1;
    while k as f64 / 10.0 <= nu {
        k += 1;
    }
    k as f64 / 10.0
}

/// The single-line record `method,alpha,stderr,r2,pvalue,n_min,nu_implied,sample_size`;
/// absent statistics are empty fields and an inconsistent `ν` reads
/// `inconsistent`.
impl fmt::Display for FitResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<f64>| v.map(sig12).unwrap_or_default();
        let nu = match self.nu_implied {
            NuImplied::Rate(nu) => sig12(nu.value()),
            NuImplied::Inconsistent => "inconsistent".to_owned(),
            NuImplied::NotApplicable => String::new(),
        };
        write!(
            f,
            "{},{},{},{},{},{},{},{}",
            self.method.as_str(),
            sig12(self.alpha),
            sig12(self.alpha_stderr),
            opt(self.r_squared),
            opt(self.p_value),
            self.n_min,
            nu,
            self.sample_size
        )
    }
}
