//! Closed-form visitor-count distribution of the urn model.
//!
//! A site's unique-visitor count follows the Yule law
//!
//! ```text
//! P(n) = (α - 1) Γ(α) Γ(n) / Γ(n + α),     n = 1, 2, ...
//! ```
//!
//! with exponent `α = (2 - ν) / (1 - ν)` set by the novelty rate `ν`.
//! Everything is evaluated in log space so counts in the millions do not
//! overflow the gamma ratio.

use std::io::{self, Write};

use rand::RngCore;

use crate::error::{domain, Error, Result};
use crate::format::sig12;
use crate::rng::open_unit;
use crate::special::{ln_gamma_pos, ln_gamma_ratio};

/// Probability per step that a visit goes to a never-before-seen site.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct NoveltyRate(f64);

impl NoveltyRate {
    pub fn new(nu: f64) -> Result<Self> {
        if (0.0..1.0).contains(&nu) {
            Ok(Self(nu))
        } else {
            domain(format!("novelty rate must lie in [0, 1), got {nu}"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Power-law exponent of the visitor distribution; always `> 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PowerExponent(f64);

impl PowerExponent {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 1.0 && alpha.is_finite() {
            Ok(Self(alpha))
        } else {
            domain(format!("power exponent must be finite and > 1, got {alpha}"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `α(ν) = (2 - ν) / (1 - ν)`.
pub fn alpha_from_nu(nu: NoveltyRate) -> PowerExponent {
    let nu = nu.0;
    PowerExponent((2.0 - nu) / (1.0 - nu))
}

/// Inverse of [`alpha_from_nu`]: `ν = (α - 2) / (α - 1)`.
///
/// Exponents below 2 have no non-negative novelty rate and are reported
/// as [`Error::InconsistentExponent`].
pub fn nu_from_alpha(alpha: PowerExponent) -> Result<NoveltyRate> {
    let a = alpha.0;
    if a < 2.0 {
        return Err(Error::InconsistentExponent { alpha: a });
    }
    Ok(NoveltyRate((a - 2.0) / (a - 1.0)))
}

/// A first moment that may not exist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Moment {
    Finite(f64),
    Divergent,
}

/// Which large-`n` form to use in [`YuleDistribution::tail_approx`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailForm {
    /// `(α - 1) Γ(α) n^-α`, the true asymptote of the pmf.
    #[default]
    Asymptotic,
    /// `Γ(α) n^-α`, without the `(α - 1)` prefactor. Agrees with the
    /// asymptote only at `α = 2`.
    WithoutPrefactor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YuleDistribution {
    alpha: PowerExponent,
    ln_norm: f64,
    ln_gamma_alpha: f64,
}

/// Largest value the sampler will return; reached only for `α` very
/// close to 1 with an unlucky draw.
pub const SAMPLE_CAP: u64 = 1 << 62;

impl YuleDistribution {
    pub fn new(alpha: PowerExponent) -> Self {
        let a = alpha.0;
        let ln_gamma_alpha = ln_gamma_pos(a);
        Self {
            alpha,
            ln_norm: (a - 1.0).ln() + ln_gamma_alpha,
            ln_gamma_alpha,
        }
    }

    pub fn from_nu(nu: NoveltyRate) -> Self {
        Self::new(alpha_from_nu(nu))
    }

    pub fn alpha(&self) -> PowerExponent {
        self.alpha
    }

    /// `ln P(n)`; `n` must be at least 1.
    pub fn ln_pmf(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return domain("visitor count must be >= 1");
        }
        Ok(self.ln_pmf_unchecked(n as f64))
    }

    pub(crate) fn ln_pmf_unchecked(&self, n: f64) -> f64 {
        self.ln_norm - ln_gamma_ratio(n, self.alpha.0)
    }

    pub fn pmf(&self, n: u64) -> Result<f64> {
        self.ln_pmf(n).map(f64::exp)
    }

    /// `ln Pr(N > n) = ln Γ(α) + ln Γ(n + 1) - ln Γ(n + α)`.
    pub fn ln_survival(&self, n: u64) -> f64 {
        if n == 0 {
            return 0.0;
        }
        self.ln_gamma_alpha - ln_gamma_ratio(n as f64 + 1.0, self.alpha.0 - 1.0)
    }

    /// `Pr(N > n)`.
    pub fn survival(&self, n: u64) -> f64 {
        self.ln_survival(n).exp()
    }

    /// `E[N] = (α - 1) / (α - 2)`, divergent for `α <= 2`.
    pub fn mean(&self) -> Moment {
        let a = self.alpha.0;
        if a > 2.0 {
            Moment::Finite((a - 1.0) / (a - 2.0))
        } else {
            Moment::Divergent
        }
    }

    pub fn tail_approx(&self, n: u64, form: TailForm) -> Result<f64> {
        if n == 0 {
            return domain("visitor count must be >= 1");
        }
        let a = self.alpha.0;
        let ln_power = -a * (n as f64).ln();
        Ok(match form {
            TailForm::Asymptotic => (self.ln_norm + ln_power).exp(),
            TailForm::WithoutPrefactor => (self.ln_gamma_alpha + ln_power).exp(),
        })
    }

    /// Inverse-CDF draw: the smallest `n` with `Pr(N > n) < u` for a
    /// uniform `u` in `(0, 1)`.
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> u64 {
        self.quantile(open_unit(rng))
    }

    /// Smallest `n >= 1` with `Pr(N > n) < u`, found by doubling and then
    /// bisection on the survival function.
    pub fn quantile(&self, u: f64) -> u64 {
        debug_assert!(u > 0.0 && u < 1.0);
        let ln_u = u.ln();
        let below = |n: u64| self.ln_survival(n) < ln_u;

        // invariant: !below(lo), below(hi)
        let mut lo = 0u64;
        let mut hi = 1u64;
        while !below(hi) {
            if hi >= SAMPLE_CAP {
                return SAMPLE_CAP;
            }
            lo = hi;
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if below(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// Writes the `n,pmf,ccdf` theory curve for `n = 1..=max_n`.
    pub fn write_theory_table<W: Write>(&self, max_n: u64, mut out: W) -> io::Result<()> {
        writeln!(out, "n,pmf,ccdf")?;
        for n in 1..=max_n {
            let pmf = self.ln_pmf_unchecked(n as f64).exp();
            writeln!(out, "{n},{},{}", sig12(pmf), sig12(self.survival(n)))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn yule(alpha: f64) -> YuleDistribution {
        YuleDistribution::new(PowerExponent::new(alpha).unwrap())
    }

    #[test]
    fn mapping_examples() {
        let a = |nu| alpha_from_nu(NoveltyRate::new(nu).unwrap()).value();
        assert_eq!(a(0.0), 2.0);
        assert!((a(0.5) - 3.0).abs() < 1e-15);
        assert!((a(0.1) - 19.0 / 9.0).abs() < 1e-15);

        let nu = |alpha| nu_from_alpha(PowerExponent::new(alpha).unwrap());
        assert_eq!(nu(2.0).unwrap().value(), 0.0);
        assert!((nu(3.0).unwrap().value() - 0.5).abs() < 1e-15);
        let aol = nu(2.03).unwrap().value();
        assert!((aol - 0.03 / 1.03).abs() < 1e-15 && aol < 0.1);
    }

    #[test]
    fn domain_errors() {
        assert!(NoveltyRate::new(1.0).is_err());
        assert!(NoveltyRate::new(-0.01).is_err());
        assert!(PowerExponent::new(1.0).is_err());
        assert!(matches!(
            nu_from_alpha(PowerExponent::new(1.8).unwrap()),
            Err(Error::InconsistentExponent { .. })
        ));
        assert!(yule(2.0).pmf(0).is_err());
        assert!(yule(2.0).tail_approx(0, TailForm::Asymptotic).is_err());
    }

    #[test]
    fn pmf_examples() {
        assert!((yule(2.0).pmf(1).unwrap() - 0.5).abs() < 1e-15);
        assert!((yule(2.0).pmf(3).unwrap() - 1.0 / 12.0).abs() < 1e-15);
        assert!((yule(3.0).pmf(1).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn survival_examples() {
        assert_eq!(yule(2.5).survival(0), 1.0);
        assert!((yule(2.0).survival(4) - 0.2).abs() < 1e-15);
        assert!((yule(3.0).survival(1) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn survival_matches_partial_sums() {
        // oracle: pmf from the product recurrence, survival as 1 - partial sum
        for &alpha in &[1.5, 2.0, 2.03, 2.5, 3.0, 5.0] {
            let d = yule(alpha);
            let mut cdf = 0.0;
            for n in 1..=60u64 {
                // P(1) = (α-1)/α, P(n+1) = P(n) n / (n + α)
                let p = if n == 1 {
                    (alpha - 1.0) / alpha
                } else {
                    let mut p = (alpha - 1.0) / alpha;
                    for k in 1..n {
                        p *= k as f64 / (k as f64 + alpha);
                    }
                    p
                };
                assert!((d.pmf(n).unwrap() - p).abs() < 1e-14 * p.max(1e-300) + 1e-17);
                cdf += p;
                assert!((d.survival(n) - (1.0 - cdf)).abs() < 1e-13, "alpha={alpha} n={n}");
            }
        }
    }

    #[test]
    fn mean_examples() {
        assert_eq!(yule(3.0).mean(), Moment::Finite(2.0));
        assert_eq!(yule(2.0).mean(), Moment::Divergent);
        assert_eq!(yule(1.5).mean(), Moment::Divergent);
        assert_eq!(yule(4.0).mean(), Moment::Finite(1.5));
    }

    #[test]
    fn tail_forms() {
        let d = yule(2.0);
        let exact = d.pmf(1000).unwrap();
        let approx = d.tail_approx(1000, TailForm::Asymptotic).unwrap();
        assert!((approx / exact - 1.0).abs() < 0.005);
        assert!((d.tail_approx(1, TailForm::Asymptotic).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(
            d.tail_approx(17, TailForm::Asymptotic).unwrap(),
            d.tail_approx(17, TailForm::WithoutPrefactor).unwrap()
        );
        let d3 = yule(3.0);
        let ratio = d3.tail_approx(50, TailForm::Asymptotic).unwrap()
            / d3.tail_approx(50, TailForm::WithoutPrefactor).unwrap();
        assert!((ratio - 2.0).abs() < 1e-12);
    }

    #[test]
    fn quantile_hand_trace() {
        // survival(1) = 1/2 < 0.6 while survival(0) = 1
        assert_eq!(yule(2.0).quantile(0.6), 1);
        // survival(n) = 1/(n+1) at α = 2: u = 0.3 needs n + 1 > 3.33
        assert_eq!(yule(2.0).quantile(0.3), 3);
        assert_eq!(yule(2.0).quantile(0.25), 4);
    }

    #[test]
    fn sampler_mean_at_alpha_three() {
        let d = yule(3.0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let n = 100_000;
        let xs: Vec<f64> = (0..n).map(|_| d.sample(&mut rng) as f64).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let se = (var / n as f64).sqrt();
        assert!((mean - 2.0).abs() < 3.0 * se, "mean={mean} se={se}");
    }

    #[test]
    fn theory_table_rows() {
        let mut buf = Vec::new();
        yule(3.0).write_theory_table(2, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "n,pmf,ccdf\n1,0.666666666667,0.333333333333\n2,0.166666666667,0.166666666667\n");
    }
}
