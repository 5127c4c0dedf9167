use statrs::distribution::{ContinuousCDF, StudentsT};

use super::{FitMethod, FitResult, NuImplied};
use crate::error::{domain, Error, Result};
use crate::histogram::VisitHistogram;

/// How histogram counts become points on the log-log plot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Binning {
    /// One point per distinct `n`.
    Raw,
    /// Geometric bins of ratio 2 starting at `n_min`; each bin's count is
    /// divided by its width and plotted at the geometric mean of its
    /// smallest and largest member.
    #[default]
    Logarithmic,
}

/// Ordinary least squares `y = intercept + slope · x`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LineFit {
    pub slope: f64,
    pub slope_stderr: f64,
    pub r_squared: f64,
    pub p_value: f64,
}

pub(crate) fn regress(points: &[(f64, f64)]) -> Result<LineFit> {
    let m = points.len();
    if m < 3 {
        return Err(Error::InsufficientData(format!(
            "need at least 3 points for a regression, have {m}"
        )));
    }
    let mf = m as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / mf;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / mf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::InsufficientData("all points share one abscissa".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let sse: f64 = points
        .iter()
        .map(|&(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let df = mf - 2.0;
    let slope_stderr = (sse / df / sxx).sqrt();
    let r_squared = if syy > 0.0 { (1.0 - sse / syy).clamp(0.0, 1.0) } else { 1.0 };
    let p_value = if slope_stderr > 0.0 {
        let t = (slope / slope_stderr).abs();
        let dist = StudentsT::new(0.0, 1.0, df).expect("df >= 1");
        (2.0 * dist.sf(t)).min(1.0)
    } else if slope != 0.0 {
        0.0
    } else {
        1.0
    };
    Ok(LineFit {
        slope,
        slope_stderr,
        r_squared,
        p_value,
    })
}

/// `(ln n, ln density)` points for sites with `n >= n_min`. Density is the
/// fraction of those sites per unit of `n`. Empty bins are dropped.
pub fn loglog_points(hist: &VisitHistogram, n_min: u64, binning: Binning) -> Vec<(f64, f64)> {
    let used: Vec<(u64, u64)> = hist.iter().filter(|&(n, _)| n >= n_min).collect();
    let total: u64 = used.iter().map(|p| p.1).sum();
    if total == 0 {
        return Vec::new();
    }
    let total = total as f64;
    match binning {
        Binning::Raw => used
            .iter()
            .map(|&(n, c)| ((n as f64).ln(), (c as f64 / total).ln()))
            .collect(),
        Binning::Logarithmic => {
            let mut points = Vec::new();
            let mut lo = n_min;
            let mut it = used.iter().peekable();
            while it.peek().is_some() {
                let hi = lo.saturating_mul(2); // exclusive
                let mut count = 0u64;
                while let Some(&&(n, c)) = it.peek() {
                    if n >= hi {
                        break;
                    }
                    count += c;
                    it.next();
                }
                if count > 0 {
                    let width = (hi - lo) as f64;
                    let centre = ((lo as f64) * ((hi - 1) as f64)).sqrt();
                    points.push((centre.ln(), (count as f64 / width / total).ln()));
                }
                lo = hi;
            }
            points
        }
    }
}

/// Least-squares slope of the log-log frequency plot over `n >= n_min`.
/// `alpha` is the slope magnitude; the p-value is the two-sided t-test of
/// the slope against zero with `points - 2` degrees of freedom.
pub fn fit_ols_loglog(hist: &VisitHistogram, n_min: u64, binning: Binning) -> Result<FitResult> {
    if n_min == 0 {
        return domain("n_min must be >= 1");
    }
    let points = loglog_points(hist, n_min, binning);
    let line = regress(&points)?;
    let alpha = -line.slope;
    let sample_size = hist.iter().filter(|&(n, _)| n >= n_min).map(|p| p.1).sum();
    Ok(FitResult {
        method: FitMethod::OlsLogLog,
        alpha,
        alpha_stderr: line.slope_stderr,
        r_squared: Some(line.r_squared),
        p_value: Some(line.p_value),
        n_min,
        nu_implied: NuImplied::from_alpha(alpha),
        sample_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regression_on_a_known_line() {
        let pts: Vec<_> = (0..10).map(|i| (i as f64, 3.0 - 2.0 * i as f64)).collect();
        let fit = regress(&pts).unwrap();
        assert!((fit.slope + 2.0).abs() < 1e-12);
        assert!(fit.slope_stderr < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.p_value, 0.0);
    }

    #[test]
    fn regression_p_value_matches_reference() {
        // scipy.stats.linregress([1,2,3,4,5], [2,1,4,3,5])
        let pts = [(1.0, 2.0), (2.0, 1.0), (3.0, 4.0), (4.0, 3.0), (5.0, 5.0)];
        let fit = regress(&pts).unwrap();
        assert!((fit.slope - 0.8).abs() < 1e-12);
        assert!((fit.slope_stderr - 0.346_410_161_513_775_4).abs() < 1e-12);
        assert!((fit.r_squared - 0.64).abs() < 1e-12);
        assert!((fit.p_value - 0.104_088_038_661_827_78).abs() < 1e-9, "{}", fit.p_value);
    }

    #[test]
    fn log_bins_pool_and_normalize() {
        let hist: VisitHistogram = [(1, 8), (2, 4), (3, 4), (5, 2), (7, 2)].into_iter().collect();
        let pts = loglog_points(&hist, 1, Binning::Logarithmic);
        // bins [1,2), [2,4), [4,8) with totals 8, 8, 4 out of 20
        assert_eq!(pts.len(), 3);
        let expect: [(f64, f64); 3] = [(1.0, 8.0 / 20.0), (6f64.sqrt(), 8.0 / 2.0 / 20.0), (28f64.sqrt(), 4.0 / 4.0 / 20.0)];
        for (p, e) in pts.iter().zip(expect) {
            assert!((p.0 - e.0.ln()).abs() < 1e-12);
            assert!((p.1 - e.1.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_bins_are_skipped() {
        let hist: VisitHistogram = [(1, 100), (2, 20), (100, 1)].into_iter().collect();
        let pts = loglog_points(&hist, 1, Binning::Logarithmic);
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|p| p.1.is_finite()));
    }

    #[test]
    fn single_point_is_insufficient() {
        let hist: VisitHistogram = [(5, 100)].into_iter().collect();
        for b in [Binning::Raw, Binning::Logarithmic] {
            assert!(matches!(fit_ols_loglog(&hist, 1, b), Err(Error::InsufficientData(_))));
        }
    }
}
