use std::io::{self, Write};

use super::ols::regress;
use super::{FitMethod, FitResult, NuImplied};
use crate::error::{domain, Error, Result};
use crate::format::sig12;
use crate::histogram::VisitHistogram;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankRow {
    pub rank: u64,
    pub site_id: Option<String>,
    pub visitors: u64,
}

/// Sites by descending visitor count, ranks `1..=K`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RankTable {
    rows: Vec<RankRow>,
}

impl RankTable {
    pub fn rows(&self) -> &[RankRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `rank,visitors` CSV.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "rank,visitors")?;
        for row in &self.rows {
            writeln!(out, "{},{}", row.rank, row.visitors)?;
        }
        Ok(())
    }
}

/// One row per site. Sites with equal counts are indistinguishable here,
/// so ties need no further ordering.
pub fn rank_table(hist: &VisitHistogram) -> RankTable {
    let mut rows = Vec::with_capacity(hist.total_sites() as usize);
    for (n, c) in hist.iter().rev() {
        for _ in 0..c {
            rows.push(RankRow {
                rank: rows.len() as u64 + 1,
                site_id: None,
                visitors: n,
            });
        }
    }
    RankTable { rows }
}

/// Rank table from named sites; ties are broken by ascending site id.
pub fn rank_table_from_sites<I>(sites: I) -> RankTable
where
    I: IntoIterator<Item = (String, u64)>,
{
    let mut sites: Vec<(String, u64)> = sites.into_iter().filter(|s| s.1 > 0).collect();
    sites.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let rows = sites
        .into_iter()
        .enumerate()
        .map(|(i, (id, visitors))| RankRow {
            rank: i as u64 + 1,
            site_id: Some(id),
            visitors,
        })
        .collect();
    RankTable { rows }
}

/// Ranks `10..=min(1000, K)`.
pub fn default_zipf_range(table_len: usize) -> (u64, u64) {
    (10, (table_len as u64).min(1000))
}

/// Least-squares slope of `ln visitors` against `ln rank` over
/// `rank_min..=rank_max`. The Zipf exponent is reported in `alpha`; it
/// is not a distribution exponent, so no novelty rate is implied.
pub fn fit_zipf(table: &RankTable, rank_min: u64, rank_max: u64) -> Result<FitResult> {
    if rank_min == 0 || rank_min > rank_max {
        return domain(format!("invalid rank range {rank_min}..={rank_max}"));
    }
    if rank_max > table.len() as u64 {
        return Err(Error::InsufficientData(format!(
            "rank_max {rank_max} exceeds table size {}",
            table.len()
        )));
    }
    let points: Vec<(f64, f64)> = table.rows[(rank_min - 1) as usize..rank_max as usize]
        .iter()
        .map(|r| ((r.rank as f64).ln(), (r.visitors as f64).ln()))
        .collect();
    let line = regress(&points)?;
    Ok(FitResult {
        method: FitMethod::OlsLogLog,
        alpha: -line.slope,
        alpha_stderr: line.slope_stderr,
        r_squared: Some(line.r_squared),
        p_value: Some(line.p_value),
        n_min: rank_min,
        nu_implied: NuImplied::NotApplicable,
        sample_size: points.len() as u64,
    })
}

/// `(n, fraction of sites with at least n visitors)` for each `n` present.
pub fn ccdf_points(hist: &VisitHistogram) -> Vec<(u64, f64)> {
    let total = hist.total_sites() as f64;
    let mut remaining = hist.total_sites();
    hist.iter()
        .map(|(n, c)| {
            let point = (n, remaining as f64 / total);
            remaining -= c;
            point
        })
        .collect()
}

/// `n,ccdf` CSV.
pub fn write_ccdf_csv<W: Write>(points: &[(u64, f64)], mut out: W) -> io::Result<()> {
    writeln!(out, "n,ccdf")?;
    for &(n, f) in points {
        writeln!(out, "{n},{}", sig12(f))?;
    }
    Ok(())
}
