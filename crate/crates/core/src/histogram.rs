//! Unique-visitor histogram: visitor count `n` → number of sites with
//! exactly `n` visitors. Shared by the simulator, the trace reducer and
//! the estimators.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};

use crate::error::{domain, Error, Result};

pub const CSV_HEADER: &str = "n,count";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VisitHistogram {
    entries: BTreeMap<u64, u64>,
}

impl VisitHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a histogram from per-site visitor counts.
    pub fn from_site_counts<I: IntoIterator<Item = u64>>(counts: I) -> Result<Self> {
        let mut hist = Self::new();
        for n in counts {
            hist.add(n, 1)?;
        }
        Ok(hist)
    }

    /// Adds `sites` sites with `n` visitors each. Zero-site additions are
    /// ignored.
    pub fn add(&mut self, n: u64, sites: u64) -> Result<()> {
        if n == 0 {
            return domain("visitor count keys must be >= 1");
        }
        if sites > 0 {
            *self.entries.entry(n).or_insert(0) += sites;
        }
        Ok(())
    }

    pub fn get(&self, n: u64) -> u64 {
        self.entries.get(&n).copied().unwrap_or(0)
    }

    /// `(n, sites)` pairs in ascending `n`.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&n, &c)| (n, c))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct visitor counts present.
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn total_sites(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `Σ n · sites(n)`.
    pub fn total_visits(&self) -> u64 {
        self.iter().map(|(n, c)| n * c).sum()
    }

    pub fn max_n(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    /// Every site count multiplied by `k`.
    pub fn scaled(&self, k: u64) -> Self {
        Self {
            entries: self
                .iter()
                .filter(|_| k > 0)
                .map(|(n, c)| (n, c * k))
                .collect(),
        }
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for (n, c) in self.iter() {
            writeln!(out, "{n},{c}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ascii output")
    }

    /// Reads the `n,count` format. The header is required; repeated `n`
    /// rows are summed.
    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        match lines.next().transpose()? {
            Some(h) if h.trim() == CSV_HEADER => {}
            Some(h) => return Err(Error::Parse(format!("expected header {CSV_HEADER:?}, got {h:?}"))),
            None => return Err(Error::Parse("empty histogram input".into())),
        }
        let mut hist = Self::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: expected \"n,count\", got {line:?}", i + 2));
            let (n, c) = line.split_once(',').ok_or_else(bad)?;
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let c: u64 = c.trim().parse().map_err(|_| bad())?;
            hist.add(n, c).map_err(|_| bad())?;
        }
        Ok(hist)
    }
}

impl FromIterator<(u64, u64)> for VisitHistogram {
    /// Pairs with `n == 0` are dropped.
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut hist = Self::new();
        for (n, c) in iter {
            let _ = hist.add(n, c);
        }
        hist
    }
}
