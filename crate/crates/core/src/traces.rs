//! Access-log ingestion and unique-visitor counting.
//!
//! A trace is line-oriented text with one visit per line:
//! `user,site[,timestamp]` by default, with the delimiter, column
//! positions and URL handling configurable through [`FormatSpec`].
//! Repeated visits by the same user to the same site collapse to a single
//! unique visitor.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::{self, BufRead, Write};

use crate::error::{domain, Error, Result};
use crate::histogram::VisitHistogram;
use crate::urn::{SimConfig, UrnState};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatSpec {
    pub delimiter: char,
    pub user_column: usize,
    pub site_column: usize,
    /// Column holding integer seconds; a line may omit it.
    pub timestamp_column: Option<usize>,
    /// Reduce the site column from a URL to its lowercased host.
    pub site_is_url: bool,
}

impl Default for FormatSpec {
    fn default() -> Self {
        Self {
            delimiter: ',',
            user_column: 0,
            site_column: 1,
            timestamp_column: Some(2),
            site_is_url: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TraceRecord {
    pub user_id: String,
    pub site_id: String,
    pub timestamp: Option<i64>,
}

/// Lowercased host of a URL with scheme, credentials, port, path, query
/// and fragment removed. Scheme-less input such as `example.com/x` is
/// accepted.
pub fn url_host(url: &str) -> Option<String> {
    let rest = url.split_once("://").map_or(url, |(_, r)| r);
    let authority = rest.split(['/', '?', '#']).next().unwrap_or("");
    let host_port = authority.rsplit_once('@').map_or(authority, |(_, h)| h);
    let host = if host_port.starts_with('[') {
        host_port.split_once(']').map(|(h, _)| &host_port[..h.len() + 1])?
    } else {
        host_port.split(':').next().unwrap_or("")
    };
    (!host.is_empty()).then(|| host.to_ascii_lowercase())
}

impl FormatSpec {
    /// Parses one line; `None` when the line is malformed.
    pub fn parse_line(&self, line: &str) -> Option<TraceRecord> {
        let fields: Vec<&str> = line.split(self.delimiter).map(str::trim).collect();
        let user = *fields.get(self.user_column)?;
        let site = *fields.get(self.site_column)?;
        let site = if self.site_is_url {
            url_host(site)?
        } else {
            site.to_owned()
        };
        if user.is_empty() || site.is_empty() {
            return None;
        }
        let timestamp = match self.timestamp_column.and_then(|c| fields.get(c)) {
            None | Some(&"") => None,
            Some(ts) => Some(ts.parse().ok()?),
        };
        Some(TraceRecord {
            user_id: user.to_owned(),
            site_id: site,
            timestamp,
        })
    }

    pub fn write_record<W: Write>(&self, record: &TraceRecord, mut out: W) -> io::Result<()> {
        let d = self.delimiter;
        match record.timestamp {
            Some(ts) => writeln!(out, "{}{d}{}{d}{ts}", record.user_id, record.site_id),
            None => writeln!(out, "{}{d}{}", record.user_id, record.site_id),
        }
    }
}

/// Line counts from a parse.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseStats {
    /// Nonempty lines seen.
    pub lines: u64,
    pub records: u64,
    pub skipped: u64,
}

impl ParseStats {
    /// Fails when more than half of the nonempty lines were malformed.
    pub fn check(&self) -> Result<()> {
        if self.skipped * 2 > self.lines {
            Err(Error::FormatMismatch {
                skipped: self.skipped,
                lines: self.lines,
            })
        } else {
            Ok(())
        }
    }
}

/// Streaming record iterator. Malformed lines are skipped and counted.
pub struct TraceReader<'a, R> {
    input: R,
    spec: &'a FormatSpec,
    buf: String,
    stats: ParseStats,
}

impl<'a, R: BufRead> TraceReader<'a, R> {
    pub fn new(input: R, spec: &'a FormatSpec) -> Self {
        Self {
            input,
            spec,
            buf: String::new(),
            stats: ParseStats::default(),
        }
    }

    pub fn stats(&self) -> ParseStats {
        self.stats
    }
}

impl<R: BufRead> Iterator for TraceReader<'_, R> {
    type Item = io::Result<TraceRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.input.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e)),
            }
            let line = self.buf.trim_end_matches(['\n', '\r']);
            if line.trim().is_empty() {
                continue;
            }
            self.stats.lines += 1;
            match self.spec.parse_line(line) {
                Some(rec) => {
                    self.stats.records += 1;
                    return Some(Ok(rec));
                }
                None => self.stats.skipped += 1,
            }
        }
    }
}

/// Reads every record into memory. Prefer [`TraceReader`] with
/// [`UniqueVisitorCounter`] for large logs.
pub fn parse_trace<R: BufRead>(input: R, spec: &FormatSpec) -> Result<(Vec<TraceRecord>, ParseStats)> {
    let mut reader = TraceReader::new(input, spec);
    let records = reader.by_ref().collect::<io::Result<Vec<_>>>()?;
    let stats = reader.stats();
    stats.check()?;
    Ok((records, stats))
}

pub fn write_trace<'r, W, I>(records: I, spec: &FormatSpec, mut out: W) -> io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'r TraceRecord>,
{
    for rec in records {
        spec.write_record(rec, &mut out)?;
    }
    Ok(())
}

/// Half-open interval `[start, end)` of timestamps; either side may be
/// open.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TimeWindow {
    start: Option<i64>,
    end: Option<i64>,
}

impl TimeWindow {
    pub fn new(start: Option<i64>, end: Option<i64>) -> Result<Self> {
        if let (Some(s), Some(e)) = (start, end) {
            if s >= e {
                return domain(format!("window start {s} must precede end {e}"));
            }
        }
        Ok(Self { start, end })
    }

    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn is_bounded(&self) -> bool {
        self.start.is_some() || self.end.is_some()
    }

    /// Untimestamped records fall only inside an unbounded window.
    pub fn contains(&self, timestamp: Option<i64>) -> bool {
        match timestamp {
            None => !self.is_bounded(),
            Some(t) => self.start.is_none_or(|s| t >= s) && self.end.is_none_or(|e| t < e),
        }
    }
}

impl std::str::FromStr for TimeWindow {
    type Err = Error;

    /// `start:end`, either side may be empty.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("window must look like start:end, got {s:?}")))?;
        let side = |v: &str| -> Result<Option<i64>> {
            let v = v.trim();
            if v.is_empty() {
                Ok(None)
            } else {
                v.parse()
                    .map(Some)
                    .map_err(|_| Error::Parse(format!("bad window bound {v:?}")))
            }
        };
        TimeWindow::new(side(a)?, side(b)?)
    }
}

/// `users=<U> sites=<S> records=<R> skipped=<K>`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TraceSummary {
    pub users: u64,
    pub sites: u64,
    pub records: u64,
    pub skipped: u64,
}

impl fmt::Display for TraceSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "users={} sites={} records={} skipped={}",
            self.users, self.sites, self.records, self.skipped
        )
    }
}

/// Exact distinct-user sets per site. Memory grows with the number of
/// distinct (user, site) pairs, not with the number of records.
#[derive(Debug, Clone, Default)]
pub struct UniqueVisitorCounter {
    window: TimeWindow,
    user_ids: HashMap<String, u32>,
    user_names: Vec<String>,
    sites: HashMap<String, HashSet<u32>>,
    records: u64,
    timestamped: u64,
}

impl UniqueVisitorCounter {
    pub fn new(window: TimeWindow) -> Self {
        Self {
            window,
            ..Self::default()
        }
    }

    fn intern(&mut self, user: &str) -> u32 {
        if let Some(&id) = self.user_ids.get(user) {
            return id;
        }
        let id = u32::try_from(self.user_names.len()).expect("fewer than 2^32 users");
        self.user_ids.insert(user.to_owned(), id);
        self.user_names.push(user.to_owned());
        id
    }

    pub fn add(&mut self, record: &TraceRecord) {
        self.records += 1;
        if record.timestamp.is_some() {
            self.timestamped += 1;
        }
        if !self.window.contains(record.timestamp) {
            return;
        }
        let user = self.intern(&record.user_id);
        match self.sites.get_mut(record.site_id.as_str()) {
            Some(set) => {
                set.insert(user);
            }
            None => {
                self.sites.insert(record.site_id.clone(), HashSet::from([user]));
            }
        }
    }

    /// Folds in a counter built over another part of the log. Both must
    /// use the same window; the result does not depend on merge order.
    pub fn merge(&mut self, other: UniqueVisitorCounter) {
        debug_assert_eq!(self.window, other.window);
        self.records += other.records;
        self.timestamped += other.timestamped;
        let remap: Vec<u32> = other.user_names.iter().map(|u| self.intern(u)).collect();
        for (site, users) in other.sites {
            let set = self.sites.entry(site).or_default();
            set.extend(users.into_iter().map(|u| remap[u as usize]));
        }
    }

    /// Unique visitors per site id.
    pub fn site_counts(&self) -> impl Iterator<Item = (&str, u64)> + '_ {
        self.sites.iter().map(|(s, u)| (s.as_str(), u.len() as u64))
    }

    pub fn histogram(&self) -> VisitHistogram {
        VisitHistogram::from_site_counts(self.sites.values().map(|u| u.len() as u64))
            .expect("sites are only created with a visitor")
    }

    /// Histogram plus summary. A bounded window over records that carry
    /// no timestamps at all is an error.
    pub fn finish(&self, skipped: u64) -> Result<(VisitHistogram, TraceSummary)> {
        if self.window.is_bounded() && self.timestamped == 0 {
            return Err(Error::WindowInapplicable);
        }
        let users: HashSet<u32> = self.sites.values().flatten().copied().collect();
        let summary = TraceSummary {
            users: users.len() as u64,
            sites: self.sites.len() as u64,
            records: self.records,
            skipped,
        };
        Ok((self.histogram(), summary))
    }
}

/// Unique visitors per site within `window`.
pub fn unique_visitors<'r, I>(records: I, window: TimeWindow) -> Result<(VisitHistogram, TraceSummary)>
where
    I: IntoIterator<Item = &'r TraceRecord>,
{
    let mut counter = UniqueVisitorCounter::new(window);
    for rec in records {
        counter.add(rec);
    }
    counter.finish(0)
}

/// Streams a log through [`TraceReader`] into a [`UniqueVisitorCounter`].
pub fn unique_visitors_from_reader<R: BufRead>(
    input: R,
    spec: &FormatSpec,
    window: TimeWindow,
) -> Result<(VisitHistogram, TraceSummary)> {
    let mut reader = TraceReader::new(input, spec);
    let mut counter = UniqueVisitorCounter::new(window);
    for rec in reader.by_ref() {
        counter.add(&rec?);
    }
    let stats = reader.stats();
    stats.check()?;
    counter.finish(stats.skipped)
}

/// Runs the urn simulation and writes each visit as
/// `u<step>,s<discovery index>,<step>`, one line per step. Every step is a
/// fresh user, so unique-visitor counting recovers the simulator's own
/// histogram exactly.
pub fn synthesize_trace<W: Write>(config: &SimConfig, mut out: W) -> Result<TraceSummary> {
    let mut state = UrnState::new(config);
    writeln!(out, "u1,s1,1")?;
    for t in 2..=config.steps {
        let site = state.step().site() + 1;
        writeln!(out, "u{t},s{site},{t}")?;
    }
    Ok(TraceSummary {
        users: config.steps,
        sites: state.num_sites() as u64,
        records: config.steps,
        skipped: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(u: &str, s: &str) -> TraceRecord {
        TraceRecord {
            user_id: u.into(),
            site_id: s.into(),
            timestamp: None,
        }
    }

    #[test]
    fn url_mode_normalizes_host() {
        let spec = FormatSpec {
            site_is_url: true,
            ..FormatSpec::default()
        };
        let r = spec.parse_line("u1,http://WWW.Example.com:80/page?q=1,100").unwrap();
        assert_eq!(r, TraceRecord { user_id: "u1".into(), site_id: "www.example.com".into(), timestamp: Some(100) });
        assert_eq!(url_host("https://bob:pw@Host.org:8443"), Some("host.org".into()));
        assert_eq!(url_host("example.com/a/b"), Some("example.com".into()));
        assert_eq!(url_host("http://[::1]:8080/x"), Some("[::1]".into()));
        assert_eq!(url_host("http:///path"), None);
    }

    #[test]
    fn timestamp_column_is_optional() {
        let spec = FormatSpec::default();
        assert_eq!(spec.parse_line("u1,siteA"), Some(rec("u1", "siteA")));
        assert_eq!(spec.parse_line("u1,siteA,"), Some(rec("u1", "siteA")));
        assert_eq!(spec.parse_line("u1,siteA,noon"), None);
        assert_eq!(spec.parse_line("u1"), None);
        assert_eq!(spec.parse_line(",siteA"), None);
    }

    #[test]
    fn malformed_lines_are_counted() {
        let text = "u1,a,1\n\nbroken\nu2,b,2\n";
        let (records, stats) = parse_trace(text.as_bytes(), &FormatSpec::default()).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(stats, ParseStats { lines: 3, records: 2, skipped: 1 });

        let text = "x\ny\nu1,a\n";
        assert!(matches!(
            parse_trace(text.as_bytes(), &FormatSpec::default()),
            Err(Error::FormatMismatch { skipped: 2, lines: 3 })
        ));
    }

    #[test]
    fn deduplicates_visits() {
        let (h, s) = unique_visitors(&[rec("u1", "A"), rec("u1", "A"), rec("u1", "A")], TimeWindow::unbounded()).unwrap();
        assert_eq!(h.to_csv_string(), "n,count\n1,1\n");
        assert_eq!((s.users, s.sites, s.records), (1, 1, 3));

        let (h, s) = unique_visitors(&[rec("u1", "A"), rec("u2", "A"), rec("u1", "B")], TimeWindow::unbounded()).unwrap();
        assert_eq!(h.to_csv_string(), "n,count\n1,1\n2,1\n");
        assert_eq!((s.users, s.sites), (2, 2));
        assert_eq!(s.to_string(), "users=2 sites=2 records=3 skipped=0");
    }

    #[test]
    fn windows() {
        let w: TimeWindow = "10:20".parse().unwrap();
        assert!(w.contains(Some(10)) && w.contains(Some(19)));
        assert!(!w.contains(Some(20)) && !w.contains(None));
        assert!(":5".parse::<TimeWindow>().unwrap().contains(Some(-3)));
        assert!("5:5".parse::<TimeWindow>().is_err());
        assert!("abc".parse::<TimeWindow>().is_err());
        assert!(TimeWindow::unbounded().contains(None));

        let err = unique_visitors(&[rec("u1", "A")], w).unwrap_err();
        assert!(matches!(err, Error::WindowInapplicable));

        let timed = |u: &str, s: &str, t| TraceRecord { timestamp: Some(t), ..rec(u, s) };
        let recs = [timed("u1", "A", 5), timed("u2", "A", 15), timed("u3", "B", 12), rec("u4", "A")];
        let (h, s) = unique_visitors(&recs, w).unwrap();
        assert_eq!(h.to_csv_string(), "n,count\n1,2\n");
        assert_eq!(s.users, 2);
    }

    #[test]
    fn merge_is_order_free() {
        let a = [rec("u1", "A"), rec("u2", "B")];
        let b = [rec("u2", "A"), rec("u3", "B"), rec("u1", "A")];
        let build = |recs: &[TraceRecord]| {
            let mut c = UniqueVisitorCounter::new(TimeWindow::unbounded());
            recs.iter().for_each(|r| c.add(r));
            c
        };
        let mut ab = build(&a);
        ab.merge(build(&b));
        let mut ba = build(&b);
        ba.merge(build(&a));
        let all: Vec<_> = a.iter().chain(&b).cloned().collect();
        let direct = unique_visitors(&all, TimeWindow::unbounded()).unwrap();
        assert_eq!(ab.finish(0).unwrap(), direct);
        assert_eq!(ba.finish(0).unwrap(), direct);
    }

    #[test]
    fn degenerate_synthesis() {
        let mut buf = Vec::new();
        let cfg = SimConfig::new(0.0, 3, 9).unwrap();
        let s = synthesize_trace(&cfg, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "u1,s1,1\nu2,s1,2\nu3,s1,3\n");
        assert_eq!(s.to_string(), "users=3 sites=1 records=3 skipped=0");
    }
}
