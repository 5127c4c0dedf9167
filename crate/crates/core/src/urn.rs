//! Discrete-time urn simulation of recommendation-driven site visits.
//!
//! Each step adds one unique visitor. With probability `ν` the visitor
//! discovers a brand-new site; otherwise an existing site is chosen with
//! probability `n_s / t`, proportional to its current visitor count.
//!
//! Proportional selection is O(1): the state keeps one entry per visit
//! (the "balls" of the urn) holding the visited site's index, and a
//! uniform draw over that list picks site `s` with probability `n_s / t`.

use rand::SeedableRng;
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::histogram::VisitHistogram;
use crate::rng::{below, unit, SimRng};
use crate::yule::NoveltyRate;

/// Upper bound on `steps`; the ball list costs four bytes per step.
pub const MAX_STEPS: u64 = 1 << 30;

/// Largest horizon accepted by [`exact_first_site_distribution`].
pub const MAX_EXACT_HORIZON: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub nu: NoveltyRate,
    /// Total number of visits `t` at the end of the run.
    pub steps: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(nu: f64, steps: u64, seed: u64) -> Result<Self> {
        let nu = NoveltyRate::new(nu)?;
        if steps == 0 || steps > MAX_STEPS {
            return domain(format!("steps must lie in 1..={MAX_STEPS}, got {steps}"));
        }
        Ok(Self { nu, steps, seed })
    }
}

/// What a single step did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepEvent {
    /// A new site was appended at this zero-based index.
    Discovery(usize),
    /// The existing site at this index gained a visitor.
    Recommendation(usize),
}

impl StepEvent {
    pub fn site(self) -> usize {
        match self {
            StepEvent::Discovery(s) | StepEvent::Recommendation(s) => s,
        }
    }
}

#[derive(Debug, Clone)]
pub struct UrnState {
    visit_counts: Vec<u64>,
    balls: Vec<u32>,
    nu: f64,
    rng: SimRng,
}

impl UrnState {
    /// Initial state `t = 1`, one site with one visitor. The urn starts
    /// empty, so the first visit is necessarily a discovery.
    pub fn new(config: &SimConfig) -> Self {
        Self::with_stream(config, 0)
    }

    /// Like [`UrnState::new`] but drawing from ChaCha stream `stream` of
    /// the configured seed. Stream 0 is the default stream.
    pub fn with_stream(config: &SimConfig, stream: u64) -> Self {
        let mut rng = SimRng::seed_from_u64(config.seed);
        rng.set_stream(stream);
        let mut balls = Vec::with_capacity(config.steps as usize);
        balls.push(0);
        Self {
            visit_counts: vec![1],
            balls,
            nu: config.nu.value(),
            rng,
        }
    }

    /// Advances `t` by one visit.
    pub fn step(&mut self) -> StepEvent {
        let event = if unit(&mut self.rng) < self.nu {
            let site = self.visit_counts.len();
            self.visit_counts.push(1);
            StepEvent::Discovery(site)
        } else {
            let t = self.balls.len() as u64;
            let site = self.balls[below(&mut self.rng, t) as usize] as usize;
            self.visit_counts[site] += 1;
            StepEvent::Recommendation(site)
        };
        let site = event.site();
        self.balls.push(u32::try_from(site).expect("site index fits in u32"));
        debug_assert!(self.visit_counts.len() <= self.balls.len());
        event
    }

    /// Visitor counts indexed by discovery order.
    pub fn visit_counts(&self) -> &[u64] {
        &self.visit_counts
    }

    pub fn num_sites(&self) -> usize {
        self.visit_counts.len()
    }

    /// Elapsed steps `t`, equal to the total number of visits.
    pub fn total_visits(&self) -> u64 {
        self.balls.len() as u64
    }

    pub fn histogram(&self) -> VisitHistogram {
        VisitHistogram::from_site_counts(self.visit_counts.iter().copied())
            .expect("every discovered site has at least one visitor")
    }

    /// Full O(t) consistency check of the urn bookkeeping.
    pub fn check_invariants(&self) -> bool {
        let t = self.total_visits();
        let mut tally = vec![0u64; self.visit_counts.len()];
        for &b in &self.balls {
            match tally.get_mut(b as usize) {
                Some(c) => *c += 1,
                None => return false,
            }
        }
        tally == self.visit_counts
            && self.visit_counts.iter().all(|&c| c >= 1)
            && self.visit_counts.iter().sum::<u64>() == t
            && self.num_sites() as u64 <= t
    }
}

/// Runs a full simulation and returns the final state.
pub fn simulate(config: &SimConfig) -> UrnState {
    simulate_stream(config, 0)
}

fn simulate_stream(config: &SimConfig, stream: u64) -> UrnState {
    let mut state = UrnState::with_stream(config, stream);
    for _ in 1..config.steps {
        state.step();
    }
    state
}

/// Runs `steps - 1` steps from the initial state and histograms the
/// per-site visitor counts.
pub fn run(config: &SimConfig) -> VisitHistogram {
    simulate(config).histogram()
}

/// Runs `replicas` independent simulations in parallel and maps each
/// final state through `f`. Replica `i` uses ChaCha stream `i` of the
/// configured seed, so replica 0 is identical to [`run`]; results are
/// ordered by replica index.
pub fn replicate_with<T, F>(config: &SimConfig, replicas: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&UrnState) -> T + Sync,
{
    (0..replicas)
        .into_par_iter()
        .map(|i| f(&simulate_stream(config, i)))
        .collect()
}

pub fn replicate(config: &SimConfig, replicas: u64) -> Vec<VisitHistogram> {
    replicate_with(config, replicas, UrnState::histogram)
}

/// Exact evolution of the first-discovered site's visitor count.
///
/// The first site grows at step `t → t + 1` with probability
/// `(1 - ν) n₁ / t` no matter how the other sites look, so its marginal
/// obeys
///
/// ```text
/// P(n, t+1) = (1 - ν)(n - 1)/t · P(n - 1, t) + (1 - (1 - ν) n / t) · P(n, t)
/// ```
///
/// from `P(1, 1) = 1`. Yields the vector for `t = 1, 2, ...`, where entry
/// `n - 1` holds `P(n, t)`.
#[derive(Debug, Clone)]
pub struct FirstSiteEvolution {
    grow: f64,
    t: usize,
    probs: Vec<f64>,
}

impl FirstSiteEvolution {
    pub fn new(nu: NoveltyRate) -> Self {
        Self {
            grow: 1.0 - nu.value(),
            t: 0,
            probs: Vec::new(),
        }
    }
}

impl Iterator for FirstSiteEvolution {
    type Item = Vec<f64>;

    fn next(&mut self) -> Option<Vec<f64>> {
        if self.t == 0 {
            self.t = 1;
            self.probs = vec![1.0];
            return Some(self.probs.clone());
        }
        let t = self.t as f64;
        let prev = &self.probs;
        let mut next = vec![0.0; prev.len() + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            let n = (i + 1) as f64;
            let stay = prev.get(i).map_or(0.0, |p| (1.0 - self.grow * n / t) * p);
            let moved_up = if i > 0 {
                self.grow * (n - 1.0) / t * prev[i - 1]
            } else {
                0.0
            };
            *slot = moved_up + stay;
        }
        self.probs = next;
        self.t += 1;
        Some(self.probs.clone())
    }
}

/// Distribution of the first site's visitor count for `t = 1..=t_max`.
/// Element `t - 1` is the vector for time `t`; its entry `n - 1` is
/// `P(n₁ = n)`.
pub fn exact_first_site_distribution(nu: NoveltyRate, t_max: usize) -> Result<Vec<Vec<f64>>> {
    if t_max == 0 || t_max > MAX_EXACT_HORIZON {
        return domain(format!("t_max must lie in 1..={MAX_EXACT_HORIZON}, got {t_max}"));
    }
    Ok(FirstSiteEvolution::new(nu).take(t_max).collect())
}
