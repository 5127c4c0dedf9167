//! Runs the urn simulator and prints the resulting visitor histogram.
//!
//! `cargo run --release --example simulate_urn -- 0.1 1000000`

use novelty::urn::{simulate, StepEvent, UrnState};
use novelty::SimConfig;

fn main() -> novelty::Result<()> {
    let mut args = std::env::args().skip(1);
    let nu: f64 = args.next().map_or(Ok(0.1), |s| s.parse()).expect("nu");
    let steps: u64 = args.next().map_or(Ok(100_000), |s| s.parse()).expect("steps");
    let config = SimConfig::new(nu, steps, 7)?;

    // Step by hand for a short prefix to show the event stream.
    let mut state = UrnState::new(&config);
    let events: Vec<String> = (0..12)
        .map(|_| match state.step() {
            StepEvent::Discovery(s) => format!("new {s}"),
            StepEvent::Recommendation(s) => format!("rec {s}"),
        })
        .collect();
    println!("first events: {}", events.join(", "));

    let state = simulate(&config);
    let hist = state.histogram();
    println!(
        "{} visits over {} sites, largest site {} visitors",
        state.total_visits(),
        state.num_sites(),
        hist.max_n().unwrap_or(0)
    );
    for (n, count) in hist.iter().take(10) {
        println!("n={n:<4} sites={count}");
    }
    Ok(())
}
