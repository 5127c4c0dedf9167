//! Compares Monte Carlo replicas against the exact distribution of the
//! first site's visitor count.
//!
//! `cargo run --release --example first_site_dynamics`

use novelty::urn::{exact_first_site_distribution, replicate_with};
use novelty::{NoveltyRate, SimConfig};

fn main() -> novelty::Result<()> {
    let (nu, t, replicas) = (0.5, 10usize, 200_000u64);
    let exact = exact_first_site_distribution(NoveltyRate::new(nu)?, t)?;
    let config = SimConfig::new(nu, t as u64, 11)?;

    let mut freq = vec![0f64; t];
    for n in replicate_with(&config, replicas, |s| s.visit_counts()[0] as usize) {
        freq[n - 1] += 1.0 / replicas as f64;
    }

    println!("{:>3} {:>10} {:>10}", "n", "exact", "simulated");
    for (n, (p, q)) in exact[t - 1].iter().zip(&freq).enumerate() {
        println!("{:>3} {p:>10.5} {q:>10.5}", n + 1);
    }
    let tv: f64 = exact[t - 1].iter().zip(&freq).map(|(p, q)| (p - q).abs()).sum::<f64>() / 2.0;
    println!("total variation distance {tv:.5}");
    Ok(())
}
