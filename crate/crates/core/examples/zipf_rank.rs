//! Ranks sites by visitors and checks the Zipf exponent against the
//! histogram exponent.
//!
//! `cargo run --release --example zipf_rank`

use novelty::estimator::{ccdf_points, default_zipf_range, fit_mle_yule, fit_zipf, rank_table};
use novelty::urn::run;
use novelty::SimConfig;

fn main() -> novelty::Result<()> {
    let hist = run(&SimConfig::new(0.03, 1_000_000, 1)?);
    let table = rank_table(&hist);
    for row in table.rows().iter().take(5) {
        println!("rank {:>2}: {} visitors", row.rank, row.visitors);
    }

    let (lo, hi) = default_zipf_range(table.len());
    let zipf = fit_zipf(&table, lo, hi)?;
    let mle = fit_mle_yule(&hist, 1)?;
    println!("zipf exponent over ranks {lo}..{hi}: {:.4}", zipf.alpha);
    println!("1/(alpha-1) from mle alpha {:.4}: {:.4}", mle.alpha, 1.0 / (mle.alpha - 1.0));

    println!("ccdf:");
    for (n, p) in ccdf_points(&hist).into_iter().filter(|(n, _)| n.is_power_of_two()) {
        println!("  P(N >= {n}) = {p:.5}");
    }
    Ok(())
}
