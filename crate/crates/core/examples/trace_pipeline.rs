//! Counts unique visitors per site from an access log.
//!
//! Reads `user,url,timestamp` lines from a file if given, otherwise
//! synthesizes a trace from the urn simulator.
//!
//! `cargo run --release --example trace_pipeline -- access.log`

use std::fs::File;
use std::io::BufReader;

use novelty::estimator::fit_mle_yule;
use novelty::traces::{synthesize_trace, unique_visitors_from_reader};
use novelty::{FormatSpec, SimConfig, TimeWindow};

fn main() -> novelty::Result<()> {
    let window = TimeWindow::unbounded();
    let (hist, summary) = match std::env::args().nth(1) {
        Some(path) => {
            let spec = FormatSpec { site_is_url: true, ..FormatSpec::default() };
            unique_visitors_from_reader(BufReader::new(File::open(path)?), &spec, window)?
        }
        None => {
            let mut log = Vec::new();
            synthesize_trace(&SimConfig::new(0.1, 200_000, 3)?, &mut log)?;
            unique_visitors_from_reader(log.as_slice(), &FormatSpec::default(), window)?
        }
    };
    println!("{summary}");
    print!("{}", hist.to_csv_string().lines().take(8).collect::<Vec<_>>().join("\n"));
    println!("\n...");
    println!("mle alpha {:.4}", fit_mle_yule(&hist, 1)?.alpha);
    Ok(())
}
