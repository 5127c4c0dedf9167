//! Fits the exponent of a simulated histogram with both estimators.
//!
//! `cargo run --release --example fit_exponent -- 0.1`

use novelty::estimator::{fit_mle_yule, fit_ols_loglog, Binning, FIT_HEADER};
use novelty::urn::run;
use novelty::yule::alpha_from_nu;
use novelty::{NoveltyRate, SimConfig};

fn main() -> novelty::Result<()> {
    let nu: f64 = std::env::args().nth(1).map_or(Ok(0.1), |s| s.parse()).expect("nu");
    let hist = run(&SimConfig::new(nu, 1_000_000, 1)?);
    println!("expected alpha {:.4}", alpha_from_nu(NoveltyRate::new(nu)?).value());

    println!("{FIT_HEADER}");
    println!("{}", fit_mle_yule(&hist, 1)?);
    println!("{}", fit_ols_loglog(&hist, 1, Binning::Logarithmic)?);
    println!("{}", fit_ols_loglog(&hist, 1, Binning::Raw)?);

    let mle = fit_mle_yule(&hist, 1)?;
    if let Some(bound) = mle.nu_upper_bound() {
        println!("implied nu {:.4}, so nu < {bound}", mle.nu_implied.rate().unwrap_or(f64::NAN));
    }
    Ok(())
}
