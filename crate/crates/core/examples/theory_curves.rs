//! Prints the novelty-rate to exponent table and a few Yule curves.
//!
//! `cargo run --example theory_curves`

use novelty::yule::{alpha_from_nu, Moment, TailForm};
use novelty::{NoveltyRate, PowerExponent, YuleDistribution};

fn main() -> novelty::Result<()> {
    println!("{:>6} {:>8} {:>10}", "nu", "alpha", "mean");
    for nu in [0.0, 0.03, 0.1, 0.25, 0.5, 0.75, 0.9] {
        let d = YuleDistribution::from_nu(NoveltyRate::new(nu)?);
        let mean = match d.mean() {
            Moment::Finite(m) => format!("{m:.4}"),
            Moment::Divergent => "infinite".to_owned(),
        };
        println!("{nu:>6} {:>8.4} {mean:>10}", alpha_from_nu(NoveltyRate::new(nu)?).value());
    }

    println!();
    println!("{:>6} {:>14} {:>14} {:>14}", "n", "pmf(2.03)", "ccdf(2.03)", "tail approx");
    let d = YuleDistribution::new(PowerExponent::new(2.03)?);
    for n in [1, 2, 5, 10, 100, 1_000, 10_000] {
        println!(
            "{n:>6} {:>14.6e} {:>14.6e} {:>14.6e}",
            d.pmf(n)?,
            d.survival(n - 1),
            d.tail_approx(n, TailForm::Asymptotic)?
        );
    }
    Ok(())
}
