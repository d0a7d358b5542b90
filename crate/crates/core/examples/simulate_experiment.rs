// Finite-count run of the K = 1 and K = 2 ladders at 96% visibility.

use std::error::Error;

use hardy_lab::apparatus::simulate_run;
use hardy_lab::ladder::ladder_terms;
use hardy_lab::{LadderConfig, HARDY_PHASE};

pub fn run() -> Result<(), Box<dyn Error>> {
    let seed = 2011;
    for (k, t) in [(1, 0.46), (2, 0.57)] {
        let run = simulate_run(LadderConfig::new(k, t)?, HARDY_PHASE, 0.96, 100_000, seed)?;
        println!("K = {k}, t = {t}, V = 0.96, seed = {seed}");
        for (term, (est, rec)) in ladder_terms(k)
            .iter()
            .zip(run.estimates.iter().zip(&run.records))
        {
            println!(
                "  {:<10} {:.4} ± {:.4}   counts {:?}",
                term.to_string(),
                est.p,
                est.sigma,
                [rec.c_pp, rec.c_pm, rec.c_mp, rec.c_mm]
            );
        }
        let sigma = run.report.uncertainties.as_ref().map_or(0.0, |u| u.s_value);
        println!("  S{k} = {:.4} ± {:.4}", run.report.s_value, sigma);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
