// Joint outcome distributions of the two-mode state, with and without
// visibility loss.

use std::error::Error;
use std::f64::consts::FRAC_PI_4;

use hardy_lab::quantum::{distribution, make_state, AnalyzerSetting, NoisyState, HARDY_PHASE};

pub fn run() -> Result<(), Box<dyn Error>> {
    let pure = make_state(0.46, HARDY_PHASE)?;
    println!(
        "t = {}: alpha = {:.5}, beta = {:.5}",
        pure.t(),
        pure.alpha(),
        pure.beta()
    );

    let maximal = make_state(1.0, HARDY_PHASE)?;
    let a = AnalyzerSetting::alice(FRAC_PI_4);
    let b = AnalyzerSetting::bob(FRAC_PI_4);
    println!("\nsettings at 45 deg, maximally entangled state");
    println!(
        "{:>6}  {:>8} {:>8} {:>8} {:>8}",
        "V", "P(+,+)", "P(+,-)", "P(-,+)", "P(-,-)"
    );
    for v in [1.0, 0.96, 0.5, 0.0] {
        let d = distribution(&NoisyState::new(maximal, v)?, &a, &b);
        println!(
            "{v:>6.2}  {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            d.p_pp, d.p_pm, d.p_mp, d.p_mm
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
