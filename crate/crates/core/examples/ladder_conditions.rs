// Analyzer schedule of the ladder and the probabilities it forces to zero.

use std::error::Error;

use hardy_lab::ladder::{condition_residuals, hardy_fraction_closed_form, ladder_angles};
use hardy_lab::quantum::{make_state, NoisyState, HARDY_PHASE};

pub fn run() -> Result<(), Box<dyn Error>> {
    for (k, t) in [(1, 0.46), (2, 0.57), (3, 0.64)] {
        let angles = ladder_angles(k, t)?;
        println!("K = {k}, t = {t}");
        for (i, theta) in angles.thetas.iter().enumerate() {
            println!(
                "  theta_{i} = {theta:+.4} rad ({:+.2} deg)",
                theta.to_degrees()
            );
        }
        for v in [1.0, 0.96] {
            let state = NoisyState::new(make_state(t, HARDY_PHASE)?, v)?;
            let worst = condition_residuals(&state, &angles)
                .into_iter()
                .fold(0.0, f64::max);
            println!("  V = {v}: largest vanishing-condition probability = {worst:.3e}");
        }
        println!(
            "  Hardy fraction = {:.5}",
            hardy_fraction_closed_form(k, t)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
