// Amplitude ratio that maximizes the violation, and where the violation is
// lost once the visibility drops.

use std::error::Error;

use hardy_lab::ladder::{optimize_t, violation_threshold};
use hardy_lab::HARDY_PHASE;

pub fn run() -> Result<(), Box<dyn Error>> {
    println!(
        "{:>3} {:>6} {:>10} {:>10} {:>12}",
        "K", "V", "t*", "S*", "S<=0 from t"
    );
    for k in 1..=3 {
        for v in [1.0, 0.96] {
            let (t_star, s_star) = optimize_t(k, v, HARDY_PHASE)?;
            let cross = match violation_threshold(k, v, HARDY_PHASE)? {
                Some(t) => format!("{t:.4}"),
                None => "none".into(),
            };
            println!("{k:>3} {v:>6.2} {t_star:>10.5} {s_star:>10.5} {cross:>12}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
