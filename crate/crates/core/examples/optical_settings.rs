// Wave-plate and beam-splitter settings that realize a ladder in the lab.

use std::error::Error;

use hardy_lab::apparatus::OpticalSettings;
use hardy_lab::{LadderConfig, HARDY_PHASE};

pub fn run() -> Result<(), Box<dyn Error>> {
    for (k, t) in [(1, 0.46), (2, 0.57)] {
        let optics = OpticalSettings::for_ladder(LadderConfig::new(k, t)?, HARDY_PHASE)?;
        let prep = optics.preparation;
        println!("K = {k}, t = {t}");
        println!(
            "  HWP1 = {:.2} deg, VBS1 T = {:.4} (ratio check {:.6})",
            prep.hwp1_a.to_degrees(),
            prep.vbs1_t_a,
            prep.splitter_ratio()
        );
        for (i, a) in optics.analyzers.iter().enumerate() {
            println!(
                "  setting {i}: HWP2 = {:+.2} deg, VBS2 R = {:.4}, T = {:.4}",
                a.hwp2.to_degrees(),
                a.vbs2_r,
                a.vbs2_t
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
