// Exhaustive local-hidden-variable bound and the Clauser-Horne reduction.

use std::error::Error;

use hardy_lab::ladder::{ladder_angles, LadderConfig};
use hardy_lab::lhv::{
    ch_equivalence_residual, enumerate_strategies, lhv_max, quantum_vs_lhv, BehaviorTable,
};
use hardy_lab::quantum::{make_state, HARDY_PHASE};

pub fn run() -> Result<(), Box<dyn Error>> {
    for k in 1..=3 {
        let count = enumerate_strategies(k)?.count();
        println!(
            "K = {k}: max S over {count} deterministic strategies = {}",
            lhv_max(k)?
        );
    }

    let state = make_state(0.46, HARDY_PHASE)?.into();
    let table = BehaviorTable::from_state(&state, &ladder_angles(1, 0.46)?);
    println!("\nquantum table at t = 0.46");
    println!(
        "  CH - S1 residual  = {:.1e}",
        ch_equivalence_residual(&table)?
    );
    println!("  signaling         = {:.1e}", table.max_signaling());

    let config = LadderConfig::new(1, 0.46)?;
    for v in [1.0, 0.96, 0.5] {
        println!(
            "  margin over LHV at V = {v}: {:+.4}",
            quantum_vs_lhv(config, v)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
