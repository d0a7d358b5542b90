// CSV sweep of the Hardy fraction and S_K over t, the data behind the
// K = 1 / K = 2 comparison plots.

use std::error::Error;

use hardy_lab::cli::{parse_args, render};

pub fn run() -> Result<(), Box<dyn Error>> {
    for k in ["1", "2"] {
        let cmd = parse_args([
            "hardy",
            "scan",
            "--k",
            k,
            "--t-min",
            "0.1",
            "--t-max",
            "1.0",
            "--steps",
            "10",
            "--visibility",
            "0.96",
        ])?;
        print!("{}", render(&cmd)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
