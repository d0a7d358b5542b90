//! Numerical laboratory for the Hardy ladder test of nonlocality with
//! energy-time entangled photon pairs.
//!
//! - [`quantum`]: the two-mode state `α|SS> + e^{iφ}β|LL>`, visibility
//!   degradation and Born-rule joint probabilities.
//! - [`ladder`]: analyzer schedule, Hardy fraction, `S_K` and the optimal
//!   amplitude ratio.
//! - [`lhv`]: exhaustive local-hidden-variable bound and the Clauser-Horne
//!   reduction check.
//! - [`apparatus`]: wave-plate and beam-splitter settings, seeded
//!   coincidence-count simulation and the `C / C_TOT` estimator.
//! - [`cli`]: the `hardy` command-line front end.

pub mod apparatus;
pub mod cli;
pub mod error;
pub mod ladder;
pub mod lhv;
pub mod quantum;

pub use error::{Error, Result};
pub use ladder::{evaluate_ladder, optimize_t, HardyReport, LadderConfig};
pub use quantum::{make_state, NoisyState, Outcome, PureState, HARDY_PHASE};
