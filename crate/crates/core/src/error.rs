use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitude ratio t must be positive and finite, got {0}")]
    InvalidAmplitudeRatio(f64),
    #[error("amplitude ratio t must lie in (0, 1], got {0}")]
    RatioOutOfLadderDomain(f64),
    #[error("ladder needs at least one step, got K = {0}")]
    InvalidLadderSteps(usize),
    #[error("visibility must lie in [0, 1], got {0}")]
    InvalidVisibility(f64),
    #[error("probability must lie in [0, 1], got {0}")]
    ProbabilityOutOfRange(f64),
    #[error("distribution is not normalized (entries sum to {0})")]
    Unnormalized(f64),
    #[error("enumerating K = {k} would visit {strategies} strategies, above the 2^24 guard")]
    EnumerationTooLarge { k: usize, strategies: u128 },
    #[error("behavior table has K = {found}, expected K = {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("sample size must be at least 1")]
    EmptySample,
    #[error("count record has zero total coincidences")]
    ZeroTotal,
}
