//! Two-mode energy-time state and Born-rule joint probabilities.
//!
//! The Hilbert space is the span of `|SS>` and `|LL>` (short/long arm of each
//! unbalanced interferometer). Analyzer `k` projects onto
//! `cos θ |S> + sin θ |L>` (outcome +1) or `sin θ |S> - cos θ |L>` (outcome -1).

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};

/// Relative phase that makes every ladder condition vanish exactly.
pub const HARDY_PHASE: f64 = PI;

/// Dichotomic measurement outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn value(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    pub fn flipped(self) -> Outcome {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Party {
    A,
    B,
}

/// `α|SS> + e^{iφ} β|LL>` with `t = α/β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PureState {
    t: f64,
    phi: f64,
    alpha: f64,
    beta: f64,
}

impl PureState {
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Builds the normalized state with amplitude ratio `t` and relative phase `phi`.
pub fn make_state(t: f64, phi: f64) -> Result<PureState> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidAmplitudeRatio(t));
    }
    let norm = t.hypot(1.0);
    Ok(PureState {
        t,
        phi,
        alpha: t / norm,
        beta: 1.0 / norm,
    })
}

/// A pure state mixed with its dephased counterpart:
/// `ρ = V |Φ><Φ| + (1 - V)(α²|SS><SS| + β²|LL><LL|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoisyState {
    pure: PureState,
    visibility: f64,
}

impl NoisyState {
    pub fn new(pure: PureState, visibility: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&visibility) {
            return Err(Error::InvalidVisibility(visibility));
        }
        Ok(NoisyState { pure, visibility })
    }

    pub fn pure(&self) -> &PureState {
        &self.pure
    }

    pub fn visibility(&self) -> f64 {
        self.visibility
    }
}

impl From<PureState> for NoisyState {
    fn from(pure: PureState) -> Self {
        NoisyState {
            pure,
            visibility: 1.0,
        }
    }
}

/// One analyzer setting. The angle is kept in `(-π/2, π/2]`, which leaves every
/// probability unchanged because the basis is sign-insensitive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyzerSetting {
    pub party: Party,
    theta: f64,
}

impl AnalyzerSetting {
    pub fn new(party: Party, theta: f64) -> Self {
        AnalyzerSetting {
            party,
            theta: normalize_angle(theta),
        }
    }

    pub fn alice(theta: f64) -> Self {
        Self::new(Party::A, theta)
    }

    pub fn bob(theta: f64) -> Self {
        Self::new(Party::B, theta)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

fn normalize_angle(theta: f64) -> f64 {
    let mut x = theta.rem_euclid(PI);
    if x > FRAC_PI_2 {
        x -= PI;
    }
    // rem_euclid can land on -π/2 after the shift only through rounding
    if x <= -FRAC_PI_2 {
        x += PI;
    }
    x
}

/// `(⟨S|u⟩, ⟨L|u⟩)` for the analyzer eigenvector `u` with the given outcome.
pub fn basis_amplitudes(theta: f64, outcome: Outcome) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    match outcome {
        Outcome::Plus => (c, s),
        Outcome::Minus => (s, -c),
    }
}

/// Splits `⟨A|⟨B|Φ⟩` into its `|SS>` and `|LL>` contributions, without the phase.
fn branch_amplitudes(
    state: &PureState,
    setting_a: &AnalyzerSetting,
    setting_b: &AnalyzerSetting,
    outcome_a: Outcome,
    outcome_b: Outcome,
) -> (f64, f64) {
    let (a_s, a_l) = basis_amplitudes(setting_a.theta, outcome_a);
    let (b_s, b_l) = basis_amplitudes(setting_b.theta, outcome_b);
    (state.alpha * a_s * b_s, state.beta * a_l * b_l)
}

fn clamp_probability(p: f64) -> f64 {
    p.clamp(0.0, 1.0)
}

/// `|α uA_S uB_S + e^{iφ} β uA_L uB_L|²`.
pub fn joint_probability(
    state: &PureState,
    setting_a: &AnalyzerSetting,
    setting_b: &AnalyzerSetting,
    outcome_a: Outcome,
    outcome_b: Outcome,
) -> f64 {
    let (short, long) = branch_amplitudes(state, setting_a, setting_b, outcome_a, outcome_b);
    clamp_probability(short * short + long * long + 2.0 * short * long * state.phi.cos())
}

/// Born probability on the visibility-degraded state. Only the interference
/// term is damped by `V`.
pub fn noisy_joint_probability(
    state: &NoisyState,
    setting_a: &AnalyzerSetting,
    setting_b: &AnalyzerSetting,
    outcome_a: Outcome,
    outcome_b: Outcome,
) -> f64 {
    if state.visibility == 1.0 {
        return joint_probability(&state.pure, setting_a, setting_b, outcome_a, outcome_b);
    }
    let (short, long) = branch_amplitudes(&state.pure, setting_a, setting_b, outcome_a, outcome_b);
    let dephased = short * short + long * long;
    let coherent = dephased + 2.0 * short * long * state.pure.phi.cos();
    clamp_probability(state.visibility * coherent + (1.0 - state.visibility) * dephased)
}

/// Joint outcome distribution for one pair of settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointDistribution {
    pub p_pp: f64,
    pub p_pm: f64,
    pub p_mp: f64,
    pub p_mm: f64,
    /// Analyzer angles `(θ_a, θ_b)`; `None` for abstract behaviors that were
    /// not produced by a quantum measurement.
    pub angles: Option<(f64, f64)>,
}

impl JointDistribution {
    pub fn from_probabilities(p_pp: f64, p_pm: f64, p_mp: f64, p_mm: f64) -> Self {
        JointDistribution {
            p_pp,
            p_pm,
            p_mp,
            p_mm,
            angles: None,
        }
    }

    /// All mass on one outcome pair.
    pub fn deterministic(a: Outcome, b: Outcome) -> Self {
        let mut d = Self::from_probabilities(0.0, 0.0, 0.0, 0.0);
        *d.entry_mut(a, b) = 1.0;
        d
    }

    pub fn get(&self, a: Outcome, b: Outcome) -> f64 {
        match (a, b) {
            (Outcome::Plus, Outcome::Plus) => self.p_pp,
            (Outcome::Plus, Outcome::Minus) => self.p_pm,
            (Outcome::Minus, Outcome::Plus) => self.p_mp,
            (Outcome::Minus, Outcome::Minus) => self.p_mm,
        }
    }

    fn entry_mut(&mut self, a: Outcome, b: Outcome) -> &mut f64 {
        match (a, b) {
            (Outcome::Plus, Outcome::Plus) => &mut self.p_pp,
            (Outcome::Plus, Outcome::Minus) => &mut self.p_pm,
            (Outcome::Minus, Outcome::Plus) => &mut self.p_mp,
            (Outcome::Minus, Outcome::Minus) => &mut self.p_mm,
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.p_pp, self.p_pm, self.p_mp, self.p_mm]
    }

    pub fn total(&self) -> f64 {
        self.p_pp + self.p_pm + self.p_mp + self.p_mm
    }

    /// `P_A(a) = P(a, b) + P(a, b̄)`.
    pub fn marginal_a(&self, a: Outcome) -> f64 {
        self.get(a, Outcome::Plus) + self.get(a, Outcome::Minus)
    }

    /// `P_B(b) = P(a, b) + P(ā, b)`.
    pub fn marginal_b(&self, b: Outcome) -> f64 {
        self.get(Outcome::Plus, b) + self.get(Outcome::Minus, b)
    }

    /// Checks entries are probabilities summing to one within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        for p in self.as_array() {
            if !(-tol..=1.0 + tol).contains(&p) || p.is_nan() {
                return Err(Error::ProbabilityOutOfRange(p));
            }
        }
        let total = self.total();
        if (total - 1.0).abs() > tol {
            return Err(Error::Unnormalized(total));
        }
        Ok(())
    }
}

pub fn distribution(
    state: &NoisyState,
    setting_a: &AnalyzerSetting,
    setting_b: &AnalyzerSetting,
) -> JointDistribution {
    let p = |a, b| noisy_joint_probability(state, setting_a, setting_b, a, b);
    JointDistribution {
        p_pp: p(Outcome::Plus, Outcome::Plus),
        p_pm: p(Outcome::Plus, Outcome::Minus),
        p_mp: p(Outcome::Minus, Outcome::Plus),
        p_mm: p(Outcome::Minus, Outcome::Minus),
        angles: Some((setting_a.theta, setting_b.theta)),
    }
}
