//! Hardy ladder: analyzer schedule, Hardy fraction, the `S_K` statistic and
//! the search for the amplitude ratio that maximizes the violation.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantum::{make_state, noisy_joint_probability, AnalyzerSetting, NoisyState, Outcome};

/// Ladder size `K` and amplitude ratio `t ∈ (0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderConfig {
    k: usize,
    t: f64,
}

impl LadderConfig {
    pub fn new(k: usize, t: f64) -> Result<Self> {
        validate_steps(k)?;
        validate_ratio(t)?;
        Ok(LadderConfig { k, t })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

fn validate_steps(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidLadderSteps(k));
    }
    Ok(())
}

fn validate_ratio(t: f64) -> Result<()> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::RatioOutOfLadderDomain(t));
    }
    Ok(())
}

/// Analyzer angles `θ_0 … θ_K`, shared by both parties.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderAngles {
    pub thetas: Vec<f64>,
}

impl LadderAngles {
    pub fn k(&self) -> usize {
        self.thetas.len() - 1
    }

    pub fn alice(&self, i: usize) -> AnalyzerSetting {
        AnalyzerSetting::alice(self.thetas[i])
    }

    pub fn bob(&self, j: usize) -> AnalyzerSetting {
        AnalyzerSetting::bob(self.thetas[j])
    }
}

/// `sin θ_k = (-1)^k t^{k+1/2} / √(t^{2k+1} + 1)`, `cos θ_k = 1 / √(t^{2k+1} + 1)`.
pub fn ladder_angles(k: usize, t: f64) -> Result<LadderAngles> {
    validate_steps(k)?;
    validate_ratio(t)?;
    let thetas = (0..=k)
        .map(|step| {
            let power = t.powf(step as f64 + 0.5);
            let norm = (power * power + 1.0).sqrt();
            let sign = if step % 2 == 0 { 1.0 } else { -1.0 };
            (sign * power / norm).atan2(1.0 / norm)
        })
        .collect();
    Ok(LadderAngles { thetas })
}

/// `P(a_K, b_K) = t² (t^{2K} - 1)² / [(t^{2K+1} + 1)² (1 + t²)]` for the
/// pure state with phase π.
pub fn hardy_fraction_closed_form(k: usize, t: f64) -> Result<f64> {
    validate_steps(k)?;
    validate_ratio(t)?;
    let k = k as i32;
    let t2 = t * t;
    let num = t2 * (t.powi(2 * k) - 1.0).powi(2);
    let den = (t.powi(2 * k + 1) + 1.0).powi(2) * (1.0 + t2);
    Ok(num / den)
}

/// One joint probability appearing in `S_K`: Alice at setting `alice` with
/// outcome `a`, Bob at setting `bob` with outcome `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderTerm {
    pub alice: usize,
    pub bob: usize,
    pub a: Outcome,
    pub b: Outcome,
}

impl LadderTerm {
    /// `P(a_K, b_K)`.
    pub fn top(k: usize) -> Self {
        LadderTerm {
            alice: k,
            bob: k,
            a: Outcome::Plus,
            b: Outcome::Plus,
        }
    }

    /// `P(a_0, b_0)`.
    pub fn bottom() -> Self {
        LadderTerm {
            alice: 0,
            bob: 0,
            a: Outcome::Plus,
            b: Outcome::Plus,
        }
    }

    /// `P(a_k, b̄_{k-1})`.
    pub fn upper_left(k: usize) -> Self {
        LadderTerm {
            alice: k,
            bob: k - 1,
            a: Outcome::Plus,
            b: Outcome::Minus,
        }
    }

    /// `P(ā_{k-1}, b_k)`.
    pub fn upper_right(k: usize) -> Self {
        LadderTerm {
            alice: k - 1,
            bob: k,
            a: Outcome::Minus,
            b: Outcome::Plus,
        }
    }

    pub fn probability(&self, state: &NoisyState, angles: &LadderAngles) -> f64 {
        noisy_joint_probability(
            state,
            &angles.alice(self.alice),
            &angles.bob(self.bob),
            self.a,
            self.b,
        )
    }
}

impl fmt::Display for LadderTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bar = |o: Outcome| if o == Outcome::Minus { "~" } else { "" };
        write!(
            f,
            "P({}a{},{}b{})",
            bar(self.a),
            self.alice,
            bar(self.b),
            self.bob
        )
    }
}

/// Side terms of `S_K` in order `P(a_k, b̄_{k-1}), P(ā_{k-1}, b_k)` for `k = 1..=K`.
pub fn side_terms(k: usize) -> Vec<LadderTerm> {
    (1..=k)
        .flat_map(|step| [LadderTerm::upper_left(step), LadderTerm::upper_right(step)])
        .collect()
}

/// Every term of `S_K`: top, bottom, then the side terms.
pub fn ladder_terms(k: usize) -> Vec<LadderTerm> {
    let mut terms = vec![LadderTerm::top(k), LadderTerm::bottom()];
    terms.extend(side_terms(k));
    terms
}

/// One-standard-deviation uncertainties attached to a [`HardyReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportUncertainties {
    pub hardy_fraction: f64,
    pub bottom: f64,
    pub side_terms: Vec<f64>,
    pub s_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HardyReport {
    pub k: usize,
    pub hardy_fraction: f64,
    pub bottom: f64,
    pub side_terms: Vec<f64>,
    pub s_value: f64,
    pub uncertainties: Option<ReportUncertainties>,
}

impl HardyReport {
    /// Assembles a report from measured or computed probabilities.
    pub fn from_terms(hardy_fraction: f64, bottom: f64, side_terms: Vec<f64>) -> Result<Self> {
        if side_terms.is_empty() || !side_terms.len().is_multiple_of(2) {
            return Err(Error::InvalidLadderSteps(side_terms.len() / 2));
        }
        let s_value = s_statistic(hardy_fraction, bottom, &side_terms)?;
        Ok(HardyReport {
            k: side_terms.len() / 2,
            hardy_fraction,
            bottom,
            side_terms,
            s_value,
            uncertainties: None,
        })
    }

    /// Probabilities in [`ladder_terms`] order.
    pub fn probabilities(&self) -> Vec<f64> {
        let mut all = vec![self.hardy_fraction, self.bottom];
        all.extend_from_slice(&self.side_terms);
        all
    }
}

/// `[P(a_0,b_0)] ++ [P(ā_{k-1}, b_k), P(a_k, b̄_{k-1}) for k = 1..=K]`: the
/// quantities that vanish for an ideal ladder.
pub fn condition_residuals(state: &NoisyState, angles: &LadderAngles) -> Vec<f64> {
    let mut out = vec![LadderTerm::bottom().probability(state, angles)];
    for step in 1..=angles.k() {
        out.push(LadderTerm::upper_right(step).probability(state, angles));
        out.push(LadderTerm::upper_left(step).probability(state, angles));
    }
    out
}

/// `S_K = P(a_K,b_K) - P(a_0,b_0) - Σ side terms`.
pub fn s_statistic(hardy_fraction: f64, bottom: f64, side_terms: &[f64]) -> Result<f64> {
    for &p in [hardy_fraction, bottom].iter().chain(side_terms) {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
    }
    Ok(hardy_fraction - bottom - side_terms.iter().sum::<f64>())
}

pub fn evaluate_ladder(config: LadderConfig, phi: f64, visibility: f64) -> Result<HardyReport> {
    let state = NoisyState::new(make_state(config.t, phi)?, visibility)?;
    let angles = ladder_angles(config.k, config.t)?;
    let p = |term: LadderTerm| term.probability(&state, &angles);
    HardyReport::from_terms(
        p(LadderTerm::top(config.k)),
        p(LadderTerm::bottom()),
        side_terms(config.k).into_iter().map(p).collect(),
    )
}

/// Spacing of the coarse grid that brackets the optimum.
pub const GRID_STEP: f64 = 0.005;
/// Width at which the golden-section refinement stops.
pub const REFINE_TOL: f64 = 1e-6;
/// Resolution of the violation-threshold bisection.
pub const THRESHOLD_TOL: f64 = 1e-4;

const GRID_POINTS: usize = 200;

fn s_value_at(k: usize, t: f64, phi: f64, visibility: f64) -> Result<f64> {
    Ok(evaluate_ladder(LadderConfig::new(k, t)?, phi, visibility)?.s_value)
}

/// Maximizes `f` on `[lo, hi]` by golden-section search until the bracket is
/// narrower than `tol`. Returns `(argmax, max)`.
pub fn golden_section_max<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    let f_mid = f(mid);
    // the bracket interior points may beat the midpoint on a flat top
    [(x1, f1), (x2, f2)].into_iter().fold(
        (mid, f_mid),
        |best, cand| if cand.1 > best.1 { cand } else { best },
    )
}

/// Finds `t ∈ (0, 1]` maximizing `S_K` for the given visibility and phase.
pub fn optimize_t(k: usize, visibility: f64, phi: f64) -> Result<(f64, f64)> {
    validate_steps(k)?;
    let mut best: Option<(usize, f64)> = None;
    for i in 1..GRID_POINTS {
        let s = s_value_at(k, i as f64 * GRID_STEP, phi, visibility)?;
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((i, s));
        }
    }
    let (i, _) = best.expect("grid is non-empty");
    let lo = ((i - 1) as f64 * GRID_STEP).max(REFINE_TOL);
    let hi = ((i + 1) as f64 * GRID_STEP).min(1.0);

    let mut failure = None;
    let (t_star, s_star) = golden_section_max(
        |t| match s_value_at(k, t, phi, visibility) {
            Ok(s) => s,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NEG_INFINITY
            }
        },
        lo,
        hi,
        REFINE_TOL,
    );
    match failure {
        Some(e) => Err(e),
        None => Ok((t_star, s_star)),
    }
}

/// Smallest `t > t*` at which `S_K` stops being positive, or `None` when the
/// violation persists on all of `(t*, 1)`.
pub fn violation_threshold(k: usize, visibility: f64, phi: f64) -> Result<Option<f64>> {
    let (t_star, _) = optimize_t(k, visibility, phi)?;
    let mut last_positive = t_star;
    let mut step = 1;
    loop {
        let t = t_star + step as f64 * GRID_STEP;
        if t >= 1.0 {
            return Ok(None);
        }
        if s_value_at(k, t, phi, visibility)? <= 0.0 {
            let (mut lo, mut hi) = (last_positive, t);
            while hi - lo > THRESHOLD_TOL {
                let mid = 0.5 * (lo + hi);
                if s_value_at(k, mid, phi, visibility)? <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(Some(hi));
        }
        last_positive = t;
        step += 1;
    }
}
