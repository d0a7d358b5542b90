//! Optical parameters of the interferometric setup and finite-count simulation
//! of the coincidence measurements.
//!
//! Randomness: every setting pair draws from its own `ChaCha8Rng`, seeded with
//! `seed_from_u64(derive_seed(master, i, j))`. Each coincidence is one
//! `random::<f64>()` draw mapped through the cumulative distribution in the
//! order `(+,+), (+,-), (-,+), (-,-)`. Published seeds therefore reproduce
//! published counts for a given build of this crate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ladder::{
    ladder_angles, ladder_terms, s_statistic, HardyReport, LadderConfig, ReportUncertainties,
};
use crate::quantum::{distribution, make_state, JointDistribution, NoisyState, Outcome};

/// Default number of coincidences per setting pair.
pub const DEFAULT_COUNTS: u64 = 100_000;

/// Half-wave plate and first variable beam splitter, per arm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PreparationSettings {
    pub hwp1_a: f64,
    pub hwp1_b: f64,
    pub vbs1_t_a: f64,
    pub vbs1_t_b: f64,
}

impl PreparationSettings {
    pub fn vbs1_r_a(&self) -> f64 {
        1.0 - self.vbs1_t_a
    }

    pub fn vbs1_r_b(&self) -> f64 {
        1.0 - self.vbs1_t_b
    }

    /// `√(T_A T_B / (R_A R_B))`.
    pub fn splitter_ratio(&self) -> f64 {
        (self.vbs1_t_a * self.vbs1_t_b / (self.vbs1_r_a() * self.vbs1_r_b())).sqrt()
    }

    /// Amplitude ratio implied by the wave plates: `cot(2h_A) cot(2h_B)`.
    pub fn wave_plate_ratio(&self) -> f64 {
        1.0 / ((2.0 * self.hwp1_a).tan() * (2.0 * self.hwp1_b).tan())
    }
}

/// Projection optics for one analyzer angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyzerOptics {
    pub hwp2: f64,
    pub vbs2_r: f64,
    pub vbs2_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OpticalSettings {
    pub preparation: PreparationSettings,
    pub analyzers: Vec<AnalyzerOptics>,
    pub phase: f64,
}

impl OpticalSettings {
    pub fn for_ladder(config: LadderConfig, phase: f64) -> Result<Self> {
        let angles = ladder_angles(config.k(), config.t())?;
        Ok(OpticalSettings {
            preparation: settings_for_state(config.t())?,
            analyzers: angles
                .thetas
                .iter()
                .map(|&th| analyzer_settings(th))
                .collect(),
            phase,
        })
    }
}

/// Symmetric split `T_A = T_B = t / (1 + t)`, wave plates at `tan 2h = 1/√t`.
pub fn settings_for_state(t: f64) -> Result<PreparationSettings> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::RatioOutOfLadderDomain(t));
    }
    let transmittivity = t / (1.0 + t);
    let hwp = 0.5 * (1.0 / t.sqrt()).atan();
    Ok(PreparationSettings {
        hwp1_a: hwp,
        hwp1_b: hwp,
        vbs1_t_a: transmittivity,
        vbs1_t_b: transmittivity,
    })
}

pub fn analyzer_settings(theta: f64) -> AnalyzerOptics {
    let (s, c) = theta.sin_cos();
    AnalyzerOptics {
        hwp2: theta / 2.0,
        vbs2_r: s * s,
        vbs2_t: c * c,
    }
}

/// Coincidence counts for one pair of settings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRecord {
    pub setting: (usize, usize),
    pub c_pp: u64,
    pub c_pm: u64,
    pub c_mp: u64,
    pub c_mm: u64,
    pub seed: u64,
}

impl CountRecord {
    pub fn count(&self, a: Outcome, b: Outcome) -> u64 {
        match (a, b) {
            (Outcome::Plus, Outcome::Plus) => self.c_pp,
            (Outcome::Plus, Outcome::Minus) => self.c_pm,
            (Outcome::Minus, Outcome::Plus) => self.c_mp,
            (Outcome::Minus, Outcome::Minus) => self.c_mm,
        }
    }

    /// `C_TOT`, the coincidences summed over all four outcome pairs.
    pub fn total(&self) -> u64 {
        self.c_pp + self.c_pm + self.c_mp + self.c_mm
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub p: f64,
    pub sigma: f64,
}

/// SplitMix64 finalizer over the master seed and the setting indices.
pub fn derive_seed(master: u64, alice: usize, bob: usize) -> u64 {
    let mut z = master
        ^ (alice as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (bob as u64)
            .wrapping_add(1)
            .wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws `n` coincidences from `dist`. Identical inputs give identical counts.
pub fn simulate_counts(
    dist: &JointDistribution,
    setting: (usize, usize),
    n: u64,
    seed: u64,
) -> Result<CountRecord> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    dist.validate(1e-9)?;
    let [pp, pm, mp, _] = dist.as_array();
    let cuts = [pp, pp + pm, pp + pm + mp];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0u64; 4];
    for _ in 0..n {
        let u: f64 = rng.random();
        let bin = cuts.iter().position(|&c| u < c).unwrap_or(3);
        counts[bin] += 1;
    }
    Ok(CountRecord {
        setting,
        c_pp: counts[0],
        c_pm: counts[1],
        c_mp: counts[2],
        c_mm: counts[3],
        seed,
    })
}

/// `p = C(a, b) / C_TOT` with binomial `σ = √(p(1-p)/C_TOT)`.
pub fn estimate_probability(record: &CountRecord, a: Outcome, b: Outcome) -> Result<Estimate> {
    let total = record.total();
    if total == 0 {
        return Err(Error::ZeroTotal);
    }
    let n = total as f64;
    let p = record.count(a, b) as f64 / n;
    Ok(Estimate {
        p,
        sigma: (p * (1.0 - p) / n).sqrt(),
    })
}

/// Counts and estimate for every term of `S_K`, in `ladder_terms` order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulatedRun {
    pub records: Vec<CountRecord>,
    pub estimates: Vec<Estimate>,
    pub report: HardyReport,
}

/// Simulates `n` coincidences at each of the `2K + 2` setting pairs needed by
/// `S_K` and assembles the report, with `σ_S² = Σ σ_i²`.
pub fn simulate_run(
    config: LadderConfig,
    phi: f64,
    visibility: f64,
    n: u64,
    seed: u64,
) -> Result<SimulatedRun> {
    let state = NoisyState::new(make_state(config.t(), phi)?, visibility)?;
    let angles = ladder_angles(config.k(), config.t())?;
    let terms = ladder_terms(config.k());

    let mut records = Vec::with_capacity(terms.len());
    let mut estimates = Vec::with_capacity(terms.len());
    for term in &terms {
        let dist = distribution(&state, &angles.alice(term.alice), &angles.bob(term.bob));
        let record = simulate_counts(
            &dist,
            (term.alice, term.bob),
            n,
            derive_seed(seed, term.alice, term.bob),
        )?;
        estimates.push(estimate_probability(&record, term.a, term.b)?);
        records.push(record);
    }

    let p: Vec<f64> = estimates.iter().map(|e| e.p).collect();
    let sigma: Vec<f64> = estimates.iter().map(|e| e.sigma).collect();
    let s_value = s_statistic(p[0], p[1], &p[2..])?;
    let report = HardyReport {
        k: config.k(),
        hardy_fraction: p[0],
        bottom: p[1],
        side_terms: p[2..].to_vec(),
        s_value,
        uncertainties: Some(ReportUncertainties {
            hardy_fraction: sigma[0],
            bottom: sigma[1],
            side_terms: sigma[2..].to_vec(),
            s_value: sigma.iter().map(|s| s * s).sum::<f64>().sqrt(),
        }),
    };
    Ok(SimulatedRun {
        records,
        estimates,
        report,
    })
}

pub fn simulated_report(
    config: LadderConfig,
    phi: f64,
    visibility: f64,
    n: u64,
    seed: u64,
) -> Result<HardyReport> {
    Ok(simulate_run(config, phi, visibility, n, seed)?.report)
}
