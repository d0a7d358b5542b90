//! Classical side of the ladder test.
//!
//! Deterministic local strategies are the vertices of the local polytope, so
//! the maximum of `S_K` over them is the bound obeyed by every local hidden
//! variable model.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ladder::{evaluate_ladder, ladder_terms, LadderAngles, LadderConfig, LadderTerm};
use crate::quantum::{distribution, JointDistribution, NoisyState, Outcome, HARDY_PHASE};

/// Largest number of strategies an exhaustive enumeration may visit.
pub const MAX_STRATEGIES: u64 = 1 << 24;

/// Predetermined outcomes for each of the `K + 1` settings of both parties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeterministicStrategy {
    pub a_assign: Vec<Outcome>,
    pub b_assign: Vec<Outcome>,
}

impl DeterministicStrategy {
    pub fn new(a_assign: Vec<Outcome>, b_assign: Vec<Outcome>) -> Result<Self> {
        if a_assign.len() != b_assign.len() || a_assign.len() < 2 {
            return Err(Error::TableShape {
                expected: a_assign.len().saturating_sub(1),
                found: b_assign.len().saturating_sub(1),
            });
        }
        Ok(DeterministicStrategy { a_assign, b_assign })
    }

    pub fn k(&self) -> usize {
        self.a_assign.len() - 1
    }

    fn from_index(k: usize, index: u64) -> Self {
        let width = k + 1;
        let bit = |i: usize| {
            if index >> i & 1 == 0 {
                Outcome::Plus
            } else {
                Outcome::Minus
            }
        };
        DeterministicStrategy {
            a_assign: (0..width).map(bit).collect(),
            b_assign: (width..2 * width).map(bit).collect(),
        }
    }

    /// 1 when both assigned outcomes match the term, 0 otherwise.
    pub fn indicator(&self, term: &LadderTerm) -> f64 {
        if self.a_assign[term.alice] == term.a && self.b_assign[term.bob] == term.b {
            1.0
        } else {
            0.0
        }
    }
}

fn strategy_count(k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidLadderSteps(k));
    }
    let shift = u32::try_from(k).map_or(u32::MAX, |k| k.saturating_add(1).saturating_mul(2));
    let strategies = 1u128.checked_shl(shift).unwrap_or(u128::MAX);
    if strategies >= u128::from(MAX_STRATEGIES) {
        return Err(Error::EnumerationTooLarge { k, strategies });
    }
    Ok(strategies as u64)
}

/// Every pair of outcome assignments, each exactly once.
pub fn enumerate_strategies(k: usize) -> Result<impl Iterator<Item = DeterministicStrategy>> {
    let count = strategy_count(k)?;
    Ok((0..count).map(move |index| DeterministicStrategy::from_index(k, index)))
}

pub fn strategy_s_value(strategy: &DeterministicStrategy) -> f64 {
    let k = strategy.k();
    let terms = ladder_terms(k);
    let top = strategy.indicator(&terms[0]);
    top - terms[1..]
        .iter()
        .map(|term| strategy.indicator(term))
        .sum::<f64>()
}

/// Exhaustive maximum of `S_K` over deterministic strategies.
pub fn lhv_max(k: usize) -> Result<f64> {
    Ok(enumerate_strategies(k)?
        .map(|s| strategy_s_value(&s))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Joint distributions for every setting pair `(i, j) ∈ {0..K}²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BehaviorTable {
    k: usize,
    entries: Vec<JointDistribution>,
}

impl BehaviorTable {
    /// `entries` in row-major order: Alice's setting is the row.
    pub fn new(k: usize, entries: Vec<JointDistribution>) -> Result<Self> {
        if k == 0 || entries.len() != (k + 1) * (k + 1) {
            return Err(Error::TableShape {
                expected: k,
                found: ((entries.len() as f64).sqrt() as usize).saturating_sub(1),
            });
        }
        for e in &entries {
            e.validate(1e-9)?;
        }
        Ok(BehaviorTable { k, entries })
    }

    pub fn from_strategy(strategy: &DeterministicStrategy) -> Self {
        let k = strategy.k();
        let entries = (0..=k)
            .flat_map(|i| {
                (0..=k).map(move |j| {
                    JointDistribution::deterministic(strategy.a_assign[i], strategy.b_assign[j])
                })
            })
            .collect();
        BehaviorTable { k, entries }
    }

    pub fn from_state(state: &NoisyState, angles: &LadderAngles) -> Self {
        let k = angles.k();
        let entries = (0..=k)
            .flat_map(|i| {
                (0..=k).map(move |j| distribution(state, &angles.alice(i), &angles.bob(j)))
            })
            .collect();
        BehaviorTable { k, entries }
    }

    /// Convex combination; weights must be nonnegative and sum to one.
    pub fn mixture(tables: &[BehaviorTable], weights: &[f64]) -> Result<Self> {
        let first = tables.first().ok_or(Error::EmptySample)?;
        let mut entries =
            vec![JointDistribution::from_probabilities(0.0, 0.0, 0.0, 0.0); first.entries.len()];
        for (table, &w) in tables.iter().zip(weights) {
            if table.k != first.k {
                return Err(Error::TableShape {
                    expected: first.k,
                    found: table.k,
                });
            }
            for (acc, e) in entries.iter_mut().zip(&table.entries) {
                acc.p_pp += w * e.p_pp;
                acc.p_pm += w * e.p_pm;
                acc.p_mp += w * e.p_mp;
                acc.p_mm += w * e.p_mm;
            }
        }
        BehaviorTable::new(first.k, entries)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &JointDistribution {
        &self.entries[i * (self.k + 1) + j]
    }

    pub fn probability(&self, term: &LadderTerm) -> f64 {
        self.get(term.alice, term.bob).get(term.a, term.b)
    }

    pub fn s_value(&self) -> f64 {
        let terms = ladder_terms(self.k);
        self.probability(&terms[0]) - terms[1..].iter().map(|t| self.probability(t)).sum::<f64>()
    }

    /// Largest disagreement between marginals computed with different partner
    /// settings. Zero for a no-signaling table.
    pub fn max_signaling(&self) -> f64 {
        let n = self.k + 1;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let reference = self.get(i, 0).marginal_a(Outcome::Plus);
            for j in 1..n {
                worst = worst.max((self.get(i, j).marginal_a(Outcome::Plus) - reference).abs());
            }
        }
        for j in 0..n {
            let reference = self.get(0, j).marginal_b(Outcome::Plus);
            for i in 1..n {
                worst = worst.max((self.get(i, j).marginal_b(Outcome::Plus) - reference).abs());
            }
        }
        worst
    }
}

/// Difference between the Clauser-Horne left-hand side, with single-detection
/// probabilities `P_A(a_1)` (partner `b_0`) and `P_B(b_1)` (partner `a_0`)
/// expanded into joint terms, and `S_1`. Zero for every normalized table.
pub fn ch_equivalence_residual(table: &BehaviorTable) -> Result<f64> {
    if table.k != 1 {
        return Err(Error::TableShape {
            expected: 1,
            found: table.k,
        });
    }
    use Outcome::{Minus, Plus};
    let p = |i, j, a, b| table.get(i, j).get(a, b);

    let marginal_a1 = p(1, 0, Plus, Plus) + p(1, 0, Plus, Minus);
    let marginal_b1 = p(0, 1, Plus, Plus) + p(0, 1, Minus, Plus);
    let ch = p(1, 1, Plus, Plus) + p(0, 1, Plus, Plus) + p(1, 0, Plus, Plus)
        - p(0, 0, Plus, Plus)
        - marginal_a1
        - marginal_b1;
    let hardy =
        p(1, 1, Plus, Plus) - p(0, 0, Plus, Plus) - p(0, 1, Minus, Plus) - p(1, 0, Plus, Minus);
    Ok((ch - hardy).abs())
}

/// `S_K(quantum) - max_LHV S_K` at the Hardy phase. Positive means violation.
pub fn quantum_vs_lhv(config: LadderConfig, visibility: f64) -> Result<f64> {
    let quantum = evaluate_ladder(config, HARDY_PHASE, visibility)?.s_value;
    Ok(quantum - lhv_max(config.k())?)
}
