//! Seeded random instances and instances built from classic problems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Comparison, Instance, Level, Money, RawInstance, Threshold};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgendaPolicy {
    #[default]
    AllOnes,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdPolicy {
    Fixed { threshold: Threshold, comparison: Comparison },
    /// `num/den` with `den` in `1..=6`, either comparison.
    Random,
}

/// Ranges are inclusive `(min, max)` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub voters: (usize, usize),
    pub issues: (usize, usize),
    pub k: (Level, Level),
    pub max_cost: Money,
    pub seed: u64,
    pub agenda: AgendaPolicy,
    pub threshold: ThresholdPolicy,
    /// Fixed budget; drawn from `0..=max_cost * voters * issues` if `None`.
    pub budget: Option<Money>,
    /// Draw weights in `1..=max` and an objective up to their sum.
    pub max_weight: Option<u64>,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            voters: (1, 3),
            issues: (1, 3),
            k: (0, 3),
            max_cost: 9,
            seed: 0,
            agenda: AgendaPolicy::AllOnes,
            threshold: ThresholdPolicy::Fixed {
                threshold: Threshold::HALF,
                comparison: Comparison::Strict,
            },
            budget: None,
            max_weight: None,
        }
    }
}

impl GenConfig {
    pub fn with_seed(&self, seed: u64) -> GenConfig {
        GenConfig { seed, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        let ordered = self.voters.0 <= self.voters.1 && self.issues.0 <= self.issues.1 && self.k.0 <= self.k.1;
        if !ordered || self.voters.0 == 0 || self.issues.0 == 0 {
            return Err(Error::ShapeMismatch("empty or reversed size range".into()));
        }
        if self.max_cost == 0 {
            return Err(Error::ShapeMismatch("max_cost must be positive".into()));
        }
        if self.max_weight == Some(0) {
            return Err(Error::InvalidWeight { issue: 0 });
        }
        Ok(())
    }
}

/// Nondecreasing prices in `1..=max` for `steps` levels away from the base.
fn price_side(rng: &mut ChaCha8Rng, steps: usize, max: Money) -> Vec<Money> {
    let mut prices: Vec<Money> = (0..steps).map(|_| rng.gen_range(1..=max)).collect();
    prices.sort_unstable();
    prices
}

/// A random valid instance. The same config always yields the same instance.
pub fn gen_random(cfg: &GenConfig) -> Result<Instance> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let m = rng.gen_range(cfg.voters.0..=cfg.voters.1);
    let n = rng.gen_range(cfg.issues.0..=cfg.issues.1);
    let k = rng.gen_range(cfg.k.0..=cfg.k.1);
    let top = k + 1;
    let agenda: Vec<bool> = match cfg.agenda {
        AgendaPolicy::AllOnes => vec![true; n],
        AgendaPolicy::Random => (0..n).map(|_| rng.gen()).collect(),
    };
    let (threshold, comparison) = match cfg.threshold {
        ThresholdPolicy::Fixed { threshold, comparison } => (threshold, comparison),
        ThresholdPolicy::Random => {
            let den = rng.gen_range(1..=6);
            let num = rng.gen_range(0..=den);
            let comparison = if rng.gen() { Comparison::Strict } else { Comparison::Weak };
            (Threshold::new(num, den)?, comparison)
        }
    };
    let mut levels = Vec::with_capacity(m);
    let mut costs = Vec::with_capacity(m);
    for _ in 0..m {
        let mut level_row = Vec::with_capacity(n);
        let mut cost_row = Vec::with_capacity(n);
        for &z in &agenda {
            let a = rng.gen_range(0..=top);
            let (up, down) = (top - a, a);
            let mut row = vec![None; top as usize + 1];
            row[a as usize] = Some(0);
            let above = price_side(&mut rng, up as usize, cfg.max_cost);
            let below = price_side(&mut rng, down as usize, cfg.max_cost);
            // the side away from the agenda is optional
            let other_present: bool = rng.gen();
            if z || other_present {
                for (step, c) in above.into_iter().enumerate() {
                    row[a as usize + 1 + step] = Some(c);
                }
            }
            if !z || other_present {
                for (step, c) in below.into_iter().enumerate() {
                    row[a as usize - 1 - step] = Some(c);
                }
            }
            level_row.push(a);
            cost_row.push(row);
        }
        levels.push(level_row);
        costs.push(cost_row);
    }
    let budget = cfg
        .budget
        .unwrap_or_else(|| rng.gen_range(0..=cfg.max_cost.saturating_mul((m * n) as Money)));
    let (weights, objective) = match cfg.max_weight {
        Some(max) => {
            let w: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max)).collect();
            let total: u64 = w.iter().sum();
            let o = rng.gen_range(0..=total);
            (Some(w), Some(o))
        }
        None => (None, None),
    };
    Instance::validate(RawInstance {
        k,
        levels,
        costs,
        agenda,
        threshold,
        comparison,
        weights,
        objective,
        budget,
    })
}

/// One-issue, `k = 0` instance whose exact-spend micro problem is solvable
/// iff some subset of `a` sums to `target`.
///
/// The first `|a|` voters already accept for free; the other `|a|` reject
/// and cost `a[i]` to flip. Any spend is a subset sum, and flipping any
/// nonempty subset gives a strict majority. The empty subset does not, so
/// `target = 0` is never solvable.
pub fn from_subset_sum(a: &[u64], target: u64) -> Result<Instance> {
    if a.is_empty() {
        return Err(Error::InvalidReduction("subset sum needs at least one element".into()));
    }
    if a.contains(&0) {
        return Err(Error::InvalidReduction("subset sum elements must be positive".into()));
    }
    let t = a.len();
    let mut levels = vec![vec![1]; t];
    levels.extend(vec![vec![0]; t]);
    let mut costs = vec![vec![vec![None, Some(0)]]; t];
    costs.extend(a.iter().map(|&x| vec![vec![Some(0), Some(x)]]));
    Instance::validate(RawInstance {
        k: 0,
        levels,
        costs,
        agenda: vec![true],
        threshold: Threshold::HALF,
        comparison: Comparison::Strict,
        weights: None,
        objective: None,
        budget: target,
    })
}

/// One voter, one issue per item. Item `j` costs `w[j]` to win and weighs
/// `p[j]`; budget `capacity`, objective `min_profit`. Free items start won.
pub fn from_knapsack(w: &[Money], p: &[u64], capacity: Money, min_profit: u64) -> Result<Instance> {
    if w.is_empty() || w.len() != p.len() {
        return Err(Error::InvalidReduction(format!(
            "{} item costs and {} profits",
            w.len(),
            p.len()
        )));
    }
    if p.contains(&0) {
        return Err(Error::InvalidReduction("item profits must be positive".into()));
    }
    let levels = vec![w.iter().map(|&c| Level::from(c == 0)).collect()];
    let costs = vec![w
        .iter()
        .map(|&c| if c == 0 { vec![None, Some(0)] } else { vec![Some(0), Some(c)] })
        .collect()];
    Instance::validate(RawInstance {
        k: 0,
        levels,
        costs,
        agenda: vec![true; w.len()],
        threshold: Threshold::HALF,
        comparison: Comparison::Strict,
        weights: Some(p.to_vec()),
        objective: Some(min_profit),
        budget: capacity,
    })
}

/// `k = 0` instance with unit flip costs and budget `b * n`: paying `n` to a
/// voter makes it vote the agenda on every issue, so the voter-bribery
/// problem asks for `b` voters whose flip wins every column.
pub fn from_optimal_lobbying(e: &[Vec<bool>], z: &[bool], b: u64) -> Result<Instance> {
    let n = z.len();
    if e.is_empty() || n == 0 || e.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidReduction("matrix must be m x n with m, n > 0".into()));
    }
    let levels = e.iter().map(|row| row.iter().map(|&x| Level::from(x)).collect()).collect();
    let costs = e
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| if x { vec![Some(1), Some(0)] } else { vec![Some(0), Some(1)] })
                .collect()
        })
        .collect();
    let budget = b.checked_mul(n as u64).ok_or(Error::ArithmeticOverflow)?;
    Instance::validate(RawInstance {
        k: 0,
        levels,
        costs,
        agenda: z.to_vec(),
        threshold: Threshold::HALF,
        comparison: Comparison::Strict,
        weights: None,
        objective: None,
        budget,
    })
}
