//! Problem data, validation and the bribery semantics every solver shares.
//!
//! Probabilities live on the grid `level / (k + 1)` for `level` in `0..=k+1`.
//! All comparisons against the threshold are done in integers, never in
//! floating point.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer dollars.
pub type Money = u64;

/// Index into the probability grid.
pub type Level = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    /// Accept when the probability exceeds the threshold.
    #[default]
    Strict,
    /// Accept when the probability reaches the threshold.
    Weak,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Threshold {
    pub num: u64,
    pub den: u64,
}

impl Threshold {
    pub const HALF: Threshold = Threshold { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidThreshold { num, den });
        }
        Ok(Threshold { num, den })
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Criterion {
    #[serde(rename = "sm")]
    StrictMajority,
    #[serde(rename = "am")]
    AverageMajority,
}

impl Criterion {
    pub const ALL: [Criterion; 2] = [Criterion::StrictMajority, Criterion::AverageMajority];
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sm" | "strict-majority" => Ok(Criterion::StrictMajority),
            "am" | "average-majority" => Ok(Criterion::AverageMajority),
            other => Err(format!("unknown criterion `{other}` (expected sm or am)")),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::StrictMajority => "sm",
            Criterion::AverageMajority => "am",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "mb")]
    Micro,
    #[serde(rename = "ib")]
    Issue,
    #[serde(rename = "vb")]
    Voter,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Micro, Method::Issue, Method::Voter];
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mb" | "micro" => Ok(Method::Micro),
            "ib" | "issue" => Ok(Method::Issue),
            "vb" | "voter" => Ok(Method::Voter),
            other => Err(format!("unknown method `{other}` (expected mb, ib or vb)")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Micro => "mb",
            Method::Issue => "ib",
            Method::Voter => "vb",
        })
    }
}

/// Unchecked instance data, as read from a file or assembled by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInstance {
    pub k: Level,
    /// `levels[i][j]`: voter `i`'s acceptance level on issue `j`.
    pub levels: Vec<Vec<Level>>,
    /// `costs[i][j][l]`: price of moving voter `i` on issue `j` to level `l`;
    /// `None` marks an entry the lobby never buys.
    pub costs: Vec<Vec<Vec<Option<Money>>>>,
    pub agenda: Vec<bool>,
    pub threshold: Threshold,
    pub comparison: Comparison,
    pub weights: Option<Vec<u64>>,
    pub objective: Option<u64>,
    pub budget: Money,
}

/// A validated probabilistic lobbying instance. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    k: Level,
    voters: usize,
    issues: usize,
    levels: Vec<Level>,
    costs: Vec<Vec<Option<Money>>>,
    agenda: Vec<bool>,
    threshold: Threshold,
    comparison: Comparison,
    weights: Option<Vec<u64>>,
    objective: Option<u64>,
    budget: Money,
}

pub fn validate_instance(raw: RawInstance) -> Result<Instance> {
    Instance::validate(raw)
}

impl Instance {
    pub fn validate(raw: RawInstance) -> Result<Instance> {
        let voters = raw.levels.len();
        if voters == 0 {
            return Err(Error::ShapeMismatch("instance needs at least one voter".into()));
        }
        let issues = raw.agenda.len();
        if issues == 0 {
            return Err(Error::ShapeMismatch("instance needs at least one issue".into()));
        }
        let top = raw
            .k
            .checked_add(1)
            .ok_or_else(|| Error::ShapeMismatch("discretization level too large".into()))?;
        let width = top as usize + 1;
        Threshold::new(raw.threshold.num, raw.threshold.den)?;

        if raw.costs.len() != voters {
            return Err(Error::ShapeMismatch(format!(
                "{} cost rows for {} voters",
                raw.costs.len(),
                voters
            )));
        }
        let mut levels = Vec::with_capacity(voters * issues);
        let mut costs = Vec::with_capacity(voters * issues);
        for (i, (level_row, cost_rows)) in raw.levels.iter().zip(&raw.costs).enumerate() {
            if level_row.len() != issues {
                return Err(Error::ShapeMismatch(format!(
                    "voter {i} has {} levels, expected {issues}",
                    level_row.len()
                )));
            }
            if cost_rows.len() != issues {
                return Err(Error::ShapeMismatch(format!(
                    "voter {i} has {} price functions, expected {issues}",
                    cost_rows.len()
                )));
            }
            for (j, (&level, row)) in level_row.iter().zip(cost_rows).enumerate() {
                if level > top {
                    return Err(Error::LevelOutOfRange {
                        voter: i,
                        issue: j,
                        level,
                        top,
                    });
                }
                if row.len() != width {
                    return Err(Error::ShapeMismatch(format!(
                        "price function of voter {i} on issue {j} has {} entries, expected {width}",
                        row.len()
                    )));
                }
                check_price_function(i, j, level, raw.agenda[j], row)?;
                levels.push(level);
                costs.push(row.clone());
            }
        }

        match (&raw.weights, raw.objective) {
            (Some(w), Some(_)) => {
                if w.len() != issues {
                    return Err(Error::ShapeMismatch(format!(
                        "{} weights for {issues} issues",
                        w.len()
                    )));
                }
                if let Some(issue) = w.iter().position(|&x| x == 0) {
                    return Err(Error::InvalidWeight { issue });
                }
            }
            (None, None) => {}
            _ => {
                return Err(Error::ShapeMismatch(
                    "weights and objective must be given together".into(),
                ))
            }
        }

        Ok(Instance {
            k: raw.k,
            voters,
            issues,
            levels,
            costs,
            agenda: raw.agenda,
            threshold: raw.threshold,
            comparison: raw.comparison,
            weights: raw.weights,
            objective: raw.objective,
            budget: raw.budget,
        })
    }

    pub fn to_raw(&self) -> RawInstance {
        RawInstance {
            k: self.k,
            levels: (0..self.voters)
                .map(|i| (0..self.issues).map(|j| self.level(i, j)).collect())
                .collect(),
            costs: (0..self.voters)
                .map(|i| (0..self.issues).map(|j| self.cost_row(i, j).to_vec()).collect())
                .collect(),
            agenda: self.agenda.clone(),
            threshold: self.threshold,
            comparison: self.comparison,
            weights: self.weights.clone(),
            objective: self.objective,
            budget: self.budget,
        }
    }

    pub fn k(&self) -> Level {
        self.k
    }

    /// Highest grid level, i.e. probability one.
    pub fn top(&self) -> Level {
        self.k + 1
    }

    pub fn voters(&self) -> usize {
        self.voters
    }

    pub fn issues(&self) -> usize {
        self.issues
    }

    pub fn level(&self, voter: usize, issue: usize) -> Level {
        self.levels[voter * self.issues + issue]
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn cost_row(&self, voter: usize, issue: usize) -> &[Option<Money>] {
        &self.costs[voter * self.issues + issue]
    }

    pub fn cost(&self, voter: usize, issue: usize, level: Level) -> Option<Money> {
        self.cost_row(voter, issue)[level as usize]
    }

    pub fn agenda(&self) -> &[bool] {
        &self.agenda
    }

    pub fn threshold(&self) -> Threshold {
        self.threshold
    }

    pub fn comparison(&self) -> Comparison {
        self.comparison
    }

    pub fn weights(&self) -> Option<&[u64]> {
        self.weights.as_deref()
    }

    pub fn objective(&self) -> Option<u64> {
        self.objective
    }

    pub fn budget(&self) -> Money {
        self.budget
    }

    pub fn is_normalized(&self) -> bool {
        self.agenda.iter().all(|&z| z)
    }

    pub fn with_budget(&self, budget: Money) -> Instance {
        Instance {
            budget,
            ..self.clone()
        }
    }

    pub fn with_threshold(&self, threshold: Threshold, comparison: Comparison) -> Instance {
        Instance {
            threshold,
            comparison,
            ..self.clone()
        }
    }

    /// Attaches issue weights and an objective, revalidating the weights.
    pub fn with_weights(&self, weights: Vec<u64>, objective: u64) -> Result<Instance> {
        let mut raw = self.to_raw();
        raw.weights = Some(weights);
        raw.objective = Some(objective);
        Instance::validate(raw)
    }

    pub fn without_weights(&self) -> Instance {
        Instance {
            weights: None,
            objective: None,
            ..self.clone()
        }
    }

    /// Maps a grid level into agenda orientation for `issue`: after the
    /// mapping, "better for the lobby" always means "higher".
    pub fn orient(&self, issue: usize, level: Level) -> Level {
        if self.agenda[issue] {
            level
        } else {
            self.top() - level
        }
    }

    pub fn oriented_level(&self, voter: usize, issue: usize) -> Level {
        self.orient(issue, self.level(voter, issue))
    }

    pub fn oriented_cost(&self, voter: usize, issue: usize, oriented: Level) -> Option<Money> {
        self.cost(voter, issue, self.orient(issue, oriented))
    }

    /// Whether a single agenda-oriented level clears the threshold.
    pub fn level_clears(&self, oriented: Level) -> bool {
        let lhs = oriented as u128 * self.threshold.den as u128;
        let rhs = self.threshold.num as u128 * self.top() as u128;
        match self.comparison {
            Comparison::Strict => lhs > rhs,
            Comparison::Weak => lhs >= rhs,
        }
    }

    /// Whether the mean of `voters()` agenda-oriented levels summing to
    /// `level_sum` clears the threshold.
    pub fn average_clears(&self, level_sum: u64) -> bool {
        let lhs = level_sum as u128 * self.threshold.den as u128;
        let rhs = self.threshold.num as u128 * self.top() as u128 * self.voters as u128;
        match self.comparison {
            Comparison::Strict => lhs > rhs,
            Comparison::Weak => lhs >= rhs,
        }
    }

    /// Lowest agenda-oriented level that clears the threshold on its own.
    pub fn lowest_clearing_level(&self) -> Option<Level> {
        (0..=self.top()).find(|&l| self.level_clears(l))
    }

    /// Voters that must individually clear the threshold for a strict majority.
    pub fn majority_needed(&self) -> usize {
        self.voters / 2 + 1
    }

    /// Smallest agenda-oriented level sum whose mean clears the threshold.
    pub fn average_sum_needed(&self) -> Option<u64> {
        let max = self.top() as u64 * self.voters as u64;
        // average_clears is monotone in the sum
        if !self.average_clears(max) {
            return None;
        }
        let (mut lo, mut hi) = (0u64, max);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.average_clears(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }

    /// Whether an agenda-oriented column of levels satisfies `criterion`.
    pub fn column_wins<I>(&self, criterion: Criterion, oriented: I) -> bool
    where
        I: IntoIterator<Item = Level>,
    {
        match criterion {
            Criterion::StrictMajority => {
                let above = oriented.into_iter().filter(|&l| self.level_clears(l)).count();
                2 * above > self.voters
            }
            Criterion::AverageMajority => {
                let sum: u64 = oriented.into_iter().map(u64::from).sum();
                self.average_clears(sum)
            }
        }
    }

    /// Outcome of the vote if the grid levels were `levels` (row-major,
    /// original orientation).
    pub fn outcome_for_levels(&self, levels: &[Level], criterion: Criterion) -> Outcome {
        debug_assert_eq!(levels.len(), self.voters * self.issues);
        let bits = (0..self.issues)
            .map(|j| {
                let column = (0..self.voters).map(|i| self.orient(j, levels[i * self.issues + j]));
                if self.column_wins(criterion, column) {
                    self.agenda[j]
                } else {
                    !self.agenda[j]
                }
            })
            .collect();
        Outcome { bits }
    }

    /// Sum of the weights of issues whose outcome matches the agenda.
    pub fn matched_weight(&self, outcome: &Outcome) -> u64 {
        let unit = vec![1; self.issues];
        let weights = self.weights.as_deref().unwrap_or(&unit);
        outcome
            .bits
            .iter()
            .zip(&self.agenda)
            .zip(weights)
            .filter(|((b, z), _)| b == z)
            .map(|(_, &w)| w)
            .sum()
    }

    fn with_levels_and_costs(&self, levels: Vec<Level>, costs: Vec<Vec<Option<Money>>>) -> Instance {
        Instance {
            levels,
            costs,
            ..self.clone()
        }
    }
}

fn check_price_function(
    voter: usize,
    issue: usize,
    base: Level,
    agenda: bool,
    row: &[Option<Money>],
) -> Result<()> {
    let top = (row.len() - 1) as Level;
    if row[base as usize] != Some(0) {
        return Err(Error::NonzeroBaseCost { voter, issue });
    }
    // walk away from the base on both sides; costs may not decrease
    let sides: [(Box<dyn Iterator<Item = Level>>, bool); 2] = [
        (Box::new(base + 1..=top), agenda),
        (Box::new((0..base).rev()), !agenda),
    ];
    for (walk, required) in sides {
        let mut prev = 0;
        for level in walk {
            match row[level as usize] {
                None if required => {
                    return Err(Error::MissingAgendaSideCost {
                        voter,
                        issue,
                        level,
                    })
                }
                // nothing beyond an absent entry on the unimportant side is bought
                None => prev = Money::MAX,
                Some(0) => {
                    return Err(Error::ZeroCostOffBase {
                        voter,
                        issue,
                        level,
                    })
                }
                Some(c) if c < prev && prev != Money::MAX => {
                    return Err(Error::NonMonotoneCost {
                        voter,
                        issue,
                        level,
                    })
                }
                Some(c) => prev = c,
            }
        }
    }
    Ok(())
}

/// Result of the vote on every issue.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Outcome {
    pub bits: Vec<bool>,
}

impl Outcome {
    pub fn from_bits(bits: &str) -> Option<Outcome> {
        bits.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(|bits| Outcome { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn matches(&self, agenda: &[bool]) -> bool {
        self.bits == agenda
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// How the lobby spends its money.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BriberyPlan {
    /// Target grid level per voter and issue (original orientation).
    Micro { targets: Vec<Vec<Level>> },
    /// Dollars per issue, split evenly over the voters.
    Issue { dollars: Vec<Money> },
    /// Dollars per voter, split evenly over the issues.
    Voter { dollars: Vec<Money> },
}

impl BriberyPlan {
    /// A micro plan that leaves every level where it is.
    pub fn micro_identity(inst: &Instance) -> BriberyPlan {
        BriberyPlan::Micro {
            targets: (0..inst.voters())
                .map(|i| (0..inst.issues()).map(|j| inst.level(i, j)).collect())
                .collect(),
        }
    }

    pub fn method(&self) -> Method {
        match self {
            BriberyPlan::Micro { .. } => Method::Micro,
            BriberyPlan::Issue { .. } => Method::Issue,
            BriberyPlan::Voter { .. } => Method::Voter,
        }
    }
}

/// Per-issue distance to winning, plus the total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverProfile {
    pub per_issue: Vec<u64>,
    pub total: u64,
}

/// Rewrites every agenda-0 issue as an agenda-1 issue by mirroring levels and
/// price functions. Outcomes correspond issue by issue.
pub fn normalize_agenda(inst: &Instance) -> Instance {
    if inst.is_normalized() {
        return inst.clone();
    }
    let top = inst.top();
    let (m, n) = (inst.voters(), inst.issues());
    let mut levels = Vec::with_capacity(m * n);
    let mut costs = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let row = inst.cost_row(i, j);
            if inst.agenda[j] {
                levels.push(inst.level(i, j));
                costs.push(row.to_vec());
            } else {
                levels.push(top - inst.level(i, j));
                costs.push(row.iter().rev().copied().collect());
            }
        }
    }
    Instance {
        agenda: vec![true; n],
        ..inst.with_levels_and_costs(levels, costs)
    }
}

pub fn evaluate(inst: &Instance, criterion: Criterion) -> Outcome {
    inst.outcome_for_levels(&inst.levels, criterion)
}

/// Money credited to one voter/issue pair, as the exact fraction `num / den`.
#[derive(Debug, Clone, Copy)]
struct Credit {
    num: u128,
    den: u128,
}

fn pair_credits(inst: &Instance, plan: &BriberyPlan) -> Result<Vec<Credit>> {
    let (m, n) = (inst.voters(), inst.issues());
    let mut credits = Vec::with_capacity(m * n);
    match plan {
        BriberyPlan::Micro { targets } => {
            check_micro_shape(inst, targets)?;
            for (i, row) in targets.iter().enumerate() {
                for (j, &target) in row.iter().enumerate() {
                    let cost = micro_target_cost(inst, i, j, target)?;
                    credits.push(Credit {
                        num: cost as u128,
                        den: 1,
                    });
                }
            }
        }
        BriberyPlan::Issue { dollars } => {
            if dollars.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "issue plan has {} entries for {n} issues",
                    dollars.len()
                )));
            }
            for _ in 0..m {
                credits.extend(dollars.iter().map(|&d| Credit {
                    num: d as u128,
                    den: m as u128,
                }));
            }
        }
        BriberyPlan::Voter { dollars } => {
            if dollars.len() != m {
                return Err(Error::ShapeMismatch(format!(
                    "voter plan has {} entries for {m} voters",
                    dollars.len()
                )));
            }
            for &d in dollars {
                credits.extend((0..n).map(|_| Credit {
                    num: d as u128,
                    den: n as u128,
                }));
            }
        }
    }
    Ok(credits)
}

fn check_micro_shape(inst: &Instance, targets: &[Vec<Level>]) -> Result<()> {
    if targets.len() != inst.voters() || targets.iter().any(|r| r.len() != inst.issues()) {
        return Err(Error::ShapeMismatch(format!(
            "micro plan must be {}x{}",
            inst.voters(),
            inst.issues()
        )));
    }
    Ok(())
}

fn micro_target_cost(inst: &Instance, voter: usize, issue: usize, target: Level) -> Result<Money> {
    if target > inst.top() {
        return Err(Error::LevelOutOfRange {
            voter,
            issue,
            level: target,
            top: inst.top(),
        });
    }
    let oriented = inst.orient(issue, target);
    if oriented < inst.oriented_level(voter, issue) {
        return Err(Error::WrongDirection { voter, issue });
    }
    inst.cost(voter, issue, target)
        .ok_or(Error::WrongDirection { voter, issue })
}

/// Applies a plan. Every voter/issue pair moves to the highest
/// agenda-direction level its credited money pays for; the remaining prices
/// are reduced by that credit (rounded up to whole dollars) and the new level
/// becomes the zero-cost base.
pub fn apply_bribery(inst: &Instance, plan: &BriberyPlan) -> Result<Instance> {
    let credits = pair_credits(inst, plan)?;
    let (m, n) = (inst.voters(), inst.issues());
    let top = inst.top();
    let mut levels = Vec::with_capacity(m * n);
    let mut costs = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let credit = credits[i * n + j];
            let base = inst.oriented_level(i, j);
            let affordable = |o: Level| {
                inst.oriented_cost(i, j, o)
                    .is_some_and(|c| c as u128 * credit.den <= credit.num)
            };
            let reached = (base..=top).rev().find(|&o| affordable(o)).unwrap_or(base);
            let mut oriented_row = vec![None; top as usize + 1];
            oriented_row[reached as usize] = Some(0);
            for o in reached + 1..=top {
                let c = inst.oriented_cost(i, j, o).expect("agenda-side price present") as u128;
                let rest = (c * credit.den).saturating_sub(credit.num);
                oriented_row[o as usize] = Some(rest.div_ceil(credit.den) as Money);
            }
            if !inst.agenda[j] {
                oriented_row.reverse();
            }
            levels.push(inst.orient(j, reached));
            costs.push(oriented_row);
        }
    }
    Ok(inst.with_levels_and_costs(levels, costs))
}

/// Total dollars a plan spends.
pub fn plan_cost(inst: &Instance, plan: &BriberyPlan) -> Result<Money> {
    let sum = |it: &mut dyn Iterator<Item = Result<Money>>| -> Result<Money> {
        let mut total: Money = 0;
        for c in it {
            total = total.checked_add(c?).ok_or(Error::ArithmeticOverflow)?;
        }
        Ok(total)
    };
    match plan {
        BriberyPlan::Micro { targets } => {
            check_micro_shape(inst, targets)?;
            sum(&mut targets.iter().enumerate().flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(j, &t)| micro_target_cost(inst, i, j, t))
            }))
        }
        BriberyPlan::Issue { dollars } | BriberyPlan::Voter { dollars } => {
            sum(&mut dollars.iter().map(|&d| Ok(d)))
        }
    }
}

/// AM: how many single-level raises each issue still needs. SM: how many
/// more voters must individually clear the threshold.
pub fn cover_numbers(inst: &Instance, criterion: Criterion) -> Result<CoverProfile> {
    let (m, n) = (inst.voters(), inst.issues());
    let mut per_issue = Vec::with_capacity(n);
    for j in 0..n {
        let column: Vec<Level> = (0..m).map(|i| inst.oriented_level(i, j)).collect();
        let need = match criterion {
            Criterion::AverageMajority => {
                let sum: u64 = column.iter().map(|&l| u64::from(l)).sum();
                match inst.average_sum_needed() {
                    Some(target) => target.saturating_sub(sum),
                    None => return Err(Error::InfeasibleIssue { issue: j }),
                }
            }
            Criterion::StrictMajority => {
                let above = column.iter().filter(|&&l| inst.level_clears(l)).count();
                let deficit = inst.majority_needed().saturating_sub(above);
                if deficit > 0 && !inst.level_clears(inst.top()) {
                    return Err(Error::InfeasibleIssue { issue: j });
                }
                deficit as u64
            }
        };
        per_issue.push(need);
    }
    let total = per_issue.iter().sum();
    Ok(CoverProfile { per_issue, total })
}
