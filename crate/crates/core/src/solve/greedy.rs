//! Greedy voter bribery.
//!
//! Money paid to a voter is spread evenly over all issues and is never lost:
//! a partial payment lowers the remaining price of every later step for that
//! voter. The state is therefore just the per-issue credit each voter has
//! received so far.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{cover_numbers, BriberyPlan, Criterion, Instance, Level, Money};

/// How average-majority greedy prices a step. Strict majority always
/// considers every amount.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GreedyRule {
    /// Every `(voter, amount)` pair is an offer; its units are the level
    /// raises it buys on unwon issues, capped at each issue's deficit. This
    /// is the rule the `ln(N) + 1` guarantee holds for.
    #[default]
    Multicover,
    /// Each voter offers only its cheapest next raise on an unwon issue,
    /// counted once per issue it lifts.
    NextStep,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyStep {
    pub voter: usize,
    pub dollars: Money,
    /// Issues on which the voter's level rose, won or not.
    pub raised_issues: Vec<usize>,
    /// Units of deficit this step counted toward its price per unit.
    pub units: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyTrace {
    pub criterion: Criterion,
    pub rule: GreedyRule,
    pub steps: Vec<GreedyStep>,
    pub total_cost: Money,
    /// Cover number (AM) or strict cover number (SM) before the first step.
    pub cover_number: u64,
    /// `ln(N) + 1` for cover number `N` (1 when `N <= 1`).
    pub ratio_bound: f64,
    /// Cumulative dollars per voter.
    pub plan: BriberyPlan,
}

impl GreedyTrace {
    pub fn within_budget(&self, inst: &Instance) -> bool {
        self.total_cost <= inst.budget()
    }
}

/// `ln(n) + 1`, the approximation guarantee for cover number `n`.
pub fn log_ratio_bound(cover_number: u64) -> f64 {
    if cover_number <= 1 {
        1.0
    } else {
        (cover_number as f64).ln() + 1.0
    }
}

/// The n-th harmonic number as a reduced fraction, if it fits in `u128`.
pub fn harmonic(n: u64) -> Option<(u128, u128)> {
    let (mut num, mut den) = (0u128, 1u128);
    for r in 1..=n as u128 {
        // num/den + 1/r
        num = num.checked_mul(r)?.checked_add(den)?;
        den = den.checked_mul(r)?;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    Some((num, den))
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

struct State<'a> {
    inst: &'a Instance,
    criterion: Criterion,
    rule: GreedyRule,
    /// Per-issue credit each voter has received.
    credit: Vec<Money>,
    /// Agenda-oriented levels, row-major.
    levels: Vec<Level>,
}

impl<'a> State<'a> {
    fn new(inst: &'a Instance, criterion: Criterion, rule: GreedyRule) -> Self {
        let levels = (0..inst.voters())
            .flat_map(|i| (0..inst.issues()).map(move |j| inst.oriented_level(i, j)))
            .collect();
        State {
            inst,
            criterion,
            rule,
            credit: vec![0; inst.voters()],
            levels,
        }
    }

    fn level(&self, voter: usize, issue: usize) -> Level {
        self.levels[voter * self.inst.issues() + issue]
    }

    fn price(&self, voter: usize, issue: usize, oriented: Level) -> Money {
        self.inst
            .oriented_cost(voter, issue, oriented)
            .expect("agenda-side price present")
    }

    /// Remaining deficit of every issue under the current levels.
    fn deficits(&self) -> Vec<u64> {
        let inst = self.inst;
        (0..inst.issues())
            .map(|j| match self.criterion {
                Criterion::AverageMajority => {
                    let sum: u64 = (0..inst.voters()).map(|i| u64::from(self.level(i, j))).sum();
                    inst.average_sum_needed()
                        .expect("checked winnable")
                        .saturating_sub(sum)
                }
                Criterion::StrictMajority => {
                    let above = (0..inst.voters())
                        .filter(|&i| inst.level_clears(self.level(i, j)))
                        .count();
                    inst.majority_needed().saturating_sub(above) as u64
                }
            })
            .collect()
    }

    /// Extra per-issue credit `voter` needs to go up one level on `issue`.
    fn next_step(&self, voter: usize, issue: usize) -> Option<Money> {
        let level = self.level(voter, issue);
        (level < self.inst.top()).then(|| self.price(voter, issue, level + 1) - self.credit[voter])
    }

    /// Extra per-issue credit `voter` needs to clear the threshold on `issue`.
    fn crossing(&self, voter: usize, issue: usize) -> Option<Money> {
        let level = self.level(voter, issue);
        if self.inst.level_clears(level) {
            return None;
        }
        (level + 1..=self.inst.top())
            .find(|&o| self.inst.level_clears(o))
            .map(|o| self.price(voter, issue, o) - self.credit[voter])
    }

    /// Best `(per-issue credit, units)` offer of one voter.
    fn best_offer(&self, voter: usize, deficits: &[u64]) -> Option<(Money, u64)> {
        let unwon = || (0..self.inst.issues()).filter(|&j| deficits[j] > 0);
        match (self.criterion, self.rule) {
            (Criterion::AverageMajority, GreedyRule::Multicover) => {
                let mut best: Option<(Money, u64)> = None;
                let mut amounts: Vec<Money> = unwon()
                    .flat_map(|j| {
                        (self.level(voter, j) + 1..=self.inst.top())
                            .map(move |o| self.price(voter, j, o) - self.credit[voter])
                    })
                    .collect();
                amounts.sort_unstable();
                amounts.dedup();
                for x in amounts {
                    let units = unwon()
                        .map(|j| {
                            let gained = (self.level(voter, j) + 1..=self.inst.top())
                                .take_while(|&o| self.price(voter, j, o) - self.credit[voter] <= x)
                                .count() as u64;
                            gained.min(deficits[j])
                        })
                        .sum();
                    if best.is_none_or(|b| cheaper((x, units), b)) {
                        best = Some((x, units));
                    }
                }
                best
            }
            (Criterion::AverageMajority, GreedyRule::NextStep) => {
                let step = unwon().filter_map(|j| self.next_step(voter, j)).min()?;
                let units = unwon()
                    .filter(|&j| self.next_step(voter, j).is_some_and(|s| s <= step))
                    .count() as u64;
                Some((step, units))
            }
            (Criterion::StrictMajority, _) => {
                let mut crossings: Vec<Money> = unwon().filter_map(|j| self.crossing(voter, j)).collect();
                crossings.sort_unstable();
                let mut best: Option<(Money, u64)> = None;
                for (idx, &x) in crossings.iter().enumerate() {
                    // all crossings up to x are bought together
                    if crossings.get(idx + 1) == Some(&x) {
                        continue;
                    }
                    let units = idx as u64 + 1;
                    if best.is_none_or(|b| cheaper((x, units), b)) {
                        best = Some((x, units));
                    }
                }
                best
            }
        }
    }

    /// Credits `amount` more per issue to `voter`; returns the issues that rose.
    fn pay(&mut self, voter: usize, amount: Money) -> Vec<usize> {
        self.credit[voter] += amount;
        let n = self.inst.issues();
        let mut raised = Vec::new();
        for j in 0..n {
            let mut level = self.level(voter, j);
            while level < self.inst.top() && self.price(voter, j, level + 1) <= self.credit[voter] {
                level += 1;
            }
            if level != self.level(voter, j) {
                self.levels[voter * n + j] = level;
                raised.push(j);
            }
        }
        raised
    }
}

/// Strictly lower price per unit; `a.0 / a.1 < b.0 / b.1`.
fn cheaper(a: (Money, u64), b: (Money, u64)) -> bool {
    (a.0 as u128) * (b.1 as u128) < (b.0 as u128) * (a.1 as u128)
}

/// Greedy minimum-budget voter bribery with the default rule.
pub fn greedy_vb(inst: &Instance, criterion: Criterion) -> Result<Option<GreedyTrace>> {
    greedy_vb_with(inst, criterion, GreedyRule::default())
}

/// Greedy minimum-budget voter bribery.
///
/// Repeatedly pays one voter the amount with the lowest price per unit of
/// remaining deficit. AM units are level raises (see [`GreedyRule`]); SM
/// units are unwon issues on which the voter newly clears the threshold.
/// Ties go to the lowest voter index, then the smaller payment. Returns
/// `None` when some issue cannot be won at all.
pub fn greedy_vb_with(inst: &Instance, criterion: Criterion, rule: GreedyRule) -> Result<Option<GreedyTrace>> {
    let cover = match cover_numbers(inst, criterion) {
        Ok(c) => c,
        Err(Error::InfeasibleIssue { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let n = inst.issues() as u64;
    let mut state = State::new(inst, criterion, rule);
    let mut steps = Vec::new();
    let mut total: Money = 0;
    loop {
        let deficits = state.deficits();
        if deficits.iter().all(|&d| d == 0) {
            break;
        }
        let mut choice: Option<(usize, Money, u64)> = None;
        for v in 0..inst.voters() {
            if let Some((amount, units)) = state.best_offer(v, &deficits) {
                if choice.is_none_or(|(_, a, u)| cheaper((amount, units), (a, u))) {
                    choice = Some((v, amount, units));
                }
            }
        }
        let (voter, amount, units) = choice.expect("a winnable unwon issue always has an offer");
        let dollars = amount.checked_mul(n).ok_or(Error::ArithmeticOverflow)?;
        total = total.checked_add(dollars).ok_or(Error::ArithmeticOverflow)?;
        let raised_issues = state.pay(voter, amount);
        steps.push(GreedyStep {
            voter,
            dollars,
            raised_issues,
            units,
        });
    }
    let plan = BriberyPlan::Voter {
        dollars: state.credit.iter().map(|&c| c * n).collect(),
    };
    Ok(Some(GreedyTrace {
        criterion,
        rule,
        steps,
        total_cost: total,
        cover_number: cover.total,
        ratio_bound: log_ratio_bound(cover.total),
        plan,
    }))
}
