//! Exact voter bribery by branch and bound, and the voter-profile kernel.
//!
//! A voter paid `d` dollars credits `d / n` to every issue, so the levels it
//! reaches only change when `d` crosses `n * price` for one of its price
//! entries. The search therefore branches over those candidate spends only.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::model::{normalize_agenda, BriberyPlan, Criterion, Instance, Level, Money, RawInstance};
use crate::par;

use super::{candidate_spends, reached_level, SolveReport, SolverKind, SolverOptions};

/// What a search leaf must achieve.
#[derive(Debug, Clone, Copy)]
enum Goal<'a> {
    AllIssues,
    Weight { weights: &'a [u64], objective: u64 },
}

/// One voter's candidate spends and what each contributes per issue
/// (SM: 1 if the voter clears the threshold; AM: its level).
struct VoterOptions {
    spends: Vec<Money>,
    contributions: Vec<Vec<u64>>,
}

struct Search<'a> {
    inst: &'a Instance,
    criterion: Criterion,
    goal: Goal<'a>,
    options: Vec<VoterOptions>,
    /// `reach[i][j]`: largest total contribution voters `i..` can still add.
    reach: Vec<Vec<u64>>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, criterion: Criterion, goal: Goal<'a>) -> Self {
        let (m, n) = (inst.voters(), inst.issues());
        let share = n as u64;
        let contribution = |level: Level| match criterion {
            Criterion::StrictMajority => u64::from(inst.level_clears(level)),
            Criterion::AverageMajority => u64::from(level),
        };
        let options: Vec<VoterOptions> = (0..m)
            .map(|i| {
                let spends = candidate_spends(inst, (0..n).map(|j| (i, j)), share);
                let contributions = spends
                    .iter()
                    .map(|&d| (0..n).map(|j| contribution(reached_level(inst, i, j, d, share))).collect())
                    .collect();
                VoterOptions { spends, contributions }
            })
            .collect();
        let mut reach = vec![vec![0u64; n]; m + 1];
        for i in (0..m).rev() {
            // contributions grow with the spend, so the last option is the largest
            let best = options[i].contributions.last().expect("zero spend always present");
            for j in 0..n {
                reach[i][j] = reach[i + 1][j] + best[j];
            }
        }
        Search {
            inst,
            criterion,
            goal,
            options,
            reach,
        }
    }

    fn size(&self) -> u128 {
        self.options
            .iter()
            .map(|o| o.spends.len() as u128)
            .fold(1u128, |acc, x| acc.saturating_mul(x))
    }

    fn issue_wins(&self, total: u64) -> bool {
        match self.criterion {
            Criterion::StrictMajority => 2 * total > self.inst.voters() as u64,
            Criterion::AverageMajority => self.inst.average_clears(total),
        }
    }

    fn won_weight(&self, totals: &[u64], weights: &[u64]) -> u64 {
        totals
            .iter()
            .zip(weights)
            .filter(|(&t, _)| self.issue_wins(t))
            .map(|(_, &w)| w)
            .sum()
    }

    /// Whether the goal is still reachable from `totals` with voters `next..`.
    fn reachable(&self, totals: &[u64], next: usize) -> bool {
        let optimistic = totals.iter().zip(&self.reach[next]).map(|(&t, &r)| t + r);
        match self.goal {
            Goal::AllIssues => optimistic.into_iter().all(|t| self.issue_wins(t)),
            Goal::Weight { weights, objective } => {
                let best: Vec<u64> = optimistic.collect();
                self.won_weight(&best, weights) >= objective
            }
        }
    }

    fn satisfied(&self, totals: &[u64]) -> bool {
        match self.goal {
            Goal::AllIssues => totals.iter().all(|&t| self.issue_wins(t)),
            Goal::Weight { weights, objective } => self.won_weight(totals, weights) >= objective,
        }
    }

    /// Depth-first search below a fixed choice for voter 0. Returns the first
    /// cheapest completion found in search order.
    fn branch(&self, first: usize, incumbent: &AtomicU64) -> Option<(Money, Vec<usize>)> {
        let n = self.inst.issues();
        let mut totals = vec![0u64; n];
        let mut picks = vec![0usize; self.options.len()];
        let mut best = None;
        let start = &self.options[0];
        add(&mut totals, &start.contributions[first]);
        picks[0] = first;
        self.dfs(1, start.spends[first], &mut totals, &mut picks, &mut best, incumbent);
        best
    }

    fn dfs(
        &self,
        voter: usize,
        spent: Money,
        totals: &mut Vec<u64>,
        picks: &mut Vec<usize>,
        best: &mut Option<(Money, Vec<usize>)>,
        incumbent: &AtomicU64,
    ) {
        if spent > incumbent.load(Ordering::Relaxed) || !self.reachable(totals, voter) {
            return;
        }
        if voter == self.options.len() {
            if self.satisfied(totals) && best.as_ref().is_none_or(|(c, _)| spent < *c) {
                *best = Some((spent, picks.clone()));
                incumbent.fetch_min(spent, Ordering::Relaxed);
            }
            return;
        }
        let opts = &self.options[voter];
        for (idx, &d) in opts.spends.iter().enumerate() {
            let Some(total) = spent.checked_add(d) else { break };
            if total > incumbent.load(Ordering::Relaxed) {
                break;
            }
            add(totals, &opts.contributions[idx]);
            picks[voter] = idx;
            self.dfs(voter + 1, total, totals, picks, best, incumbent);
            sub(totals, &opts.contributions[idx]);
        }
        picks[voter] = 0;
    }

    fn run(&self, opts: &SolverOptions) -> Result<Option<(Money, Vec<Money>)>> {
        opts.check_size(self.size())?;
        let incumbent = AtomicU64::new(Money::MAX);
        let branches = par::map_range(opts.execution, self.options[0].spends.len(), |first| {
            self.branch(first, &incumbent)
        });
        let best = branches
            .into_iter()
            .flatten()
            .min_by_key(|(cost, _)| *cost);
        Ok(best.map(|(cost, picks)| {
            let dollars = picks
                .iter()
                .zip(&self.options)
                .map(|(&p, o)| o.spends[p])
                .collect();
            (cost, dollars)
        }))
    }
}

fn add(totals: &mut [u64], delta: &[u64]) {
    totals.iter_mut().zip(delta).for_each(|(t, d)| *t += d);
}

fn sub(totals: &mut [u64], delta: &[u64]) {
    totals.iter_mut().zip(delta).for_each(|(t, d)| *t -= d);
}

fn voter_report(inst: &Instance, criterion: Criterion, best: Option<(Money, Vec<Money>)>) -> Result<SolveReport> {
    let n = inst.issues();
    let Some((cost, dollars)) = best else {
        return Ok(SolveReport::from_min_cost(inst, None, None, vec![None; n], SolverKind::ExactBrute));
    };
    let plan = BriberyPlan::Voter { dollars };
    let outcome = crate::model::evaluate(&crate::model::apply_bribery(inst, &plan)?, criterion);
    // every candidate spend is a multiple of n, so each issue receives cost / n
    let per_issue_cost = outcome
        .bits
        .iter()
        .zip(inst.agenda())
        .map(|(b, z)| (b == z).then_some(cost / n as u64))
        .collect();
    Ok(SolveReport::from_min_cost(
        inst,
        Some(cost),
        Some(plan),
        per_issue_cost,
        SolverKind::ExactBrute,
    ))
}

/// Exact minimum-cost voter bribery that wins every issue.
pub fn solve_vb_exact(inst: &Instance, criterion: Criterion, opts: &SolverOptions) -> Result<SolveReport> {
    let best = Search::new(inst, criterion, Goal::AllIssues).run(opts)?;
    voter_report(inst, criterion, best)
}

/// Exact minimum-cost voter bribery whose won issues weigh at least the
/// objective.
pub fn solve_weighted_vb_exact(inst: &Instance, criterion: Criterion, opts: &SolverOptions) -> Result<SolveReport> {
    let (Some(weights), Some(objective)) = (inst.weights(), inst.objective()) else {
        return Err(Error::MissingWeights);
    };
    let best = Search::new(inst, criterion, Goal::Weight { weights, objective }).run(opts)?;
    voter_report(inst, criterion, best)
}

/// Output of [`kernelize_vb`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    /// Normalized instance: retained voters first, then filler voters.
    pub instance: Instance,
    /// Original indices of the retained voters, in order.
    pub retained: Vec<usize>,
    /// Unbribable voters appended to keep every issue's majority margin.
    pub fillers: usize,
}

/// Voter-profile kernel for strict-majority voter bribery.
///
/// A voter's profile is the least money that makes it clear the threshold on
/// each issue (unaffordable amounts above the budget are all the same). Voters
/// with equal profiles are interchangeable, and a plan within budget `B` pays
/// at most `B / n` voters, so each profile keeps at most that many voters.
/// Profiles that no affordable payment changes keep none. The dropped voters
/// still count toward the majorities; they are replaced by the fewest voters
/// that cannot be bribed within budget and that preserve each issue's
/// deficit (exactly, or as "already won" / "out of reach").
///
/// The minimum cost is unchanged whenever it is at most the budget.
pub fn kernelize_vb(inst: &Instance) -> Result<Kernel> {
    let inst = normalize_agenda(inst);
    let (m, n) = (inst.voters(), inst.issues());
    let budget = inst.budget();
    let unchanged = |inst: Instance| Kernel {
        retained: (0..m).collect(),
        fillers: 0,
        instance: inst,
    };
    let top = inst.top();
    match inst.lowest_clearing_level() {
        Some(l) if l > 0 => {}
        // nobody or everybody clears: no room to shrink
        _ => return Ok(unchanged(inst)),
    }

    let share = n as u64;
    let profile = |i: usize| -> Vec<Option<Money>> {
        (0..n)
            .map(|j| {
                let base = inst.level(i, j);
                if inst.level_clears(base) {
                    return Some(0);
                }
                (base + 1..=top)
                    .find(|&o| inst.level_clears(o))
                    .and_then(|o| inst.cost(i, j, o))
                    .and_then(|c| c.checked_mul(share))
                    .filter(|&w| w <= budget)
            })
            .collect()
    };
    let mut groups: BTreeMap<Vec<Option<Money>>, Vec<usize>> = BTreeMap::new();
    for i in 0..m {
        groups.entry(profile(i)).or_default().push(i);
    }
    let cap = (budget / share) as usize;
    let mut retained = Vec::new();
    for (prof, members) in &groups {
        let useful = prof.iter().any(|w| matches!(w, Some(x) if *x > 0));
        let keep = if useful { cap.min(members.len()) } else { 0 };
        retained.extend_from_slice(&members[..keep]);
    }
    retained.sort_unstable();
    if retained.len() == m {
        return Ok(unchanged(inst));
    }

    let clears = |i: usize, j: usize| inst.level_clears(inst.level(i, j));
    let dropped = m - retained.len();
    let need = |voters: usize| (voters / 2 + 1) as i64;
    let kept_above: Vec<i64> = (0..n)
        .map(|j| retained.iter().filter(|&&i| clears(i, j)).count() as i64)
        .collect();
    let deficit: Vec<i64> = (0..n)
        .map(|j| need(m) - (0..m).filter(|&i| clears(i, j)).count() as i64)
        .collect();
    let reach = cap as i64;

    // smallest filler count whose clearing counts keep each deficit's meaning
    let r = retained.len();
    let fillers_above = (r.max(1) - r..=dropped)
        .find_map(|f| {
            let base = need(r + f);
            (0..n)
                .map(|j| {
                    let fits = |g: i64| {
                        let s = base - kept_above[j] - g;
                        if deficit[j] <= 0 {
                            s <= 0
                        } else if deficit[j] > reach {
                            s > reach
                        } else {
                            s == deficit[j]
                        }
                    };
                    (0..=f as i64).find(|&g| fits(g)).map(|g| g as usize)
                })
                .collect::<Option<Vec<usize>>>()
                .map(|g| (f, g))
        })
        .expect("keeping every dropped voter's contribution always fits");
    let (f, above) = fillers_above;

    let unreachable = budget.saturating_add(1);
    let mut raw = RawInstance {
        levels: Vec::with_capacity(r + f),
        costs: Vec::with_capacity(r + f),
        ..inst.to_raw()
    };
    for &i in &retained {
        raw.levels.push((0..n).map(|j| inst.level(i, j)).collect());
        raw.costs.push((0..n).map(|j| inst.cost_row(i, j).to_vec()).collect());
    }
    for x in 0..f {
        let mut levels = Vec::with_capacity(n);
        let mut costs = Vec::with_capacity(n);
        for &g in &above {
            if x < g {
                levels.push(top);
                let mut row = vec![None; top as usize + 1];
                row[top as usize] = Some(0);
                costs.push(row);
            } else {
                levels.push(0);
                let mut row = vec![Some(unreachable); top as usize + 1];
                row[0] = Some(0);
                costs.push(row);
            }
        }
        raw.levels.push(levels);
        raw.costs.push(costs);
    }
    Ok(Kernel {
        instance: Instance::validate(raw)?,
        retained,
        fillers: f,
    })
}
