//! Exact microbribery: spend the whole budget, no more and no less.

use crate::error::{Error, Result};
use crate::model::{Criterion, Instance, Level, Money};

use super::micro::am_steps_needed;
use super::{micro_plan, SolveReport, SolverKind, SolverOptions};

const UNREACHED: Level = Level::MAX;

/// Spends that win one issue, with a way to rebuild the levels for each.
struct IssueTable {
    need: usize,
    width: usize,
    /// `choice[i][s][p]`: level voter `i` takes on the way to state
    /// `(s dollars, p progress)` after voters `0..=i`.
    choice: Vec<Level>,
}

impl IssueTable {
    fn build(inst: &Instance, issue: usize, criterion: Criterion, budget: usize) -> Option<IssueTable> {
        let m = inst.voters();
        let need = match criterion {
            Criterion::StrictMajority => inst.majority_needed(),
            Criterion::AverageMajority => am_steps_needed(inst, issue)? as usize,
        };
        let width = need + 1;
        let layer = (budget + 1) * width;
        let mut choice = vec![UNREACHED; m * layer];
        let mut prev = vec![false; layer];
        prev[0] = true;
        for i in 0..m {
            let base = inst.oriented_level(i, issue);
            let options: Vec<(usize, usize, Level)> = (base..=inst.top())
                .filter_map(|o| {
                    let c = inst.oriented_cost(i, issue, o)?;
                    let gain = match criterion {
                        Criterion::StrictMajority => usize::from(inst.level_clears(o)),
                        Criterion::AverageMajority => (o - base) as usize,
                    };
                    (c as u128 <= budget as u128).then_some((c as usize, gain, o))
                })
                .collect();
            let mut next = vec![false; layer];
            for s in 0..=budget {
                for p in 0..width {
                    if !prev[s * width + p] {
                        continue;
                    }
                    for &(c, gain, o) in &options {
                        if s + c > budget {
                            continue;
                        }
                        let cell = (s + c) * width + (p + gain).min(need);
                        if !next[cell] {
                            next[cell] = true;
                            choice[i * layer + cell] = o;
                        }
                    }
                }
            }
            prev = next;
        }
        Some(IssueTable { need, width, choice })
    }

    fn wins_with(&self, m: usize, spend: usize) -> bool {
        let layer = self.choice.len() / m;
        self.choice[(m - 1) * layer + spend * self.width + self.need] != UNREACHED
    }

    /// Oriented levels per voter for a winning spend.
    fn levels(&self, inst: &Instance, issue: usize, criterion: Criterion, spend: usize) -> Vec<Level> {
        let m = inst.voters();
        let layer = self.choice.len() / m;
        let mut levels = vec![0; m];
        let (mut s, mut p) = (spend, self.need);
        for i in (0..m).rev() {
            let o = self.choice[i * layer + s * self.width + p];
            levels[i] = o;
            let base = inst.oriented_level(i, issue);
            s -= inst.oriented_cost(i, issue, o).expect("chosen levels are priced") as usize;
            let gain = match criterion {
                Criterion::StrictMajority => usize::from(inst.level_clears(o)),
                Criterion::AverageMajority => (o - base) as usize,
            };
            // progress was capped, so find a predecessor that is actually reached
            if i > 0 {
                let lower = p.saturating_sub(gain);
                let prior = if p == self.need {
                    (lower..=p).find(|&q| self.choice[(i - 1) * layer + s * self.width + q] != UNREACHED)
                } else {
                    Some(lower)
                };
                p = prior.expect("reached states have a predecessor");
            }
        }
        levels
    }
}

/// Exact microbribery by dynamic programming: per issue, the set of spends
/// (up to the budget) that win it, then a subset-sum pass over issues to hit
/// the budget exactly. Targets never move against the agenda.
///
/// `min_cost` is the budget when feasible and `None` otherwise.
pub fn solve_exact_mb(inst: &Instance, criterion: Criterion, opts: &SolverOptions) -> Result<SolveReport> {
    let (m, n) = (inst.voters(), inst.issues());
    let budget = inst.budget();
    let infeasible = || SolveReport {
        feasible: false,
        min_cost: None,
        plan: None,
        per_issue_cost: vec![None; n],
        solver: SolverKind::ExactDp,
    };
    let b = budget as u128 + 1;
    let size = (m as u128) * b * (m as u128 * inst.top() as u128 + 1) * (inst.top() as u128 + 1) * n as u128;
    opts.check_size(size)?;
    let budget = usize::try_from(budget).map_err(|_| Error::ArithmeticOverflow)?;

    let mut tables = Vec::with_capacity(n);
    for j in 0..n {
        match IssueTable::build(inst, j, criterion, budget) {
            Some(t) => tables.push(t),
            None => return Ok(infeasible()),
        }
    }
    let mut reach = vec![false; budget + 1];
    reach[0] = true;
    // last_spend[j][s]: spend on issue j in some exact split of s over issues 0..=j
    let mut last_spend: Vec<Vec<usize>> = Vec::with_capacity(n);
    for table in &tables {
        let mut next = vec![false; budget + 1];
        let mut spend = vec![usize::MAX; budget + 1];
        for s in 0..=budget {
            if !reach[s] {
                continue;
            }
            for d in 0..=budget - s {
                if !next[s + d] && table.wins_with(m, d) {
                    next[s + d] = true;
                    spend[s + d] = d;
                }
            }
        }
        reach = next;
        last_spend.push(spend);
    }
    if !reach[budget] {
        return Ok(infeasible());
    }
    let mut spends = vec![0usize; n];
    let mut s = budget;
    for j in (0..n).rev() {
        spends[j] = last_spend[j][s];
        s -= spends[j];
    }
    let mut raises = Vec::new();
    for (j, table) in tables.iter().enumerate() {
        let levels = table.levels(inst, j, criterion, spends[j]);
        raises.extend(levels.into_iter().enumerate().map(|(i, o)| (i, j, o)));
    }
    Ok(SolveReport {
        feasible: true,
        min_cost: Some(inst.budget()),
        plan: Some(micro_plan(inst, &raises)),
        per_issue_cost: spends.iter().map(|&d| Some(d as Money)).collect(),
        solver: SolverKind::ExactDp,
    })
}
