use crate::error::{Error, Result};
use crate::model::{Instance, Level, Money};
use crate::schedule::{min_cost_schedule, ScheduleInstance};

use super::{micro_plan, SolveReport, SolverKind};

/// Cheapest way to win one issue by micro bribery.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IssueBribe {
    pub cost: Money,
    /// `(voter, agenda-oriented target level)` for every voter that moves.
    pub raises: Vec<(usize, Level)>,
}

/// Strict majority: pay the cheapest voters to clear the threshold until a
/// majority does.
pub(crate) fn mb_sm_issue(inst: &Instance, issue: usize) -> Result<Option<IssueBribe>> {
    let mut offers: Vec<(Money, usize, Option<Level>)> = Vec::with_capacity(inst.voters());
    for i in 0..inst.voters() {
        let base = inst.oriented_level(i, issue);
        if inst.level_clears(base) {
            offers.push((0, i, None));
            continue;
        }
        let cheapest = (base + 1..=inst.top())
            .filter(|&o| inst.level_clears(o))
            .filter_map(|o| inst.oriented_cost(i, issue, o).map(|c| (c, o)))
            .min();
        if let Some((cost, o)) = cheapest {
            offers.push((cost, i, Some(o)));
        }
    }
    let need = inst.majority_needed();
    if offers.len() < need {
        return Ok(None);
    }
    offers.sort_unstable_by_key(|&(cost, voter, _)| (cost, voter));
    let mut cost: Money = 0;
    let mut raises = Vec::new();
    for &(c, voter, target) in &offers[..need] {
        cost = cost.checked_add(c).ok_or(Error::ArithmeticOverflow)?;
        if let Some(o) = target {
            raises.push((voter, o));
        }
    }
    Ok(Some(IssueBribe { cost, raises }))
}

/// Path-schedule instance for one issue under average majority: one path per
/// voter whose jobs are the single-level raises above its current level.
pub(crate) fn am_schedule_instance(inst: &Instance, issue: usize, steps: usize) -> ScheduleInstance {
    let paths = (0..inst.voters())
        .map(|i| {
            let base = inst.oriented_level(i, issue);
            (base + 1..=inst.top())
                .map(|o| {
                    let here = inst.oriented_cost(i, issue, o).expect("agenda-side price present");
                    let below = inst.oriented_cost(i, issue, o - 1).expect("agenda-side price present");
                    here - below
                })
                .collect()
        })
        .collect();
    ScheduleInstance::new(paths, steps)
}

/// Level raises still needed on `issue` for the average to clear.
pub(crate) fn am_steps_needed(inst: &Instance, issue: usize) -> Option<u64> {
    let sum: u64 = (0..inst.voters())
        .map(|i| u64::from(inst.oriented_level(i, issue)))
        .sum();
    inst.average_sum_needed().map(|need| need.saturating_sub(sum))
}

/// Average majority: schedule exactly the missing number of level raises at
/// minimum cost.
pub(crate) fn mb_am_issue(inst: &Instance, issue: usize) -> Result<Option<IssueBribe>> {
    let Some(steps) = am_steps_needed(inst, issue) else {
        return Ok(None);
    };
    let si = am_schedule_instance(inst, issue, steps as usize);
    let Some(schedule) = min_cost_schedule(&si)? else {
        return Ok(None);
    };
    let raises = schedule
        .prefix_lengths
        .iter()
        .enumerate()
        .filter(|&(_, &len)| len > 0)
        .map(|(i, &len)| (i, inst.oriented_level(i, issue) + len as Level))
        .collect();
    Ok(Some(IssueBribe {
        cost: schedule.cost,
        raises,
    }))
}

fn solve_per_issue(
    inst: &Instance,
    per_issue: fn(&Instance, usize) -> Result<Option<IssueBribe>>,
) -> Result<SolveReport> {
    let mut total: Money = 0;
    let mut raises = Vec::new();
    let mut per_issue_cost = Vec::with_capacity(inst.issues());
    for j in 0..inst.issues() {
        let bribe = per_issue(inst, j)?.ok_or(Error::InfeasibleIssue { issue: j })?;
        total = total.checked_add(bribe.cost).ok_or(Error::ArithmeticOverflow)?;
        per_issue_cost.push(Some(bribe.cost));
        raises.extend(bribe.raises.into_iter().map(|(i, o)| (i, j, o)));
    }
    let plan = micro_plan(inst, &raises);
    Ok(SolveReport::from_min_cost(
        inst,
        Some(total),
        Some(plan),
        per_issue_cost,
        SolverKind::ExactPoly,
    ))
}

/// Micro bribery under strict majority. For every issue the lobby pays the
/// `floor(m/2)+1` cheapest voters (voters already above the threshold cost
/// nothing) to clear the threshold.
pub fn solve_mb_sm(inst: &Instance) -> Result<SolveReport> {
    solve_per_issue(inst, mb_sm_issue)
}

/// Micro bribery under average majority, one path-schedule problem per issue.
pub fn solve_mb_am(inst: &Instance) -> Result<SolveReport> {
    solve_per_issue(inst, mb_am_issue)
}
