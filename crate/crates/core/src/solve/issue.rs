use crate::error::{Error, Result};
use crate::model::{BriberyPlan, Criterion, Instance, Money};

use super::{candidate_spends, reached_level, SolveReport, SolverKind};

/// Least dollars that win `issue` when split evenly over all voters.
///
/// A voter's reached level only changes when its share crosses one of its
/// price entries, so only spends of the form `m * price` need checking.
pub(crate) fn issue_bribe_cost(inst: &Instance, issue: usize, criterion: Criterion) -> Option<Money> {
    let m = inst.voters();
    let share = m as u64;
    candidate_spends(inst, (0..m).map(|i| (i, issue)), share)
        .into_iter()
        .find(|&d| {
            let column = (0..m).map(|i| reached_level(inst, i, issue, d, share));
            inst.column_wins(criterion, column)
        })
}

/// Issue bribery: issues are independent, so the cheapest plan pays each
/// issue its own minimum.
pub fn solve_ib(inst: &Instance, criterion: Criterion) -> Result<SolveReport> {
    let mut dollars = Vec::with_capacity(inst.issues());
    for j in 0..inst.issues() {
        dollars.push(issue_bribe_cost(inst, j, criterion).ok_or(Error::InfeasibleIssue { issue: j })?);
    }
    let total = dollars
        .iter()
        .try_fold(0 as Money, |acc, &d| acc.checked_add(d))
        .ok_or(Error::ArithmeticOverflow)?;
    let per_issue_cost = dollars.iter().map(|&d| Some(d)).collect();
    Ok(SolveReport::from_min_cost(
        inst,
        Some(total),
        Some(BriberyPlan::Issue { dollars }),
        per_issue_cost,
        SolverKind::ExactPoly,
    ))
}
