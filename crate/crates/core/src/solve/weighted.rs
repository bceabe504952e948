//! Issue-weighted micro and issue bribery as a knapsack problem.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{BriberyPlan, Criterion, Instance, Level, Method, Money};

use super::{
    issue_bribe_cost, mb_am_issue, mb_sm_issue, micro_plan, solve_weighted_vb_exact, IssueBribe, SolveReport,
    SolverKind, SolverOptions, DEFAULT_ENUMERATION_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnapsackChoice {
    pub cost: Money,
    /// Chosen item indices, ascending.
    pub items: Vec<usize>,
}

/// Cheapest item set whose profit reaches `objective`. Items priced `None`
/// cannot be taken. Returns `None` if no set reaches the objective.
///
/// The table is indexed by profit (capped at the objective), so its size is
/// `items * (objective + 1)`.
pub fn knapsack_min_cost(costs: &[Option<Money>], profits: &[u64], objective: u64) -> Result<Option<KnapsackChoice>> {
    if costs.len() != profits.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} item costs but {} profits",
            costs.len(),
            profits.len()
        )));
    }
    let cells = (costs.len() as u128 + 1) * (objective as u128 + 1);
    if cells > DEFAULT_ENUMERATION_LIMIT as u128 {
        return Err(Error::InstanceTooLarge {
            size: cells,
            limit: DEFAULT_ENUMERATION_LIMIT,
        });
    }
    let width = objective as usize + 1;
    // best[p]: least cost reaching profit >= p with the items seen so far
    let mut best: Vec<Option<Money>> = vec![None; width];
    best[0] = Some(0);
    let mut taken = vec![false; costs.len() * width];
    for (item, (&cost, &profit)) in costs.iter().zip(profits).enumerate() {
        let Some(cost) = cost else { continue };
        let profit = profit.min(objective) as usize;
        for p in (1..width).rev() {
            let from = p.saturating_sub(profit);
            let Some(base) = best[from] else { continue };
            let with = base.checked_add(cost).ok_or(Error::ArithmeticOverflow)?;
            if best[p].is_none_or(|b| with < b) {
                best[p] = Some(with);
                taken[item * width + p] = true;
            }
        }
    }
    let Some(cost) = best[width - 1] else {
        return Ok(None);
    };
    let mut items = Vec::new();
    let mut p = width - 1;
    for item in (0..costs.len()).rev() {
        if p > 0 && taken[item * width + p] {
            items.push(item);
            p = p.saturating_sub(profits[item].min(objective) as usize);
        }
    }
    items.reverse();
    Ok(Some(KnapsackChoice { cost, items }))
}

/// Weighted micro or issue bribery: win a set of issues of total weight at
/// least the objective at least cost. Issues are independent under both
/// methods, so each issue's own minimum cost becomes a knapsack item.
/// Issues already won cost nothing and always count.
///
/// Voter bribery is passed to the exhaustive weighted search.
pub fn solve_weighted_mb_ib(inst: &Instance, method: Method, criterion: Criterion) -> Result<SolveReport> {
    let (Some(weights), Some(objective)) = (inst.weights(), inst.objective()) else {
        return Err(Error::MissingWeights);
    };
    let n = inst.issues();
    let mut bribes: Vec<Option<IssueBribe>> = Vec::with_capacity(n);
    for j in 0..n {
        let bribe = match (method, criterion) {
            (Method::Micro, Criterion::StrictMajority) => mb_sm_issue(inst, j)?,
            (Method::Micro, Criterion::AverageMajority) => mb_am_issue(inst, j)?,
            (Method::Issue, c) => issue_bribe_cost(inst, j, c).map(|cost| IssueBribe { cost, raises: Vec::new() }),
            (Method::Voter, c) => return solve_weighted_vb_exact(inst, c, &SolverOptions::from_env()),
        };
        bribes.push(bribe);
    }
    let costs: Vec<Option<Money>> = bribes.iter().map(|b| b.as_ref().map(|b| b.cost)).collect();
    let free_weight: u64 = (0..n).filter(|&j| costs[j] == Some(0)).map(|j| weights[j]).sum();
    let paid: Vec<Option<Money>> = costs.iter().map(|&c| c.filter(|&c| c > 0)).collect();
    let Some(choice) = knapsack_min_cost(&paid, weights, objective.saturating_sub(free_weight))? else {
        return Ok(SolveReport::from_min_cost(inst, None, None, vec![None; n], SolverKind::KnapsackDp));
    };
    let won = |j: usize| costs[j] == Some(0) || choice.items.contains(&j);
    let per_issue_cost = (0..n).map(|j| if won(j) { costs[j] } else { None }).collect();
    let plan = match method {
        Method::Micro => {
            let raises: Vec<(usize, usize, Level)> = choice
                .items
                .iter()
                .flat_map(|&j| {
                    let bribe = bribes[j].as_ref().expect("chosen items are priced");
                    bribe.raises.iter().map(move |&(i, o)| (i, j, o))
                })
                .collect();
            micro_plan(inst, &raises)
        }
        _ => BriberyPlan::Issue {
            dollars: (0..n)
                .map(|j| if choice.items.contains(&j) { costs[j].unwrap_or(0) } else { 0 })
                .collect(),
        },
    };
    Ok(SolveReport::from_min_cost(
        inst,
        Some(choice.cost),
        Some(plan),
        per_issue_cost,
        SolverKind::KnapsackDp,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example::running_example;
    use crate::model::{apply_bribery, evaluate};
    use crate::solve::{solve_ib, solve_mb_sm};

    #[test]
    fn knapsack_small() {
        let choice = knapsack_min_cost(&[Some(2), Some(3), Some(4)], &[3, 4, 5], 7).unwrap().unwrap();
        assert_eq!(choice, KnapsackChoice { cost: 5, items: vec![0, 1] });
        assert_eq!(knapsack_min_cost(&[Some(2), None], &[3, 4], 4).unwrap(), None);
        assert_eq!(
            knapsack_min_cost(&[Some(2)], &[3], 0).unwrap(),
            Some(KnapsackChoice { cost: 0, items: vec![] })
        );
    }

    #[test]
    fn knapsack_matches_subsets() {
        let costs = [Some(7), Some(2), Some(9), Some(4), Some(4)];
        let profits = [5, 1, 8, 3, 2];
        for objective in 0..=20 {
            let brute = (0u32..1 << 5)
                .filter(|s| (0..5).filter(|&i| s >> i & 1 == 1).map(|i| profits[i]).sum::<u64>() >= objective)
                .map(|s| (0..5).filter(|&i| s >> i & 1 == 1).map(|i| costs[i].unwrap()).sum::<u64>())
                .min();
            let dp = knapsack_min_cost(&costs, &profits, objective).unwrap();
            assert_eq!(dp.map(|c| c.cost), brute, "objective {objective}");
        }
    }

    #[test]
    fn unit_weights_full_objective_match_unweighted() {
        let inst = running_example().with_weights(vec![1, 1, 1], 3).unwrap();
        let mb = solve_weighted_mb_ib(&inst, Method::Micro, Criterion::StrictMajority).unwrap();
        assert_eq!(mb.min_cost, solve_mb_sm(&inst).unwrap().min_cost);
        let ib = solve_weighted_mb_ib(&inst, Method::Issue, Criterion::StrictMajority).unwrap();
        assert_eq!(ib.min_cost, solve_ib(&inst, Criterion::StrictMajority).unwrap().min_cost);
        assert_eq!(ib.plan, Some(BriberyPlan::Issue { dollars: vec![80, 200, 180] }));
    }

    #[test]
    fn heavy_issue_alone() {
        // issue 2 (cost 100) is worth more than issues 1 and 3 together
        let inst = running_example().with_weights(vec![1, 5, 1], 5).unwrap();
        let report = solve_weighted_mb_ib(&inst, Method::Micro, Criterion::StrictMajority).unwrap();
        assert_eq!(report.min_cost, Some(100));
        assert_eq!(report.per_issue_cost, vec![None, Some(100), None]);
        let after = apply_bribery(&inst, report.plan.as_ref().unwrap()).unwrap();
        assert!(inst.matched_weight(&evaluate(&after, Criterion::StrictMajority)) >= 5);
    }

    #[test]
    fn free_issues_count() {
        // issue 1 is already won under AM
        let inst = running_example().with_weights(vec![4, 1, 1], 4).unwrap();
        let report = solve_weighted_mb_ib(&inst, Method::Micro, Criterion::AverageMajority).unwrap();
        assert_eq!(report.min_cost, Some(0));
        let zero = running_example().with_weights(vec![1, 1, 1], 0).unwrap();
        let report = solve_weighted_mb_ib(&zero, Method::Issue, Criterion::StrictMajority).unwrap();
        assert_eq!(report.min_cost, Some(0));
        assert!(report.feasible);
    }

    #[test]
    fn missing_weights() {
        assert!(matches!(
            solve_weighted_mb_ib(&running_example(), Method::Micro, Criterion::StrictMajority),
            Err(Error::MissingWeights)
        ));
    }
}
