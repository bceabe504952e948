//! Minimum-budget solvers.
//!
//! Every solver accepts instances with an arbitrary agenda; they work on the
//! normalized copy internally and report plans in the caller's orientation.

mod exact;
mod greedy;
mod issue;
mod micro;
mod voter;
mod weighted;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{BriberyPlan, Criterion, Instance, Level, Method, Money};
use crate::par::Execution;

pub use exact::solve_exact_mb;
pub use greedy::{greedy_vb, greedy_vb_with, harmonic, log_ratio_bound, GreedyRule, GreedyStep, GreedyTrace};
pub use issue::solve_ib;
pub use micro::{solve_mb_am, solve_mb_sm};
pub use voter::{kernelize_vb, solve_vb_exact, solve_weighted_vb_exact, Kernel};
pub use weighted::{knapsack_min_cost, solve_weighted_mb_ib, KnapsackChoice};

pub(crate) use issue::issue_bribe_cost;
pub(crate) use micro::{mb_am_issue, mb_sm_issue, IssueBribe};

/// Default cap on enumerated candidates for exponential searches.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_ENUMERATION_LIMIT`].
pub const ENUMERATION_LIMIT_ENV: &str = "LOBBY_ENUMERATION_LIMIT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SolverKind {
    ExactPoly,
    ExactBrute,
    /// Pseudo-polynomial dynamic program over exact spends.
    ExactDp,
    Greedy,
    Oracle,
    KnapsackDp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    /// Whether the agenda (or weight objective) is reachable within budget.
    pub feasible: bool,
    /// Cheapest plan cost, `None` if no plan reaches the goal at any price.
    pub min_cost: Option<Money>,
    pub plan: Option<BriberyPlan>,
    /// Dollars attributed to each issue; `None` for issues left unwon.
    pub per_issue_cost: Vec<Option<Money>>,
    pub solver: SolverKind,
}

impl SolveReport {
    pub(crate) fn from_min_cost(
        inst: &Instance,
        min_cost: Option<Money>,
        plan: Option<BriberyPlan>,
        per_issue_cost: Vec<Option<Money>>,
        solver: SolverKind,
    ) -> SolveReport {
        SolveReport {
            feasible: min_cost.is_some_and(|c| c <= inst.budget()),
            min_cost,
            plan,
            per_issue_cost,
            solver,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    pub enumeration_limit: u64,
    pub execution: Execution,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            execution: Execution::default(),
        }
    }
}

impl SolverOptions {
    /// Defaults, with the enumeration limit taken from
    /// `LOBBY_ENUMERATION_LIMIT` when it is set to a number.
    pub fn from_env() -> Self {
        let mut opts = SolverOptions::default();
        if let Some(limit) = std::env::var(ENUMERATION_LIMIT_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            opts.enumeration_limit = limit;
        }
        opts
    }

    pub fn with_execution(self, execution: Execution) -> Self {
        SolverOptions { execution, ..self }
    }

    pub(crate) fn check_size(&self, size: u128) -> Result<()> {
        if size > self.enumeration_limit as u128 {
            return Err(crate::error::Error::InstanceTooLarge {
                size,
                limit: self.enumeration_limit,
            });
        }
        Ok(())
    }
}

/// Solves the unweighted minimum-budget problem with the natural solver for
/// `method`: polynomial for micro and issue bribery, exhaustive search for
/// voter bribery.
pub fn solve(inst: &Instance, method: Method, criterion: Criterion) -> Result<SolveReport> {
    match (method, criterion) {
        (Method::Micro, Criterion::StrictMajority) => solve_mb_sm(inst),
        (Method::Micro, Criterion::AverageMajority) => solve_mb_am(inst),
        (Method::Issue, c) => solve_ib(inst, c),
        (Method::Voter, c) => solve_vb_exact(inst, c, &SolverOptions::from_env()),
    }
}

/// Micro plan in the original orientation, raising `(voter, issue)` pairs to
/// the given agenda-oriented levels.
pub(crate) fn micro_plan(inst: &Instance, raises: &[(usize, usize, Level)]) -> BriberyPlan {
    let BriberyPlan::Micro { mut targets } = BriberyPlan::micro_identity(inst) else {
        unreachable!()
    };
    for &(i, j, oriented) in raises {
        targets[i][j] = inst.orient(j, oriented);
    }
    BriberyPlan::Micro { targets }
}

/// Candidate spends for one voter (voter bribery) or one issue (issue
/// bribery): zero plus `share * c` for every price entry `c` reachable in the
/// agenda direction. Anything in between buys the same levels as the next
/// smaller candidate.
pub(crate) fn candidate_spends(
    inst: &Instance,
    pairs: impl Iterator<Item = (usize, usize)>,
    share: u64,
) -> Vec<Money> {
    let mut spends = vec![0];
    for (i, j) in pairs {
        let base = inst.oriented_level(i, j);
        for o in base + 1..=inst.top() {
            if let Some(c) = inst.oriented_cost(i, j, o) {
                spends.push(c.saturating_mul(share));
            }
        }
    }
    spends.sort_unstable();
    spends.dedup();
    spends
}

/// Highest agenda-oriented level a pair reaches when `dollars` are split
/// `share` ways.
pub(crate) fn reached_level(inst: &Instance, voter: usize, issue: usize, dollars: Money, share: u64) -> Level {
    let base = inst.oriented_level(voter, issue);
    (base..=inst.top())
        .rev()
        .find(|&o| {
            inst.oriented_cost(voter, issue, o)
                .is_some_and(|c| c as u128 * share as u128 <= dollars as u128)
        })
        .unwrap_or(base)
}
