//! Exhaustive reference solvers.
//!
//! These only rely on the model's evaluation, application and pricing
//! functions and enumerate every plan that can matter. They are exponential
//! and meant for checking the real solvers on small instances.

use crate::error::{Error, Result};
use crate::model::{apply_bribery, evaluate, BriberyPlan, Criterion, Instance, Level, Method, Money};
use crate::par;
use crate::solve::{SolveReport, SolverKind, SolverOptions};

/// Visits every tuple with `tuple[i] < radices[i]` in lexicographic order and
/// keeps the first one with the least cost. `score` returns `None` for tuples
/// that miss the goal. The first coordinate is split across threads.
fn search_min<F>(radices: &[usize], opts: &SolverOptions, score: F) -> Result<Option<(Money, Vec<usize>)>>
where
    F: Fn(&[usize]) -> Option<Money> + Sync + Send,
{
    let size = radices.iter().fold(1u128, |acc, &r| acc.saturating_mul(r as u128));
    opts.check_size(size)?;
    if radices.is_empty() {
        return Ok(score(&[]).map(|c| (c, Vec::new())));
    }
    let chunks = par::map_range(opts.execution, radices[0], |first| {
        let mut tuple = vec![0usize; radices.len()];
        tuple[0] = first;
        let mut best: Option<(Money, Vec<usize>)> = None;
        loop {
            if let Some(c) = score(&tuple) {
                if best.as_ref().is_none_or(|(b, _)| c < *b) {
                    best = Some((c, tuple.clone()));
                }
            }
            // odometer over coordinates 1..
            let mut pos = radices.len();
            loop {
                pos -= 1;
                if pos == 0 {
                    return best;
                }
                tuple[pos] += 1;
                if tuple[pos] < radices[pos] {
                    break;
                }
                tuple[pos] = 0;
            }
        }
    });
    Ok(chunks.into_iter().flatten().min_by_key(|(c, _)| *c))
}

/// Grid levels a pair may be moved to, in original orientation: its own level
/// and every level on the agenda side of it.
fn micro_choices(inst: &Instance, voter: usize, issue: usize) -> Vec<Level> {
    let own = inst.level(voter, issue);
    if inst.agenda()[issue] {
        (own..=inst.top()).collect()
    } else {
        (0..=own).rev().collect()
    }
}

/// `{0} ∪ {share * c}` over the given price entries.
fn split_spends<'a>(entries: impl Iterator<Item = &'a Option<Money>>, share: usize) -> Vec<Money> {
    let mut spends: Vec<Money> = entries
        .flatten()
        .map(|&c| c.saturating_mul(share as u64))
        .chain(std::iter::once(0))
        .collect();
    spends.sort_unstable();
    spends.dedup();
    spends
}

fn issue_spends(inst: &Instance, issue: usize) -> Vec<Money> {
    let m = inst.voters();
    split_spends((0..m).flat_map(|i| inst.cost_row(i, issue).iter()), m)
}

fn voter_spends(inst: &Instance, voter: usize) -> Vec<Money> {
    let n = inst.issues();
    split_spends((0..n).flat_map(|j| inst.cost_row(voter, j).iter()), n)
}

/// Micro, issue or voter plan space flattened to a list of choices.
struct PlanSpace<'a> {
    inst: &'a Instance,
    method: Method,
    choices: Vec<Vec<Money>>,
}

impl<'a> PlanSpace<'a> {
    fn new(inst: &'a Instance, method: Method) -> Self {
        let (m, n) = (inst.voters(), inst.issues());
        let choices = match method {
            Method::Micro => (0..m * n)
                .map(|p| micro_choices(inst, p / n, p % n).into_iter().map(Money::from).collect())
                .collect(),
            Method::Issue => (0..n).map(|j| issue_spends(inst, j)).collect(),
            Method::Voter => (0..m).map(|i| voter_spends(inst, i)).collect(),
        };
        PlanSpace { inst, method, choices }
    }

    fn radices(&self) -> Vec<usize> {
        self.choices.iter().map(Vec::len).collect()
    }

    fn plan(&self, tuple: &[usize]) -> BriberyPlan {
        let picked: Vec<Money> = tuple.iter().zip(&self.choices).map(|(&t, c)| c[t]).collect();
        match self.method {
            Method::Micro => BriberyPlan::Micro {
                targets: picked
                    .chunks(self.inst.issues())
                    .map(|row| row.iter().map(|&l| l as Level).collect())
                    .collect(),
            },
            Method::Issue => BriberyPlan::Issue { dollars: picked },
            Method::Voter => BriberyPlan::Voter { dollars: picked },
        }
    }

    /// Plan cost and the outcome it produces.
    fn run(&self, tuple: &[usize], criterion: Criterion) -> Option<(Money, crate::model::Outcome)> {
        let inst = self.inst;
        let picked = tuple.iter().zip(&self.choices).map(|(&t, c)| c[t]);
        match self.method {
            Method::Micro => {
                let levels: Vec<Level> = picked.map(|l| l as Level).collect();
                let n = inst.issues();
                let mut cost: Money = 0;
                for (p, &l) in levels.iter().enumerate() {
                    cost = cost.checked_add(inst.cost(p / n, p % n, l)?)?;
                }
                Some((cost, inst.outcome_for_levels(&levels, criterion)))
            }
            Method::Issue | Method::Voter => {
                let mut cost: Money = 0;
                for d in picked {
                    cost = cost.checked_add(d)?;
                }
                let after = apply_bribery(inst, &self.plan(tuple)).ok()?;
                Some((cost, evaluate(&after, criterion)))
            }
        }
    }

    fn per_issue_cost(&self, tuple: &[usize], won: &[bool]) -> Vec<Option<Money>> {
        let (m, n) = (self.inst.voters(), self.inst.issues());
        let picked: Vec<Money> = tuple.iter().zip(&self.choices).map(|(&t, c)| c[t]).collect();
        (0..n)
            .map(|j| {
                won[j].then(|| match self.method {
                    Method::Micro => (0..m)
                        .map(|i| self.inst.cost(i, j, picked[i * n + j] as Level).unwrap_or(0))
                        .sum(),
                    Method::Issue => picked[j],
                    Method::Voter => picked.iter().sum::<Money>() / n as Money,
                })
            })
            .collect()
    }
}

fn won_issues(inst: &Instance, outcome: &crate::model::Outcome) -> Vec<bool> {
    outcome.bits.iter().zip(inst.agenda()).map(|(b, z)| b == z).collect()
}

/// Cheapest plan of the given method that wins every issue, by enumeration.
///
/// Micro: every agenda-side level tuple. Issue/voter: every tuple of
/// candidate spends `m * c` (issue) or `n * c` (voter) over the price entries
/// involved, plus zero.
pub fn oracle_min_budget(
    inst: &Instance,
    method: Method,
    criterion: Criterion,
    opts: &SolverOptions,
) -> Result<SolveReport> {
    let space = PlanSpace::new(inst, method);
    let best = search_min(&space.radices(), opts, |t| {
        let (cost, outcome) = space.run(t, criterion)?;
        outcome.matches(inst.agenda()).then_some(cost)
    })?;
    Ok(report(inst, &space, criterion, best))
}

fn report(
    inst: &Instance,
    space: &PlanSpace,
    criterion: Criterion,
    best: Option<(Money, Vec<usize>)>,
) -> SolveReport {
    let n = inst.issues();
    match best {
        None => SolveReport::from_min_cost(inst, None, None, vec![None; n], SolverKind::Oracle),
        Some((cost, tuple)) => {
            let (_, outcome) = space.run(&tuple, criterion).expect("scored tuples run");
            let per_issue = space.per_issue_cost(&tuple, &won_issues(inst, &outcome));
            SolveReport::from_min_cost(inst, Some(cost), Some(space.plan(&tuple)), per_issue, SolverKind::Oracle)
        }
    }
}

/// Cheapest plan whose won issues weigh at least the objective.
///
/// Micro and issue plans act on each issue separately, so each issue's
/// cheapest winning column is enumerated on its own and then every subset of
/// issues is tried. Voter plans are enumerated jointly.
pub fn oracle_weighted(
    inst: &Instance,
    method: Method,
    criterion: Criterion,
    opts: &SolverOptions,
) -> Result<SolveReport> {
    let (Some(weights), Some(objective)) = (inst.weights(), inst.objective()) else {
        return Err(Error::MissingWeights);
    };
    let n = inst.issues();
    if method == Method::Voter {
        let space = PlanSpace::new(inst, method);
        let best = search_min(&space.radices(), opts, |t| {
            let (cost, outcome) = space.run(t, criterion)?;
            (inst.matched_weight(&outcome) >= objective).then_some(cost)
        })?;
        return Ok(report(inst, &space, criterion, best));
    }

    // cheapest column choice per issue that wins it
    let space = PlanSpace::new(inst, method);
    let m = inst.voters();
    let mut columns: Vec<Option<(Money, Vec<usize>)>> = Vec::with_capacity(n);
    for j in 0..n {
        let coords: Vec<usize> = match method {
            Method::Micro => (0..m).map(|i| i * n + j).collect(),
            _ => vec![j],
        };
        let radices: Vec<usize> = coords.iter().map(|&c| space.choices[c].len()).collect();
        let best = search_min(&radices, opts, |sub| {
            let mut tuple = vec![0usize; space.choices.len()];
            for (&c, &s) in coords.iter().zip(sub) {
                tuple[c] = s;
            }
            let (_, outcome) = space.run(&tuple, criterion)?;
            if outcome.bits[j] != inst.agenda()[j] {
                return None;
            }
            Some(match method {
                Method::Micro => (0..m).map(|i| inst.cost(i, j, space.choices[i * n + j][tuple[i * n + j]] as Level).unwrap_or(0)).sum(),
                _ => space.choices[j][tuple[j]],
            })
        })?;
        columns.push(best.map(|(c, sub)| {
            let mut tuple = vec![0usize; space.choices.len()];
            for (&c, &s) in coords.iter().zip(&sub) {
                tuple[c] = s;
            }
            (c, tuple)
        }));
    }
    opts.check_size(1u128 << n.min(127))?;
    let mut best: Option<(Money, u128)> = None;
    for subset in 0u128..1 << n {
        let chosen = |j: usize| subset >> j & 1 == 1;
        if (0..n).any(|j| chosen(j) && columns[j].is_none()) {
            continue;
        }
        let weight: u64 = (0..n).filter(|&j| chosen(j)).map(|j| weights[j]).sum();
        if weight < objective {
            continue;
        }
        let cost: Money = (0..n).filter(|&j| chosen(j)).map(|j| columns[j].as_ref().unwrap().0).sum();
        if best.is_none_or(|(b, _)| cost < b) {
            best = Some((cost, subset));
        }
    }
    let Some((_, subset)) = best else {
        return Ok(SolveReport::from_min_cost(inst, None, None, vec![None; n], SolverKind::Oracle));
    };
    // stitch the chosen columns together; unchosen columns stay put
    let mut tuple = vec![0usize; space.choices.len()];
    for j in (0..n).filter(|&j| subset >> j & 1 == 1) {
        let (_, col) = columns[j].as_ref().unwrap();
        let coords: Vec<usize> = match method {
            Method::Micro => (0..m).map(|i| i * n + j).collect(),
            _ => vec![j],
        };
        for c in coords {
            tuple[c] = col[c];
        }
    }
    let (cost, _) = space.run(&tuple, criterion).expect("stitched plan runs");
    Ok(report(inst, &space, criterion, Some((cost, tuple))))
}

/// Whether some micro plan costs exactly the budget and wins every issue.
pub fn oracle_exact_spend(inst: &Instance, criterion: Criterion, opts: &SolverOptions) -> Result<bool> {
    let space = PlanSpace::new(inst, Method::Micro);
    let budget = inst.budget();
    let hit = search_min(&space.radices(), opts, |t| {
        let (cost, outcome) = space.run(t, criterion)?;
        (cost == budget && outcome.matches(inst.agenda())).then_some(cost)
    })?;
    Ok(hit.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example::running_example;
    use crate::model::{plan_cost, Comparison, Threshold};

    #[test]
    fn running_example_micro() {
        let inst = running_example();
        let opts = SolverOptions::default();
        let sm = oracle_min_budget(&inst, Method::Micro, Criterion::StrictMajority, &opts).unwrap();
        assert_eq!(sm.min_cost, Some(245));
        assert_eq!(sm.per_issue_cost, vec![Some(40), Some(100), Some(105)]);
        let am = oracle_min_budget(&inst, Method::Micro, Criterion::AverageMajority, &opts).unwrap();
        assert_eq!(am.min_cost, Some(35));
        assert_eq!(plan_cost(&inst, am.plan.as_ref().unwrap()).unwrap(), 35);
    }

    #[test]
    fn running_example_issue_and_voter() {
        let inst = running_example();
        let opts = SolverOptions::default();
        let ib = oracle_min_budget(&inst, Method::Issue, Criterion::StrictMajority, &opts).unwrap();
        assert_eq!(ib.min_cost, Some(460));
        let inst = inst.with_threshold(Threshold::new(3, 5).unwrap(), Comparison::Weak);
        let vb = oracle_min_budget(&inst, Method::Voter, Criterion::AverageMajority, &opts).unwrap();
        assert_eq!(vb.min_cost, Some(210));
    }

    #[test]
    fn already_winning_is_free() {
        let inst = running_example().with_threshold(Threshold::new(1, 10).unwrap(), Comparison::Strict);
        for method in Method::ALL {
            let r = oracle_min_budget(&inst, method, Criterion::StrictMajority, &SolverOptions::default()).unwrap();
            assert_eq!(r.min_cost, Some(0));
        }
    }

    #[test]
    fn weighted_cases() {
        let opts = SolverOptions::default();
        let full = running_example().with_weights(vec![1, 1, 1], 3).unwrap();
        for method in Method::ALL {
            let w = oracle_weighted(&full, method, Criterion::StrictMajority, &opts).unwrap();
            let u = oracle_min_budget(&full, method, Criterion::StrictMajority, &opts).unwrap();
            assert_eq!(w.min_cost, u.min_cost, "{method}");
        }
        let zero = running_example().with_weights(vec![1, 1, 1], 0).unwrap();
        let r = oracle_weighted(&zero, Method::Micro, Criterion::StrictMajority, &opts).unwrap();
        assert_eq!(r.min_cost, Some(0));
        let heavy = running_example().with_weights(vec![1, 5, 1], 5).unwrap();
        let r = oracle_weighted(&heavy, Method::Micro, Criterion::StrictMajority, &opts).unwrap();
        assert_eq!(r.min_cost, Some(100));
    }

    #[test]
    fn too_large() {
        let opts = SolverOptions {
            enumeration_limit: 100,
            ..SolverOptions::default()
        };
        assert!(matches!(
            oracle_min_budget(&running_example(), Method::Micro, Criterion::StrictMajority, &opts),
            Err(Error::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn exact_spend_running_example() {
        let opts = SolverOptions::default();
        assert!(oracle_exact_spend(&running_example(), Criterion::StrictMajority, &opts).unwrap());
        assert!(!oracle_exact_spend(&running_example().with_budget(244), Criterion::StrictMajority, &opts).unwrap());
    }
}
