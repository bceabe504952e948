//! Scheduling jobs that sit on disjoint precedence paths.
//!
//! A job may only be scheduled after its predecessor on the same path, so any
//! feasible set of jobs is a prefix of every path. The dynamic program folds
//! paths in one at a time: after path `l`, `row[j]` is the cheapest way to
//! take `j` jobs from paths `0..=l`.

use crate::error::{Error, Result};
use crate::model::Money;

/// Largest job count [`schedule_oracle`] will enumerate.
pub const ORACLE_MAX_JOBS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleInstance {
    /// Job costs along each path, in precedence order.
    pub paths: Vec<Vec<Money>>,
    /// Number of jobs to schedule.
    pub jobs: usize,
}

impl ScheduleInstance {
    pub fn new(paths: Vec<Vec<Money>>, jobs: usize) -> Self {
        ScheduleInstance { paths, jobs }
    }

    pub fn total_jobs(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }
}

/// An optimal schedule, described by how many jobs it takes from each path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub cost: Money,
    pub prefix_lengths: Vec<usize>,
}

/// Minimum cost of scheduling exactly `si.jobs` jobs, or `None` when there
/// are not that many jobs.
pub fn min_cost_schedule(si: &ScheduleInstance) -> Result<Option<Schedule>> {
    let q = si.jobs;
    if q > si.total_jobs() {
        return Ok(None);
    }
    // row[j] = best cost for j jobs over the paths folded so far
    let mut row: Vec<Option<Money>> = vec![None; q + 1];
    row[0] = Some(0);
    let mut choices: Vec<Vec<usize>> = Vec::with_capacity(si.paths.len());
    for path in &si.paths {
        let prefix = prefix_sums(path)?;
        let mut next: Vec<Option<Money>> = vec![None; q + 1];
        let mut pick = vec![0usize; q + 1];
        for j in 0..=q {
            for (x, &cost) in prefix.iter().enumerate().take(j + 1) {
                let Some(before) = row[j - x] else { continue };
                let total = before.checked_add(cost).ok_or(Error::ArithmeticOverflow)?;
                if next[j].is_none_or(|best| total < best) {
                    next[j] = Some(total);
                    pick[j] = x;
                }
            }
        }
        row = next;
        choices.push(pick);
    }
    let Some(cost) = row[q] else {
        return Ok(None);
    };
    let mut prefix_lengths = vec![0; si.paths.len()];
    let mut left = q;
    for (l, pick) in choices.iter().enumerate().rev() {
        prefix_lengths[l] = pick[left];
        left -= pick[left];
    }
    debug_assert_eq!(left, 0);
    Ok(Some(Schedule {
        cost,
        prefix_lengths,
    }))
}

/// `prefix[x]` = cost of the first `x` jobs of `path`.
fn prefix_sums(path: &[Money]) -> Result<Vec<Money>> {
    let mut prefix = Vec::with_capacity(path.len() + 1);
    prefix.push(0);
    let mut acc: Money = 0;
    for &c in path {
        acc = acc.checked_add(c).ok_or(Error::ArithmeticOverflow)?;
        prefix.push(acc);
    }
    Ok(prefix)
}

/// Exhaustive reference: tries every tuple of prefix lengths summing to the
/// job count.
pub fn schedule_oracle(si: &ScheduleInstance) -> Result<Option<Money>> {
    let total = si.total_jobs();
    if total > ORACLE_MAX_JOBS {
        return Err(Error::InstanceTooLarge {
            size: total as u128,
            limit: ORACLE_MAX_JOBS as u64,
        });
    }
    let mut best: Option<Money> = None;
    let mut lengths = vec![0usize; si.paths.len()];
    loop {
        if lengths.iter().sum::<usize>() == si.jobs {
            let mut cost: Money = 0;
            for (path, &len) in si.paths.iter().zip(&lengths) {
                for &c in &path[..len] {
                    cost = cost.checked_add(c).ok_or(Error::ArithmeticOverflow)?;
                }
            }
            best = Some(best.map_or(cost, |b| b.min(cost)));
        }
        // odometer over 0..=len(path) per path
        let mut p = 0;
        loop {
            if p == lengths.len() {
                return Ok(best);
            }
            if lengths[p] < si.paths[p].len() {
                lengths[p] += 1;
                break;
            }
            lengths[p] = 0;
            p += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(paths: Vec<Vec<Money>>, jobs: usize) -> (Option<Money>, Option<Money>) {
        let si = ScheduleInstance::new(paths, jobs);
        let dp = min_cost_schedule(&si).unwrap().map(|s| s.cost);
        (dp, schedule_oracle(&si).unwrap())
    }

    #[test]
    fn single_path_is_a_forced_prefix() {
        assert_eq!(both(vec![vec![5, 1, 9]], 2), (Some(6), Some(6)));
    }

    #[test]
    fn running_example_issue_three() {
        // marginal prices of one-level raises for both voters on issue 3
        let si = ScheduleInstance::new(vec![vec![15, 10, 45, 20, 60], vec![70, 20, 10, 80, 120, 150]], 2);
        let s = min_cost_schedule(&si).unwrap().unwrap();
        assert_eq!(s.cost, 25);
        assert_eq!(s.prefix_lengths, vec![2, 0]);
        assert_eq!(both(vec![vec![15, 10], vec![70, 110]], 2), (Some(25), Some(25)));
    }

    #[test]
    fn zero_jobs_cost_nothing() {
        assert_eq!(both(vec![vec![3, 4], vec![1]], 0), (Some(0), Some(0)));
        assert_eq!(both(vec![], 0), (Some(0), Some(0)));
    }

    #[test]
    fn singleton_paths_take_cheapest() {
        assert_eq!(both(vec![vec![3], vec![1], vec![2]], 2), (Some(3), Some(3)));
    }

    #[test]
    fn too_many_jobs_is_infeasible() {
        assert_eq!(both(vec![vec![]], 1), (None, None));
        assert_eq!(both(vec![vec![1, 2], vec![3]], 4), (None, None));
    }

    #[test]
    fn oracle_refuses_large_instances() {
        let si = ScheduleInstance::new(vec![vec![1; 21]], 3);
        assert!(matches!(schedule_oracle(&si), Err(Error::InstanceTooLarge { .. })));
        assert_eq!(min_cost_schedule(&si).unwrap().unwrap().cost, 3);
    }

    #[test]
    fn overflow_is_reported() {
        let si = ScheduleInstance::new(vec![vec![Money::MAX, 1]], 2);
        assert_eq!(min_cost_schedule(&si), Err(Error::ArithmeticOverflow));
    }
}
