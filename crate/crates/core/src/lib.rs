//! Solvers for probabilistic lobbying in multiple referenda.
//!
//! An [`Instance`] describes voters' acceptance levels on a grid
//! `0, 1/(k+1), ..., 1`, a price function for every voter/issue pair, the
//! lobby's agenda, a threshold and a budget. Money can be spent per pair
//! (micro bribery), per issue (split evenly over voters) or per voter (split
//! evenly over issues), and an issue is won by strict majority or by average
//! acceptance.
//!
//! ```
//! use lobbying::{evaluate, running_example, solve_mb_sm, Criterion};
//!
//! let inst = running_example();
//! assert_eq!(evaluate(&inst, Criterion::AverageMajority).to_string(), "100");
//! assert_eq!(solve_mb_sm(&inst).unwrap().min_cost, Some(245));
//! ```

pub mod error;
mod example;
pub mod experiment;
pub mod generate;
pub mod io;
pub mod model;
pub mod oracle;
pub mod par;
pub mod schedule;
pub mod solve;

pub use error::{Error, Result};
pub use example::running_example;
pub use model::{
    apply_bribery, cover_numbers, evaluate, normalize_agenda, plan_cost, validate_instance, BriberyPlan, Comparison,
    CoverProfile, Criterion, Instance, Level, Method, Money, Outcome, RawInstance, Threshold,
};
pub use par::Execution;
pub use solve::{
    greedy_vb, greedy_vb_with, kernelize_vb, knapsack_min_cost, solve, solve_exact_mb, solve_ib, solve_mb_am, solve_mb_sm,
    solve_vb_exact, solve_weighted_mb_ib, solve_weighted_vb_exact, GreedyRule, GreedyStep, GreedyTrace, Kernel, SolveReport,
    SolverKind, SolverOptions,
};
