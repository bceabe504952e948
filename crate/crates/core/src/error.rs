use thiserror::Error;

use crate::model::Level;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("level {level} of voter {voter} on issue {issue} is outside 0..={top}")]
    LevelOutOfRange {
        voter: usize,
        issue: usize,
        level: Level,
        top: Level,
    },

    #[error("threshold {num}/{den} is not a fraction in [0, 1]")]
    InvalidThreshold { num: u64, den: u64 },

    #[error("issue weights must be positive (issue {issue})")]
    InvalidWeight { issue: usize },

    #[error("price function of voter {voter} on issue {issue} has nonzero cost at its own level")]
    NonzeroBaseCost { voter: usize, issue: usize },

    #[error("price function of voter {voter} on issue {issue} is free at level {level}, away from its own level")]
    ZeroCostOffBase {
        voter: usize,
        issue: usize,
        level: Level,
    },

    #[error("price function of voter {voter} on issue {issue} decreases at level {level}")]
    NonMonotoneCost {
        voter: usize,
        issue: usize,
        level: Level,
    },

    #[error("price function of voter {voter} on issue {issue} has no price for level {level} in the agenda direction")]
    MissingAgendaSideCost {
        voter: usize,
        issue: usize,
        level: Level,
    },

    #[error("micro bribery moves voter {voter} on issue {issue} against the agenda")]
    WrongDirection { voter: usize, issue: usize },

    #[error("arithmetic overflow while summing costs")]
    ArithmeticOverflow,

    #[error("issue {issue} cannot be won even with every voter fully bribed")]
    InfeasibleIssue { issue: usize },

    #[error("instance requires weights and an objective")]
    MissingWeights,

    #[error("search space of {size} candidates exceeds the limit of {limit}")]
    InstanceTooLarge { size: u128, limit: u64 },

    #[error("invalid reduction input: {0}")]
    InvalidReduction(String),
}
