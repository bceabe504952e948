//! JSON instance files.
//!
//! ```json
//! {
//!   "k": 0,
//!   "threshold": { "num": 1, "den": 2 },
//!   "comparison": "strict",
//!   "agenda": [1],
//!   "budget": 1,
//!   "probabilities": [[0]],
//!   "costs": [[[0, 1]]]
//! }
//! ```
//!
//! `comparison` defaults to `strict`; `weights` and `objective` are optional
//! but must appear together. `null` marks a price the lobby never pays.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::model::{Comparison, Instance, Level, Money, RawInstance, Threshold};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub k: Level,
    pub threshold: Threshold,
    #[serde(default)]
    pub comparison: Comparison,
    pub agenda: Vec<u8>,
    pub budget: Money,
    pub probabilities: Vec<Vec<Level>>,
    pub costs: Vec<Vec<Vec<Option<Money>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<u64>,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {error}")]
    Invalid { path: String, error: Error },
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        let raw = inst.to_raw();
        InstanceFile {
            k: raw.k,
            threshold: raw.threshold,
            comparison: raw.comparison,
            agenda: raw.agenda.iter().map(|&z| u8::from(z)).collect(),
            budget: raw.budget,
            probabilities: raw.levels,
            costs: raw.costs,
            weights: raw.weights,
            objective: raw.objective,
        }
    }
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance, ParseError> {
        let agenda = self
            .agenda
            .iter()
            .enumerate()
            .map(|(j, &z)| match z {
                0 => Ok(false),
                1 => Ok(true),
                _ => Err(ParseError::Invalid {
                    path: format!("agenda[{j}]"),
                    error: Error::ShapeMismatch(format!("agenda entries are 0 or 1, found {z}")),
                }),
            })
            .collect::<Result<Vec<bool>, _>>()?;
        let raw = RawInstance {
            k: self.k,
            levels: self.probabilities,
            costs: self.costs,
            agenda,
            threshold: self.threshold,
            comparison: self.comparison,
            weights: self.weights,
            objective: self.objective,
            budget: self.budget,
        };
        Instance::validate(raw).map_err(|error| ParseError::Invalid {
            path: field_path(&error),
            error,
        })
    }
}

/// Where in the file a validation error points.
fn field_path(err: &Error) -> String {
    match *err {
        Error::LevelOutOfRange { voter, issue, .. } => format!("probabilities[{voter}][{issue}]"),
        Error::NonzeroBaseCost { voter, issue } => format!("costs[{voter}][{issue}]"),
        Error::ZeroCostOffBase { voter, issue, level }
        | Error::NonMonotoneCost { voter, issue, level }
        | Error::MissingAgendaSideCost { voter, issue, level } => format!("costs[{voter}][{issue}][{level}]"),
        Error::InvalidThreshold { .. } => "threshold".into(),
        Error::InvalidWeight { issue } => format!("weights[{issue}]"),
        _ => "instance".into(),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.into_instance()
}

/// Pretty-printed JSON; [`parse_instance`] reads it back unchanged.
pub fn serialize_instance(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from(inst)).expect("instance files always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example::running_example;

    const EXAMPLE: &str = r#"{
        "k": 9,
        "threshold": {"num": 1, "den": 2},
        "comparison": "strict",
        "agenda": [1, 1, 1],
        "budget": 245,
        "probabilities": [[8, 3, 5], [4, 7, 4]],
        "costs": [
            [[null, null, null, null, null, null, null, null, 0, 100, 140],
             [null, null, null, 0, 10, 70, 100, 140, 310, 520, 600],
             [null, null, null, null, null, 0, 15, 25, 70, 90, 150]],
            [[null, null, null, null, 0, 30, 40, 70, 120, 200, 270],
             [null, null, null, null, null, null, null, 0, 10, 40, 90],
             [null, null, null, null, 0, 70, 90, 100, 180, 300, 450]]
        ]
    }"#;

    #[test]
    fn reads_running_example() {
        assert_eq!(parse_instance(EXAMPLE).unwrap(), running_example());
    }

    #[test]
    fn round_trip() {
        let inst = running_example().with_weights(vec![1, 2, 3], 4).unwrap();
        assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn missing_budget() {
        let text = EXAMPLE.replace("\"budget\": 245,", "");
        let err = parse_instance(&text).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }));
        assert!(err.to_string().contains("budget"));
    }

    #[test]
    fn validation_paths() {
        let text = EXAMPLE.replace("0, 10, 70", "0, 80, 70");
        let err = parse_instance(&text).unwrap_err();
        assert_eq!(err.to_string().split(':').next().unwrap(), "costs[0][1][5]");
        let text = EXAMPLE.replace("[1, 1, 1]", "[1, 2, 1]");
        assert!(parse_instance(&text).unwrap_err().to_string().starts_with("agenda[1]"));
    }
}
