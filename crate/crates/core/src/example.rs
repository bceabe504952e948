//! The two-voter, three-issue instance used throughout the docs and tests.

use crate::model::{Comparison, Instance, Money, RawInstance, Threshold};

const ABSENT: Option<Money> = None;

/// k = 9, voters at (0.8, 0.3, 0.5) and (0.4, 0.7, 0.4), agenda 111,
/// threshold 1/2 (strict), budget 245.
pub fn running_example() -> Instance {
    let c = |v: Money| Some(v);
    let costs = vec![
        vec![
            vec![ABSENT, ABSENT, ABSENT, ABSENT, ABSENT, ABSENT, ABSENT, ABSENT, c(0), c(100), c(140)],
            vec![ABSENT, ABSENT, ABSENT, c(0), c(10), c(70), c(100), c(140), c(310), c(520), c(600)],
            vec![ABSENT, ABSENT, ABSENT, ABSENT, ABSENT, c(0), c(15), c(25), c(70), c(90), c(150)],
        ],
        vec![
            vec![ABSENT, ABSENT, ABSENT, ABSENT, c(0), c(30), c(40), c(70), c(120), c(200), c(270)],
            vec![ABSENT, ABSENT, ABSENT, ABSENT, ABSENT, ABSENT, ABSENT, c(0), c(10), c(40), c(90)],
            vec![ABSENT, ABSENT, ABSENT, ABSENT, c(0), c(70), c(90), c(100), c(180), c(300), c(450)],
        ],
    ];
    Instance::validate(RawInstance {
        k: 9,
        levels: vec![vec![8, 3, 5], vec![4, 7, 4]],
        costs,
        agenda: vec![true; 3],
        threshold: Threshold::HALF,
        comparison: Comparison::Strict,
        weights: None,
        objective: None,
        budget: 245,
    })
    .expect("running example is valid")
}
