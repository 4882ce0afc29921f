//! Named property suites.

use clap::ValueEnum;

use crate::acceptance::{criterion, CriterionResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Extensions,
    Lifting,
    Minimize,
    Maximize,
    Oracle,
    Acceptance,
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Extensions => &[1],
            Suite::Lifting => &[2],
            Suite::Minimize => &[3, 4, 5, 6, 7, 10],
            Suite::Maximize => &[3, 8, 9],
            Suite::Oracle => &[11],
            Suite::Acceptance => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
        }
    }
}

/// Runs the suite's criteria in order, calling `each` as they finish.
pub fn run_suite(suite: Suite, mut each: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    suite
        .criteria()
        .iter()
        .map(|&id| {
            let r = criterion(id).expect("suite lists known criteria").run();
            each(&r);
            r
        })
        .collect()
}
