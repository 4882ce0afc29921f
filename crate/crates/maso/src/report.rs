//! Report rows and their CSV / JSON encodings.
//!
//! CSV columns, in order:
//!
//! | column | meaning |
//! |---|---|
//! | `instance` | instance id (file stem) |
//! | `algorithm` | route name |
//! | `seed` | cell seed |
//! | `feasible` | output passed the membership probes |
//! | `value` | `Σ f_i(S_i)` of the output |
//! | `fractional_value` | relaxation value, when one was solved |
//! | `opt_value` | brute-force optimum, when within the oracle cap |
//! | `ratio` | `value / opt_value`; empty when undefined |
//! | `factor_claimed` | guaranteed factor of the route, if any |
//! | `runtime_ms` | wall time, only with `--timings` |
//! | `error` | error or cap message |
//!
//! Optional fields are empty in CSV and `null` in JSON. JSON rows carry the
//! same keys plus `allocation`, the output parts as element lists.

use std::io::Write;

use anyhow::Result;
use maso_core::Allocation;
use serde::{Deserialize, Serialize};

pub const COLUMNS: [&str; 11] = [
    "instance",
    "algorithm",
    "seed",
    "feasible",
    "value",
    "fractional_value",
    "opt_value",
    "ratio",
    "factor_claimed",
    "runtime_ms",
    "error",
];

/// How a cell ended, ordered by severity of its exit code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    #[default]
    Ok,
    Infeasible,
    Capacity,
    Invariant,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Infeasible => 1,
            Status::Invariant => 2,
            Status::Capacity => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub instance: String,
    pub algorithm: String,
    pub seed: u64,
    pub feasible: bool,
    pub value: Option<f64>,
    pub fractional_value: Option<f64>,
    pub opt_value: Option<f64>,
    pub ratio: Option<f64>,
    pub factor_claimed: Option<f64>,
    pub runtime_ms: Option<f64>,
    pub error: Option<String>,
    pub allocation: Option<Vec<Vec<usize>>>,
    #[serde(skip)]
    pub status: Status,
}

pub fn dump(alloc: &Allocation) -> Vec<Vec<usize>> {
    alloc.parts().iter().map(|p| p.iter().collect()).collect()
}

fn cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_csv<W: Write>(out: W, rows: &[Row]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record([
            r.instance.clone(),
            r.algorithm.clone(),
            r.seed.to_string(),
            r.feasible.to_string(),
            cell(r.value),
            cell(r.fractional_value),
            cell(r.opt_value),
            cell(r.ratio),
            cell(r.factor_claimed),
            cell(r.runtime_ms),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(mut out: W, rows: &[Row]) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Worst status over all rows.
pub fn overall(rows: &[Row]) -> Status {
    rows.iter().map(|r| r.status).max().unwrap_or(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> Row {
        Row {
            instance: "a".into(),
            algorithm: "lifted-greedy".into(),
            seed: 3,
            feasible: true,
            value: Some(2.5),
            fractional_value: None,
            opt_value: Some(5.0),
            ratio: Some(0.5),
            factor_claimed: Some(0.5),
            runtime_ms: None,
            error: None,
            allocation: Some(vec![vec![0], vec![]]),
            status: Status::Ok,
        }
    }

    #[test]
    fn csv_header_and_empty_cells() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[row()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), COLUMNS.join(","));
        assert_eq!(lines.next().unwrap(), "a,lifted-greedy,3,true,2.5,,5,0.5,0.5,,");
    }

    #[test]
    fn exit_code_takes_the_worst_row() {
        let mut rows = vec![row(), row()];
        assert_eq!(overall(&rows).exit_code(), 0);
        rows[1].status = Status::Infeasible;
        assert_eq!(overall(&rows).exit_code(), 1);
        rows[0].status = Status::Invariant;
        assert_eq!(overall(&rows).exit_code(), 2);
        assert_eq!(overall(&[]).exit_code(), 0);
    }
}
