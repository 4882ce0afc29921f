//! Experiment execution: one cell per (instance, algorithm, seed).

use std::collections::HashMap;
use std::ops::Range;
use std::time::Instant;

use anyhow::{bail, Result};
use maso_core::oracle::MASO_CAP;
use maso_core::{brute_force_maso_capped, Error, InstanceSpec, MasoInstance};
use rayon::prelude::*;

use crate::algo::Algorithm;
use crate::report::{dump, Row, Status};

#[derive(Clone, Debug)]
pub struct NamedInstance {
    pub id: String,
    pub spec: InstanceSpec,
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub instances: Vec<NamedInstance>,
    pub algorithms: Vec<Algorithm>,
    pub seeds: Range<u64>,
    /// Largest `(k+1)^n` the certifying brute force may enumerate.
    pub cert_cap: u64,
    pub timings: bool,
}

impl ExperimentSpec {
    pub fn new(instances: Vec<NamedInstance>, algorithms: Vec<Algorithm>, seeds: Range<u64>) -> Self {
        ExperimentSpec {
            instances,
            algorithms,
            seeds,
            cert_cap: MASO_CAP,
            timings: false,
        }
    }

    /// Builds every instance and checks every algorithm applies to it.
    pub fn validate(&self) -> Result<()> {
        for inst in &self.instances {
            let built = inst.spec.build().map_err(|e| anyhow::anyhow!("instance {}: {e}", inst.id))?;
            for algo in &self.algorithms {
                if let Err(why) = algo.check_applicable(&built) {
                    bail!("instance {}: {why}", inst.id);
                }
            }
        }
        Ok(())
    }
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::InvariantViolation(_) => Status::Invariant,
        Error::Capacity { .. } => Status::Capacity,
        _ => Status::Infeasible,
    }
}

/// Runs every cell. Rows come back ordered by (instance, algorithm, seed)
/// whatever order the cells finish in.
pub fn run(spec: &ExperimentSpec) -> Result<Vec<Row>> {
    spec.validate()?;
    if spec.algorithms.is_empty() {
        return Ok(Vec::new());
    }
    let optima: Vec<Result<f64, Error>> = spec
        .instances
        .par_iter()
        .map(|ni| {
            let inst = ni.spec.build()?;
            brute_force_maso_capped(&inst, spec.cert_cap).map(|(v, _)| v)
        })
        .collect();

    let cells: Vec<(usize, Algorithm, u64)> = (0..spec.instances.len())
        .flat_map(|i| {
            spec.algorithms
                .iter()
                .flat_map(move |&a| spec.seeds.clone().map(move |s| (i, a, s)))
        })
        .collect();

    let rows = cells
        .par_iter()
        .map_init(HashMap::<usize, MasoInstance>::new, |cache, &(i, algo, seed)| {
            let ni = &spec.instances[i];
            let inst = match cache.get(&i) {
                Some(inst) => inst,
                None => {
                    let built = ni.spec.build().expect("validated");
                    cache.entry(i).or_insert(built)
                }
            };
            run_cell(ni, inst, algo, seed, &optima[i], spec.timings)
        })
        .collect();
    Ok(rows)
}

fn run_cell(
    ni: &NamedInstance,
    inst: &MasoInstance,
    algo: Algorithm,
    seed: u64,
    opt: &Result<f64, Error>,
    timings: bool,
) -> Row {
    let start = Instant::now();
    let result = algo.run(inst, seed);
    let runtime_ms = timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    let mut row = Row {
        instance: ni.id.clone(),
        algorithm: algo.name().to_string(),
        seed,
        feasible: false,
        value: None,
        fractional_value: None,
        opt_value: opt.as_ref().ok().copied(),
        ratio: None,
        factor_claimed: None,
        runtime_ms,
        error: None,
        allocation: None,
        status: Status::Ok,
    };
    match result {
        Ok(out) => {
            row.feasible = inst.is_feasible(&out.allocation);
            row.value = Some(out.value);
            row.fractional_value = out.fractional_value;
            row.factor_claimed = out.factor_claimed;
            row.allocation = Some(dump(&out.allocation));
            row.ratio = row
                .opt_value
                .filter(|o| o.abs() > 1e-12 && row.feasible)
                .map(|o| out.value / o);
            if !row.feasible {
                row.status = Status::Infeasible;
                row.error = Some("output failed the membership probe".into());
            }
        }
        Err(e) => {
            row.status = status_of(&e);
            row.error = Some(e.to_string());
        }
    }
    if row.error.is_none() {
        if let Err(e) = opt {
            row.error = Some(format!("not certified: {e}"));
        }
    }
    row
}
