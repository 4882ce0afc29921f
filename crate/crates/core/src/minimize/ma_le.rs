//! The multi-agent Lovász relaxation, solved by cutting planes.

use alloc::vec;
use alloc::vec::Vec;

use super::lp::solve_covering;
use crate::assignment::FractionalAssignment;
use crate::error::{Error, Result};
use crate::extensions::{lovasz_eval, lovasz_subgradient, FractionalPoint};
use crate::instance::{MasoInstance, Sense};
use crate::set::Set;
use crate::value::ValueOracle;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaLeOptions {
    /// Stop once `Σ f_i^L(z_i)` exceeds the LP bound by at most
    /// `accuracy · (1 + bound)`.
    pub accuracy: f64,
    pub max_iters: usize,
}

impl Default for MaLeOptions {
    fn default() -> Self {
        MaLeOptions {
            accuracy: 1e-9,
            max_iters: 2000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MaLeSolution {
    pub assignment: FractionalAssignment,
    /// `Σ_i f_i^L(z_i)` of the returned assignment.
    pub value: f64,
    /// LP lower bound on the relaxation optimum.
    pub lower_bound: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimizes `Σ_i f_i^L(z_i)` subject to `z(B) >= 1` for every blocker set.
///
/// Each `f_i^L` is the maximum of `s·z` over greedy vertices `s`; the solver
/// adds the vertex at the current iterate whenever the epigraph variable
/// underestimates `f_i^L`, so it stops at an exact optimum after finitely
/// many cuts. Aggregate mass above 1 on an element is trimmed at the end.
pub fn solve_le_program(
    objectives: &[ValueOracle],
    blockers: &[Set],
    n: usize,
    opts: MaLeOptions,
) -> Result<MaLeSolution> {
    let k = objectives.len();
    if k == 0 {
        return Err(Error::invalid("no objectives"));
    }
    if let Some(b) = blockers.iter().find(|b| b.is_empty()) {
        return Err(Error::infeasible(alloc::format!(
            "blocker list contains the empty set {b}; no set meets it"
        )));
    }
    let width = n * k + k;
    let mut cost = vec![0.0; width];
    for c in &mut cost[n * k..] {
        *c = 1.0;
    }
    let mut rows: Vec<(Vec<f64>, f64)> = blockers
        .iter()
        .map(|b| {
            let mut a = vec![0.0; width];
            for i in 0..k {
                for v in b.iter() {
                    a[i * n + v] = 1.0;
                }
            }
            (a, 1.0)
        })
        .collect();
    let cut = |i: usize, s: &[f64]| {
        let mut a = vec![0.0; width];
        a[n * k + i] = 1.0;
        for (v, sv) in s.iter().enumerate() {
            a[i * n + v] = -sv;
        }
        (a, 0.0)
    };
    let ones = FractionalPoint::indicator(n, Set::full(n));
    for (i, f) in objectives.iter().enumerate() {
        rows.push(cut(i, &lovasz_subgradient(f, &ones)?));
    }

    let mut best: Option<(FractionalAssignment, f64)> = None;
    let mut lower_bound = 0.0;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iters {
        iterations += 1;
        let (x, lp_value) = solve_covering(&cost, &rows)?;
        lower_bound = lp_value;
        let parts: Vec<FractionalPoint> = (0..k)
            .map(|i| {
                let mut p = FractionalPoint::zeros(n);
                for v in 0..n {
                    p.set(v, x[i * n + v]);
                }
                p
            })
            .collect();
        let mut total = 0.0;
        let mut added = false;
        for (i, f) in objectives.iter().enumerate() {
            let li = lovasz_eval(f, &parts[i])?;
            total += li;
            if li > x[n * k + i] + opts.accuracy * (1.0 + li.abs()) {
                rows.push(cut(i, &lovasz_subgradient(f, &parts[i])?));
                added = true;
            }
        }
        if best.as_ref().map_or(true, |(_, v)| total < *v) {
            best = Some((FractionalAssignment::new(parts)?, total));
        }
        if !added || total - lp_value <= opts.accuracy * (1.0 + lp_value.abs()) {
            converged = true;
            break;
        }
    }
    let (assignment, _) = best.ok_or_else(|| Error::precondition("max_iters must be at least 1"))?;
    let assignment = trim_excess(assignment);
    let value = assignment.lovasz_value(objectives)?;
    Ok(MaLeSolution {
        assignment,
        value,
        lower_bound,
        iterations,
        converged,
    })
}

/// Scales the agents' shares of any element with aggregate above 1 down to 1.
fn trim_excess(mut z: FractionalAssignment) -> FractionalAssignment {
    let agg = z.aggregate();
    for v in 0..z.n() {
        if agg[v] > 1.0 {
            for i in 0..z.k() {
                let x = z.part(i)[v] / agg[v];
                z.part_mut(i).set(v, x);
            }
        }
    }
    z
}

/// Solves the relaxation of a minimization instance over its outer blocker.
pub fn solve_ma_le(inst: &MasoInstance, opts: MaLeOptions) -> Result<MaLeSolution> {
    if inst.sense != Sense::Min {
        return Err(Error::precondition("the Lovász relaxation is for minimization instances"));
    }
    if !inst.all_monotone() {
        return Err(Error::precondition("every objective must claim monotonicity"));
    }
    if inst.per_agent.is_some() {
        return Err(Error::unsupported("per-agent families in minimization"));
    }
    let blockers = inst
        .outer
        .blocker()
        .ok_or_else(|| Error::precondition("the outer family carries no blocker list"))?;
    solve_le_program(&inst.objectives, blockers, inst.n(), opts)
}
