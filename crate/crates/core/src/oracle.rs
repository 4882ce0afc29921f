//! Exhaustive optima and ratio certificates for small instances.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::family::FeasibleFamily;
use crate::instance::{Allocation, MasoInstance, Sense};
use crate::set::{Set, MAX_ELEMENTS};
use crate::value::ValueOracle;

/// Most assignments `brute_force_maso` will enumerate.
pub const MASO_CAP: u64 = 10_000_000;
/// Largest ground set `brute_force_so` will scan.
pub const SO_CAP: usize = 20;
/// Largest ground set for which value and membership tables are precomputed.
const TABLE_CAP: usize = 20;

fn better(sense: Sense, candidate: f64, incumbent: f64) -> bool {
    match sense {
        Sense::Min => candidate < incumbent,
        Sense::Max => candidate > incumbent,
    }
}

fn assignment_count(n: usize, k: usize, cap: u64) -> Option<u64> {
    (0..n).try_fold(1u64, |acc, _| acc.checked_mul(k as u64 + 1).filter(|&c| c <= cap))
}

/// Exact optimum over every assignment of elements to `{unassigned, 1..k}`.
///
/// Assignments are visited in mixed-radix order with element 0 as the
/// least significant digit; the first optimum found is returned.
pub fn brute_force_maso(inst: &MasoInstance) -> Result<(f64, Allocation)> {
    brute_force_maso_capped(inst, MASO_CAP)
}

/// [`brute_force_maso`] with an explicit limit on `(k+1)^n`.
pub fn brute_force_maso_capped(inst: &MasoInstance, cap: u64) -> Result<(f64, Allocation)> {
    let (n, k) = (inst.n(), inst.k());
    if n > MAX_ELEMENTS || assignment_count(n, k, cap).is_none() {
        let got = (k as u64 + 1).saturating_pow(n as u32);
        return Err(Error::capacity("assignments (k+1)^n", cap as usize, got as usize));
    }
    let tables = (n <= TABLE_CAP).then(|| Tables::build(inst));
    let value = |i: usize, s: Set| match &tables {
        Some(t) => t.values[i][s.bits() as usize],
        None => inst.objective(i).value(s),
    };
    let feasible = |parts: &[Set], union: Set| match &tables {
        Some(t) => t.outer[union.bits() as usize] && parts.iter().enumerate().all(|(i, s)| t.agent[i][s.bits() as usize]),
        None => {
            inst.outer.contains(union)
                && parts
                    .iter()
                    .enumerate()
                    .all(|(i, &s)| inst.agent_family(i).map_or(true, |f| f.contains(s)))
        }
    };

    let mut digits = vec![0usize; n];
    let mut parts = vec![Set::EMPTY; k];
    let mut union = Set::EMPTY;
    let mut best: Option<(f64, Vec<Set>)> = None;
    loop {
        if feasible(&parts, union) {
            let total: f64 = (0..k).map(|i| value(i, parts[i])).sum();
            if best.as_ref().map_or(true, |(b, _)| better(inst.sense, total, *b)) {
                best = Some((total, parts.clone()));
            }
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return match best {
                    Some((v, parts)) => Ok((v, Allocation::new(parts)?)),
                    None => Err(Error::infeasible("no assignment is feasible")),
                };
            }
            if digits[pos] > 0 {
                parts[digits[pos] - 1].remove(pos);
                union.remove(pos);
            }
            digits[pos] += 1;
            if digits[pos] <= k {
                parts[digits[pos] - 1].insert(pos);
                union.insert(pos);
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

struct Tables {
    values: Vec<Vec<f64>>,
    outer: Vec<bool>,
    agent: Vec<Vec<bool>>,
}

impl Tables {
    fn build(inst: &MasoInstance) -> Self {
        let n = inst.n();
        let sets: Vec<Set> = Set::all(n).collect();
        Tables {
            values: inst
                .objectives
                .iter()
                .map(|f| sets.iter().map(|&s| f.value_uncached(s)).collect())
                .collect(),
            outer: sets.iter().map(|&s| inst.outer.contains(s)).collect(),
            agent: (0..inst.k())
                .map(|i| {
                    sets.iter()
                        .map(|&s| inst.agent_family(i).map_or(true, |f| f.contains(s)))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Exact optimum of `f` over `F` by scanning all `2^n` sets in increasing
/// bit order; the first optimum found is returned.
pub fn brute_force_so(f: &ValueOracle, family: &FeasibleFamily, sense: Sense) -> Result<(f64, Set)> {
    let n = f.n();
    if family.n() != n {
        return Err(Error::invalid("function and family have different ground sets"));
    }
    if n > SO_CAP {
        return Err(Error::capacity("brute-force ground set", SO_CAP, n));
    }
    let mut best: Option<(f64, Set)> = None;
    for s in Set::all(n) {
        if !family.contains(s) {
            continue;
        }
        let v = f.value_uncached(s);
        if best.map_or(true, |(b, _)| better(sense, v, b)) {
            best = Some((v, s));
        }
    }
    best.ok_or_else(|| Error::infeasible("the family is empty"))
}

/// Brute-force optimum next to an algorithm's allocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub opt_value: f64,
    pub opt_allocation: Allocation,
    pub algo_value: f64,
    /// `algo / opt`: at most 1 for maximization, at least 1 for
    /// minimization. `None` when the allocation is infeasible or the
    /// optimum is zero.
    pub ratio: Option<f64>,
    pub feasible: bool,
    pub zero_optimum: bool,
}

/// Optimum below which a ratio is not reported.
const ZERO: f64 = 1e-12;

/// Certifies `alloc`, rechecking its feasibility from scratch.
pub fn certify(inst: &MasoInstance, alloc: &Allocation) -> Result<Certificate> {
    let (opt_value, opt_allocation) = brute_force_maso(inst)?;
    let feasible = alloc.k() == inst.k()
        && (0..alloc.k()).all(|i| (i + 1..alloc.k()).all(|j| !alloc.part(i).intersects(alloc.part(j))))
        && alloc.union().is_subset(Set::full(inst.n()))
        && inst.outer.contains(alloc.union())
        && (0..alloc.k()).all(|i| inst.agent_family(i).map_or(true, |f| f.contains(alloc.part(i))));
    let algo_value = if alloc.k() == inst.k() { inst.cost(alloc) } else { f64::NAN };
    let zero_optimum = opt_value.abs() <= ZERO;
    let ratio = (feasible && !zero_optimum).then(|| algo_value / opt_value);
    Ok(Certificate {
        opt_value,
        opt_allocation,
        algo_value,
        ratio,
        feasible,
        zero_optimum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{standard_function, FunctionSpec};
    use crate::graph::Graph;
    use crate::set::GroundSet;

    fn modular(w: &[f64]) -> ValueOracle {
        standard_function(&FunctionSpec::Modular { weights: w.to_vec() }).unwrap()
    }

    #[test]
    fn vertex_cover_on_triangle_costs_two() {
        let g = Graph::complete(3);
        let fam = FeasibleFamily::blocking(3, g.vertex_cover_blockers()).unwrap();
        let inst = MasoInstance::new(
            GroundSet::new(3).unwrap(),
            vec![modular(&[1.0; 3]), modular(&[1.0; 3])],
            fam,
            Sense::Min,
        )
        .unwrap();
        let (v, a) = brute_force_maso(&inst).unwrap();
        assert_eq!(v, 2.0);
        assert_eq!(a.union().len(), 2);
    }

    #[test]
    fn separable_welfare() {
        let inst = MasoInstance::new(
            GroundSet::new(3).unwrap(),
            vec![modular(&[3.0, 1.0, 2.0]), modular(&[1.0, 4.0, 2.5])],
            FeasibleFamily::powerset(3).unwrap(),
            Sense::Max,
        )
        .unwrap();
        assert_eq!(brute_force_maso(&inst).unwrap().0, 9.5);
    }

    #[test]
    fn single_agent_trivial_family() {
        let f = modular(&[1.0, 2.0]);
        let fam = FeasibleFamily::trivial(2).unwrap();
        assert_eq!(brute_force_so(&f, &fam, Sense::Min).unwrap(), (3.0, Set::full(2)));
    }

    #[test]
    fn infeasible_allocation_has_no_ratio() {
        let inst = MasoInstance::new(
            GroundSet::new(2).unwrap(),
            vec![modular(&[1.0, 1.0])],
            FeasibleFamily::trivial(2).unwrap(),
            Sense::Min,
        )
        .unwrap();
        let c = certify(&inst, &Allocation::new(vec![Set::singleton(0)]).unwrap()).unwrap();
        assert!(!c.feasible);
        assert_eq!(c.ratio, None);
        let c = certify(&inst, &Allocation::new(vec![Set::full(2)]).unwrap()).unwrap();
        assert_eq!(c.ratio, Some(1.0));
    }

    #[test]
    fn capacity_is_enforced() {
        let inst = MasoInstance::new(
            GroundSet::new(16).unwrap(),
            vec![modular(&[1.0; 16]); 3],
            FeasibleFamily::powerset(16).unwrap(),
            Sense::Max,
        )
        .unwrap();
        assert!(matches!(brute_force_maso(&inst), Err(Error::Capacity { .. })));
    }
}
