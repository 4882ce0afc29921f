//! Disjoint-support reductions: k-disjointification and fracture/expand/return.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ce::{cover, uncross};
use super::MinOutcome;
use crate::assignment::{FractionalAssignment, PreAssignment};
use crate::blocker::peel_to_minimal;
use crate::error::{Error, Result};
use crate::extensions::FractionalPoint;
use crate::family::FeasibleFamily;
use crate::instance::{Allocation, MasoInstance};
use crate::set::Set;
use crate::value::{Claims, ValueOracle};

/// Single-agent rounding of a fractional point to a member of the family.
pub trait SaRounder {
    /// Approximation factor relative to `g^L(z)`.
    fn alpha(&self) -> f64;
    fn round(&self, family: &FeasibleFamily, g: &ValueOracle, z: &FractionalPoint) -> Result<Set>;
}

/// Takes `{v : β z(v) >= 1}` and peels it to a minimal member.
///
/// For a family whose blocker sets all have at most `β` elements this set is
/// a member whenever `z` is feasible, and costs at most `β g^L(z)` for monotone `g`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdRounder {
    pub beta: f64,
}

impl SaRounder for ThresholdRounder {
    fn alpha(&self) -> f64 {
        self.beta
    }

    fn round(&self, family: &FeasibleFamily, _g: &ValueOracle, z: &FractionalPoint) -> Result<Set> {
        let u: Set = (0..z.len()).filter(|&v| self.beta * z[v] >= 1.0 - 1e-9).collect();
        if !family.contains(u) {
            return Err(Error::invariant(alloc::format!(
                "threshold set {u} at beta = {} is not in the family",
                self.beta
            )));
        }
        peel_to_minimal(family, u)
    }
}

/// `g(S) = Σ_i f_i(S ∩ V_i)`.
pub fn g_function(inst: &MasoInstance, pre: &PreAssignment) -> Result<ValueOracle> {
    if pre.k() != inst.k() {
        return Err(Error::invalid("pre-assignment has the wrong number of agents"));
    }
    let objectives = inst.objectives.clone();
    let supports = pre.supports().to_vec();
    let claims = objectives
        .iter()
        .fold(Claims::MONOTONE_SUBMODULAR, |c, f| c.meet(f.claims()));
    Ok(ValueOracle::from_fn(
        inst.n(),
        move |s| {
            objectives
                .iter()
                .zip(&supports)
                .map(|(f, &vi)| f.value(s.intersection(vi)))
                .sum()
        },
        claims,
    ))
}

/// Gives each element to the agent holding most of it, scaled by `k`
/// (ties to the lowest agent).
pub fn disjointify_max(z: &FractionalAssignment) -> FractionalAssignment {
    let k = z.k();
    let mut out = FractionalAssignment::zeros(k, z.n());
    for v in 0..z.n() {
        let mut best = 0;
        for i in 1..k {
            if z.part(i)[v] > z.part(best)[v] {
                best = i;
            }
        }
        out.part_mut(best).set(v, k as f64 * z.part(best)[v]);
    }
    out
}

/// Rounds a disjoint-support assignment through `g` and splits by support.
///
/// Elements the rounder picks outside every support go to the agent with
/// the smallest marginal cost.
pub fn round_disjoint(
    inst: &MasoInstance,
    zhat: &FractionalAssignment,
    rounder: &dyn SaRounder,
) -> Result<Allocation> {
    let pre = PreAssignment::from_assignment(zhat)?;
    let g = g_function(inst, &pre)?;
    let s_hat = rounder.round(&inst.outer, &g, &zhat.aggregate())?;
    if !inst.outer.contains(s_hat) {
        return Err(Error::invariant(alloc::format!("rounder returned {s_hat}, not a member")));
    }
    let mut parts = pre.split(s_hat);
    let owned = parts.iter().fold(Set::EMPTY, |a, &p| a.union(p));
    for v in s_hat.difference(owned).iter() {
        let i = (0..inst.k())
            .min_by(|&a, &b| {
                let da = inst.objective(a).value(parts[a].with(v)) - inst.objective(a).value(parts[a]);
                let db = inst.objective(b).value(parts[b].with(v)) - inst.objective(b).value(parts[b]);
                da.total_cmp(&db)
            })
            .unwrap_or(0);
        parts[i].insert(v);
    }
    let allocation = Allocation::new(parts)?;
    inst.ensure_feasible(&allocation)?;
    Ok(allocation)
}

fn check_min_inputs(inst: &MasoInstance, z: &FractionalAssignment) -> Result<()> {
    if z.k() != inst.k() || z.n() != inst.n() {
        return Err(Error::invalid("assignment shape does not match the instance"));
    }
    if !inst.all_monotone() {
        return Err(Error::precondition("every objective must claim monotonicity"));
    }
    Ok(())
}

/// `disjointify_max` followed by single-agent rounding of `g`.
pub fn disjointify_and_round(
    inst: &MasoInstance,
    zstar: &FractionalAssignment,
    rounder: &dyn SaRounder,
) -> Result<MinOutcome> {
    check_min_inputs(inst, zstar)?;
    let fractional_value = zstar.lovasz_value(&inst.objectives)?;
    let zhat = disjointify_max(zstar);
    let allocation = round_disjoint(inst, &zhat, rounder)?;
    Ok(MinOutcome {
        cost: inst.cost(&allocation),
        allocation,
        fractional_value,
        uniform_value: Some(zhat.lovasz_value(&inst.objectives)?),
        target: None,
        iterations: 0,
    })
}

/// Bin of a positive value `x`: the `j >= 0` with `x ∈ (2^-(j+1), 2^-j]`,
/// and `0` for `x > 1`.
fn bin_of(x: f64) -> usize {
    let mut j = 0;
    let mut upper = 1.0;
    while x <= upper / 2.0 {
        upper /= 2.0;
        j += 1;
    }
    j
}

/// Prune, double, round up to powers of 1/2, then cover each bin with
/// CE-Rounding (`h ≡ 0`), collapse back to disjoint supports and round
/// through `g`.
///
/// Errors with an invariant violation if the uniform solution costs more
/// than four times the input.
pub fn fracture_expand_return(
    inst: &MasoInstance,
    zstar: &FractionalAssignment,
    rounder: &dyn SaRounder,
    seed: u64,
) -> Result<MinOutcome> {
    check_min_inputs(inst, zstar)?;
    let (n, k) = (inst.n(), inst.k());
    let fractional_value = zstar.lovasz_value(&inst.objectives)?;
    let agg = zstar.aggregate();
    let threshold = 1.0 / (2.0 * n as f64);

    let mut uniform = FractionalAssignment::zeros(k, n);
    let mut bins: Vec<Set> = Vec::new();
    for v in 0..n {
        if agg[v] <= threshold {
            continue;
        }
        let doubled = 2.0 * agg[v];
        let j = bin_of(doubled);
        let target = libm::ldexp(1.0, -(j as i32));
        for i in 0..k {
            let share = 2.0 * zstar.part(i)[v];
            uniform.part_mut(i).set(v, share * target / doubled);
        }
        if bins.len() <= j {
            bins.resize(j + 1, Set::EMPTY);
        }
        bins[j].insert(v);
    }
    if bins.iter().all(|b| b.is_empty()) && !inst.outer.contains(Set::EMPTY) {
        return Err(Error::infeasible("nothing survives pruning but the empty set is not feasible"));
    }
    let uniform_value = uniform.lovasz_value(&inst.objectives)?;
    if uniform_value > 4.0 * fractional_value + 1e-9 * (1.0 + fractional_value) {
        return Err(Error::invariant(alloc::format!(
            "uniform solution costs {uniform_value} > 4 x {fractional_value}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zhat = FractionalAssignment::zeros(k, n);
    for (j, &bin) in bins.iter().enumerate() {
        if bin.is_empty() {
            continue;
        }
        let r = libm::ldexp(1.0, j as i32);
        let expanded = FractionalAssignment::new(
            (0..k)
                .map(|i| uniform.part(i).restricted(bin).scaled(r))
                .collect(),
        )?;
        let (parts, _) = cover(&expanded, bin, &mut rng)?;
        let parts = uncross(parts, None);
        for (i, p) in parts.iter().enumerate() {
            for v in p.intersection(bin).iter() {
                zhat.part_mut(i).set(v, 1.0 / r);
            }
        }
    }
    let allocation = round_disjoint(inst, &zhat, rounder)?;
    Ok(MinOutcome {
        cost: inst.cost(&allocation),
        allocation,
        fractional_value,
        uniform_value: Some(uniform_value),
        target: None,
        iterations: bins.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn bins() {
        assert_eq!(bin_of(2.0), 0);
        assert_eq!(bin_of(1.0), 0);
        assert_eq!(bin_of(0.5), 1);
        assert_eq!(bin_of(0.3), 1);
        assert_eq!(bin_of(0.25), 2);
    }

    #[test]
    fn disjointify_single_item() {
        let z = FractionalAssignment::new(vec![
            FractionalPoint::new(vec![0.6]).unwrap(),
            FractionalPoint::new(vec![0.5]).unwrap(),
        ])
        .unwrap();
        let out = disjointify_max(&z);
        assert!((out.part(0)[0] - 1.2).abs() < 1e-12);
        assert_eq!(out.part(1)[0], 0.0);
    }

    #[test]
    fn disjointify_ties_go_to_first_agent() {
        let z = FractionalAssignment::new(vec![
            FractionalPoint::new(vec![0.5]).unwrap(),
            FractionalPoint::new(vec![0.5]).unwrap(),
        ])
        .unwrap();
        assert_eq!(disjointify_max(&z).part(0)[0], 1.0);
    }
}
