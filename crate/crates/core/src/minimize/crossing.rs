//! Minimization over crossing families via their `F_uv` ring subfamilies.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ce::{cover, uncross};
use super::ma_le::{solve_le_program, MaLeOptions};
use super::MinOutcome;
use crate::error::{Error, Result};
use crate::instance::{Allocation, MasoInstance, Sense};
use crate::set::Set;

/// Candidate targets: the minimal member of each nonempty
/// `F_uv = {A ∈ F : u ∈ A, v ∉ A}`, plus `∅` and `V` when they are members.
pub fn crossing_candidates(members: &[Set], n: usize) -> Vec<Set> {
    let full = Set::full(n);
    let mut out: Vec<Set> = members
        .iter()
        .copied()
        .filter(|&m| m.is_empty() || m == full)
        .collect();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let meet = members
                .iter()
                .filter(|m| m.contains(u) && !m.contains(v))
                .fold(None, |acc: Option<Set>, &m| Some(acc.map_or(m, |a| a.intersection(m))));
            if let Some(m) = meet {
                out.push(m);
            }
        }
    }
    out.sort_by_key(|s| (s.len(), s.bits()));
    out.dedup();
    out
}

/// Solves `min Σ f_i(S_i)` with `⊎ S_i = M` for every candidate `M` and
/// keeps the cheapest. Each subproblem is the Lovász relaxation over
/// singleton blockers of `M` rounded by CE-Rounding with `h ≡ 0`.
pub fn crossing_family_solve(inst: &MasoInstance, opts: MaLeOptions, seed: u64) -> Result<MinOutcome> {
    if inst.sense != Sense::Min {
        return Err(Error::precondition("crossing-family solver minimizes"));
    }
    if !inst.all_monotone() {
        return Err(Error::precondition("every objective must claim monotonicity"));
    }
    let n = inst.n();
    let members = inst.outer.members()?;
    let candidates = crossing_candidates(&members, n);
    if candidates.is_empty() {
        return Err(Error::infeasible("the family has no members"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<MinOutcome> = None;
    for m in candidates {
        if !inst.outer.contains(m) {
            return Err(Error::invariant(alloc::format!(
                "candidate {m} is not a member; the family is not crossing"
            )));
        }
        let (allocation, fractional_value) = if m.is_empty() {
            (Allocation::empty(inst.k()), 0.0)
        } else {
            let blockers: Vec<Set> = m.iter().map(Set::singleton).collect();
            let sol = solve_le_program(&inst.objectives, &blockers, n, opts)?;
            let (parts, _) = cover(&sol.assignment, m, &mut rng)?;
            (Allocation::new(uncross(parts, None))?, sol.value)
        };
        inst.ensure_feasible(&allocation)?;
        let cost = inst.cost(&allocation);
        if best.as_ref().map_or(true, |b| cost < b.cost) {
            best = Some(MinOutcome {
                allocation,
                cost,
                fractional_value,
                uniform_value: None,
                target: Some(m),
                iterations: 0,
            });
        }
    }
    best.ok_or_else(|| Error::infeasible("no candidate produced an allocation"))
}
