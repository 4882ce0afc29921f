//! CE-Rounding: randomized level-set covering followed by uncrossing.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assignment::FractionalAssignment;
use crate::error::{Error, Result};
use crate::instance::{Allocation, MasoInstance};
use crate::set::Set;
use crate::value::ValueOracle;

use super::MinOutcome;

/// Iteration cap `ceil(64·k·(ln|U| + 1))`.
pub fn iteration_cap(k: usize, u: usize) -> usize {
    if u == 0 {
        return 0;
    }
    libm::ceil(64.0 * k as f64 * (libm::log(u as f64) + 1.0)) as usize
}

/// Draws `(i, θ)` and adds `{v : z_i(v) >= θ}` to `S_i` until the union covers `u`.
/// Returns the overlapping sets and the number of draws.
pub(crate) fn cover(z: &FractionalAssignment, u: Set, rng: &mut ChaCha8Rng) -> Result<(Vec<Set>, usize)> {
    let k = z.k();
    let cap = iteration_cap(k, u.len());
    let mut parts = vec![Set::EMPTY; k];
    let mut covered = Set::EMPTY;
    let mut iterations = 0;
    while !u.is_subset(covered) {
        if iterations >= cap {
            return Err(Error::CoverageStalled { iterations });
        }
        iterations += 1;
        let i = rng.gen_range(0..k);
        let theta = 1.0 - rng.gen::<f64>();
        let zi = z.part(i);
        let level: Set = (0..z.n()).filter(|&v| zi[v] >= theta).collect();
        parts[i] = parts[i].union(level);
        covered = covered.union(level);
    }
    Ok((parts, iterations))
}

/// One uncrossing step on agents `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SwapRecord {
    pub i: usize,
    pub j: usize,
    pub g_before: f64,
    pub g_after: f64,
    pub h_before: f64,
    pub h_after: f64,
}

/// Makes the parts pairwise disjoint without changing their union.
///
/// For an overlapping pair `i < j`, `S_j` loses `S_i` when
/// `h(S_j - S_i) <= h(S_j)`, otherwise `S_i` loses `S_j`. With `h ≡ 0` the
/// lower index always keeps shared elements.
pub fn uncross(parts: Vec<Set>, h: Option<&ValueOracle>) -> Vec<Set> {
    uncross_inner(parts, &[], h, false).0
}

/// [`uncross`], recording `Σ g_i` and `Σ h` around every swap.
pub fn uncross_traced(parts: Vec<Set>, g: &[ValueOracle], h: Option<&ValueOracle>) -> (Vec<Set>, Vec<SwapRecord>) {
    uncross_inner(parts, g, h, true)
}

fn uncross_inner(
    mut parts: Vec<Set>,
    g: &[ValueOracle],
    h: Option<&ValueOracle>,
    trace: bool,
) -> (Vec<Set>, Vec<SwapRecord>) {
    let hv = |s: Set| h.map_or(0.0, |h| h.value(s));
    let totals = |parts: &[Set]| -> (f64, f64) {
        let gs = parts.iter().zip(g).map(|(&s, gi)| gi.value(s)).sum();
        let hs = parts.iter().map(|&s| hv(s)).sum();
        (gs, hs)
    };
    let mut records = Vec::new();
    loop {
        let pair = (0..parts.len())
            .flat_map(|i| (i + 1..parts.len()).map(move |j| (i, j)))
            .find(|&(i, j)| parts[i].intersects(parts[j]));
        let Some((i, j)) = pair else {
            return (parts, records);
        };
        let before = if trace { totals(&parts) } else { (0.0, 0.0) };
        let (si, sj) = (parts[i], parts[j]);
        if hv(sj.difference(si)) <= hv(sj) {
            parts[j] = sj.difference(si);
        } else {
            parts[i] = si.difference(sj);
        }
        if trace {
            let after = totals(&parts);
            records.push(SwapRecord {
                i,
                j,
                g_before: before.0,
                g_after: after.0,
                h_before: before.1,
                h_after: after.1,
            });
        }
    }
}

/// CE-Rounding on `inst` with target `u`.
///
/// Requires `u ∈ F` and `Σ_i z_i >= χ^u`. The covering loop runs until the
/// assigned set contains `u`; the result is then uncrossed with the
/// instance's `h` (if any).
pub fn ce_rounding(inst: &MasoInstance, z: &FractionalAssignment, u: Set, seed: u64) -> Result<MinOutcome> {
    if z.k() != inst.k() || z.n() != inst.n() {
        return Err(Error::invalid("assignment shape does not match the instance"));
    }
    if !inst.outer.contains(u) {
        return Err(Error::precondition(alloc::format!("target {u} is not in the family")));
    }
    let agg = z.aggregate();
    if let Some(v) = u.iter().find(|&v| agg[v] < 1.0 - 1e-9) {
        return Err(Error::precondition(alloc::format!(
            "target element {v} has aggregate mass {} < 1",
            agg[v]
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (parts, iterations) = cover(z, u, &mut rng)?;
    let parts = uncross(parts, inst.h());
    let allocation = Allocation::new(parts)?;
    if !u.is_subset(allocation.union()) {
        return Err(Error::invariant("uncrossing lost part of the target"));
    }
    inst.ensure_feasible(&allocation)?;
    Ok(MinOutcome {
        cost: inst.cost(&allocation),
        allocation,
        fractional_value: z.lovasz_value(&inst.objectives)?,
        uniform_value: None,
        target: Some(u),
        iterations,
    })
}
