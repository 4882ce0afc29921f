//! Multi-agent maximization: continuous greedy, support disjointification,
//! pipage rounding and the lifted greedy.

pub mod pipage;
pub mod polytope;

pub use pipage::round_partition_matroid;
pub use polytope::{Polytope, PolytopeKind, RANK_CHECK_CAP};

use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::assignment::{FractionalAssignment, PreAssignment};
use crate::error::{Error, Result};
use crate::extensions::{multilinear_eval_exact, multilinear_eval_mc, multilinear_partial, multilinear_partial_mc};
use crate::family::FamilyKind;
use crate::instance::{Allocation, MasoInstance, Sense};
use crate::lifting::{lift_instance, unlift};
use crate::minimize::g_function;
use crate::set::Set;

/// Default number of continuous greedy steps.
pub const DEFAULT_STEPS: usize = 100;

const TOL: f64 = 1e-9;

/// How continuous greedy estimates gradients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradientMode {
    Exact,
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContinuousOutcome {
    pub assignment: FractionalAssignment,
    /// `Σ_i f_i^M(z_i)`, exact or estimated according to the mode.
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaxOutcome {
    pub allocation: Allocation,
    /// `Σ_i f_i(S_i)`.
    pub value: f64,
    /// Relaxation value before rounding, when a relaxation was solved.
    pub fractional_value: Option<f64>,
    /// Approximation factor the route guarantees, `None` for heuristics.
    pub factor_claimed: Option<f64>,
}

fn check_max(inst: &MasoInstance, p: &Polytope) -> Result<()> {
    if inst.sense != Sense::Max {
        return Err(Error::precondition("maximization routes need sense = max"));
    }
    if p.n() != inst.n() {
        return Err(Error::invalid("polytope and instance have different ground sets"));
    }
    if inst.per_agent.is_some() {
        return Err(Error::unsupported("per-agent families need the lifted greedy"));
    }
    Ok(())
}

fn clamp_unit(z: &mut FractionalAssignment) {
    for i in 0..z.k() {
        for v in 0..z.n() {
            let x = z.part(i)[v];
            if x > 1.0 {
                z.part_mut(i).set(v, 1.0);
            }
        }
    }
}

/// `T` steps over `W = {(z_1, .., z_k) : Σ z_i ∈ P}`.
///
/// Each step gives every element to the agent with the largest partial,
/// asks `P` for the best vertex under those weights and moves `1/T` toward it.
pub fn continuous_greedy_ma(
    inst: &MasoInstance,
    p: &Polytope,
    steps: usize,
    mode: GradientMode,
) -> Result<ContinuousOutcome> {
    check_max(inst, p)?;
    if !inst.all_monotone() {
        return Err(Error::precondition(
            "continuous greedy needs monotone objectives; use the non-monotone slot",
        ));
    }
    if steps == 0 {
        return Err(Error::invalid("continuous greedy needs at least one step"));
    }
    let (n, k) = (inst.n(), inst.k());
    let delta = 1.0 / steps as f64;
    let mut rng = match mode {
        GradientMode::MonteCarlo { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
        GradientMode::Exact => None,
    };
    let mut z = FractionalAssignment::zeros(k, n);
    for _ in 0..steps {
        let mut weight = vec![f64::NEG_INFINITY; n];
        let mut owner = vec![0usize; n];
        for i in 0..k {
            for v in 0..n {
                let d = match (&mode, rng.as_mut()) {
                    (GradientMode::MonteCarlo { samples, .. }, Some(r)) => {
                        multilinear_partial_mc(inst.objective(i), z.part(i), v, *samples, r)
                    }
                    _ => multilinear_partial(inst.objective(i), z.part(i), v)?,
                };
                if d > weight[v] {
                    weight[v] = d;
                    owner[v] = i;
                }
            }
        }
        let y = p.linear_max(&weight)?;
        for v in 0..n {
            if y[v] > 0.0 {
                let i = owner[v];
                let x = z.part(i)[v] + delta * y[v];
                z.part_mut(i).set(v, x);
            }
        }
    }
    clamp_unit(&mut z);
    let value = match mode {
        GradientMode::Exact => z.multilinear_value(&inst.objectives)?,
        GradientMode::MonteCarlo { samples, seed } => {
            let mut total = 0.0;
            for (i, f) in inst.objectives.iter().enumerate() {
                total += multilinear_eval_mc(f, z.part(i), samples, seed.wrapping_add(i as u64))?.0;
            }
            total
        }
    };
    Ok(ContinuousOutcome { assignment: z, value })
}

/// Moves every shared item wholly to one of its holders until supports are
/// disjoint. For holders `i < i'` of `v` the two endpoint transfers are
/// compared through the partials `∂_v f_i^M(z_i)`; ties go to `i`.
///
/// Returns the new assignment and the number of moves.
pub fn disjointify_supports(z: &FractionalAssignment, inst: &MasoInstance) -> Result<(FractionalAssignment, usize)> {
    if z.k() != inst.k() || z.n() != inst.n() {
        return Err(Error::invalid("assignment shape does not match the instance"));
    }
    let mut out = z.clone();
    let mut moves = 0;
    let mut value = out.multilinear_value(&inst.objectives)?;
    for v in 0..z.n() {
        loop {
            let holders: Vec<usize> = (0..z.k()).filter(|&i| out.part(i)[v] > 0.0).collect();
            let [i, j, ..] = holders[..] else { break };
            let mass = out.part(i)[v] + out.part(j)[v];
            let di = multilinear_partial(inst.objective(i), out.part(i), v)?;
            let dj = multilinear_partial(inst.objective(j), out.part(j), v)?;
            let (keep, drop) = if mass * di >= mass * dj { (i, j) } else { (j, i) };
            out.part_mut(keep).set(v, mass);
            out.part_mut(drop).set(v, 0.0);
            moves += 1;
            let next = out.multilinear_value(&inst.objectives)?;
            if next < value - TOL * value.abs().max(1.0) {
                return Err(Error::invariant(alloc::format!(
                    "moving item {v} to agent {keep} lowered the value from {value} to {next}"
                )));
            }
            value = next;
        }
    }
    Ok((out, moves))
}

/// Disjointify, round the aggregate through `g`, split by support.
fn round_assignment(inst: &MasoInstance, p: &Polytope, z: &FractionalAssignment) -> Result<Allocation> {
    let (zhat, _) = disjointify_supports(z, inst)?;
    let pre = PreAssignment::from_assignment(&zhat)?;
    let g = g_function(inst, &pre)?;
    let agg = zhat.aggregate();
    let g_frac = multilinear_eval_exact(&g, &agg)?;
    let split_frac = zhat.multilinear_value(&inst.objectives)?;
    if (g_frac - split_frac).abs() > TOL * split_frac.abs().max(1.0) {
        return Err(Error::invariant(alloc::format!(
            "g^M(z) = {g_frac} but the agent sum is {split_frac}"
        )));
    }
    let s_hat = round_partition_matroid(&agg, p, &g)?;
    let allocation = Allocation::new(pre.split(s_hat))?;
    let (gv, fv) = (g.value(s_hat), inst.cost(&allocation));
    if (gv - fv).abs() > TOL * fv.abs().max(1.0) {
        return Err(Error::invariant(alloc::format!("g(S) = {gv} but Σ f_i(S_i) = {fv}")));
    }
    inst.ensure_feasible(&allocation)?;
    Ok(allocation)
}

/// Continuous greedy, disjointification, pipage rounding.
pub fn maximize_pipeline(inst: &MasoInstance, p: &Polytope, steps: usize, mode: GradientMode) -> Result<MaxOutcome> {
    let solver = MonotoneContinuousGreedy { steps, mode };
    let cg = continuous_greedy_ma(inst, p, steps, mode)?;
    let allocation = round_assignment(inst, p, &cg.assignment)?;
    Ok(MaxOutcome {
        value: inst.cost(&allocation),
        allocation,
        fractional_value: Some(cg.value),
        factor_claimed: solver.factor(),
    })
}

/// Greedy on the lifted instance: add the feasible lifted element with the
/// largest positive gain (lowest index on ties) until none remains.
pub fn lifted_greedy(inst: &MasoInstance) -> Result<MaxOutcome> {
    if inst.sense != Sense::Max {
        return Err(Error::precondition("maximization routes need sense = max"));
    }
    let lifted = lift_instance(inst)?;
    let family = lifted.feasible_family()?;
    let (n, k) = (inst.n(), inst.k());
    let mut s = Set::EMPTY;
    let mut current = lifted.f.value(s);
    loop {
        let mut best: Option<(usize, f64)> = None;
        for e in 0..n * k {
            if s.contains(e) || !family.contains(s.with(e)) {
                continue;
            }
            let gain = lifted.f.value(s.with(e)) - current;
            if best.map_or(true, |(_, b)| gain > b) {
                best = Some((e, gain));
            }
        }
        match best {
            Some((e, gain)) if gain > 0.0 => {
                s.insert(e);
                current += gain;
            }
            _ => break,
        }
    }
    let allocation = unlift(s, n, k)?;
    inst.ensure_feasible(&allocation)?;
    let factor_claimed = match inst.outer.kind() {
        FamilyKind::FullPowerset | FamilyKind::MatroidIndependentSets if inst.per_agent.is_none() => Some(0.5),
        _ => None,
    };
    Ok(MaxOutcome {
        value: inst.cost(&allocation),
        allocation,
        fractional_value: None,
        factor_claimed,
    })
}

/// A continuous solver for the multi-agent relaxation over `W`.
pub trait ContinuousSolver {
    fn name(&self) -> &'static str;
    /// Guaranteed factor on `W`, `None` for heuristics.
    fn factor(&self) -> Option<f64>;
    fn solve(&self, inst: &MasoInstance, p: &Polytope) -> Result<FractionalAssignment>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonotoneContinuousGreedy {
    pub steps: usize,
    pub mode: GradientMode,
}

impl ContinuousSolver for MonotoneContinuousGreedy {
    fn name(&self) -> &'static str {
        "continuous-greedy"
    }

    fn factor(&self) -> Option<f64> {
        Some(1.0 - libm::exp(-1.0))
    }

    fn solve(&self, inst: &MasoInstance, p: &Polytope) -> Result<FractionalAssignment> {
        Ok(continuous_greedy_ma(inst, p, self.steps, self.mode)?.assignment)
    }
}

/// Greedy coordinate ascent in steps of `1/steps`: repeatedly raise the
/// coordinate `z_i(v)` with the largest positive exact partial whose raise
/// stays in `P`. Carries no guarantee.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoordinateAscent {
    pub steps: usize,
}

impl ContinuousSolver for CoordinateAscent {
    fn name(&self) -> &'static str {
        "coordinate-ascent"
    }

    fn factor(&self) -> Option<f64> {
        None
    }

    fn solve(&self, inst: &MasoInstance, p: &Polytope) -> Result<FractionalAssignment> {
        let (n, k) = (inst.n(), inst.k());
        let delta = 1.0 / self.steps.max(1) as f64;
        let mut z = FractionalAssignment::zeros(k, n);
        let mut agg = z.aggregate();
        for _ in 0..self.steps.max(1) * n {
            let mut best: Option<(usize, usize, f64)> = None;
            for v in 0..n {
                let mut raised = agg.clone();
                raised.set(v, agg[v] + delta);
                if !p.contains(&raised)? {
                    continue;
                }
                for i in 0..k {
                    let d = multilinear_partial(inst.objective(i), z.part(i), v)?;
                    if d > TOL && best.map_or(true, |(_, _, b)| d > b) {
                        best = Some((i, v, d));
                    }
                }
            }
            let Some((i, v, _)) = best else { break };
            let x = z.part(i)[v] + delta;
            z.part_mut(i).set(v, x);
            agg.set(v, agg[v] + delta);
        }
        clamp_unit(&mut z);
        Ok(z)
    }
}

/// Runs `solver` on `W`, then the same disjointify-and-round stage as
/// [`maximize_pipeline`]. Requires a downward-closed `P`.
pub fn nonmonotone_slot(inst: &MasoInstance, p: &Polytope, solver: &dyn ContinuousSolver) -> Result<MaxOutcome> {
    check_max(inst, p)?;
    if !p.is_downward_closed() {
        return Err(Error::precondition("the non-monotone slot needs a downward-closed polytope"));
    }
    let z = solver.solve(inst, p)?;
    let fractional_value = z.multilinear_value(&inst.objectives)?;
    let allocation = round_assignment(inst, p, &z)?;
    Ok(MaxOutcome {
        value: inst.cost(&allocation),
        allocation,
        fractional_value: Some(fractional_value),
        factor_claimed: solver.factor(),
    })
}
