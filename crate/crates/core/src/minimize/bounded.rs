//! Rounding for families with small blocker sets, and symmetrization of `h`.

use super::ce::ce_rounding;
use super::MinOutcome;
use crate::assignment::FractionalAssignment;
use crate::error::{Error, Result};
use crate::instance::MasoInstance;
use crate::set::Set;
use crate::value::{Claims, ValueOracle};

/// `U = {v : β z*(v) >= 1}`, then CE-Rounding of `β z*` onto `U`.
///
/// An invariant violation means `U` left the family, i.e. the blocker is
/// not actually `β`-bounded or `z*` is infeasible.
pub fn bounded_blocker_round(
    inst: &MasoInstance,
    zstar: &FractionalAssignment,
    beta: f64,
    seed: u64,
) -> Result<MinOutcome> {
    if !(beta.is_finite() && beta >= 1.0) {
        return Err(Error::invalid(alloc::format!("beta must be at least 1, got {beta}")));
    }
    let agg = zstar.aggregate();
    let u: Set = (0..agg.len()).filter(|&v| beta * agg[v] >= 1.0 - 1e-9).collect();
    if !inst.outer.contains(u) {
        return Err(Error::invariant(alloc::format!(
            "threshold set {u} at beta = {beta} is not in the family"
        )));
    }
    let mut out = ce_rounding(inst, &zstar.scaled(beta), u, seed)?;
    out.fractional_value = zstar.lovasz_value(&inst.objectives)?;
    Ok(out)
}

/// `h'(S) = h(S) + h(V \ S)`.
pub fn symmetrize_h(h: &ValueOracle) -> ValueOracle {
    let inner = h.clone();
    let n = h.n();
    ValueOracle::from_fn(
        n,
        move |s| inner.value(s) + inner.value(s.complement(n)),
        Claims {
            monotone: false,
            submodular: h.claims().submodular,
            normalized: false,
        },
    )
}
