//! Monotone multi-agent minimization: relaxation and rounding.

pub mod bounded;
pub mod ce;
pub mod crossing;
pub mod fracture;
mod lp;
pub mod ma_le;

pub use bounded::{bounded_blocker_round, symmetrize_h};
pub use ce::{ce_rounding, iteration_cap, uncross, uncross_traced, SwapRecord};
pub use crossing::{crossing_candidates, crossing_family_solve};
pub use fracture::{
    disjointify_and_round, disjointify_max, fracture_expand_return, g_function, round_disjoint, SaRounder,
    ThresholdRounder,
};
pub use ma_le::{solve_le_program, solve_ma_le, MaLeOptions, MaLeSolution};

use crate::instance::Allocation;
use crate::set::Set;

/// Result of a minimization rounding run.
#[derive(Clone, Debug, PartialEq)]
pub struct MinOutcome {
    pub allocation: Allocation,
    /// `Σ_i f_i(S_i)`.
    pub cost: f64,
    /// Relaxation value of the input assignment.
    pub fractional_value: f64,
    /// Relaxation value after the disjoint-support transformation, if any.
    pub uniform_value: Option<f64>,
    /// Set the rounding was asked to cover, if any.
    pub target: Option<Set>,
    /// Covering draws (CE-Rounding) or bins (fracture).
    pub iterations: usize,
}
