//! Algorithm routes runnable from an experiment.

use maso_core::minimize::{
    bounded_blocker_round, crossing_family_solve, disjointify_and_round, fracture_expand_return, solve_ma_le,
    MaLeOptions, ThresholdRounder,
};
use maso_core::maximize::DEFAULT_STEPS;
use maso_core::{
    brute_force_maso, lifted_greedy, maximize_pipeline, nonmonotone_slot, Allocation, CoordinateAscent, Error,
    FamilyKind, GradientMode, MasoInstance, Polytope, Sense,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Relaxation, k-disjointification, threshold rounding.
    #[value(alias = "disjointify_max")]
    DisjointifyMax,
    /// Relaxation, fracture/expand/return, threshold rounding.
    #[value(alias = "fracture_expand_return")]
    FractureExpandReturn,
    /// Relaxation, `β` threshold, CE-Rounding.
    #[value(alias = "bounded_blocker")]
    BoundedBlocker,
    /// Cheapest `F_uv` candidate covered by CE-Rounding.
    Crossing,
    /// Continuous greedy, disjointification, pipage rounding.
    #[value(alias = "maximize_pipeline")]
    MaximizePipeline,
    /// Greedy on the lifted instance.
    #[value(alias = "lifted_greedy")]
    LiftedGreedy,
    /// Coordinate-ascent heuristic in the non-monotone slot.
    #[value(alias = "nonmonotone_slot")]
    NonmonotoneSlot,
    /// Exhaustive optimum.
    #[value(alias = "brute_force")]
    BruteForce,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::DisjointifyMax => "disjointify-max",
            Algorithm::FractureExpandReturn => "fracture-expand-return",
            Algorithm::BoundedBlocker => "bounded-blocker",
            Algorithm::Crossing => "crossing",
            Algorithm::MaximizePipeline => "maximize-pipeline",
            Algorithm::LiftedGreedy => "lifted-greedy",
            Algorithm::NonmonotoneSlot => "nonmonotone-slot",
            Algorithm::BruteForce => "brute-force",
        }
    }

    /// `Err` with the reason when the route cannot take this instance.
    pub fn check_applicable(self, inst: &MasoInstance) -> Result<(), String> {
        let needs = |sense: Sense| {
            if inst.sense == sense {
                Ok(())
            } else {
                Err(format!("{} needs sense {:?}", self.name(), sense).to_lowercase())
            }
        };
        let blocker = || {
            if inst.outer.blocker().is_some() {
                Ok(())
            } else {
                Err(format!("{} needs an outer family with a blocker list", self.name()))
            }
        };
        let polytope = || match Polytope::from_family(&inst.outer) {
            Ok(_) if inst.per_agent.is_none() => Ok(()),
            Ok(_) => Err(format!("{} does not take per-agent families", self.name())),
            Err(e) => Err(format!("{}: {e}", self.name())),
        };
        match self {
            Algorithm::DisjointifyMax | Algorithm::FractureExpandReturn | Algorithm::BoundedBlocker => {
                needs(Sense::Min)?;
                blocker()
            }
            Algorithm::Crossing => {
                needs(Sense::Min)?;
                match inst.outer.kind() {
                    FamilyKind::Crossing | FamilyKind::Ring | FamilyKind::TrivialV => Ok(()),
                    k => Err(format!("crossing needs a crossing or ring family, got {k:?}")),
                }
            }
            Algorithm::MaximizePipeline => {
                needs(Sense::Max)?;
                polytope()
            }
            Algorithm::NonmonotoneSlot => {
                needs(Sense::Max)?;
                polytope()?;
                if inst.outer.kind() == FamilyKind::MatroidBases {
                    return Err("nonmonotone-slot needs a downward-closed polytope".into());
                }
                Ok(())
            }
            Algorithm::LiftedGreedy => needs(Sense::Max),
            Algorithm::BruteForce => Ok(()),
        }
    }

    pub fn run(self, inst: &MasoInstance, seed: u64) -> Result<Outcome, Error> {
        let beta = || inst.outer.beta().unwrap_or(1).max(1) as f64;
        let min = |o: maso_core::MinOutcome| Outcome {
            allocation: o.allocation,
            value: o.cost,
            fractional_value: Some(o.fractional_value),
            factor_claimed: None,
        };
        let max = |o: maso_core::MaxOutcome| Outcome {
            allocation: o.allocation,
            value: o.value,
            fractional_value: o.fractional_value,
            factor_claimed: o.factor_claimed,
        };
        Ok(match self {
            Algorithm::DisjointifyMax => {
                let sol = solve_ma_le(inst, MaLeOptions::default())?;
                let out = min(disjointify_and_round(inst, &sol.assignment, &ThresholdRounder { beta: beta() })?);
                Outcome {
                    factor_claimed: Some(inst.k() as f64 * beta()),
                    ..out
                }
            }
            Algorithm::FractureExpandReturn => {
                let sol = solve_ma_le(inst, MaLeOptions::default())?;
                min(fracture_expand_return(
                    inst,
                    &sol.assignment,
                    &ThresholdRounder { beta: beta() },
                    seed,
                )?)
            }
            Algorithm::BoundedBlocker => {
                let sol = solve_ma_le(inst, MaLeOptions::default())?;
                min(bounded_blocker_round(inst, &sol.assignment, beta(), seed)?)
            }
            Algorithm::Crossing => min(crossing_family_solve(inst, MaLeOptions::default(), seed)?),
            Algorithm::MaximizePipeline => {
                let p = Polytope::from_family(&inst.outer)?;
                max(maximize_pipeline(inst, &p, DEFAULT_STEPS, GradientMode::Exact)?)
            }
            Algorithm::LiftedGreedy => max(lifted_greedy(inst)?),
            Algorithm::NonmonotoneSlot => {
                let p = Polytope::from_family(&inst.outer)?;
                max(nonmonotone_slot(inst, &p, &CoordinateAscent { steps: DEFAULT_STEPS })?)
            }
            Algorithm::BruteForce => {
                let (value, allocation) = brute_force_maso(inst)?;
                Outcome {
                    allocation,
                    value,
                    fractional_value: None,
                    factor_claimed: Some(1.0),
                }
            }
        })
    }
}

/// What one cell produced.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub allocation: Allocation,
    pub value: f64,
    pub fractional_value: Option<f64>,
    pub factor_claimed: Option<f64>,
}
