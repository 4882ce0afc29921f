#![no_std]
#![doc = include_str!("../README.md")]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod assignment;
pub mod blocker;
pub mod checks;
pub mod error;
pub mod extensions;
pub mod family;
pub mod functions;
pub mod graph;
pub mod instance;
pub mod lifting;
pub mod matroid;
pub mod maximize;
pub mod minimize;
pub mod oracle;
pub mod set;
pub mod value;

pub use assignment::{FractionalAssignment, PreAssignment};
pub use blocker::{compute_blocker, minimal_members, peel_to_minimal};
pub use checks::{check_crossing, check_matroid, check_monotone, check_ring, check_submodular, p_system_ratio, CheckMode, PRatio, Verdict};
pub use error::{Error, Result};
pub use extensions::{lovasz_eval, lovasz_subgradient, multilinear_eval_exact, multilinear_eval_mc, multilinear_gradient, multilinear_partial, FractionalPoint};
pub use family::{FamilyKind, FamilySpec, FeasibleFamily, Membership};
pub use functions::{standard_function, Concave, FunctionSpec};
pub use graph::{Graph, GraphFamily};
pub use instance::{Allocation, Decomposition, DecompositionSpec, InstanceSpec, MasoInstance, Sense};
pub use matroid::Matroid;
pub use maximize::{
    continuous_greedy_ma, disjointify_supports, lifted_greedy, maximize_pipeline, nonmonotone_slot,
    round_partition_matroid, ContinuousSolver, CoordinateAscent, GradientMode, MaxOutcome, MonotoneContinuousGreedy,
    Polytope,
};
pub use minimize::MinOutcome;
pub use oracle::{brute_force_maso, brute_force_maso_capped, brute_force_so, certify, Certificate};
pub use set::{GroundSet, Set, MAX_ELEMENTS};
pub use value::{eval_marginal, Claims, SetFunction, ValueOracle};
