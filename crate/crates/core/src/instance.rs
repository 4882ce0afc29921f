//! Multi-agent instances and allocations.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::checks::TOLERANCE;
use crate::error::{Error, Result};
use crate::family::{FamilySpec, FeasibleFamily};
use crate::functions::{standard_function, FunctionSpec};
use crate::set::{GroundSet, Set};
use crate::value::ValueOracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(rename_all = "lowercase")
)]
pub enum Sense {
    Min,
    Max,
}

/// `k` pairwise-disjoint subsets of `V`, one per agent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Allocation {
    parts: Vec<Set>,
}

impl Allocation {
    pub fn new(parts: Vec<Set>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("an allocation needs at least one agent"));
        }
        let mut seen = Set::EMPTY;
        for (i, &p) in parts.iter().enumerate() {
            if seen.intersects(p) {
                return Err(Error::precondition(alloc::format!(
                    "part {i} overlaps an earlier part on {}",
                    seen.intersection(p)
                )));
            }
            seen = seen.union(p);
        }
        Ok(Allocation { parts })
    }

    pub fn empty(k: usize) -> Self {
        Allocation {
            parts: vec![Set::EMPTY; k.max(1)],
        }
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    #[inline]
    pub fn part(&self, i: usize) -> Set {
        self.parts[i]
    }

    pub fn parts(&self) -> &[Set] {
        &self.parts
    }

    /// `S_1 ⊎ .. ⊎ S_k`.
    pub fn union(&self) -> Set {
        self.parts.iter().fold(Set::EMPTY, |a, &p| a.union(p))
    }

    /// Owner of `v`, if any.
    pub fn owner(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// The split `f_i = g_i + h` used by CE-Rounding. `h = None` means `h ≡ 0`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub g: Vec<ValueOracle>,
    pub h: Option<ValueOracle>,
}

#[derive(Clone, Debug)]
pub struct MasoInstance {
    pub ground: GroundSet,
    pub objectives: Vec<ValueOracle>,
    pub outer: FeasibleFamily,
    pub per_agent: Option<Vec<FeasibleFamily>>,
    pub sense: Sense,
    pub decomposition: Option<Decomposition>,
}

/// Sets probed when spot-checking a decomposition.
const SPOT_CHECKS: usize = 256;

impl MasoInstance {
    pub fn new(
        ground: GroundSet,
        objectives: Vec<ValueOracle>,
        outer: FeasibleFamily,
        sense: Sense,
    ) -> Result<Self> {
        let inst = MasoInstance {
            ground,
            objectives,
            outer,
            per_agent: None,
            sense,
            decomposition: None,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn with_per_agent(mut self, families: Vec<FeasibleFamily>) -> Result<Self> {
        self.per_agent = Some(families);
        self.validate()?;
        Ok(self)
    }

    pub fn with_decomposition(mut self, d: Decomposition) -> Result<Self> {
        self.decomposition = Some(d);
        self.validate()?;
        self.spot_check_decomposition()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let n = self.ground.len();
        if self.objectives.is_empty() {
            return Err(Error::invalid("an instance needs k >= 1 objectives"));
        }
        if let Some(i) = self.objectives.iter().position(|f| f.n() != n) {
            return Err(Error::invalid(alloc::format!(
                "objective {i} is over {} elements, expected {n}",
                self.objectives[i].n()
            )));
        }
        if self.outer.n() != n {
            return Err(Error::invalid("outer family ground set differs from the instance"));
        }
        if let Some(fams) = &self.per_agent {
            if fams.len() != self.k() {
                return Err(Error::invalid(alloc::format!(
                    "{} per-agent families for {} agents",
                    fams.len(),
                    self.k()
                )));
            }
            if fams.iter().any(|f| f.n() != n) {
                return Err(Error::invalid("per-agent family ground set differs from the instance"));
            }
        }
        if let Some(d) = &self.decomposition {
            if d.g.len() != self.k() || d.g.iter().any(|g| g.n() != n) {
                return Err(Error::invalid("decomposition must give one g_i per agent over V"));
            }
            if d.h.as_ref().is_some_and(|h| h.n() != n) {
                return Err(Error::invalid("decomposition h is over the wrong ground set"));
            }
        }
        Ok(())
    }

    /// Compares `f_i` with `g_i + h` on up to 256 sets (all sets when `n <= 8`).
    fn spot_check_decomposition(&self) -> Result<()> {
        let n = self.n();
        let probes: Vec<Set> = if n <= 8 {
            Set::all(n).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..SPOT_CHECKS)
                .map(|_| Set::from_bits(rng.gen::<u64>()).intersection(Set::full(n)))
                .collect()
        };
        for i in 0..self.k() {
            for &s in &probes {
                let (f, split) = (self.objectives[i].value(s), self.split_value(i, s));
                if (f - split).abs() > TOLERANCE * (1.0 + f.abs()) {
                    return Err(Error::invalid(alloc::format!(
                        "agent {i}: f({s}) = {f} but g + h = {split}"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.ground.len()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.objectives.len()
    }

    pub fn objective(&self, i: usize) -> &ValueOracle {
        &self.objectives[i]
    }

    /// `g_i`, defaulting to `f_i` when no decomposition is present.
    pub fn g(&self, i: usize) -> &ValueOracle {
        match &self.decomposition {
            Some(d) => &d.g[i],
            None => &self.objectives[i],
        }
    }

    pub fn h(&self) -> Option<&ValueOracle> {
        self.decomposition.as_ref().and_then(|d| d.h.as_ref())
    }

    fn split_value(&self, i: usize, s: Set) -> f64 {
        self.g(i).value(s) + self.h().map_or(0.0, |h| h.value(s))
    }

    /// True when every objective claims monotonicity.
    pub fn all_monotone(&self) -> bool {
        self.objectives.iter().all(|f| f.claims().monotone)
    }

    pub fn agent_family(&self, i: usize) -> Option<&FeasibleFamily> {
        self.per_agent.as_ref().map(|f| &f[i])
    }

    /// `Σ_i f_i(S_i)`.
    pub fn cost(&self, alloc: &Allocation) -> f64 {
        alloc
            .parts()
            .iter()
            .zip(&self.objectives)
            .map(|(&s, f)| f.value(s))
            .sum()
    }

    /// Disjoint parts, union in `F`, and `S_i ∈ F_i` for every agent.
    pub fn is_feasible(&self, alloc: &Allocation) -> bool {
        alloc.k() == self.k()
            && Allocation::new(alloc.parts().to_vec()).is_ok()
            && self.outer.contains(alloc.union())
            && (0..self.k()).all(|i| self.agent_family(i).map_or(true, |f| f.contains(alloc.part(i))))
    }

    /// Errors unless [`MasoInstance::is_feasible`] holds.
    pub fn ensure_feasible(&self, alloc: &Allocation) -> Result<()> {
        if self.is_feasible(alloc) {
            Ok(())
        } else {
            Err(Error::infeasible(alloc::format!("allocation {alloc} is not feasible")))
        }
    }
}

/// Serializable form of a [`MasoInstance`].
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct InstanceSpec {
    pub n: usize,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub labels: Option<Vec<String>>,
    pub k: usize,
    pub objectives: Vec<FunctionSpec>,
    pub outer_family: FamilySpec,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub per_agent_families: Option<Vec<FamilySpec>>,
    pub sense: Sense,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub decomposition: Option<DecompositionSpec>,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct DecompositionSpec {
    pub g: Vec<FunctionSpec>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub h: Option<FunctionSpec>,
}

impl InstanceSpec {
    pub fn build(&self) -> Result<MasoInstance> {
        let ground = match &self.labels {
            Some(l) if l.len() != self.n => {
                return Err(Error::invalid(alloc::format!(
                    "{} labels for {} elements",
                    l.len(),
                    self.n
                )))
            }
            Some(l) => GroundSet::with_labels(l.clone())?,
            None => GroundSet::new(self.n)?,
        };
        if self.objectives.len() != self.k {
            return Err(Error::invalid(alloc::format!(
                "k = {} but {} objectives given",
                self.k,
                self.objectives.len()
            )));
        }
        let objectives = self
            .objectives
            .iter()
            .map(standard_function)
            .collect::<Result<Vec<_>>>()?;
        let outer = self.outer_family.build(self.n)?;
        let mut inst = MasoInstance::new(ground, objectives, outer, self.sense)?;
        if let Some(fams) = &self.per_agent_families {
            let fams = fams
                .iter()
                .map(|f| f.build(self.n))
                .collect::<Result<Vec<_>>>()?;
            inst = inst.with_per_agent(fams)?;
        }
        if let Some(d) = &self.decomposition {
            let g = d.g.iter().map(standard_function).collect::<Result<Vec<_>>>()?;
            let h = d.h.as_ref().map(standard_function).transpose()?;
            inst = inst.with_decomposition(Decomposition { g, h })?;
        }
        Ok(inst)
    }
}
