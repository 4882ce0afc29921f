//! Multi-agent fractional assignments and pre-assignments.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extensions::{lovasz_eval, multilinear_eval_exact, FractionalPoint};
use crate::set::Set;
use crate::value::ValueOracle;

/// Vectors `z_1, .., z_k` over `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalAssignment {
    parts: Vec<FractionalPoint>,
}

impl FractionalAssignment {
    pub fn new(parts: Vec<FractionalPoint>) -> Result<Self> {
        let n = match parts.first() {
            Some(p) => p.len(),
            None => return Err(Error::invalid("an assignment needs at least one agent")),
        };
        if parts.iter().any(|p| p.len() != n) {
            return Err(Error::invalid("assignment parts differ in dimension"));
        }
        Ok(FractionalAssignment { parts })
    }

    pub fn zeros(k: usize, n: usize) -> Self {
        FractionalAssignment {
            parts: (0..k.max(1)).map(|_| FractionalPoint::zeros(n)).collect(),
        }
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.parts[0].len()
    }

    pub fn part(&self, i: usize) -> &FractionalPoint {
        &self.parts[i]
    }

    pub fn part_mut(&mut self, i: usize) -> &mut FractionalPoint {
        &mut self.parts[i]
    }

    pub fn parts(&self) -> &[FractionalPoint] {
        &self.parts
    }

    /// `z = Σ_i z_i`.
    pub fn aggregate(&self) -> FractionalPoint {
        let mut z = FractionalPoint::zeros(self.n());
        for v in 0..self.n() {
            z.set(v, self.parts.iter().map(|p| p[v]).sum());
        }
        z
    }

    /// Supports `V_i = {v : z_i(v) > 0}`.
    pub fn supports(&self) -> Vec<Set> {
        self.parts.iter().map(FractionalPoint::support).collect()
    }

    pub fn has_disjoint_supports(&self) -> bool {
        let mut seen = Set::EMPTY;
        self.supports().into_iter().all(|s| {
            let ok = !seen.intersects(s);
            seen = seen.union(s);
            ok
        })
    }

    /// Smallest `z(B)` over the blockers; `+∞` for an empty list.
    pub fn min_blocker_mass(&self, blockers: &[Set]) -> f64 {
        let z = self.aggregate();
        blockers.iter().map(|&b| z.mass(b)).fold(f64::INFINITY, f64::min)
    }

    /// `z(B) >= 1 - 1e-9` for every blocker set.
    pub fn is_feasible(&self, blockers: &[Set]) -> bool {
        self.min_blocker_mass(blockers) >= 1.0 - 1e-9
    }

    /// `Σ_i f_i^L(z_i)`.
    pub fn lovasz_value(&self, objectives: &[ValueOracle]) -> Result<f64> {
        self.parts
            .iter()
            .zip(objectives)
            .map(|(z, f)| lovasz_eval(f, z))
            .sum()
    }

    /// `Σ_i f_i^M(z_i)`.
    pub fn multilinear_value(&self, objectives: &[ValueOracle]) -> Result<f64> {
        self.parts
            .iter()
            .zip(objectives)
            .map(|(z, f)| multilinear_eval_exact(f, z))
            .sum()
    }

    #[must_use]
    pub fn scaled(&self, alpha: f64) -> Self {
        FractionalAssignment {
            parts: self.parts.iter().map(|p| p.scaled(alpha)).collect(),
        }
    }
}

/// Pairwise-disjoint supports `V_1, .., V_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreAssignment {
    supports: Vec<Set>,
}

impl PreAssignment {
    pub fn new(supports: Vec<Set>) -> Result<Self> {
        let mut seen = Set::EMPTY;
        for (i, &s) in supports.iter().enumerate() {
            if seen.intersects(s) {
                return Err(Error::precondition(alloc::format!(
                    "support {i} overlaps an earlier support on {}",
                    seen.intersection(s)
                )));
            }
            seen = seen.union(s);
        }
        if supports.is_empty() {
            return Err(Error::invalid("a pre-assignment needs at least one agent"));
        }
        Ok(PreAssignment { supports })
    }

    /// Supports of `z`, which must already be disjoint.
    pub fn from_assignment(z: &FractionalAssignment) -> Result<Self> {
        PreAssignment::new(z.supports())
    }

    pub fn supports(&self) -> &[Set] {
        &self.supports
    }

    pub fn k(&self) -> usize {
        self.supports.len()
    }

    /// Agent whose support holds `v`.
    pub fn owner(&self, v: usize) -> Option<usize> {
        self.supports.iter().position(|s| s.contains(v))
    }

    /// `(S ∩ V_1, .., S ∩ V_k)`.
    pub fn split(&self, s: Set) -> Vec<Set> {
        self.supports.iter().map(|&v| v.intersection(s)).collect()
    }
}
