use alloc::vec;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::{Set, MAX_ELEMENTS};

/// The matroids this crate knows how to build directly.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(tag = "type", rename_all = "kebab-case")
)]
pub enum Matroid {
    /// Every subset is independent.
    Free { n: usize },
    /// `|S| <= rank`.
    Uniform { n: usize, rank: usize },
    /// Element `v` lives in part `part_of[v]`; `|S ∩ part j| <= caps[j]`.
    Partition { part_of: Vec<usize>, caps: Vec<usize> },
    /// Acyclic edge sets of a (multi)graph.
    Graphic { graph: Graph },
}

impl Matroid {
    pub fn validate(&self) -> Result<()> {
        if self.n() > MAX_ELEMENTS {
            return Err(Error::capacity("matroid ground set", MAX_ELEMENTS, self.n()));
        }
        if let Matroid::Partition { part_of, caps } = self {
            if let Some(&p) = part_of.iter().find(|&&p| p >= caps.len()) {
                return Err(Error::invalid(alloc::format!(
                    "partition index {p} has no capacity (only {} parts)",
                    caps.len()
                )));
            }
        }
        if let Matroid::Graphic { graph } = self {
            Graph::new(graph.nodes, graph.edges.clone())?;
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        match self {
            Matroid::Free { n } | Matroid::Uniform { n, .. } => *n,
            Matroid::Partition { part_of, .. } => part_of.len(),
            Matroid::Graphic { graph } => graph.edge_count(),
        }
    }

    pub fn is_independent(&self, s: Set) -> bool {
        if !s.is_subset(Set::full(self.n())) {
            return false;
        }
        match self {
            Matroid::Free { .. } => true,
            Matroid::Uniform { rank, .. } => s.len() <= *rank,
            Matroid::Partition { part_of, caps } => {
                let mut used = vec![0usize; caps.len()];
                s.iter().all(|v| {
                    used[part_of[v]] += 1;
                    used[part_of[v]] <= caps[part_of[v]]
                })
            }
            Matroid::Graphic { graph } => graph.is_forest(s),
        }
    }

    /// Size of a largest independent subset of `s`, by the greedy algorithm.
    pub fn rank(&self, s: Set) -> usize {
        let mut basis = Set::EMPTY;
        for v in s.iter() {
            if self.is_independent(basis.with(v)) {
                basis.insert(v);
            }
        }
        basis.len()
    }

    pub fn full_rank(&self) -> usize {
        self.rank(Set::full(self.n()))
    }

    pub fn is_basis(&self, s: Set) -> bool {
        self.is_independent(s) && s.len() == self.full_rank()
    }
}
