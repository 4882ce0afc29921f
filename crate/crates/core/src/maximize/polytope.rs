//! Polytopes over `[0,1]^V` with a linear maximization oracle.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::extensions::FractionalPoint;
use crate::family::{FamilyKind, FeasibleFamily};
use crate::matroid::Matroid;
use crate::set::Set;

const TOL: f64 = 1e-9;

/// Largest support for which a general matroid polytope is checked rank by rank.
pub const RANK_CHECK_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolytopeKind {
    Matroid,
    PartitionMatroid,
    Explicit,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Polytope {
    /// `{z : 0 <= z <= cap}`.
    Box { n: usize, cap: f64 },
    /// Independence polytope of a matroid.
    Matroid(Matroid),
    /// Base polytope of a matroid. Not downward closed.
    MatroidBase(Matroid),
}

impl Polytope {
    pub fn hypercube(n: usize) -> Self {
        Polytope::Box { n, cap: 1.0 }
    }

    pub fn uniform(n: usize, rank: usize) -> Self {
        Polytope::Matroid(Matroid::Uniform { n, rank })
    }

    pub fn partition(part_of: Vec<usize>, caps: Vec<usize>) -> Self {
        Polytope::Matroid(Matroid::Partition { part_of, caps })
    }

    /// The polytope of a family with known matroid structure.
    pub fn from_family(family: &FeasibleFamily) -> Result<Self> {
        match (family.kind(), family.matroid_structure()) {
            (FamilyKind::FullPowerset, _) => Ok(Polytope::hypercube(family.n())),
            (FamilyKind::MatroidBases, Some(m)) => Ok(Polytope::MatroidBase(m.clone())),
            (_, Some(m)) => Ok(Polytope::Matroid(m.clone())),
            (kind, None) => Err(Error::unsupported(alloc::format!(
                "no polytope oracle for a {kind:?} family"
            ))),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Polytope::Box { n, .. } => *n,
            Polytope::Matroid(m) | Polytope::MatroidBase(m) => m.n(),
        }
    }

    pub fn kind(&self) -> PolytopeKind {
        match self {
            Polytope::Box { .. } => PolytopeKind::Explicit,
            Polytope::Matroid(Matroid::Partition { .. }) => PolytopeKind::PartitionMatroid,
            Polytope::Matroid(_) | Polytope::MatroidBase(_) => PolytopeKind::Matroid,
        }
    }

    pub fn is_downward_closed(&self) -> bool {
        !matches!(self, Polytope::MatroidBase(_))
    }

    /// A vertex maximizing `<w, y>`, ties toward lower indices.
    pub fn linear_max(&self, w: &[f64]) -> Result<FractionalPoint> {
        let n = self.n();
        if w.len() != n {
            return Err(Error::invalid(alloc::format!("weight vector has {} entries, expected {n}", w.len())));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| w[b].total_cmp(&w[a]).then(a.cmp(&b)));
        let mut y = vec![0.0; n];
        match self {
            Polytope::Box { cap, .. } => {
                for v in 0..n {
                    if w[v] > 0.0 {
                        y[v] = *cap;
                    }
                }
            }
            Polytope::Matroid(m) | Polytope::MatroidBase(m) => {
                let base = matches!(self, Polytope::MatroidBase(_));
                let mut s = Set::EMPTY;
                for v in order {
                    if (base || w[v] > 0.0) && m.is_independent(s.with(v)) {
                        s.insert(v);
                        y[v] = 1.0;
                    }
                }
            }
        }
        FractionalPoint::new(y)
    }

    /// Membership up to an absolute tolerance of `1e-9`.
    pub fn contains(&self, z: &FractionalPoint) -> Result<bool> {
        let n = self.n();
        if z.len() != n {
            return Ok(false);
        }
        let cap = match self {
            Polytope::Box { cap, .. } => *cap,
            _ => 1.0,
        };
        if z.as_slice().iter().any(|&x| x > cap + TOL) {
            return Ok(false);
        }
        match self {
            Polytope::Box { .. } => Ok(true),
            Polytope::Matroid(m) => matroid_contains(m, z),
            Polytope::MatroidBase(m) => {
                let total = z.mass(Set::full(n));
                Ok(matroid_contains(m, z)? && (total - m.full_rank() as f64).abs() <= TOL)
            }
        }
    }
}

fn matroid_contains(m: &Matroid, z: &FractionalPoint) -> Result<bool> {
    let n = m.n();
    match m {
        Matroid::Free { .. } => Ok(true),
        Matroid::Uniform { rank, .. } => Ok(z.mass(Set::full(n)) <= *rank as f64 + TOL),
        Matroid::Partition { part_of, caps } => {
            let mut load = vec![0.0; caps.len()];
            for v in 0..n {
                load[part_of[v]] += z[v];
            }
            Ok(load.iter().zip(caps).all(|(&l, &c)| l <= c as f64 + TOL))
        }
        Matroid::Graphic { .. } => {
            let support = z.support();
            if support.len() > RANK_CHECK_CAP {
                return Err(Error::capacity("support for a rank-by-rank check", RANK_CHECK_CAP, support.len()));
            }
            Ok(support.subsets().all(|s| z.mass(s) <= m.rank(s) as f64 + TOL))
        }
    }
}
