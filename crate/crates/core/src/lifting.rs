//! The lifting reduction to the agent-item space `E = [k] × V`.
//!
//! Lifted element `(i, v)` has index `i·n + v`.

use alloc::vec::Vec;

use crate::checks::Verdict;
use crate::error::{Error, Result};
use crate::family::{FamilyKind, FeasibleFamily};
use crate::graph::Graph;
use crate::instance::{Allocation, MasoInstance, Sense};
use crate::set::{GroundSet, Set, MAX_ELEMENTS};
use crate::value::{Claims, ValueOracle};

pub use crate::checks::{check_matroid, p_system_ratio};

/// Largest lifted set whose subsets are enumerated for basis comparisons.
pub const BASIS_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiftedElement {
    pub agent: usize,
    pub item: usize,
}

impl LiftedElement {
    #[inline]
    pub fn index(self, n: usize) -> usize {
        self.agent * n + self.item
    }

    #[inline]
    pub fn from_index(index: usize, n: usize) -> Self {
        LiftedElement {
            agent: index / n,
            item: index % n,
        }
    }
}

fn check_lift_size(n: usize, k: usize) -> Result<()> {
    match n.checked_mul(k) {
        Some(nk) if nk <= MAX_ELEMENTS => Ok(()),
        _ => Err(Error::capacity("lifted ground set n·k", MAX_ELEMENTS, n.saturating_mul(k))),
    }
}

/// Items held by agent `i` in the lifted set `s`.
#[inline]
fn slice(s: Set, n: usize, i: usize) -> Set {
    Set::from_bits((s.bits() >> (i * n)) & Set::full(n).bits())
}

/// `{i} × S_i` for each part, united.
pub fn embed(alloc: &Allocation, n: usize) -> Set {
    embed_parts(alloc.parts(), n)
}

pub(crate) fn embed_parts(parts: &[Set], n: usize) -> Set {
    parts
        .iter()
        .enumerate()
        .fold(Set::EMPTY, |acc, (i, p)| acc.union(Set::from_bits(p.bits() << (i * n))))
}

/// The per-agent slices `(S_1, .., S_k)` of a lifted set. Slices may overlap;
/// use [`unlift`] when the result must be an allocation.
pub fn slices(s: Set, n: usize, k: usize) -> Vec<Set> {
    (0..k).map(|i| slice(s, n, i)).collect()
}

/// `S_i = {v : (i, v) ∈ S}`. Errors if some item sits under two agents.
pub fn unlift(s: Set, n: usize, k: usize) -> Result<Allocation> {
    Allocation::new(slices(s, n, k))
}

/// Items saturated by `s`.
pub fn cov(s: Set, n: usize, k: usize) -> Set {
    (0..k).fold(Set::EMPTY, |acc, i| acc.union(slice(s, n, i)))
}

/// `F' = {S ⊆ E : cov(S) ∈ F, |S| = |cov(S)|}`.
pub fn lift_family(family: &FeasibleFamily, k: usize) -> Result<FeasibleFamily> {
    let n = family.n();
    check_lift_size(n, k)?;
    let kind = match family.kind() {
        FamilyKind::MatroidIndependentSets | FamilyKind::FullPowerset => FamilyKind::MatroidIndependentSets,
        FamilyKind::MatroidBases => FamilyKind::MatroidBases,
        FamilyKind::PSystem => FamilyKind::PSystem,
        _ => FamilyKind::Custom,
    };
    let inner = family.clone();
    FeasibleFamily::from_fn(n * k, kind, move |s: Set| {
        let c = cov(s, n, k);
        c.len() == s.len() && inner.contains(c)
    })
}

/// `H = {S ⊆ E : S_i ∈ F_i for all i}`.
pub fn lift_agent_families(families: &[FeasibleFamily]) -> Result<FeasibleFamily> {
    let k = families.len();
    let n = match families.first() {
        Some(f) => f.n(),
        None => return Err(Error::invalid("no per-agent families to lift")),
    };
    if families.iter().any(|f| f.n() != n) {
        return Err(Error::invalid("per-agent families disagree on ground set size"));
    }
    check_lift_size(n, k)?;
    let all = |kinds: &[FamilyKind]| families.iter().all(|f| kinds.contains(&f.kind()));
    let kind = if all(&[FamilyKind::MatroidIndependentSets, FamilyKind::FullPowerset]) {
        FamilyKind::MatroidIndependentSets
    } else if all(&[FamilyKind::Ring]) {
        FamilyKind::Ring
    } else {
        FamilyKind::Custom
    };
    let fams = families.to_vec();
    FeasibleFamily::from_fn(n * k, kind, move |s: Set| {
        fams.iter().enumerate().all(|(i, f)| f.contains(slice(s, n, i)))
    })
}

/// A lifted instance: one set function and two families over `E`.
#[derive(Clone, Debug)]
pub struct LiftedInstance {
    pub n: usize,
    pub k: usize,
    pub ground: GroundSet,
    pub f: ValueOracle,
    pub outer_lifted: FeasibleFamily,
    pub agent_lifted: FeasibleFamily,
    pub sense: Sense,
}

impl LiftedInstance {
    /// `F' ∩ H`.
    pub fn feasible_family(&self) -> Result<FeasibleFamily> {
        let (outer, agent) = (self.outer_lifted.clone(), self.agent_lifted.clone());
        FeasibleFamily::from_fn(self.n * self.k, FamilyKind::PSystem, move |s: Set| {
            outer.contains(s) && agent.contains(s)
        })
    }

    pub fn element(&self, index: usize) -> LiftedElement {
        LiftedElement::from_index(index, self.n)
    }
}

/// Builds `f(S) = Σ_i f_i(S_i)`, `F'` and `H`.
pub fn lift_instance(inst: &MasoInstance) -> Result<LiftedInstance> {
    let (n, k) = (inst.n(), inst.k());
    check_lift_size(n, k)?;
    let objectives = inst.objectives.clone();
    let claims = objectives
        .iter()
        .fold(Claims::MONOTONE_SUBMODULAR, |c, f| c.meet(f.claims()));
    let f = ValueOracle::from_fn(
        n * k,
        move |s| {
            objectives
                .iter()
                .enumerate()
                .map(|(i, fi)| fi.value(slice(s, n, i)))
                .sum()
        },
        claims,
    );
    let agent_lifted = match &inst.per_agent {
        Some(fams) => lift_agent_families(fams)?,
        None => FeasibleFamily::powerset(n * k)?,
    };
    Ok(LiftedInstance {
        n,
        k,
        ground: GroundSet::new(n * k)?,
        f,
        outer_lifted: lift_family(&inst.outer, k)?,
        agent_lifted,
        sense: inst.sense,
    })
}

/// `G'` has the nodes of `G` and `k` parallel copies of each edge; copy `i`
/// of edge `e` is edge `i·m + e`, and `pi[i·m + e]` names it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedGraph {
    pub graph: Graph,
    pub pi: Vec<usize>,
}

pub fn lift_graph(graph: &Graph, k: usize) -> Result<LiftedGraph> {
    let m = graph.edge_count();
    check_lift_size(m, k)?;
    let edges = (0..k).flat_map(|_| graph.edges.iter().copied()).collect();
    Ok(LiftedGraph {
        graph: Graph::new(graph.nodes, edges)?,
        pi: (0..m * k).collect(),
    })
}

/// `(min, max)` size of inclusion-maximal members of `family` inside `u`;
/// `None` when no member lies inside `u`.
pub fn basis_sizes(family: &FeasibleFamily, u: Set) -> Result<Option<(usize, usize)>> {
    if u.len() > BASIS_CAP {
        return Err(Error::capacity("basis enumeration", BASIS_CAP, u.len()));
    }
    let inside: Vec<Set> = u.subsets().filter(|&s| family.contains(s)).collect();
    let mut out: Option<(usize, usize)> = None;
    for &i in &inside {
        if inside.iter().any(|&j| j != i && i.is_subset(j)) {
            continue;
        }
        out = Some(match out {
            None => (i.len(), i.len()),
            Some((lo, hi)) => (lo.min(i.len()), hi.max(i.len())),
        });
    }
    Ok(out)
}

/// Compares basis sizes of `s` under `lifted` with those of `cov(s)` under
/// `family`; a failure reports `(s, cov(s))`.
pub fn check_bases_correspondence(family: &FeasibleFamily, lifted: &FeasibleFamily, s: Set) -> Result<Verdict> {
    let n = family.n();
    if lifted.n() % n != 0 {
        return Err(Error::invalid("lifted family size is not a multiple of n"));
    }
    let c = cov(s, n, lifted.n() / n);
    if basis_sizes(lifted, s)? == basis_sizes(family, c)? {
        Ok(Verdict::PASS)
    } else {
        Ok(Verdict::fail(s, c))
    }
}
