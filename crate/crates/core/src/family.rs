//! Feasible families: membership oracles plus whatever structure is known.

use alloc::boxed::Box;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::blocker::{compute_blocker, minimal_members};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphFamily};
use crate::matroid::Matroid;
use crate::set::{Set, MAX_ELEMENTS};

/// Largest ground set for which families are enumerated member by member.
pub const ENUMERATION_CAP: usize = 20;

/// A membership predicate over subsets of the ground set.
pub trait Membership {
    fn contains(&self, s: Set) -> bool;
}

impl<F: Fn(Set) -> bool> Membership for F {
    fn contains(&self, s: Set) -> bool {
        self(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(rename_all = "kebab-case")
)]
pub enum FamilyKind {
    ExplicitList,
    MatroidIndependentSets,
    MatroidBases,
    PSystem,
    UpwardClosedWithBlocker,
    Crossing,
    Ring,
    TrivialV,
    FullPowerset,
    /// Edge-set family on a graph without matroid structure (matchings, paths).
    Graph,
    /// Arbitrary predicate with no structure promised.
    Custom,
}

/// A family `F ⊆ 2^V` given by a membership oracle.
#[derive(Clone)]
pub struct FeasibleFamily {
    n: usize,
    kind: FamilyKind,
    oracle: Rc<dyn Membership>,
    blocker: Option<Rc<[Set]>>,
    members: Option<Rc<[Set]>>,
    matroid: Option<Matroid>,
}

impl FeasibleFamily {
    fn with_oracle<M: Membership + 'static>(n: usize, kind: FamilyKind, oracle: M) -> Result<Self> {
        check_n(n)?;
        Ok(FeasibleFamily {
            n,
            kind,
            oracle: Rc::new(oracle),
            blocker: None,
            members: None,
            matroid: None,
        })
    }

    /// Wraps an arbitrary predicate.
    pub fn from_fn<F>(n: usize, kind: FamilyKind, f: F) -> Result<Self>
    where
        F: Fn(Set) -> bool + 'static,
    {
        FeasibleFamily::with_oracle(n, kind, f)
    }

    /// `F = 2^V`.
    pub fn powerset(n: usize) -> Result<Self> {
        let mut fam = FeasibleFamily::with_oracle(n, FamilyKind::FullPowerset, |_: Set| true)?;
        fam.matroid = Some(Matroid::Free { n });
        Ok(fam)
    }

    /// `F = {V}`, with its blocker of singletons.
    pub fn trivial(n: usize) -> Result<Self> {
        let full = Set::full(n);
        let mut fam = FeasibleFamily::with_oracle(n, FamilyKind::TrivialV, move |s: Set| s == full)?;
        fam.blocker = Some((0..n).map(Set::singleton).collect());
        Ok(fam)
    }

    /// Exactly the listed sets.
    pub fn explicit(n: usize, members: Vec<Set>) -> Result<Self> {
        FeasibleFamily::listed(n, FamilyKind::ExplicitList, members)
    }

    /// A crossing family given by its members; closure is checked by
    /// [`crate::checks::check_crossing`], not here.
    pub fn crossing(n: usize, members: Vec<Set>) -> Result<Self> {
        FeasibleFamily::listed(n, FamilyKind::Crossing, members)
    }

    /// A ring family given by its members.
    pub fn ring(n: usize, members: Vec<Set>) -> Result<Self> {
        FeasibleFamily::listed(n, FamilyKind::Ring, members)
    }

    fn listed(n: usize, kind: FamilyKind, mut members: Vec<Set>) -> Result<Self> {
        check_n(n)?;
        check_within(n, &members)?;
        members.sort();
        members.dedup();
        let list: Rc<[Set]> = members.into();
        let probe = list.clone();
        let mut fam =
            FeasibleFamily::with_oracle(n, kind, move |s: Set| probe.binary_search(&s).is_ok())?;
        fam.members = Some(list);
        Ok(fam)
    }

    /// The upward-closed family of sets meeting every listed blocker set.
    pub fn blocking(n: usize, blockers: Vec<Set>) -> Result<Self> {
        check_n(n)?;
        check_within(n, &blockers)?;
        let list: Rc<[Set]> = blockers.into();
        let probe = list.clone();
        let mut fam = FeasibleFamily::with_oracle(n, FamilyKind::UpwardClosedWithBlocker, move |s: Set| {
            probe.iter().all(|b| b.intersects(s))
        })?;
        fam.blocker = Some(list);
        Ok(fam)
    }

    /// Independent sets of `m`.
    pub fn matroid(m: Matroid) -> Result<Self> {
        m.validate()?;
        let probe = m.clone();
        let mut fam = FeasibleFamily::with_oracle(m.n(), FamilyKind::MatroidIndependentSets, move |s: Set| {
            probe.is_independent(s)
        })?;
        fam.matroid = Some(m);
        Ok(fam)
    }

    /// `{S : |S| <= rank}`.
    pub fn uniform(n: usize, rank: usize) -> Result<Self> {
        FeasibleFamily::matroid(Matroid::Uniform { n, rank })
    }

    /// Bases of `m`.
    pub fn matroid_bases(m: Matroid) -> Result<Self> {
        m.validate()?;
        let rank = m.full_rank();
        let probe = m.clone();
        let mut fam = FeasibleFamily::with_oracle(m.n(), FamilyKind::MatroidBases, move |s: Set| {
            s.len() == rank && probe.is_independent(s)
        })?;
        fam.matroid = Some(m);
        Ok(fam)
    }

    /// Members common to every family in `parts`.
    pub fn intersection(parts: Vec<FeasibleFamily>) -> Result<Self> {
        let n = match parts.first() {
            Some(f) => f.n,
            None => return Err(Error::invalid("intersection of zero families")),
        };
        if parts.iter().any(|f| f.n != n) {
            return Err(Error::invalid("intersected families disagree on ground set size"));
        }
        FeasibleFamily::with_oracle(n, FamilyKind::PSystem, move |s: Set| {
            parts.iter().all(|f| f.contains(s))
        })
    }

    /// An edge-set family of `graph`; element `e` is edge `e`.
    pub fn graph(graph: Graph, family: GraphFamily) -> Result<Self> {
        let graph = Graph::new(graph.nodes, graph.edges)?;
        match family {
            GraphFamily::Forests => FeasibleFamily::matroid(Matroid::Graphic { graph }),
            GraphFamily::SpanningTrees => {
                let m = Matroid::Graphic { graph };
                if !spans(&m) {
                    return Err(Error::infeasible("graph is disconnected; it has no spanning tree"));
                }
                FeasibleFamily::matroid_bases(m)
            }
            _ => {
                let n = graph.edge_count();
                FeasibleFamily::with_oracle(n, FamilyKind::Graph, move |s: Set| graph.contains(family, s))
            }
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    /// Membership probe. Sets reaching outside the ground set are never members.
    pub fn contains(&self, s: Set) -> bool {
        s.is_subset(Set::full(self.n)) && self.oracle.contains(s)
    }

    /// The explicit blocker list, when the family carries one.
    pub fn blocker(&self) -> Option<&[Set]> {
        self.blocker.as_deref()
    }

    /// Largest blocker set size.
    pub fn beta(&self) -> Option<usize> {
        self.blocker().map(|b| b.iter().map(|s| s.len()).max().unwrap_or(0))
    }

    pub fn matroid_structure(&self) -> Option<&Matroid> {
        self.matroid.as_ref()
    }

    /// Every member, in increasing mask order.
    pub fn members(&self) -> Result<Vec<Set>> {
        if let Some(list) = &self.members {
            return Ok(list.to_vec());
        }
        if self.n > ENUMERATION_CAP {
            return Err(Error::capacity("family enumeration", ENUMERATION_CAP, self.n));
        }
        Ok(Set::all(self.n).filter(|&s| self.oracle.contains(s)).collect())
    }

    /// True when every superset of a member is a member.
    pub fn is_upward_closed(&self) -> Result<bool> {
        if matches!(
            self.kind,
            FamilyKind::UpwardClosedWithBlocker | FamilyKind::TrivialV | FamilyKind::FullPowerset
        ) {
            return Ok(true);
        }
        let members = self.members()?;
        Ok(members
            .iter()
            .all(|&s| s.complement(self.n).iter().all(|v| self.contains(s.with(v)))))
    }

    /// The upward closure `{S : S ⊇ A for some A ∈ F}`, represented by its blocker.
    pub fn upward_closure(&self) -> Result<FeasibleFamily> {
        if self.kind == FamilyKind::UpwardClosedWithBlocker {
            return Ok(self.clone());
        }
        let blockers = compute_blocker(self)?;
        FeasibleFamily::blocking(self.n, blockers)
    }

    /// Attaches a blocker list, verifying it against membership when the
    /// ground set is small enough to enumerate.
    pub fn with_blocker(mut self, blockers: Vec<Set>) -> Result<Self> {
        check_within(self.n, &blockers)?;
        if self.n <= ENUMERATION_CAP {
            let expect = compute_blocker(&self)?;
            let mut got = blockers.clone();
            got.sort();
            let mut want = expect;
            want.sort();
            if got != want {
                return Err(Error::invalid("supplied blocker does not match the family"));
            }
        }
        self.blocker = Some(blockers.into());
        Ok(self)
    }

    /// Inclusion-minimal members.
    pub fn minimal_members(&self) -> Result<Vec<Set>> {
        minimal_members(self)
    }
}

fn spans(m: &Matroid) -> bool {
    match m {
        Matroid::Graphic { graph } => graph.nodes == 0 || m.full_rank() + 1 == graph.nodes,
        _ => true,
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("family ground set must be nonempty"));
    }
    if n > MAX_ELEMENTS {
        return Err(Error::capacity("family ground set", MAX_ELEMENTS, n));
    }
    Ok(())
}

fn check_within(n: usize, sets: &[Set]) -> Result<()> {
    match sets.iter().find(|s| !s.is_subset(Set::full(n))) {
        Some(s) => Err(Error::invalid(alloc::format!(
            "set {s} reaches outside ground set of size {n}"
        ))),
        None => Ok(()),
    }
}

impl fmt::Debug for FeasibleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FeasibleFamily")
            .field("n", &self.n)
            .field("kind", &self.kind)
            .field("beta", &self.beta())
            .finish()
    }
}

/// Declarative family description, resolved against a ground set size.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(tag = "kind", rename_all = "kebab-case")
)]
pub enum FamilySpec {
    FullPowerset,
    TrivialV,
    ExplicitList { members: Vec<Set> },
    UpwardClosedWithBlocker { blockers: Vec<Set> },
    MatroidIndependentSets { matroid: Matroid },
    MatroidBases { matroid: Matroid },
    /// Intersection of the listed families (e.g. two partition matroids).
    Intersection { families: Vec<FamilySpec> },
    Graph { graph: Graph, family: GraphFamily },
    /// Upward closure of the inner family; its blocker is computed.
    UpwardClosure { inner: Box<FamilySpec> },
    Crossing { members: Vec<Set> },
    Ring { members: Vec<Set> },
}

impl FamilySpec {
    pub fn build(&self, n: usize) -> Result<FeasibleFamily> {
        let fam = match self {
            FamilySpec::FullPowerset => FeasibleFamily::powerset(n)?,
            FamilySpec::TrivialV => FeasibleFamily::trivial(n)?,
            FamilySpec::ExplicitList { members } => FeasibleFamily::explicit(n, members.clone())?,
            FamilySpec::UpwardClosedWithBlocker { blockers } => {
                FeasibleFamily::blocking(n, blockers.clone())?
            }
            FamilySpec::MatroidIndependentSets { matroid } => FeasibleFamily::matroid(matroid.clone())?,
            FamilySpec::MatroidBases { matroid } => FeasibleFamily::matroid_bases(matroid.clone())?,
            FamilySpec::Intersection { families } => FeasibleFamily::intersection(
                families
                    .iter()
                    .map(|f| f.build(n))
                    .collect::<Result<Vec<_>>>()?,
            )?,
            FamilySpec::Graph { graph, family } => FeasibleFamily::graph(graph.clone(), *family)?,
            FamilySpec::UpwardClosure { inner } => inner.build(n)?.upward_closure()?,
            FamilySpec::Crossing { members } => FeasibleFamily::crossing(n, members.clone())?,
            FamilySpec::Ring { members } => FeasibleFamily::ring(n, members.clone())?,
        };
        if fam.n() != n {
            return Err(Error::invalid(alloc::format!(
                "family is over {} elements but the instance has {n}",
                fam.n()
            )));
        }
        Ok(fam)
    }
}
