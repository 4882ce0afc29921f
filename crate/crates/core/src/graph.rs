//! Small undirected multigraphs and the edge-set families defined on them.
//!
//! The ground set of every family here is the edge list: element `e` is
//! `edges[e]`. Parallel edges and distinct copies are separate elements.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::{Set, MAX_ELEMENTS};

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Graph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Edge-set families on a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(tag = "type", rename_all = "kebab-case")
)]
pub enum GraphFamily {
    Forests,
    SpanningTrees,
    Matchings,
    PerfectMatchings,
    StPaths { s: usize, t: usize },
}

impl Graph {
    pub fn new(nodes: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= nodes || v >= nodes) {
            return Err(Error::invalid(alloc::format!(
                "edge ({u},{v}) references a node outside 0..{nodes}"
            )));
        }
        if edges.len() > MAX_ELEMENTS {
            return Err(Error::capacity("edge count", MAX_ELEMENTS, edges.len()));
        }
        Ok(Graph { nodes, edges })
    }

    pub fn complete(nodes: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..nodes {
            for v in u + 1..nodes {
                edges.push((u, v));
            }
        }
        Graph { nodes, edges }
    }

    /// The path `0 – 1 – … – (nodes-1)`.
    pub fn path(nodes: usize) -> Self {
        let edges = (1..nodes).map(|v| (v - 1, v)).collect();
        Graph { nodes, edges }
    }

    pub fn cycle(nodes: usize) -> Self {
        let mut g = Graph::path(nodes);
        if nodes > 2 {
            g.edges.push((nodes - 1, 0));
        }
        g
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Nodes touched by the edges in `s`.
    pub fn touched(&self, s: Set) -> Set {
        s.iter().fold(Set::EMPTY, |acc, e| {
            let (u, v) = self.edges[e];
            acc.with(u).with(v)
        })
    }

    /// Every edge as a two-element node set; the blocker of vertex covers.
    pub fn vertex_cover_blockers(&self) -> Vec<Set> {
        self.edges
            .iter()
            .map(|&(u, v)| Set::singleton(u).with(v))
            .collect()
    }

    pub fn is_forest(&self, s: Set) -> bool {
        let mut uf = UnionFind::new(self.nodes);
        s.iter().all(|e| {
            let (u, v) = self.edges[e];
            uf.union(u, v)
        })
    }

    pub fn is_spanning_tree(&self, s: Set) -> bool {
        self.nodes > 0 && s.len() + 1 == self.nodes && self.is_forest(s)
    }

    pub fn is_matching(&self, s: Set) -> bool {
        let mut used = Set::EMPTY;
        for e in s.iter() {
            let (u, v) = self.edges[e];
            if u == v || used.contains(u) || used.contains(v) {
                return false;
            }
            used = used.with(u).with(v);
        }
        true
    }

    pub fn is_perfect_matching(&self, s: Set) -> bool {
        2 * s.len() == self.nodes && self.is_matching(s)
    }

    /// `s` is exactly the edge set of a simple path from `from` to `to`.
    pub fn is_st_path(&self, s: Set, from: usize, to: usize) -> bool {
        if from == to || s.is_empty() || !self.is_forest(s) {
            return false;
        }
        let mut degree = vec![0usize; self.nodes];
        for e in s.iter() {
            let (u, v) = self.edges[e];
            degree[u] += 1;
            degree[v] += 1;
        }
        let touched = self.touched(s);
        if touched.len() != s.len() + 1 || !touched.contains(from) || !touched.contains(to) {
            return false;
        }
        touched.iter().all(|x| {
            let want = if x == from || x == to { 1 } else { 2 };
            degree[x] == want
        })
    }

    pub fn contains(&self, family: GraphFamily, s: Set) -> bool {
        match family {
            GraphFamily::Forests => self.is_forest(s),
            GraphFamily::SpanningTrees => self.is_spanning_tree(s),
            GraphFamily::Matchings => self.is_matching(s),
            GraphFamily::PerfectMatchings => self.is_perfect_matching(s),
            GraphFamily::StPaths { s: from, t: to } => self.is_st_path(s, from, to),
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
