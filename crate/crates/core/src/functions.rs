//! A zoo of standard nonnegative submodular functions.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::{Set, MAX_ELEMENTS};
use crate::value::{Claims, SetFunction, ValueOracle};

/// Concave transforms applied to a modular function.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(tag = "type", rename_all = "kebab-case")
)]
pub enum Concave {
    Sqrt,
    MinCap { cap: f64 },
}

/// Declarative description of a standard function, as stored in instance files.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(Serialize, Deserialize),
    serde(tag = "kind", rename_all = "kebab-case")
)]
pub enum FunctionSpec {
    /// `f(S) = Σ_{v∈S} w_v`.
    Modular { weights: Vec<f64> },
    /// Element `v` covers the universe items `covers[v]`;
    /// `f(S)` is the weight of the union.
    Coverage {
        covers: Vec<Vec<usize>>,
        universe_weights: Vec<f64>,
    },
    /// `benefit[c][v]` is what client `c` gets from facility `v`;
    /// each client takes its best open facility.
    FacilityLocation { benefit: Vec<Vec<f64>> },
    /// Total weight of edges with exactly one endpoint in `S`.
    GraphCut {
        n: usize,
        edges: Vec<(usize, usize, f64)>,
    },
    MatroidRank { matroid: Matroid },
    ConcaveOfModular { weights: Vec<f64>, concave: Concave },
    Sum { terms: Vec<FunctionSpec> },
    Scale { factor: f64, inner: Box<FunctionSpec> },
}

impl FunctionSpec {
    /// Ground set size implied by the spec.
    pub fn n(&self) -> usize {
        match self {
            FunctionSpec::Modular { weights } | FunctionSpec::ConcaveOfModular { weights, .. } => {
                weights.len()
            }
            FunctionSpec::Coverage { covers, .. } => covers.len(),
            FunctionSpec::FacilityLocation { benefit } => benefit.first().map_or(0, Vec::len),
            FunctionSpec::GraphCut { n, .. } => *n,
            FunctionSpec::MatroidRank { matroid } => matroid.n(),
            FunctionSpec::Sum { terms } => terms.first().map_or(0, FunctionSpec::n),
            FunctionSpec::Scale { inner, .. } => inner.n(),
        }
    }

    /// `|S|` on `n` elements.
    pub fn cardinality(n: usize) -> Self {
        FunctionSpec::Modular {
            weights: vec![1.0; n],
        }
    }

    /// `min(|S|, cap)` on `n` elements.
    pub fn capped_cardinality(n: usize, cap: f64) -> Self {
        FunctionSpec::ConcaveOfModular {
            weights: vec![1.0; n],
            concave: Concave::MinCap { cap },
        }
    }
}

/// Builds the oracle described by `spec`, rejecting negative weights.
pub fn standard_function(spec: &FunctionSpec) -> Result<ValueOracle> {
    let n = spec.n();
    if n == 0 {
        return Err(Error::invalid("function spec has an empty ground set"));
    }
    if n > MAX_ELEMENTS {
        return Err(Error::capacity("function ground set", MAX_ELEMENTS, n));
    }
    match spec {
        FunctionSpec::Modular { weights } => {
            nonnegative("modular weight", weights)?;
            Ok(ValueOracle::new(
                Modular {
                    weights: weights.clone(),
                },
                Claims::MONOTONE_SUBMODULAR,
            ))
        }
        FunctionSpec::Coverage {
            covers,
            universe_weights,
        } => {
            nonnegative("universe weight", universe_weights)?;
            if let Some(bad) = covers
                .iter()
                .flatten()
                .find(|&&u| u >= universe_weights.len())
            {
                return Err(Error::invalid(alloc::format!(
                    "coverage item {bad} outside universe of size {}",
                    universe_weights.len()
                )));
            }
            Ok(ValueOracle::new(
                Coverage {
                    covers: covers.clone(),
                    universe_weights: universe_weights.clone(),
                },
                Claims::MONOTONE_SUBMODULAR,
            ))
        }
        FunctionSpec::FacilityLocation { benefit } => {
            if benefit.iter().any(|row| row.len() != n) {
                return Err(Error::invalid("facility benefit matrix is ragged"));
            }
            for row in benefit {
                nonnegative("facility benefit", row)?;
            }
            Ok(ValueOracle::new(
                FacilityLocation {
                    benefit: benefit.clone(),
                },
                Claims::MONOTONE_SUBMODULAR,
            ))
        }
        FunctionSpec::GraphCut { n, edges } => {
            for &(u, v, w) in edges {
                if u >= *n || v >= *n {
                    return Err(Error::invalid(alloc::format!(
                        "cut edge ({u},{v}) outside 0..{n}"
                    )));
                }
                nonnegative("cut edge weight", &[w])?;
            }
            Ok(ValueOracle::new(
                GraphCut {
                    n: *n,
                    edges: edges.clone(),
                },
                Claims::SUBMODULAR,
            ))
        }
        FunctionSpec::MatroidRank { matroid } => {
            matroid.validate()?;
            Ok(ValueOracle::new(
                MatroidRank {
                    matroid: matroid.clone(),
                },
                Claims::MONOTONE_SUBMODULAR,
            ))
        }
        FunctionSpec::ConcaveOfModular { weights, concave } => {
            nonnegative("concave-of-modular weight", weights)?;
            if let Concave::MinCap { cap } = concave {
                nonnegative("min-cap", &[*cap])?;
            }
            Ok(ValueOracle::new(
                ConcaveOfModular {
                    weights: weights.clone(),
                    concave: *concave,
                },
                Claims::MONOTONE_SUBMODULAR,
            ))
        }
        FunctionSpec::Sum { terms } => {
            if terms.iter().any(|t| t.n() != n) {
                return Err(Error::invalid("sum terms disagree on ground set size"));
            }
            let oracles = terms
                .iter()
                .map(standard_function)
                .collect::<Result<Vec<_>>>()?;
            Ok(sum(oracles))
        }
        FunctionSpec::Scale { factor, inner } => {
            nonnegative("scale factor", &[*factor])?;
            let oracle = standard_function(inner)?;
            Ok(scale(oracle, *factor))
        }
    }
}

fn nonnegative(what: &str, values: &[f64]) -> Result<()> {
    match values.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        Some(w) => Err(Error::invalid(alloc::format!(
            "{what} must be finite and nonnegative, got {w}"
        ))),
        None => Ok(()),
    }
}

/// Pointwise sum; all terms must share one ground set.
pub fn sum(terms: Vec<ValueOracle>) -> ValueOracle {
    let claims = terms
        .iter()
        .fold(Claims::MONOTONE_SUBMODULAR, |c, t| c.meet(t.claims()));
    let n = terms.first().map_or(0, ValueOracle::n);
    ValueOracle::new(Sum { n, terms }, claims)
}

/// `factor · f`; claims are kept, so `factor` should be nonnegative.
pub fn scale(inner: ValueOracle, factor: f64) -> ValueOracle {
    let claims = inner.claims();
    ValueOracle::new(Scale { inner, factor }, claims)
}

#[derive(Clone, Debug)]
pub struct Modular {
    pub weights: Vec<f64>,
}

impl SetFunction for Modular {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn eval(&self, s: Set) -> f64 {
        s.iter().map(|v| self.weights[v]).sum()
    }
}

#[derive(Clone, Debug)]
pub struct Coverage {
    pub covers: Vec<Vec<usize>>,
    pub universe_weights: Vec<f64>,
}

impl SetFunction for Coverage {
    fn ground_size(&self) -> usize {
        self.covers.len()
    }

    fn eval(&self, s: Set) -> f64 {
        let mut hit = vec![false; self.universe_weights.len()];
        for v in s.iter() {
            for &u in &self.covers[v] {
                hit[u] = true;
            }
        }
        hit.iter()
            .zip(&self.universe_weights)
            .filter(|(h, _)| **h)
            .map(|(_, w)| *w)
            .sum()
    }
}

#[derive(Clone, Debug)]
pub struct FacilityLocation {
    pub benefit: Vec<Vec<f64>>,
}

impl SetFunction for FacilityLocation {
    fn ground_size(&self) -> usize {
        self.benefit.first().map_or(0, Vec::len)
    }

    fn eval(&self, s: Set) -> f64 {
        self.benefit
            .iter()
            .map(|row| s.iter().map(|v| row[v]).fold(0.0, f64::max))
            .sum()
    }
}

#[derive(Clone, Debug)]
pub struct GraphCut {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl SetFunction for GraphCut {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, s: Set) -> f64 {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| s.contains(u) != s.contains(v))
            .map(|&(_, _, w)| w)
            .sum()
    }
}

#[derive(Clone, Debug)]
pub struct MatroidRank {
    pub matroid: Matroid,
}

impl SetFunction for MatroidRank {
    fn ground_size(&self) -> usize {
        self.matroid.n()
    }

    fn eval(&self, s: Set) -> f64 {
        self.matroid.rank(s) as f64
    }
}

#[derive(Clone, Debug)]
pub struct ConcaveOfModular {
    pub weights: Vec<f64>,
    pub concave: Concave,
}

impl SetFunction for ConcaveOfModular {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn eval(&self, s: Set) -> f64 {
        let x: f64 = s.iter().map(|v| self.weights[v]).sum();
        match self.concave {
            Concave::Sqrt => libm::sqrt(x),
            Concave::MinCap { cap } => x.min(cap),
        }
    }
}

struct Sum {
    n: usize,
    terms: Vec<ValueOracle>,
}

impl SetFunction for Sum {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, s: Set) -> f64 {
        self.terms.iter().map(|t| t.value(s)).sum()
    }
}

struct Scale {
    inner: ValueOracle,
    factor: f64,
}

impl SetFunction for Scale {
    fn ground_size(&self) -> usize {
        self.inner.n()
    }

    fn eval(&self, s: Set) -> f64 {
        self.factor * self.inner.value(s)
    }
}
