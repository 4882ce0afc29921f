//! Seeded instance generators.

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use maso_core::checks::EXHAUSTIVE_CAP;
use maso_core::{
    check_crossing, check_monotone, check_ring, check_submodular, compute_blocker, CheckMode, Concave, FamilyKind,
    FamilySpec, FeasibleFamily, FunctionSpec, Graph, GraphFamily, InstanceSpec, Matroid, Sense, Set,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Largest ground set a generator will emit.
pub const GEN_CAP: usize = 20;
/// Largest ground set for generators that enumerate `2^n` sets.
pub const ENUM_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Goods to agents, coverage valuations, no constraint.
    Welfare,
    /// Items into capacitated bins with per-bin profits.
    Sap,
    /// One item per category, coverage valuations.
    Recommendation,
    /// At most `b` sensors, facility-location valuations.
    Sensor,
    /// Clients to facilities, opening plus service costs, `F = {V}`.
    FacilityLocation,
    VertexCover,
    HittingSet,
    SpanningTrees,
    Matchings,
    StPaths,
    Crossing,
    Ring,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 12] = [
        GeneratorKind::Welfare,
        GeneratorKind::Sap,
        GeneratorKind::Recommendation,
        GeneratorKind::Sensor,
        GeneratorKind::FacilityLocation,
        GeneratorKind::VertexCover,
        GeneratorKind::HittingSet,
        GeneratorKind::SpanningTrees,
        GeneratorKind::Matchings,
        GeneratorKind::StPaths,
        GeneratorKind::Crossing,
        GeneratorKind::Ring,
    ];

    pub fn sense(self) -> Sense {
        match self {
            GeneratorKind::Welfare
            | GeneratorKind::Sap
            | GeneratorKind::Recommendation
            | GeneratorKind::Sensor
            | GeneratorKind::Matchings => Sense::Max,
            _ => Sense::Min,
        }
    }

    /// Whether `n` counts graph nodes and the ground set is the edge list.
    pub fn on_edges(self) -> bool {
        matches!(
            self,
            GeneratorKind::SpanningTrees | GeneratorKind::Matchings | GeneratorKind::StPaths
        )
    }
}

/// Graph used by the graph-based generators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphShape {
    Complete(usize),
    Path(usize),
    Cycle(usize),
    /// Random spanning tree plus each other pair with probability `p`.
    Random { nodes: usize, p: f64 },
}

impl GraphShape {
    pub fn build(self, rng: &mut ChaCha8Rng) -> Result<Graph> {
        Ok(match self {
            GraphShape::Complete(m) => Graph::complete(m),
            GraphShape::Path(m) => Graph::path(m),
            GraphShape::Cycle(m) => Graph::cycle(m),
            GraphShape::Random { nodes, p } => random_connected_graph(rng, nodes, p)?,
        })
    }
}

impl FromStr for GraphShape {
    type Err = anyhow::Error;

    /// `complete:N`, `path:N`, `cycle:N` or `random:N[:p]`.
    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.split(':');
        let name = it.next().unwrap_or_default();
        let nodes: usize = it
            .next()
            .with_context(|| format!("graph `{s}` needs a node count, e.g. complete:3"))?
            .parse()
            .with_context(|| format!("bad node count in `{s}`"))?;
        let shape = match name {
            "complete" | "k" => GraphShape::Complete(nodes),
            "path" => GraphShape::Path(nodes),
            "cycle" => GraphShape::Cycle(nodes),
            "random" => GraphShape::Random {
                nodes,
                p: it.next().map(str::parse).transpose()?.unwrap_or(0.3),
            },
            other => bail!("unknown graph shape `{other}`"),
        };
        ensure!(it.next().is_none(), "trailing fields in graph `{s}`");
        Ok(shape)
    }
}

impl fmt::Display for GraphShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphShape::Complete(m) => write!(f, "complete:{m}"),
            GraphShape::Path(m) => write!(f, "path:{m}"),
            GraphShape::Cycle(m) => write!(f, "cycle:{m}"),
            GraphShape::Random { nodes, p } => write!(f, "random:{nodes}:{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    /// Items, or graph nodes for the graph kinds.
    pub n: usize,
    pub k: usize,
    /// Budget `b` (sensor), categories (recommendation), bin capacity (sap)
    /// or hyperedge count (hitting-set).
    pub budget: Option<usize>,
    /// Hyperedge size for hitting-set.
    pub arity: usize,
    pub graph: Option<GraphShape>,
}

impl GenParams {
    pub fn new(n: usize, k: usize) -> Self {
        GenParams {
            n,
            k,
            budget: None,
            arity: 3,
            graph: None,
        }
    }

    pub fn budget(mut self, b: usize) -> Self {
        self.budget = Some(b);
        self
    }

    pub fn graph(mut self, g: GraphShape) -> Self {
        self.graph = Some(g);
        self
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random weights on a quarter grid in `[lo, lo + 10)`.
pub fn weights(rng: &mut ChaCha8Rng, n: usize, lo: f64) -> Vec<f64> {
    (0..n)
        .map(|_| lo + rng.gen_range(0..10) as f64 + rng.gen_range(0..4) as f64 * 0.25)
        .collect()
}

/// Each element covers every universe item with probability 0.4.
pub fn coverage(rng: &mut ChaCha8Rng, n: usize, universe: usize) -> FunctionSpec {
    FunctionSpec::Coverage {
        covers: (0..n)
            .map(|_| (0..universe).filter(|_| rng.gen_bool(0.4)).collect())
            .collect(),
        universe_weights: (0..universe).map(|_| rng.gen_range(1..5) as f64).collect(),
    }
}

pub fn random_connected_graph(rng: &mut ChaCha8Rng, nodes: usize, p: f64) -> Result<Graph> {
    ensure!(nodes >= 2, "a random graph needs at least 2 nodes");
    ensure!((0.0..=1.0).contains(&p), "edge probability {p} is outside [0, 1]");
    let mut order: Vec<usize> = (0..nodes).collect();
    order.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (1..nodes)
        .map(|i| {
            let j = rng.gen_range(0..i);
            let (a, b) = (order[i], order[j]);
            (a.min(b), a.max(b))
        })
        .collect();
    for u in 0..nodes {
        for v in u + 1..nodes {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    Ok(Graph::new(nodes, edges)?)
}

/// Down-sets of a random order on `0..n` where `u < v` precedes with
/// probability `p`.
pub fn random_ideals(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<Set> {
    let preds: Vec<Set> = (0..n)
        .map(|v| (0..v).filter(|_| rng.gen_bool(p)).collect())
        .collect();
    Set::all(n)
        .filter(|s| s.iter().all(|v| preds[v].is_subset(*s)))
        .collect()
}

/// Generates a schema-valid instance and checks every objective's claims.
pub fn generate(kind: GeneratorKind, params: &GenParams, seed: u64) -> Result<InstanceSpec> {
    let GenParams { n, k, .. } = *params;
    ensure!(k >= 1, "k must be at least 1");
    ensure!(n >= 1, "n must be at least 1");
    let mut r = rng(seed);
    let graph = |r: &mut ChaCha8Rng| -> Result<Graph> {
        params.graph.unwrap_or(GraphShape::Random { nodes: n, p: 0.3 }).build(r)
    };

    let (items, objectives, outer_family, per_agent_families) = match kind {
        GeneratorKind::Welfare => {
            let objs = (0..k).map(|_| coverage(&mut r, n, n + 2)).collect();
            (n, objs, FamilySpec::FullPowerset, None)
        }
        GeneratorKind::Sap => {
            let cap = params.budget.unwrap_or(n.div_ceil(k).max(1));
            let objs = (0..k)
                .map(|_| FunctionSpec::Modular {
                    weights: weights(&mut r, n, 1.0),
                })
                .collect();
            let bins = (0..k)
                .map(|_| FamilySpec::MatroidIndependentSets {
                    matroid: Matroid::Uniform {
                        n,
                        rank: r.gen_range(1..=cap),
                    },
                })
                .collect();
            (n, objs, FamilySpec::FullPowerset, Some(bins))
        }
        GeneratorKind::Recommendation => {
            let categories = params.budget.unwrap_or((n / 2).max(1));
            ensure!(categories >= 1, "need at least one category");
            let matroid = Matroid::Partition {
                part_of: (0..n).map(|_| r.gen_range(0..categories)).collect(),
                caps: vec![1; categories],
            };
            let objs = (0..k).map(|_| coverage(&mut r, n, n + 2)).collect();
            (n, objs, FamilySpec::MatroidIndependentSets { matroid }, None)
        }
        GeneratorKind::Sensor => {
            let b = params.budget.unwrap_or(2);
            let objs = (0..k)
                .map(|_| FunctionSpec::FacilityLocation {
                    benefit: (0..n).map(|_| weights(&mut r, n, 0.0)).collect(),
                })
                .collect();
            let matroid = Matroid::Uniform { n, rank: b };
            (n, objs, FamilySpec::MatroidIndependentSets { matroid }, None)
        }
        GeneratorKind::FacilityLocation => {
            let objs = (0..k)
                .map(|_| FunctionSpec::Sum {
                    terms: vec![
                        FunctionSpec::Scale {
                            factor: r.gen_range(1..8) as f64,
                            inner: Box::new(FunctionSpec::capped_cardinality(n, 1.0)),
                        },
                        FunctionSpec::Modular {
                            weights: weights(&mut r, n, 0.0),
                        },
                    ],
                })
                .collect();
            (n, objs, FamilySpec::TrivialV, None)
        }
        GeneratorKind::VertexCover => {
            let g = graph(&mut r)?;
            ensure!(!g.edges.is_empty(), "vertex cover needs at least one edge");
            let edges = g.edges.clone();
            let covers = FeasibleFamily::from_fn(g.nodes, FamilyKind::Custom, move |s: Set| {
                edges.iter().all(|&(u, v)| s.contains(u) || s.contains(v))
            })?;
            let blockers = compute_blocker(&covers)?;
            let objs = (0..k)
                .map(|_| FunctionSpec::Modular {
                    weights: weights(&mut r, g.nodes, 1.0),
                })
                .collect();
            (g.nodes, objs, FamilySpec::UpwardClosedWithBlocker { blockers }, None)
        }
        GeneratorKind::HittingSet => {
            let arity = params.arity;
            ensure!(arity >= 1 && arity <= n, "hyperedge size {arity} must lie in 1..={n}");
            let count = params.budget.unwrap_or(n);
            let mut edges: Vec<Set> = Vec::new();
            let pool: Vec<usize> = (0..n).collect();
            for _ in 0..count * 20 {
                if edges.len() == count {
                    break;
                }
                let e: Set = pool.choose_multiple(&mut r, arity).copied().collect();
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
            edges.sort();
            let objs = (0..k)
                .map(|_| FunctionSpec::Sum {
                    terms: vec![
                        FunctionSpec::Modular {
                            weights: weights(&mut r, n, 1.0),
                        },
                        coverage(&mut r, n, n / 2 + 1),
                    ],
                })
                .collect();
            (n, objs, FamilySpec::UpwardClosedWithBlocker { blockers: edges }, None)
        }
        GeneratorKind::SpanningTrees | GeneratorKind::StPaths => {
            let g = graph(&mut r)?;
            let m = g.edge_count();
            let family = if kind == GeneratorKind::SpanningTrees {
                GraphFamily::SpanningTrees
            } else {
                GraphFamily::StPaths { s: 0, t: g.nodes - 1 }
            };
            let objs = (0..k)
                .map(|_| FunctionSpec::Modular {
                    weights: weights(&mut r, m, 1.0),
                })
                .collect();
            let inner = Box::new(FamilySpec::Graph { graph: g, family });
            (m, objs, FamilySpec::UpwardClosure { inner }, None)
        }
        GeneratorKind::Matchings => {
            let g = graph(&mut r)?;
            let m = g.edge_count();
            let objs = (0..k).map(|_| coverage(&mut r, m, m + 2)).collect();
            let outer = FamilySpec::Graph {
                graph: g,
                family: GraphFamily::Matchings,
            };
            (m, objs, outer, None)
        }
        GeneratorKind::Crossing | GeneratorKind::Ring => {
            ensure!((2..=ENUM_CAP).contains(&n), "{kind:?} needs 2 <= n <= {ENUM_CAP}");
            let ideals = random_ideals(&mut r, n, 0.3);
            let full = Set::full(n);
            let members: Vec<Set> = if kind == GeneratorKind::Crossing {
                ideals.into_iter().filter(|&s| !s.is_empty() && s != full).collect()
            } else {
                let (a, b) = (0, n - 1);
                ideals
                    .into_iter()
                    .filter(|s| s.contains(a) && !s.contains(b))
                    .collect()
            };
            let objs = (0..k)
                .map(|_| FunctionSpec::Sum {
                    terms: vec![
                        FunctionSpec::Modular {
                            weights: weights(&mut r, n, 1.0),
                        },
                        FunctionSpec::ConcaveOfModular {
                            weights: weights(&mut r, n, 0.0),
                            concave: Concave::Sqrt,
                        },
                    ],
                })
                .collect();
            let outer = if kind == GeneratorKind::Crossing {
                FamilySpec::Crossing { members }
            } else {
                FamilySpec::Ring { members }
            };
            (n, objs, outer, None)
        }
    };
    ensure!(items <= GEN_CAP, "{kind:?} produced {items} elements, cap is {GEN_CAP}");

    let spec = InstanceSpec {
        n: items,
        labels: None,
        k,
        objectives,
        outer_family,
        per_agent_families,
        sense: kind.sense(),
        decomposition: None,
    };
    check_claims(&spec, seed)?;
    Ok(spec)
}

/// Builds the instance and checks claimed submodularity, monotonicity and
/// family closure.
pub fn check_claims(spec: &InstanceSpec, seed: u64) -> Result<()> {
    let inst = spec.build()?;
    let mode = if inst.n() <= EXHAUSTIVE_CAP {
        CheckMode::exhaustive()
    } else {
        CheckMode::Sampled { seed, trials: 500 }
    };
    for (i, f) in inst.objectives.iter().enumerate() {
        let claims = f.claims();
        if claims.submodular {
            let v = check_submodular(f, mode)?;
            ensure!(v.holds, "objective {i} is not submodular, witness {:?}", v.witness);
        }
        if claims.monotone {
            let v = check_monotone(f, mode)?;
            ensure!(v.holds, "objective {i} is not monotone, witness {:?}", v.witness);
        }
    }
    let closure = match inst.outer.kind() {
        FamilyKind::Crossing => Some(check_crossing(&inst.outer)?),
        FamilyKind::Ring => Some(check_ring(&inst.outer)?),
        _ => None,
    };
    if let Some(v) = closure {
        ensure!(v.holds, "family closure fails, witness {:?}", v.witness);
    }
    Ok(())
}
