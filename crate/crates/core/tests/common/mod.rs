#![allow(dead_code)]

use maso_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn f(spec: FunctionSpec) -> ValueOracle {
    standard_function(&spec).unwrap()
}

pub fn modular(w: &[f64]) -> ValueOracle {
    f(FunctionSpec::Modular { weights: w.to_vec() })
}

pub fn random_weights(r: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| r.gen_range(0..10) as f64 + r.gen_range(0..4) as f64 * 0.25).collect()
}

pub fn random_coverage(r: &mut ChaCha8Rng, n: usize, universe: usize) -> FunctionSpec {
    FunctionSpec::Coverage {
        covers: (0..n)
            .map(|_| (0..universe).filter(|_| r.gen_bool(0.4)).collect())
            .collect(),
        universe_weights: (0..universe).map(|_| r.gen_range(1..5) as f64).collect(),
    }
}

/// One representative of every standard function shape on `n` elements.
pub fn zoo(n: usize, seed: u64) -> Vec<(&'static str, ValueOracle)> {
    let mut r = rng(seed);
    let w = random_weights(&mut r, n);
    let cover = random_coverage(&mut r, n, n + 2);
    let benefit: Vec<Vec<f64>> = (0..3).map(|_| random_weights(&mut r, n)).collect();
    let edges: Vec<(usize, usize, f64)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| r.gen_bool(0.5))
        .map(|(u, v)| (u, v, 1.0 + (u + v) as f64 % 3.0))
        .collect();
    vec![
        ("modular", f(FunctionSpec::Modular { weights: w.clone() })),
        ("cardinality", f(FunctionSpec::cardinality(n))),
        ("capped", f(FunctionSpec::capped_cardinality(n, 2.0))),
        ("coverage", f(cover.clone())),
        ("facility", f(FunctionSpec::FacilityLocation { benefit })),
        ("cut", f(FunctionSpec::GraphCut { n, edges })),
        (
            "rank",
            f(FunctionSpec::MatroidRank {
                matroid: Matroid::Partition {
                    part_of: (0..n).map(|v| v % 2).collect(),
                    caps: vec![1, 2],
                },
            }),
        ),
        (
            "sqrt",
            f(FunctionSpec::ConcaveOfModular {
                weights: w.clone(),
                concave: Concave::Sqrt,
            }),
        ),
        (
            "sum",
            f(FunctionSpec::Sum {
                terms: vec![cover.clone(), FunctionSpec::Modular { weights: w }],
            }),
        ),
        (
            "scale",
            f(FunctionSpec::Scale {
                factor: 0.5,
                inner: Box::new(cover),
            }),
        ),
    ]
}

pub fn unit_point(r: &mut ChaCha8Rng, n: usize) -> FractionalPoint {
    FractionalPoint::new((0..n).map(|_| r.gen_range(0..=8) as f64 / 8.0).collect()).unwrap()
}

/// `Σ_S f(S) Π_{v∈S} z_v Π_{v∉S} (1 - z_v)` over every subset.
pub fn naive_multilinear(f: &ValueOracle, z: &[f64]) -> f64 {
    let n = z.len();
    (0u64..1 << n)
        .map(|bits| {
            let s = Set::from_bits(bits);
            let p: f64 = (0..n).map(|v| if s.contains(v) { z[v] } else { 1.0 - z[v] }).product();
            p * f.value(s)
        })
        .sum()
}

/// `∫_0^∞ f({v : z_v >= θ}) dθ`, integrating piecewise between breakpoints.
pub fn naive_lovasz(f: &ValueOracle, z: &[f64]) -> f64 {
    let mut cuts: Vec<f64> = z.iter().copied().filter(|&x| x > 0.0).collect();
    cuts.push(0.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.windows(2)
        .map(|w| {
            let level: Set = (0..z.len()).filter(|&v| z[v] >= w[1]).collect();
            (w[1] - w[0]) * f.value(level)
        })
        .sum()
}

/// Exhaustive MASO optimum written independently of the library oracle:
/// recursion over elements, each unassigned or given to one agent.
pub fn naive_opt(inst: &MasoInstance) -> f64 {
    fn go(inst: &MasoInstance, v: usize, parts: &mut Vec<Set>, best: &mut Option<f64>) {
        if v == inst.n() {
            let alloc = Allocation::new(parts.clone()).unwrap();
            if inst.outer.contains(alloc.union())
                && (0..inst.k()).all(|i| inst.agent_family(i).map_or(true, |fam| fam.contains(parts[i])))
            {
                let c = inst.cost(&alloc);
                let better = match (inst.sense, *best) {
                    (_, None) => true,
                    (Sense::Min, Some(b)) => c < b,
                    (Sense::Max, Some(b)) => c > b,
                };
                if better {
                    *best = Some(c);
                }
            }
            return;
        }
        go(inst, v + 1, parts, best);
        for i in 0..inst.k() {
            parts[i].insert(v);
            go(inst, v + 1, parts, best);
            parts[i].remove(v);
        }
    }
    let mut best = None;
    go(inst, 0, &mut vec![Set::EMPTY; inst.k()], &mut best);
    best.expect("instance has a feasible allocation")
}

pub fn instance(objectives: Vec<ValueOracle>, outer: FeasibleFamily, sense: Sense) -> MasoInstance {
    let n = objectives[0].n();
    MasoInstance::new(GroundSet::new(n).unwrap(), objectives, outer, sense).unwrap()
}

/// A connected graph on `nodes` vertices: a random spanning path plus extra edges.
pub fn random_graph(r: &mut ChaCha8Rng, nodes: usize, extra: f64) -> Graph {
    let mut perm: Vec<usize> = (0..nodes).collect();
    for i in (1..nodes).rev() {
        perm.swap(i, r.gen_range(0..=i));
    }
    let mut edges: Vec<(usize, usize)> = perm.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
    for u in 0..nodes {
        for v in u + 1..nodes {
            if !edges.contains(&(u, v)) && r.gen_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(nodes, edges).unwrap()
}

pub fn assignment(parts: Vec<Vec<f64>>) -> FractionalAssignment {
    FractionalAssignment::new(parts.into_iter().map(|p| FractionalPoint::new(p).unwrap()).collect()).unwrap()
}

/// Random fractional assignment whose agent supports are pairwise disjoint.
pub fn disjoint_assignment(r: &mut ChaCha8Rng, k: usize, n: usize) -> FractionalAssignment {
    let mut parts = vec![vec![0.0; n]; k];
    let owners: Vec<Option<usize>> = (0..n).map(|_| r.gen_bool(0.8).then(|| r.gen_range(0..k))).collect();
    for (v, owner) in owners.into_iter().enumerate() {
        if let Some(i) = owner {
            parts[i][v] = r.gen_range(1..=8) as f64 / 8.0;
        }
    }
    assignment(parts)
}
