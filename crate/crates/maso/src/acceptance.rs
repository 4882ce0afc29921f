//! The acceptance criteria, shared by `maso verify` and the `acceptance`
//! test target.
//!
//! Every criterion returns a one-line detail on success and the first
//! witness it finds on failure.

use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, ensure, Result};
use maso_core::lifting::{lift_agent_families, lift_family, lift_graph, lift_instance, slices};
use maso_core::maximize::{ContinuousSolver, DEFAULT_STEPS};
use maso_core::minimize::{bounded_blocker_round, ce_rounding, g_function, solve_ma_le, MaLeOptions};
use maso_core::{
    brute_force_maso, brute_force_so, check_matroid, check_monotone, check_ring, check_submodular,
    continuous_greedy_ma, disjointify_supports, lovasz_eval, multilinear_eval_exact, p_system_ratio,
    standard_function, Allocation, CheckMode, Concave, Error, FamilyKind, FamilySpec, FeasibleFamily,
    FractionalAssignment, FractionalPoint, FunctionSpec, Graph, GraphFamily, GradientMode, InstanceSpec, MasoInstance,
    Matroid, MonotoneContinuousGreedy, Polytope, PreAssignment, Sense, Set, ValueOracle,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algo::Algorithm;
use crate::generate::{coverage, generate, random_connected_graph, random_ideals, rng, weights, GenParams, GeneratorKind};

const TOL: f64 = 1e-9;

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub limit: Option<Duration>,
    run: fn() -> Result<String>,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({}; {:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

impl Criterion {
    pub fn run(&self) -> CriterionResult {
        let start = Instant::now();
        let outcome = (self.run)();
        let elapsed = start.elapsed();
        let (passed, detail) = match outcome {
            Ok(d) => match self.limit {
                Some(limit) if elapsed > limit => (false, format!("{d}; over the {}s budget", limit.as_secs())),
                _ => (true, d),
            },
            Err(e) => (false, format!("{e:#}")),
        };
        CriterionResult {
            id: self.id,
            title: self.title,
            passed,
            detail,
            elapsed,
        }
    }
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

pub const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, title: "extension correctness", limit: secs(10), run: extension_correctness },
    Criterion { id: 2, title: "lifting invariance", limit: secs(60), run: lifting_invariance },
    Criterion { id: 3, title: "disjoint-support identities", limit: None, run: disjoint_support_identities },
    Criterion { id: 4, title: "facility-location k-approximation", limit: secs(30), run: facility_location },
    Criterion { id: 5, title: "fracture/expand/return", limit: secs(60), run: fracture },
    Criterion { id: 6, title: "CE-Rounding", limit: None, run: ce_rounding_criterion },
    Criterion { id: 7, title: "bounded-blocker rounding", limit: None, run: bounded_blocker },
    Criterion { id: 8, title: "maximization pipeline", limit: secs(120), run: maximization_pipeline },
    Criterion { id: 9, title: "lifted greedy p-system guarantee", limit: None, run: lifted_greedy_guarantee },
    Criterion { id: 10, title: "crossing-family solver", limit: None, run: crossing_solver },
    Criterion { id: 11, title: "oracle self-consistency", limit: None, run: oracle_consistency },
];

pub fn criterion(id: u8) -> Option<&'static Criterion> {
    CRITERIA.iter().find(|c| c.id == id)
}

// ---------------------------------------------------------------------------
// Independent oracles

/// `∫_0^∞ f({v : z_v >= θ}) dθ` between consecutive breakpoints.
fn naive_lovasz(f: &ValueOracle, z: &[f64]) -> f64 {
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

/// `Σ_S f(S) Π_{v∈S} z_v Π_{v∉S} (1 - z_v)`.
fn naive_multilinear(f: &ValueOracle, z: &[f64]) -> f64 {
    Set::all(z.len())
        .map(|s| {
            let p: f64 = (0..z.len()).map(|v| if s.contains(v) { z[v] } else { 1.0 - z[v] }).product();
            p * f.value(s)
        })
        .sum()
}

/// Pairwise disjoint parts, union in `F`, each part in its agent family.
fn feasible(inst: &MasoInstance, alloc: &Allocation) -> bool {
    let parts = alloc.parts();
    let disjoint = (0..parts.len()).all(|i| (i + 1..parts.len()).all(|j| !parts[i].intersects(parts[j])));
    let union = parts.iter().fold(Set::EMPTY, |a, &p| a.union(p));
    disjoint
        && inst.outer.contains(union)
        && parts
            .iter()
            .enumerate()
            .all(|(i, &p)| inst.agent_family(i).map_or(true, |f| f.contains(p)))
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL * a.abs().max(b.abs()).max(1.0)
}

fn spec_of(objectives: Vec<FunctionSpec>, outer: FamilySpec, sense: Sense) -> InstanceSpec {
    InstanceSpec {
        n: objectives.first().map_or(0, FunctionSpec::n),
        labels: None,
        k: objectives.len(),
        objectives,
        outer_family: outer,
        per_agent_families: None,
        sense,
        decomposition: None,
    }
}

fn build(objectives: Vec<FunctionSpec>, outer: FamilySpec, sense: Sense) -> Result<MasoInstance> {
    Ok(spec_of(objectives, outer, sense).build()?)
}

fn grid_point(r: &mut ChaCha8Rng, n: usize, top: u32) -> Vec<f64> {
    (0..n).map(|_| r.gen_range(0..=top) as f64 / 8.0).collect()
}

fn random_matroid(r: &mut ChaCha8Rng, n: usize) -> Result<Matroid> {
    Ok(match r.gen_range(0..3) {
        0 => Matroid::Uniform { n, rank: r.gen_range(1..=n) },
        1 => random_partition(r, n),
        _ => loop {
            let g = random_connected_graph(r, 4, 0.5)?;
            if g.edge_count() == n {
                break Matroid::Graphic { graph: g };
            }
        },
    })
}

fn random_partition(r: &mut ChaCha8Rng, n: usize) -> Matroid {
    let parts = r.gen_range(1..=3);
    Matroid::Partition {
        part_of: (0..n).map(|_| r.gen_range(0..parts)).collect(),
        caps: (0..parts).map(|_| r.gen_range(1..=2)).collect(),
    }
}

/// Random graph on `nodes` vertices with at most `max_edges` edges.
fn small_graph(r: &mut ChaCha8Rng, nodes: usize, max_edges: usize) -> Result<Graph> {
    loop {
        let g = random_connected_graph(r, nodes, 0.35)?;
        if g.edge_count() <= max_edges {
            return Ok(g);
        }
    }
}

fn count(family: &FeasibleFamily) -> usize {
    Set::all(family.n()).filter(|&s| family.contains(s)).count()
}

// ---------------------------------------------------------------------------
// 1

fn zoo(n: usize, seed: u64) -> Vec<(&'static str, FunctionSpec)> {
    let mut r = rng(seed);
    let w = weights(&mut r, n, 0.0);
    let cover = coverage(&mut r, n, n + 2);
    let benefit = (0..3).map(|_| weights(&mut r, n, 0.0)).collect();
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| r.gen_bool(0.5))
        .map(|(u, v)| (u, v, 1.0 + ((u + v) % 3) as f64))
        .collect();
    vec![
        ("modular", FunctionSpec::Modular { weights: w.clone() }),
        ("cardinality", FunctionSpec::cardinality(n)),
        ("capped", FunctionSpec::capped_cardinality(n, 2.0)),
        ("coverage", cover.clone()),
        ("facility", FunctionSpec::FacilityLocation { benefit }),
        ("cut", FunctionSpec::GraphCut { n, edges }),
        (
            "rank",
            FunctionSpec::MatroidRank {
                matroid: Matroid::Partition {
                    part_of: (0..n).map(|v| v % 2).collect(),
                    caps: vec![1, 2],
                },
            },
        ),
        ("sqrt", FunctionSpec::ConcaveOfModular { weights: w.clone(), concave: Concave::Sqrt }),
        ("sum", FunctionSpec::Sum { terms: vec![cover.clone(), FunctionSpec::Modular { weights: w }] }),
        ("scale", FunctionSpec::Scale { factor: 0.5, inner: Box::new(cover) }),
    ]
}

fn extension_correctness() -> Result<String> {
    let mut sets = 0;
    let mut samples = 0;
    for n in [4, 10] {
        for (name, spec) in zoo(n, 11 + n as u64) {
            let f = standard_function(&spec)?;
            for s in Set::all(n) {
                let chi = FractionalPoint::indicator(n, s);
                let (l, m, v) = (lovasz_eval(&f, &chi)?, multilinear_eval_exact(&f, &chi)?, f.value(s));
                ensure!(close(l, v) && close(m, v), "{name}: f^L = {l}, f^M = {m}, f = {v} at {s}");
                sets += 1;
            }
            let mut r = rng(7 * n as u64);
            for _ in 0..100 {
                let (x, y) = (grid_point(&mut r, n, 16), grid_point(&mut r, n, 16));
                let lam = r.gen_range(0..=8) as f64 / 8.0;
                let mid: Vec<f64> = x.iter().zip(&y).map(|(a, b)| lam * a + (1.0 - lam) * b).collect();
                let fl = |p: &[f64]| lovasz_eval(&f, &FractionalPoint::new(p.to_vec())?);
                let (lx, ly, lm) = (fl(&x)?, fl(&y)?, fl(&mid)?);
                ensure!(
                    lm <= lam * lx + (1.0 - lam) * ly + TOL * (1.0 + lx.abs() + ly.abs()),
                    "{name}: convexity fails at x = {x:?}, y = {y:?}, λ = {lam}"
                );
                ensure!(close(lx, naive_lovasz(&f, &x)), "{name}: f^L disagrees with the level-set integral at {x:?}");
                let alpha = r.gen_range(0..=24) as f64 / 8.0;
                let ax: Vec<f64> = x.iter().map(|a| alpha * a).collect();
                ensure!(close(fl(&ax)?, alpha * lx), "{name}: f^L({alpha} x) != {alpha} f^L(x) at {x:?}");
                samples += 1;
            }
        }
    }
    Ok(format!("{sets} indicator points, {samples} convexity/homogeneity samples"))
}

// ---------------------------------------------------------------------------
// 2

fn lifting_invariance() -> Result<String> {
    let mut r = rng(2);

    // Submodularity and monotonicity survive the lift.
    let exhaustive = CheckMode::exhaustive();
    for (t, &(n, k)) in [(7, 2), (4, 3), (14, 1), (3, 4), (2, 7)].iter().enumerate() {
        let objs = (0..k).map(|_| coverage(&mut r, n, 5)).collect();
        let lifted = lift_instance(&build(objs, FamilySpec::FullPowerset, Sense::Max)?)?;
        ensure!(check_submodular(&lifted.f, exhaustive)?.holds, "lifted coverage #{t} not submodular");
        ensure!(check_monotone(&lifted.f, exhaustive)?.holds, "lifted coverage #{t} not monotone");
    }
    let cut = FunctionSpec::GraphCut { n: 5, edges: vec![(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0), (3, 4, 0.5)] };
    let lifted = lift_instance(&build(vec![cut.clone(), cut], FamilySpec::FullPowerset, Sense::Max)?)?;
    ensure!(check_submodular(&lifted.f, exhaustive)?.holds, "lifted cut not submodular");
    ensure!(!check_monotone(&lifted.f, exhaustive)?.holds, "lifted cut claims monotone");

    for seed in 0..20u64 {
        let mut r = rng(200 + seed);
        // p-system ratio does not grow.
        let fam = match seed % 3 {
            0 => FeasibleFamily::graph(small_graph(&mut r, 4 + (seed as usize % 2), 7)?, GraphFamily::Matchings)?,
            1 => FeasibleFamily::intersection(vec![
                FeasibleFamily::matroid(random_partition(&mut r, 6))?,
                FeasibleFamily::matroid(random_partition(&mut r, 6))?,
            ])?,
            _ => FeasibleFamily::matroid(random_matroid(&mut r, 6)?)?,
        };
        let (p, lp) = (p_system_ratio(&fam)?, p_system_ratio(&lift_family(&fam, 2)?)?);
        ensure!(lp.value() <= p.value() + 1e-12, "p-system ratio: seed {seed}, lifted p = {} > {}", lp.value(), p.value());

        // Matroids and base families.
        let m = random_matroid(&mut r, 6)?;
        let indep = lift_family(&FeasibleFamily::matroid(m.clone())?, 2)?;
        let verdict = check_matroid(&indep)?;
        ensure!(verdict.holds, "lifted matroid: seed {seed}, lifted {m:?} fails exchange at {:?}", verdict.witness);
        let bases = lift_family(&FeasibleFamily::matroid_bases(m.clone())?, 2)?;
        for s in Set::all(indep.n()) {
            let maximal = indep.contains(s) && (0..indep.n()).all(|e| s.contains(e) || !indep.contains(s.with(e)));
            ensure!(bases.contains(s) == maximal, "lifted bases: seed {seed}, {s} under lifted bases of {m:?}");
        }

        // Intersections lift componentwise.
        let (a, b) = (
            FeasibleFamily::matroid(random_partition(&mut r, 6))?,
            FeasibleFamily::matroid(random_partition(&mut r, 6))?,
        );
        let both = lift_family(&FeasibleFamily::intersection(vec![a.clone(), b.clone()])?, 2)?;
        let (la, lb) = (lift_family(&a, 2)?, lift_family(&b, 2)?);
        if let Some(s) = Set::all(12).find(|&s| both.contains(s) != (la.contains(s) && lb.contains(s))) {
            bail!("lifted intersection: seed {seed}, lifted intersection disagrees at {s}");
        }

        // Agent families.
        let k = 2 + seed as usize % 2;
        let agents = (0..k)
            .map(|_| FeasibleFamily::matroid(random_matroid(&mut r, 4)?).map_err(Into::into))
            .collect::<Result<Vec<_>>>()?;
        let h = lift_agent_families(&agents)?;
        ensure!(check_matroid(&h)?.holds, "agent matroids: seed {seed}, H is not a matroid");
        let rings = (0..k)
            .map(|_| FeasibleFamily::ring(4, random_ideals(&mut r, 4, 0.4)).map_err(Into::into))
            .collect::<Result<Vec<_>>>()?;
        let h = lift_agent_families(&rings)?;
        ensure!(h.kind() == FamilyKind::Ring, "agent rings: seed {seed}, H lost its ring kind");
        ensure!(check_ring(&h)?.holds, "agent rings: seed {seed}, H not closed under union and intersection");

        // Graph families count the same on G'.
        let nodes = 3 + seed as usize % 3;
        let g = small_graph(&mut r, nodes, 7)?;
        let lg = lift_graph(&g, 2)?;
        for fam in [GraphFamily::Forests, GraphFamily::Matchings, GraphFamily::StPaths { s: 0, t: nodes - 1 }] {
            let via_lift = count(&lift_family(&FeasibleFamily::graph(g.clone(), fam)?, 2)?);
            let direct = count(&FeasibleFamily::graph(lg.graph.clone(), fam)?);
            ensure!(via_lift == direct, "graph counts: {fam:?} on {g:?}: {via_lift} lifted vs {direct} on G'");
        }
    }

    // Multilinear additivity on the lifted space.
    for t in 0..100u64 {
        let (n, k) = [(5, 2), (4, 3), (7, 2), (3, 4)][t as usize % 4];
        let mut r = rng(900 + t);
        let specs: Vec<FunctionSpec> = (0..k).map(|_| coverage(&mut r, n, 4)).collect();
        let lifted = lift_instance(&build(specs.clone(), FamilySpec::FullPowerset, Sense::Max)?)?;
        let zbar = grid_point(&mut r, n * k, 8);
        let whole = multilinear_eval_exact(&lifted.f, &FractionalPoint::new(zbar.clone())?)?;
        let mut parts = 0.0;
        for (i, spec) in specs.iter().enumerate() {
            let zi = FractionalPoint::new(zbar[i * n..(i + 1) * n].to_vec())?;
            parts += multilinear_eval_exact(&standard_function(spec)?, &zi)?;
        }
        ensure!(close(whole, parts), "additivity: {whole} vs {parts} at {zbar:?}");
    }
    Ok("20 seeded families per invariant, additivity on 100 points".into())
}

// ---------------------------------------------------------------------------
// 3

fn disjoint_assignment(r: &mut ChaCha8Rng, k: usize, n: usize) -> Result<FractionalAssignment> {
    let mut parts = vec![vec![0.0; n]; k];
    let owners: Vec<Option<usize>> = (0..n).map(|_| r.gen_bool(0.8).then(|| r.gen_range(0..k))).collect();
    for (v, owner) in owners.into_iter().enumerate() {
        if let Some(i) = owner {
            parts[i][v] = r.gen_range(1..=8) as f64 / 8.0;
        }
    }
    Ok(FractionalAssignment::new(
        parts.into_iter().map(FractionalPoint::new).collect::<maso_core::Result<_>>()?,
    )?)
}

fn disjoint_support_identities() -> Result<String> {
    for multilinear in [false, true] {
        for t in 0..100u64 {
            let mut r = rng(300 + t + if multilinear { 1000 } else { 0 });
            let (n, k) = (6, 2 + t as usize % 2);
            let objs = (0..k).map(|_| coverage(&mut r, n, 5)).collect();
            let inst = build(objs, FamilySpec::FullPowerset, Sense::Min)?;
            let z = disjoint_assignment(&mut r, k, n)?;
            let g = g_function(&inst, &PreAssignment::from_assignment(&z)?)?;
            let agg = z.aggregate();
            let (lhs, lib, naive) = if multilinear {
                (
                    z.multilinear_value(&inst.objectives)?,
                    multilinear_eval_exact(&g, &agg)?,
                    naive_multilinear(&g, agg.as_slice()),
                )
            } else {
                (z.lovasz_value(&inst.objectives)?, lovasz_eval(&g, &agg)?, naive_lovasz(&g, agg.as_slice()))
            };
            let which = if multilinear { "multilinear" } else { "Lovász" };
            ensure!(
                close(lhs, lib) && close(lhs, naive),
                "{which} identity, sample {t}: Σ f_i = {lhs}, g = {lib}, naive g = {naive}"
            );
        }
    }
    Ok("100 Lovász and 100 multilinear samples".into())
}

// ---------------------------------------------------------------------------
// 4, 5

fn ratio(cost: f64, opt: f64) -> f64 {
    if opt.abs() <= 1e-12 {
        if cost.abs() <= 1e-12 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        cost / opt
    }
}

fn facility_location() -> Result<String> {
    let mut worst: f64 = 0.0;
    for seed in 0..50u64 {
        let (n, k) = (3 + seed as usize % 6, 1 + seed as usize % 3);
        let spec = generate(GeneratorKind::FacilityLocation, &GenParams::new(n, k), 4000 + seed)?;
        let inst = spec.build()?;
        let out = Algorithm::DisjointifyMax.run(&inst, seed)?;
        ensure!(feasible(&inst, &out.allocation), "seed {seed}: infeasible {}", out.allocation);
        let (opt, _) = brute_force_maso(&inst)?;
        ensure!(
            out.value <= k as f64 * opt + TOL,
            "seed {seed}: cost {} > k·OPT = {k}·{opt}",
            out.value
        );
        worst = worst.max(ratio(out.value, opt) / k as f64);
    }
    Ok(format!("50 instances, worst cost/(k·OPT) = {worst:.3}"))
}

fn fracture() -> Result<String> {
    let mut worst: f64 = 0.0;
    for seed in 0..50u64 {
        let (nodes, k) = (4 + seed as usize % 5, 1 + seed as usize % 3);
        let spec = generate(GeneratorKind::VertexCover, &GenParams::new(nodes, k), 5000 + seed)?;
        let inst = spec.build()?;
        let out = match Algorithm::FractureExpandReturn.run(&inst, seed) {
            Ok(o) => o,
            Err(e @ Error::InvariantViolation(_)) => bail!("seed {seed}: internal assertion fired: {e}"),
            Err(e) => bail!("seed {seed}: {e}"),
        };
        ensure!(feasible(&inst, &out.allocation), "seed {seed}: infeasible {}", out.allocation);
        let (opt, _) = brute_force_maso(&inst)?;
        let log2n = (nodes as f64).log2();
        let bound = (k as f64).min(4.0 * log2n * log2n) * 2.0;
        let rho = ratio(out.value, opt);
        ensure!(rho <= bound + TOL, "seed {seed}: ratio {rho} > {bound} (cost {}, OPT {opt})", out.value);
        worst = worst.max(rho / bound);
    }
    Ok(format!("50 instances, worst ratio/bound = {worst:.3}"))
}

// ---------------------------------------------------------------------------
// 6

fn ce_rounding_criterion() -> Result<String> {
    let mut worst: f64 = 0.0;
    for t in 0..20u64 {
        let (n, k) = (4 + t as usize % 5, 1 + t as usize % 3);
        let kind = if t % 2 == 0 { GeneratorKind::VertexCover } else { GeneratorKind::HittingSet };
        let inst = generate(kind, &GenParams::new(n, k), 6000 + t)?.build()?;
        let beta = inst.outer.beta().ok_or_else(|| anyhow!("no blocker"))? as f64;
        let zstar = solve_ma_le(&inst, MaLeOptions::default())?.assignment;
        let z = zstar.scaled(beta);
        let agg = z.aggregate();
        let u: Set = (0..n).filter(|&v| agg[v] >= 1.0 - TOL).collect();
        let frac = z.lovasz_value(&inst.objectives)?;
        let mut total = 0.0;
        for trial in 0..500u64 {
            let out = ce_rounding(&inst, &z, u, trial)?;
            let parts = out.allocation.parts();
            let union = parts.iter().fold(Set::EMPTY, |a, &p| a.union(p));
            ensure!(u.is_subset(union), "instance {t}, trial {trial}: {union} misses part of U = {u}");
            ensure!(
                parts.iter().map(|p| p.len()).sum::<usize>() == union.len(),
                "instance {t}, trial {trial}: overlapping parts {}",
                out.allocation
            );
            total += out.cost;
        }
        let mean = total / 500.0;
        let bound = 4.0 * ((u.len().max(1) as f64).ln() + 2.0) * frac;
        ensure!(mean <= bound + TOL, "instance {t}: mean cost {mean} > {bound}");
        if bound > 0.0 {
            worst = worst.max(mean / bound);
        }
    }

    // One item, two agents: each draw covers with probability (z_1 + z_2) / 2.
    let inst = build(
        vec![FunctionSpec::Modular { weights: vec![1.0] }, FunctionSpec::Modular { weights: vec![2.0] }],
        FamilySpec::TrivialV,
        Sense::Min,
    )?;
    let z = FractionalAssignment::new(vec![FractionalPoint::new(vec![0.3])?, FractionalPoint::new(vec![0.9])?])?;
    let p: f64 = 0.6;
    let trials = 4000;
    let mut draws = 0usize;
    for seed in 0..trials {
        draws += ce_rounding(&inst, &z, Set::singleton(0), seed)?.iterations;
    }
    let mean = draws as f64 / trials as f64;
    let sigma = ((1.0 - p) / (p * p) / trials as f64).sqrt();
    ensure!(
        (mean - 1.0 / p).abs() <= 3.0 * sigma,
        "geometric check: mean draws {mean}, expected {} ± {}",
        1.0 / p,
        3.0 * sigma
    );
    Ok(format!("20 instances x 500 trials, worst mean/bound = {worst:.3}; mean draws {mean:.3} vs {:.3}", 1.0 / p))
}

// ---------------------------------------------------------------------------
// 7

fn bounded_blocker() -> Result<String> {
    for t in 0..50u64 {
        let n = 5 + t as usize % 4;
        let k = 1 + t as usize % 3;
        let kind = if t < 25 { GeneratorKind::VertexCover } else { GeneratorKind::HittingSet };
        let spec = generate(kind, &GenParams::new(n, k), 7000 + t)?;
        let FamilySpec::UpwardClosedWithBlocker { blockers } = &spec.outer_family else {
            bail!("generator {kind:?} did not embed a blocker list");
        };
        let inst = spec.build()?;
        let beta = blockers.iter().map(|b| b.len()).max().unwrap_or(1) as f64;
        let zstar = solve_ma_le(&inst, MaLeOptions::default())?.assignment;
        let agg = zstar.aggregate();
        let u: Set = (0..n).filter(|&v| beta * agg[v] >= 1.0 - TOL).collect();
        if let Some(b) = blockers.iter().find(|b| !b.intersects(u)) {
            bail!("instance {t}: U = {u} misses blocker set {b}");
        }
        let out = bounded_blocker_round(&inst, &zstar, beta, t)?;
        ensure!(feasible(&inst, &out.allocation), "instance {t}: infeasible {}", out.allocation);
        ensure!(out.target == Some(u), "instance {t}: rounding targeted {:?}, probe found {u}", out.target);
    }
    Ok("25 vertex-cover and 25 hitting-set instances".into())
}

// ---------------------------------------------------------------------------
// 8

fn maximization_pipeline() -> Result<String> {
    let factor = 1.0 - (-1.0f64).exp() - 0.05;
    let shapes = [(6, 2), (4, 3), (3, 4), (5, 2), (12, 1), (2, 6)];
    let kinds = [GeneratorKind::Welfare, GeneratorKind::Recommendation, GeneratorKind::Sensor];
    let mut worst = f64::INFINITY;
    for seed in 0..30u64 {
        let (n, k) = shapes[seed as usize % shapes.len()];
        let kind = kinds[seed as usize % kinds.len()];
        let inst = generate(kind, &GenParams::new(n, k), 8000 + seed)?.build()?;
        let p = Polytope::from_family(&inst.outer)?;
        let cg = continuous_greedy_ma(&inst, &p, DEFAULT_STEPS, GradientMode::Exact)?;
        let before = cg.assignment.multilinear_value(&inst.objectives)?;
        let (dz, _) = disjointify_supports(&cg.assignment, &inst)?;
        let after = dz.multilinear_value(&inst.objectives)?;
        ensure!(after >= before - TOL * before.max(1.0), "seed {seed}: disjointify lowered {before} to {after}");

        let out = Algorithm::MaximizePipeline.run(&inst, seed)?;
        ensure!(feasible(&inst, &out.allocation), "seed {seed}: infeasible {}", out.allocation);
        let (opt, _) = brute_force_maso(&inst)?;
        ensure!(
            out.value >= factor * opt - TOL,
            "seed {seed} ({kind:?}, n={n}, k={k}): value {} < {factor:.4}·{opt}",
            out.value
        );
        let claimed = MonotoneContinuousGreedy { steps: DEFAULT_STEPS, mode: GradientMode::Exact }.factor();
        ensure!(out.factor_claimed == claimed, "seed {seed}: factor {:?} reported", out.factor_claimed);
        if opt > 0.0 {
            worst = worst.min(out.value / opt);
        }
    }
    Ok(format!("30 instances, worst value/OPT = {worst:.3}"))
}

// ---------------------------------------------------------------------------
// 9

fn lifted_greedy_guarantee() -> Result<String> {
    let mut worst = f64::INFINITY;
    for seed in 0..50u64 {
        let mut r = rng(9000 + seed);
        let k = 1 + seed as usize % 3;
        let spec = match seed % 3 {
            0 => {
                let kind = if seed % 2 == 0 { GeneratorKind::Recommendation } else { GeneratorKind::Sensor };
                generate(kind, &GenParams::new(6, k), 9000 + seed)?
            }
            1 => {
                let n = 6;
                let objs = (0..k).map(|_| coverage(&mut r, n, n + 2)).collect();
                let families = vec![
                    FamilySpec::MatroidIndependentSets { matroid: random_partition(&mut r, n) },
                    FamilySpec::MatroidIndependentSets { matroid: random_partition(&mut r, n) },
                ];
                spec_of(objs, FamilySpec::Intersection { families }, Sense::Max)
            }
            _ => {
                let g = small_graph(&mut r, 5, 7)?;
                let m = g.edge_count();
                let objs = (0..k).map(|_| coverage(&mut r, m, m + 2)).collect();
                spec_of(objs, FamilySpec::Graph { graph: g, family: GraphFamily::Matchings }, Sense::Max)
            }
        };
        let inst = spec.build()?;
        let p = p_system_ratio(&inst.outer)?.value();
        let out = Algorithm::LiftedGreedy.run(&inst, seed)?;
        ensure!(feasible(&inst, &out.allocation), "seed {seed}: infeasible {}", out.allocation);
        let (opt, _) = brute_force_maso(&inst)?;
        ensure!(
            out.value * (p + 1.0) >= opt - TOL,
            "seed {seed}: value {} with p = {p} below OPT {opt}",
            out.value
        );
        if opt > 0.0 {
            worst = worst.min(out.value * (p + 1.0) / opt);
        }
    }
    Ok(format!("50 instances, worst value·(p+1)/OPT = {worst:.3}"))
}

// ---------------------------------------------------------------------------
// 10

fn crossing_solver() -> Result<String> {
    let mut worst: f64 = 0.0;
    for t in 0..20u64 {
        let kind = if t % 2 == 0 { GeneratorKind::Crossing } else { GeneratorKind::Ring };
        let (n, k) = (3 + t as usize % 6, 1 + t as usize % 3);
        let inst = generate(kind, &GenParams::new(n, k), 10_000 + t)?.build()?;
        let (opt, _) = brute_force_maso(&inst)?;
        let mut ratios = 0.0;
        let mut largest = 0;
        let runs = 10;
        for seed in 0..runs {
            let out = maso_core::minimize::crossing_family_solve(&inst, MaLeOptions::default(), seed)?;
            ensure!(feasible(&inst, &out.allocation), "instance {t}, seed {seed}: {} not in F", out.allocation);
            largest = largest.max(out.target.map_or(0, |m| m.len()));
            ratios += ratio(out.cost, opt);
        }
        let mean = ratios / runs as f64;
        let bound = 2.0 * ((largest.max(1) as f64).ln() + 2.0);
        ensure!(mean <= bound + TOL, "instance {t}: mean ratio {mean} > {bound}");
        worst = worst.max(mean / bound);
    }
    Ok(format!("20 families x 10 seeds, worst mean ratio/bound = {worst:.3}"))
}

// ---------------------------------------------------------------------------
// 11

fn oracle_consistency() -> Result<String> {
    let mut infeasible = 0;
    for t in 0..100u64 {
        let kind = GeneratorKind::ALL[t as usize % GeneratorKind::ALL.len()];
        let k = 1 + (t as usize / 12) % 2;
        let n = if kind.on_edges() || kind == GeneratorKind::VertexCover { 4 } else { 6 - k };
        let inst = generate(kind, &GenParams::new(n, k), 11_000 + t)?.build()?;
        let lifted = lift_instance(&inst)?;
        let so = brute_force_so(&lifted.f, &lifted.feasible_family()?, inst.sense);
        let maso = brute_force_maso(&inst);
        match (so, maso) {
            (Ok((a, s)), Ok((b, alloc))) => {
                ensure!(a == b, "instance {t} ({kind:?}): lifted optimum {a} != {b}");
                let split = slices(s, inst.n(), inst.k());
                ensure!(
                    feasible(&inst, &Allocation::new(split)?),
                    "instance {t}: lifted optimum does not unlift to a feasible allocation"
                );
                ensure!(feasible(&inst, &alloc), "instance {t}: brute-force optimum infeasible");
            }
            (Err(Error::Infeasible(_)), Err(Error::Infeasible(_))) => infeasible += 1,
            (a, b) => bail!("instance {t} ({kind:?}): oracles disagree, {a:?} vs {b:?}"),
        }
    }
    Ok(format!("100 instances agree exactly ({infeasible} infeasible on both sides)"))
}
