mod common;

use common::*;
use maso_core::maximize::*;
use maso_core::*;
use proptest::prelude::*;
use rand::Rng;

const GAP: f64 = 1.0 - 1.0 / std::f64::consts::E;

fn set(e: &[usize]) -> Set {
    Set::from_elements(e.iter().copied())
}

fn welfare(objs: Vec<ValueOracle>) -> MasoInstance {
    let n = objs[0].n();
    instance(objs, FeasibleFamily::powerset(n).unwrap(), Sense::Max)
}

#[test]
fn single_agent_pipeline_on_cardinality_constraint() {
    let mut r = rng(3);
    for _ in 0..5 {
        let cover = f(random_coverage(&mut r, 6, 6));
        let inst = instance(vec![cover], FeasibleFamily::uniform(6, 2).unwrap(), Sense::Max);
        let out = maximize_pipeline(&inst, &Polytope::uniform(6, 2), 50, GradientMode::Exact).unwrap();
        assert!(out.allocation.part(0).len() <= 2);
        assert!(out.value >= (GAP - 2.0 / 50.0) * naive_opt(&inst) - 1e-9);
    }
}

#[test]
fn modular_welfare_is_solved_exactly() {
    let mut r = rng(4);
    for _ in 0..5 {
        let w: Vec<Vec<f64>> = (0..3).map(|_| random_weights(&mut r, 4)).collect();
        let inst = welfare(w.iter().map(|x| modular(x)).collect());
        let expect: f64 = (0..4).map(|v| w.iter().map(|x| x[v]).fold(0.0, f64::max)).sum();
        let out = maximize_pipeline(&inst, &Polytope::hypercube(4), 20, GradientMode::Exact).unwrap();
        assert!((out.value - expect).abs() < 1e-9);
    }
}

#[test]
fn coverage_welfare_meets_the_gap() {
    let mut r = rng(5);
    for _ in 0..10 {
        let inst = welfare((0..2).map(|_| f(random_coverage(&mut r, 4, 6))).collect());
        let out = maximize_pipeline(&inst, &Polytope::hypercube(4), DEFAULT_STEPS, GradientMode::Exact).unwrap();
        let opt = naive_opt(&inst);
        assert!(out.value >= (GAP - 0.05) * opt - 1e-9, "{} vs {opt}", out.value);
        assert!(out.fractional_value.unwrap() >= (GAP - 2.0 / DEFAULT_STEPS as f64) * opt - 1e-9);
    }
}

#[test]
fn monte_carlo_mode_is_seed_deterministic() {
    let mut r = rng(6);
    let inst = welfare((0..2).map(|_| f(random_coverage(&mut r, 4, 5))).collect());
    let mode = GradientMode::MonteCarlo { samples: 64, seed: 9 };
    let a = continuous_greedy_ma(&inst, &Polytope::hypercube(4), 10, mode).unwrap();
    let b = continuous_greedy_ma(&inst, &Polytope::hypercube(4), 10, mode).unwrap();
    assert_eq!(a, b);
}

#[test]
fn continuous_greedy_rejects_nonmonotone() {
    let cut = f(FunctionSpec::GraphCut { n: 2, edges: vec![(0, 1, 1.0)] });
    let inst = welfare(vec![cut]);
    assert!(continuous_greedy_ma(&inst, &Polytope::hypercube(2), 5, GradientMode::Exact).is_err());
}

#[test]
fn disjoint_input_is_unchanged() {
    let inst = welfare(vec![modular(&[1.0, 2.0]), modular(&[2.0, 1.0])]);
    let z = assignment(vec![vec![0.5, 0.0], vec![0.0, 0.25]]);
    let (out, moves) = disjointify_supports(&z, &inst).unwrap();
    assert_eq!((out, moves), (z, 0));
}

#[test]
fn pipage_worked_examples() {
    let w = modular(&[1.0, 2.0]);
    let half = FractionalPoint::new(vec![0.5, 0.5]).unwrap();
    assert_eq!(round_partition_matroid(&half, &Polytope::uniform(2, 1), &w).unwrap(), set(&[1]));
    let cap = f(FunctionSpec::capped_cardinality(2, 1.0));
    assert!((multilinear_eval_exact(&cap, &half).unwrap() - 0.75).abs() < 1e-12);
    let s = round_partition_matroid(&half, &Polytope::uniform(2, 1), &cap).unwrap();
    assert_eq!(cap.value(s), 1.0);
    let int = FractionalPoint::indicator(2, set(&[0]));
    assert_eq!(round_partition_matroid(&int, &Polytope::uniform(2, 1), &w).unwrap(), set(&[0]));
}

#[test]
fn lifted_greedy_examples() {
    let inst = instance(vec![modular(&[3.0]), modular(&[1.0])], FeasibleFamily::uniform(1, 1).unwrap(), Sense::Max);
    let out = lifted_greedy(&inst).unwrap();
    assert_eq!(out.allocation.parts(), &[set(&[0]), Set::EMPTY]);
    assert_eq!(out.value, 3.0);
    let zero = welfare(vec![modular(&[0.0; 3]), modular(&[0.0; 3])]);
    assert_eq!(lifted_greedy(&zero).unwrap().allocation, Allocation::empty(2));
}

#[test]
fn lifted_greedy_half_approximates_welfare() {
    let mut r = rng(8);
    for _ in 0..50 {
        let inst = welfare((0..2).map(|_| f(random_coverage(&mut r, 3, 5))).collect());
        let out = lifted_greedy(&inst).unwrap();
        assert!(2.0 * out.value >= naive_opt(&inst) - 1e-9);
    }
}

#[test]
fn lifted_greedy_respects_per_agent_families() {
    let mut r = rng(10);
    let inst = welfare((0..2).map(|_| f(random_coverage(&mut r, 4, 5))).collect())
        .with_per_agent(vec![FeasibleFamily::uniform(4, 1).unwrap(), FeasibleFamily::uniform(4, 2).unwrap()])
        .unwrap();
    let out = lifted_greedy(&inst).unwrap();
    assert!(out.allocation.part(0).len() <= 1 && out.allocation.part(1).len() <= 2);
    assert!(2.0 * out.value >= naive_opt(&inst) - 1e-9);
}

#[test]
fn lifted_greedy_on_matchings_meets_p_plus_one() {
    let mut r = rng(11);
    for _ in 0..20 {
        let g = random_graph(&mut r, 5, 0.3);
        let m = g.edge_count();
        if m > 6 {
            continue;
        }
        let fam = FeasibleFamily::graph(g, GraphFamily::Matchings).unwrap();
        let p = p_system_ratio(&fam).unwrap().value();
        let inst = instance((0..2).map(|_| f(random_coverage(&mut r, m, 5))).collect(), fam, Sense::Max);
        let out = lifted_greedy(&inst).unwrap();
        assert!(out.value * (p + 1.0) >= naive_opt(&inst) - 1e-9);
    }
}

#[test]
fn heuristic_slot_on_a_half_box() {
    let cut = f(FunctionSpec::GraphCut { n: 4, edges: vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)] });
    let inst = welfare(vec![cut.clone(), cut]);
    let out = nonmonotone_slot(&inst, &Polytope::Box { n: 4, cap: 0.5 }, &CoordinateAscent { steps: 10 }).unwrap();
    assert!(inst.is_feasible(&out.allocation));
    assert!(out.value >= 0.0);
    assert!(out.value <= naive_opt(&inst) + 1e-9);
    assert_eq!(out.factor_claimed, None);
}

#[test]
fn symmetric_cut_slot_is_bounded_by_optimum() {
    let mut r = rng(12);
    for _ in 0..5 {
        let n = 6;
        let edges: Vec<(usize, usize, f64)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| r.gen_bool(0.5))
            .map(|(u, v)| (u, v, 1.0))
            .collect();
        let cut = f(FunctionSpec::GraphCut { n, edges });
        let inst = welfare(vec![cut.clone(), cut]);
        let out = nonmonotone_slot(&inst, &Polytope::hypercube(n), &CoordinateAscent { steps: 4 }).unwrap();
        assert!(out.value >= 0.0 && out.value <= naive_opt(&inst) + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn multilinear_of_g_splits_over_disjoint_supports(seed in 0u64..100_000) {
        let mut r = rng(seed);
        let (n, k) = (6, 3);
        let inst = welfare((0..k).map(|_| f(random_coverage(&mut r, n, 5))).collect());
        let z = disjoint_assignment(&mut r, k, n);
        let g = minimize::g_function(&inst, &PreAssignment::from_assignment(&z).unwrap()).unwrap();
        let whole = multilinear_eval_exact(&g, &z.aggregate()).unwrap();
        prop_assert!((whole - z.multilinear_value(&inst.objectives).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn disjointify_supports_preserves_aggregate_and_value(seed in 0u64..100_000) {
        let mut r = rng(seed);
        let (n, k) = (5, 3);
        let inst = welfare((0..k).map(|_| f(random_coverage(&mut r, n, 5))).collect());
        let mut parts = vec![vec![0.0; n]; k];
        for v in 0..n {
            let mut left = 1.0f64;
            for part in parts.iter_mut() {
                let x = (r.gen_range(0..=4) as f64 / 4.0).min(left);
                part[v] = x;
                left -= x;
            }
        }
        let z = assignment(parts);
        let (out, moves) = disjointify_supports(&z, &inst).unwrap();
        prop_assert!(out.has_disjoint_supports());
        prop_assert!(moves <= n * k);
        for v in 0..n {
            prop_assert!((out.aggregate()[v] - z.aggregate()[v]).abs() < 1e-12);
        }
        prop_assert!(out.multilinear_value(&inst.objectives).unwrap() >= z.multilinear_value(&inst.objectives).unwrap() - 1e-9);
    }

    #[test]
    fn pipage_never_loses_value(seed in 0u64..100_000, rank in 1usize..4) {
        let mut r = rng(seed);
        let n = 6;
        let cover = f(random_coverage(&mut r, n, 6));
        let raw: Vec<f64> = (0..n).map(|_| r.gen_range(0..=8) as f64 / 8.0).collect();
        let total: f64 = raw.iter().sum();
        let scale = if total > rank as f64 { rank as f64 / total } else { 1.0 };
        let z = FractionalPoint::new(raw.iter().map(|x| x * scale).collect()).unwrap();
        let s = round_partition_matroid(&z, &Polytope::uniform(n, rank), &cover).unwrap();
        prop_assert!(s.len() <= rank);
        prop_assert!(cover.value(s) >= naive_multilinear(&cover, z.as_slice()) - 1e-9);

        let part = Polytope::partition((0..n).map(|v| v % 3).collect(), vec![1, 1, 1]);
        let mut y = vec![0.0; n];
        for j in 0..3 {
            let a = r.gen_range(0..=4) as f64 / 8.0;
            let b = r.gen_range(0..=4) as f64 / 8.0;
            y[j] = a;
            y[j + 3] = b;
        }
        let y = FractionalPoint::new(y).unwrap();
        let s = round_partition_matroid(&y, &part, &cover).unwrap();
        prop_assert!(cover.value(s) >= naive_multilinear(&cover, y.as_slice()) - 1e-9);
    }

    #[test]
    fn continuous_greedy_on_matroid_polytopes(seed in 0u64..100_000) {
        let mut r = rng(seed);
        let (n, k) = (4, 2);
        let inst = instance(
            (0..k).map(|_| f(random_coverage(&mut r, n, 5))).collect(),
            FeasibleFamily::uniform(n, 2).unwrap(),
            Sense::Max,
        );
        let steps = 40;
        let out = continuous_greedy_ma(&inst, &Polytope::uniform(n, 2), steps, GradientMode::Exact).unwrap();
        prop_assert!(Polytope::uniform(n, 2).contains(&out.assignment.aggregate()).unwrap());
        prop_assert!(out.value >= (GAP - 2.0 / steps as f64) * naive_opt(&inst) - 1e-9);
    }
}
