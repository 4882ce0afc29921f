mod common;

use common::*;
use maso_core::lifting::*;
use maso_core::*;
use proptest::prelude::*;
use rand::Rng;

fn set(e: &[usize]) -> Set {
    Set::from_elements(e.iter().copied())
}

/// Direct F′ membership: some split of `s` into per-agent slices is a
/// disjoint family whose union is in `F`.
fn naive_lifted_member(family: &FeasibleFamily, s: Set, n: usize, k: usize) -> bool {
    let parts = slices(s, n, k);
    let disjoint = (0..k).all(|i| (i + 1..k).all(|j| !parts[i].intersects(parts[j])));
    disjoint && family.contains(parts.iter().fold(Set::EMPTY, |a, &p| a.union(p)))
}

fn count(family: &FeasibleFamily) -> usize {
    Set::all(family.n()).filter(|&s| family.contains(s)).count()
}

#[test]
fn single_agent_lift_is_identity() {
    let (_, cover) = zoo(5, 1).remove(3);
    let fam = FeasibleFamily::uniform(5, 2).unwrap();
    let inst = instance(vec![cover.clone()], fam.clone(), Sense::Max);
    let lifted = lift_instance(&inst).unwrap();
    let both = lifted.feasible_family().unwrap();
    for s in Set::all(5) {
        assert_eq!(lifted.f.value(s), cover.value(s));
        assert_eq!(both.contains(s), fam.contains(s));
    }
}

#[test]
fn modular_lift_adds_agent_values() {
    let inst = instance(
        vec![modular(&[1.0, 2.0, 3.0]), modular(&[10.0, 20.0, 30.0])],
        FeasibleFamily::powerset(3).unwrap(),
        Sense::Max,
    );
    let lifted = lift_instance(&inst).unwrap();
    let s = embed(&Allocation::new(vec![set(&[0]), set(&[1])]).unwrap(), 3);
    assert_eq!(lifted.f.value(s), 1.0 + 20.0);
    assert_eq!(lifted.element(4), LiftedElement { agent: 1, item: 1 });
    assert_eq!(LiftedElement { agent: 1, item: 1 }.index(3), 4);
}

#[test]
fn cov_examples() {
    assert_eq!(cov(Set::EMPTY, 2, 2), Set::EMPTY);
    assert_eq!(cov(set(&[0, 2]), 2, 2), set(&[0]));
    assert_eq!(cov(set(&[0, 3]), 2, 2), set(&[0, 1]));
}

#[test]
fn lifted_optimum_matches_maso_on_vertex_cover() {
    let mut r = rng(4);
    for _ in 0..10 {
        let objs = vec![f(random_coverage(&mut r, 3, 4)), f(random_coverage(&mut r, 3, 4))];
        let fam = FeasibleFamily::blocking(3, Graph::complete(3).vertex_cover_blockers()).unwrap();
        let inst = instance(objs, fam, Sense::Min);
        let lifted = lift_instance(&inst).unwrap();
        let (so, _) = brute_force_so(&lifted.f, &lifted.feasible_family().unwrap(), Sense::Min).unwrap();
        assert_eq!(so, brute_force_maso(&inst).unwrap().0);
        assert_eq!(so, naive_opt(&inst));
    }
}

#[test]
fn lifted_membership_follows_the_cardinality_test() {
    let fams = [
        FeasibleFamily::blocking(4, Graph::cycle(4).vertex_cover_blockers()).unwrap(),
        FeasibleFamily::graph(Graph::complete(3), GraphFamily::SpanningTrees).unwrap(),
        FeasibleFamily::uniform(4, 2).unwrap(),
    ];
    for fam in &fams {
        let n = fam.n();
        for k in 1..=3 {
            let lifted = lift_family(fam, k).unwrap();
            for s in Set::all(n * k) {
                assert_eq!(lifted.contains(s), naive_lifted_member(fam, s, n, k));
            }
        }
    }
}

#[test]
fn lifted_functions_keep_submodularity_and_monotonicity() {
    let mut r = rng(9);
    for trial in 0..20 {
        let (n, k) = [(7, 2), (4, 3), (3, 4), (14, 1)][trial % 4];
        let objs: Vec<ValueOracle> = (0..k).map(|_| f(random_coverage(&mut r, n, 5))).collect();
        let inst = instance(objs, FeasibleFamily::powerset(n).unwrap(), Sense::Max);
        let lifted = lift_instance(&inst).unwrap();
        assert!(check_submodular(&lifted.f, CheckMode::exhaustive()).unwrap().holds);
        assert!(check_monotone(&lifted.f, CheckMode::exhaustive()).unwrap().holds);
    }
    let cut = f(FunctionSpec::GraphCut { n: 4, edges: vec![(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0)] });
    let inst = instance(vec![cut.clone(), cut], FeasibleFamily::powerset(4).unwrap(), Sense::Max);
    let lifted = lift_instance(&inst).unwrap();
    assert!(check_submodular(&lifted.f, CheckMode::exhaustive()).unwrap().holds);
    assert!(!check_monotone(&lifted.f, CheckMode::exhaustive()).unwrap().holds);
}

#[test]
fn lifted_matroids_stay_matroids() {
    let ms = [
        Matroid::Graphic { graph: Graph::complete(3) },
        Matroid::Uniform { n: 4, rank: 2 },
        Matroid::Partition { part_of: vec![0, 0, 1, 2], caps: vec![1, 1, 1] },
        Matroid::Free { n: 3 },
    ];
    for m in ms {
        let fam = FeasibleFamily::matroid(m.clone()).unwrap();
        for k in 1..=3 {
            if fam.n() * k > 12 {
                continue;
            }
            let lifted = lift_family(&fam, k).unwrap();
            assert!(check_matroid(&lifted).unwrap().holds, "{m:?}, k = {k}");
            assert_eq!(p_system_ratio(&lifted).unwrap().value(), 1.0);
        }
    }
}

#[test]
fn lifted_bases_are_maximal_lifted_independents() {
    let m = Matroid::Graphic { graph: Graph::complete(3) };
    let bases = lift_family(&FeasibleFamily::matroid_bases(m.clone()).unwrap(), 2).unwrap();
    let indep = lift_family(&FeasibleFamily::matroid(m).unwrap(), 2).unwrap();
    for s in Set::all(6) {
        let is_max = indep.contains(s) && (0..6).all(|e| s.contains(e) || !indep.contains(s.with(e)));
        assert_eq!(bases.contains(s), is_max, "{s}");
    }
}

#[test]
fn lifted_p_system_ratio_does_not_grow() {
    let fams = [
        FeasibleFamily::graph(Graph::path(4), GraphFamily::Matchings).unwrap(),
        FeasibleFamily::graph(Graph::cycle(4), GraphFamily::Matchings).unwrap(),
        FeasibleFamily::intersection(vec![
            FeasibleFamily::matroid(Matroid::Partition { part_of: vec![0, 0, 1, 1], caps: vec![1, 1] }).unwrap(),
            FeasibleFamily::matroid(Matroid::Partition { part_of: vec![0, 1, 0, 1], caps: vec![1, 1] }).unwrap(),
        ])
        .unwrap(),
    ];
    for fam in &fams {
        let p = p_system_ratio(fam).unwrap().value();
        for k in 2..=3 {
            let lp = p_system_ratio(&lift_family(fam, k).unwrap()).unwrap().value();
            assert!(lp <= p + 1e-12, "lifted {lp} > {p}");
        }
    }
}

#[test]
fn lift_of_intersection_is_intersection_of_lifts() {
    let a = FeasibleFamily::matroid(Matroid::Partition { part_of: vec![0, 0, 1, 1], caps: vec![1, 1] }).unwrap();
    let b = FeasibleFamily::matroid(Matroid::Uniform { n: 4, rank: 1 }).unwrap();
    let both = lift_family(&FeasibleFamily::intersection(vec![a.clone(), b.clone()]).unwrap(), 2).unwrap();
    let (la, lb) = (lift_family(&a, 2).unwrap(), lift_family(&b, 2).unwrap());
    for s in Set::all(8) {
        assert_eq!(both.contains(s), la.contains(s) && lb.contains(s));
    }
}

#[test]
fn agent_families_lift_to_matroids_and_rings() {
    let fams = vec![
        FeasibleFamily::uniform(3, 1).unwrap(),
        FeasibleFamily::matroid(Matroid::Partition { part_of: vec![0, 0, 1], caps: vec![1, 1] }).unwrap(),
    ];
    let h = lift_agent_families(&fams).unwrap();
    assert!(check_matroid(&h).unwrap().holds);
    let chain = |n: usize| (0..=n).map(Set::full).collect::<Vec<_>>();
    let rings = vec![
        FeasibleFamily::ring(3, chain(3)).unwrap(),
        FeasibleFamily::ring(3, vec![Set::EMPTY, set(&[1]), set(&[1, 2])]).unwrap(),
    ];
    let h = lift_agent_families(&rings).unwrap();
    assert_eq!(h.kind(), FamilyKind::Ring);
    assert!(check_ring(&h).unwrap().holds);
}

#[test]
fn basis_correspondence_examples() {
    let u1 = FeasibleFamily::uniform(2, 1).unwrap();
    let lifted = lift_family(&u1, 2).unwrap();
    assert!(check_bases_correspondence(&u1, &lifted, Set::EMPTY).unwrap().holds);
    assert_eq!(basis_sizes(&lifted, set(&[0, 2])).unwrap(), Some((1, 1)));
    assert_eq!(basis_sizes(&u1, set(&[0])).unwrap(), Some((1, 1)));
    let g = FeasibleFamily::matroid(Matroid::Graphic { graph: Graph::complete(3) }).unwrap();
    let lg = lift_family(&g, 2).unwrap();
    let triangle = set(&[0, 4, 2]);
    assert_eq!(basis_sizes(&lg, triangle).unwrap(), Some((2, 2)));
    assert!(check_bases_correspondence(&g, &lg, triangle).unwrap().holds);
}

#[test]
fn basis_sizes_correspond_on_every_lifted_set() {
    let fams = [
        FeasibleFamily::graph(Graph::path(4), GraphFamily::Matchings).unwrap(),
        FeasibleFamily::matroid(Matroid::Graphic { graph: Graph::complete(3) }).unwrap(),
    ];
    for fam in &fams {
        let lifted = lift_family(fam, 2).unwrap();
        for s in Set::all(lifted.n()) {
            assert!(check_bases_correspondence(fam, &lifted, s).unwrap().holds, "{s}");
        }
    }
}

#[test]
fn lifted_graph_shapes() {
    let k3 = Graph::complete(3);
    let one = lift_graph(&k3, 1).unwrap();
    assert_eq!(one.graph, k3);
    assert_eq!(one.pi, vec![0, 1, 2]);
    let two = lift_graph(&k3, 2).unwrap();
    assert_eq!((two.graph.nodes, two.graph.edge_count()), (3, 6));
    let p3 = Graph::path(3);
    let lifted = lift_graph(&p3, 2).unwrap();
    let trees = FeasibleFamily::graph(lifted.graph, GraphFamily::SpanningTrees).unwrap();
    assert_eq!(count(&trees), 4);
}

#[test]
fn lifted_graph_families_count_like_the_multigraph() {
    let mut r = rng(21);
    for trial in 0..12 {
        let nodes = 3 + trial % 3;
        let g = random_graph(&mut r, nodes, 0.3);
        if g.edge_count() > 7 {
            continue;
        }
        let k = 2;
        let lg = lift_graph(&g, k).unwrap();
        let families = [GraphFamily::Forests, GraphFamily::Matchings, GraphFamily::StPaths { s: 0, t: nodes - 1 }];
        for fam in families {
            let base = FeasibleFamily::graph(g.clone(), fam).unwrap();
            let via_lift = count(&lift_family(&base, k).unwrap());
            let direct = count(&FeasibleFamily::graph(lg.graph.clone(), fam).unwrap());
            assert_eq!(via_lift, direct, "{fam:?} on {g:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn embed_unlift_round_trip(owners in prop::collection::vec(0usize..4, 6)) {
        let (n, k) = (6, 3);
        let mut parts = vec![Set::EMPTY; k];
        for (v, &o) in owners.iter().enumerate() {
            if o < k {
                parts[o].insert(v);
            }
        }
        let alloc = Allocation::new(parts).unwrap();
        let s = embed(&alloc, n);
        prop_assert_eq!(unlift(s, n, k).unwrap(), alloc.clone());
        prop_assert_eq!(cov(s, n, k), alloc.union());
        prop_assert_eq!(s.len(), alloc.union().len());
    }

    #[test]
    fn lifted_multilinear_is_additive(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let (n, k) = (5, 2);
        let objs: Vec<ValueOracle> = (0..k).map(|_| f(random_coverage(&mut r, n, 4))).collect();
        let inst = instance(objs.clone(), FeasibleFamily::powerset(n).unwrap(), Sense::Max);
        let lifted = lift_instance(&inst).unwrap();
        let zbar: Vec<f64> = (0..n * k).map(|_| r.gen_range(0..=10) as f64 / 10.0).collect();
        let whole = multilinear_eval_exact(&lifted.f, &FractionalPoint::new(zbar.clone()).unwrap()).unwrap();
        let parts: f64 = (0..k)
            .map(|i| multilinear_eval_exact(&objs[i], &FractionalPoint::new(zbar[i * n..(i + 1) * n].to_vec()).unwrap()).unwrap())
            .sum();
        prop_assert!((whole - parts).abs() < 1e-9);
    }
}
