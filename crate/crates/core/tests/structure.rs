mod common;

use common::*;
use maso_core::*;
use proptest::prelude::*;

fn set(e: &[usize]) -> Set {
    Set::from_elements(e.iter().copied())
}

/// Minimal transversals of `members` found by scanning every subset.
fn naive_blocker(members: &[Set], n: usize) -> Vec<Set> {
    let hits = |b: Set| members.iter().all(|m| m.intersects(b));
    let mut out: Vec<Set> = Set::all(n)
        .filter(|&b| hits(b) && b.iter().all(|v| !hits(b.without(v))))
        .collect();
    out.sort_by_key(|s| (s.len(), s.bits()));
    out
}

#[test]
fn marginals() {
    let card = f(FunctionSpec::cardinality(2));
    let cap = f(FunctionSpec::capped_cardinality(2, 1.0));
    let cover = f(FunctionSpec::Coverage {
        covers: vec![vec![0, 1], vec![1]],
        universe_weights: vec![1.0, 1.0],
    });
    assert_eq!(eval_marginal(&card, set(&[0]), 1).unwrap(), 1.0);
    assert_eq!(eval_marginal(&cap, set(&[0]), 1).unwrap(), 0.0);
    assert_eq!(eval_marginal(&cover, set(&[0]), 1).unwrap(), 0.0);
}

#[test]
fn standard_values() {
    assert_eq!(f(FunctionSpec::Modular { weights: vec![2.0, 3.0] }).value(set(&[0, 1])), 5.0);
    assert_eq!(f(FunctionSpec::capped_cardinality(2, 1.0)).value(set(&[0, 1])), 1.0);
    let cover = f(FunctionSpec::Coverage {
        covers: vec![vec![0], vec![0, 1]],
        universe_weights: vec![1.0, 1.0],
    });
    assert_eq!(cover.value(set(&[0, 1])), 2.0);
}

#[test]
fn every_zoo_function_is_submodular_and_monotone_when_claimed() {
    for n in [3, 6, 10] {
        for (name, f) in zoo(n, 17 + n as u64) {
            assert!(check_submodular(&f, CheckMode::exhaustive()).unwrap().holds, "{name}");
            if f.claims().monotone {
                assert!(check_monotone(&f, CheckMode::exhaustive()).unwrap().holds, "{name}");
            }
        }
    }
}

#[test]
fn square_of_cardinality_is_caught() {
    let sq = ValueOracle::from_fn(2, |s: Set| (s.len() * s.len()) as f64, Claims::NONE);
    let v = check_submodular(&sq, CheckMode::exhaustive()).unwrap();
    assert!(!v.holds);
    assert_eq!(v.witness, Some((set(&[0]), set(&[1]))));
}

#[test]
fn cut_on_one_edge_is_not_monotone() {
    let cut = f(FunctionSpec::GraphCut { n: 2, edges: vec![(0, 1, 1.0)] });
    let v = check_monotone(&cut, CheckMode::exhaustive()).unwrap();
    assert!(!v.holds);
    let (a, b) = v.witness.unwrap();
    assert!(a.is_subset(b) && cut.value(a) > cut.value(b));
}

#[test]
fn sampled_mode_finds_supermodularity() {
    let sq = ValueOracle::from_fn(5, |s: Set| (s.len() * s.len()) as f64, Claims::NONE);
    assert!(!check_submodular(&sq, CheckMode::Sampled { seed: 3, trials: 200 }).unwrap().holds);
}

#[test]
fn memoization_is_transparent() {
    for (name, f) in zoo(7, 2) {
        for s in Set::all(7) {
            let cold = f.value_uncached(s);
            let warm1 = f.value(s);
            let warm2 = f.value(s);
            assert_eq!(cold.to_bits(), warm1.to_bits(), "{name}");
            assert_eq!(warm1.to_bits(), warm2.to_bits(), "{name}");
        }
    }
}

#[test]
fn worked_blockers() {
    assert_eq!(
        compute_blocker(&FeasibleFamily::trivial(3).unwrap()).unwrap(),
        vec![set(&[0]), set(&[1]), set(&[2])]
    );
    let k3 = Graph::complete(3);
    let covers = FeasibleFamily::from_fn(3, FamilyKind::Custom, move |s: Set| k3.touched(s).len() == 3).unwrap();
    let mut b = compute_blocker(&covers).unwrap();
    b.sort_by_key(|s| s.bits());
    assert_eq!(b, vec![set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]);
    let trees = FeasibleFamily::graph(Graph::path(3), GraphFamily::SpanningTrees).unwrap();
    let closure = trees.upward_closure().unwrap();
    assert_eq!(closure.blocker().unwrap(), &[set(&[0]), set(&[1])]);
}

#[test]
fn peel_examples() {
    let vc = FeasibleFamily::blocking(3, Graph::complete(3).vertex_cover_blockers()).unwrap();
    assert_eq!(peel_to_minimal(&vc, Set::full(3)).unwrap(), set(&[0, 1]));
    assert_eq!(peel_to_minimal(&vc, set(&[0, 2])).unwrap(), set(&[0, 2]));
    let triv = FeasibleFamily::trivial(3).unwrap();
    assert_eq!(peel_to_minimal(&triv, Set::full(3)).unwrap(), Set::full(3));
}

#[test]
fn matroid_checks() {
    assert!(check_matroid(&FeasibleFamily::uniform(4, 2).unwrap()).unwrap().holds);
    let chain = FeasibleFamily::explicit(2, vec![Set::EMPTY, set(&[0]), set(&[0, 1])]).unwrap();
    let v = check_matroid(&chain).unwrap();
    assert!(!v.holds);
    let (a, b) = v.witness.unwrap();
    assert!(chain.contains(a) && !chain.contains(b) && b.is_subset(a));
    assert!(check_matroid(&FeasibleFamily::graph(Graph::complete(4), GraphFamily::Forests).unwrap()).unwrap().holds);
    assert!(!check_matroid(&FeasibleFamily::graph(Graph::path(4), GraphFamily::Matchings).unwrap()).unwrap().holds);
}

#[test]
fn p_system_ratios() {
    let m = FeasibleFamily::graph(Graph::complete(4), GraphFamily::Forests).unwrap();
    assert_eq!(p_system_ratio(&m).unwrap().value(), 1.0);
    let matchings = FeasibleFamily::graph(Graph::path(4), GraphFamily::Matchings).unwrap();
    assert_eq!(p_system_ratio(&matchings).unwrap().value(), 2.0);
    let a = FeasibleFamily::matroid(Matroid::Partition { part_of: vec![0, 0, 1, 1], caps: vec![1, 1] }).unwrap();
    let b = FeasibleFamily::matroid(Matroid::Partition { part_of: vec![0, 1, 0, 1], caps: vec![1, 1] }).unwrap();
    let both = FeasibleFamily::intersection(vec![a, b]).unwrap();
    assert!(p_system_ratio(&both).unwrap().value() <= 2.0);
}

#[test]
fn ring_and_crossing_checks() {
    let chain = vec![Set::EMPTY, set(&[0]), set(&[0, 1]), Set::full(3)];
    let ring = FeasibleFamily::ring(3, chain).unwrap();
    assert!(check_ring(&ring).unwrap().holds);
    let not_ring = FeasibleFamily::explicit(3, vec![set(&[0]), set(&[1])]).unwrap();
    assert!(!check_ring(&not_ring).unwrap().holds);
    // {0},{1} do not cross when their union is V.
    let pair = FeasibleFamily::explicit(2, vec![set(&[0]), set(&[1])]).unwrap();
    assert!(check_crossing(&pair).unwrap().holds);
}

#[test]
fn degenerate_families_error() {
    let empty = FeasibleFamily::explicit(3, vec![]).unwrap();
    assert!(compute_blocker(&empty).is_err());
    let vc = FeasibleFamily::blocking(3, Graph::complete(3).vertex_cover_blockers()).unwrap();
    assert!(peel_to_minimal(&vc, set(&[0])).is_err());
}

fn upward_family(n: usize) -> impl Strategy<Value = Vec<Set>> {
    prop::collection::vec(1u64..(1u64 << n), 1..5).prop_map(|v| v.into_iter().map(Set::from_bits).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blocker_is_minimal_transversal_antichain(gens in upward_family(7)) {
        let n = 7;
        let family = FeasibleFamily::from_fn(n, FamilyKind::Custom, {
            let gens = gens.clone();
            move |s: Set| gens.iter().any(|g| g.is_subset(s))
        }).unwrap();
        let b = compute_blocker(&family).unwrap();
        let minimal = minimal_members(&family).unwrap();
        prop_assert_eq!(&b, &naive_blocker(&minimal, n));
        for (i, x) in b.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prop_assert!(i == j || !x.is_subset(*y));
            }
        }
        let up_b = FeasibleFamily::from_fn(n, FamilyKind::Custom, {
            let b = b.clone();
            move |s: Set| b.iter().any(|x| x.is_subset(s))
        }).unwrap();
        let mut back = compute_blocker(&up_b).unwrap();
        let mut expect = minimal.clone();
        back.sort_by_key(|s| s.bits());
        expect.sort_by_key(|s| s.bits());
        prop_assert_eq!(back, expect);
    }

    #[test]
    fn peel_returns_minimal_member_inside_input(gens in upward_family(7), extra in 0u64..128) {
        let n = 7;
        let family = FeasibleFamily::from_fn(n, FamilyKind::Custom, {
            let gens = gens.clone();
            move |s: Set| gens.iter().any(|g| g.is_subset(s))
        }).unwrap();
        let start = gens[0].union(Set::from_bits(extra));
        let out = peel_to_minimal(&family, start).unwrap();
        prop_assert!(family.contains(out));
        prop_assert!(out.is_subset(start));
        for v in out.iter() {
            prop_assert!(!family.contains(out.without(v)));
        }
    }

    #[test]
    fn uniform_and_partition_matroids_pass(n in 1usize..7, rank in 0usize..4, parts in 1usize..3) {
        prop_assert!(check_matroid(&FeasibleFamily::uniform(n, rank.min(n)).unwrap()).unwrap().holds);
        let m = Matroid::Partition { part_of: (0..n).map(|v| v % parts).collect(), caps: vec![1; parts] };
        let fam = FeasibleFamily::matroid(m).unwrap();
        prop_assert!(check_matroid(&fam).unwrap().holds);
        prop_assert_eq!(p_system_ratio(&fam).unwrap().value(), 1.0);
    }
}
