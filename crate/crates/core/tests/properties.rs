mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, RngSeed, TestRng, TestRunner};
use spanfact::blocks::{
    block_construction, difference_class_orbits, invariant_refinements, position_system, relative_block_permutation,
    swap_relabel, BlockSystem,
};
use spanfact::digraph::{alternating_cycles, build_toy, enumerate_with_reference, CosetDigraph, Digraph2};
use spanfact::group::Normalization;
use spanfact::spanning::{
    equivalent, relocatable, search_sharply_transitive, splice_generators, verify_sharply_transitive, SharpSearch,
    SharpSearchBudget, WordSet,
};
use spanfact::{fixtures, Factorization, Permutation, Symbol, Word};

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            ..Config::default()
        },
        TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]),
    )
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(
        prop_oneof![
            Just(Symbol::F1),
            Just(Symbol::F2),
            Just(Symbol::F1Inv),
            Just(Symbol::F2Inv)
        ],
        0..max_len,
    )
    .prop_map(|symbols| Word { symbols })
}

fn toy_factorization(m: usize) -> Factorization {
    build_toy(m).unwrap().1
}

proptest! {
    #![proptest_config(Config { cases: 256, rng_algorithm: RngAlgorithm::ChaCha, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..Config::default() })]

    #[test]
    fn compose_is_associative_with_neutral_identity((a, b, c) in (1usize..12).prop_flat_map(|n| (perm(n), perm(n), perm(n)))) {
        let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
        let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let id = Permutation::identity(a.degree());
        prop_assert_eq!(&id.compose(&a).unwrap(), &a);
        prop_assert_eq!(&a.compose(&id).unwrap(), &a);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn inverse_has_same_orbits(p in (1usize..16).prop_flat_map(perm)) {
        let mut a = p.orbits();
        let mut b = p.inverse().orbits();
        for o in a.iter_mut().chain(b.iter_mut()) {
            o.sort_unstable();
        }
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn derangement_iff_no_unit_part(p in (1usize..10).prop_flat_map(perm)) {
        prop_assert_eq!(p.is_derangement(), !p.cycle_type().0.contains(&1));
    }

    #[test]
    fn evaluation_respects_concatenation(u in word(8), v in word(8), m in 3usize..7) {
        let f = toy_factorization(m);
        let lhs = u.concat(&v).evaluate(&f.f1, &f.f2);
        let rhs = u.evaluate(&f.f1, &f.f2).compose(&v.evaluate(&f.f1, &f.f2)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(u.concat(&u.inverse()).evaluate(&f.f1, &f.f2).is_identity());
        prop_assert_eq!(Word::parse_walk(&u.to_walk_string()).unwrap(), u);
    }

    #[test]
    fn relocatable_is_symmetric_and_equivalence_is_an_equivalence(a in word(7), b in word(7), c in word(7), m in 3usize..6) {
        let f = toy_factorization(m);
        prop_assert_eq!(relocatable(&a, &b, &f), relocatable(&b, &a, &f));
        prop_assert!(equivalent(&a, &a, &f));
        prop_assert_eq!(equivalent(&a, &b, &f), equivalent(&b, &a, &f));
        if equivalent(&a, &b, &f) && equivalent(&b, &c, &f) {
            prop_assert!(equivalent(&a, &c, &f));
        }
        if equivalent(&a, &b, &f) {
            prop_assert!(!relocatable(&a, &b, &f));
        }
    }

    #[test]
    fn verifier_readings_agree(words in prop::collection::vec(word(6), 5..7)) {
        // toy:3 has six vertices; the two readings must agree whenever the empty word is present
        let f = toy_factorization(3);
        let mut words = words;
        words[0] = Word::empty();
        let ws = WordSet::new(words, &f);
        let v = verify_sharply_transitive(&ws, &f);
        if ws.len() == f.n() {
            prop_assert_eq!(v.pairwise_relocatable, v.pair_count_exact);
        }
        prop_assert_eq!(v.passes, v.size_ok && v.pairwise_relocatable && v.pair_count_exact);
    }
}

#[test]
fn alternating_cycles_are_independent_of_the_factorization() {
    for case in [common::toy(4), common::coset("morris"), common::coset("a5-ex3")] {
        let reference = alternating_cycles(&case.digraph, &case.factorizations[0]).edge_partition();
        for f in &case.factorizations {
            f.check(&case.digraph).unwrap();
            assert_eq!(
                alternating_cycles(&case.digraph, f).edge_partition(),
                reference,
                "{}",
                case.name
            );
        }
    }
}

#[test]
fn complement_mask_swaps_the_factors() {
    for case in [common::toy(5), common::coset("a5-ex3")] {
        let (alt, facs) = enumerate_with_reference(&case.digraph, &case.factorizations[0], 24).unwrap();
        let full = (1u64 << alt.r()) - 1;
        for f in &facs {
            let c = &facs[(!f.orientation & full) as usize];
            assert_eq!((&c.f1, &c.f2), (&f.f2, &f.f1));
        }
    }
}

#[test]
fn left_multiplication_is_an_automorphism() {
    for p in [fixtures::a5_ex2(), fixtures::a5_ex3(), fixtures::morris()] {
        let cd = CosetDigraph::build(&p.unwrap()).unwrap();
        for g in cd.default_automorphisms() {
            assert!(cd.digraph.is_automorphism(&g));
        }
    }
}

#[test]
fn cosets_partition_the_group() {
    for p in [fixtures::a5_ex2(), fixtures::a5_ex3(), fixtures::morris()] {
        let p = p.unwrap();
        let cs = p.cosets();
        assert_eq!(cs.len() * cs.subgroup().len(), p.group.order());
        let mut all: Vec<usize> = cs.cosets().iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..p.group.order()).collect::<Vec<_>>());
    }
}

#[test]
fn validation_ignores_the_coset_representative() {
    for p in [fixtures::a5_ex2(), fixtures::a5_ex3(), fixtures::morris()] {
        let p = p.unwrap();
        let verdicts = |q: &spanfact::Presentation| q.validate().checks.iter().map(|c| c.holds).collect::<Vec<_>>();
        let base = verdicts(&p);
        for i in 0..p.s.len() {
            for &k in p.subgroup() {
                let mut s = p.s.clone();
                s[i] = p.group.mul(s[i], k);
                assert_eq!(verdicts(&p.with_s(s)), base);
            }
        }
    }
}

#[test]
fn normalization_keeps_the_edge_set() {
    for p in [fixtures::a5_ex2(), fixtures::a5_ex3(), fixtures::morris()] {
        let p = p.unwrap();
        let before = CosetDigraph::build(&p).unwrap().digraph;
        if let Normalization::Swapped { presentation, .. } = p.normalize_degree2().unwrap() {
            let after = CosetDigraph::build(&presentation).unwrap().digraph;
            let sets = |d: &Digraph2| {
                (0..d.n())
                    .map(|v| {
                        let mut o = d.out_neighbors(v);
                        o.sort_unstable();
                        o
                    })
                    .collect::<Vec<_>>()
            };
            assert_eq!(sets(&before), sets(&after));
        }
    }
}

/// Random masks against every block system preserved by both factorizations.
#[test]
fn swap_relabel_keeps_relative_block_permutations() {
    let tested = std::cell::Cell::new(0usize);
    for case in [common::toy(3), common::toy(4), common::toy(5), common::coset("a5-ex3")] {
        let f = &case.factorizations[0];
        let alt = alternating_cycles(&case.digraph, f);
        let full = (1u64 << alt.r()) - 1;
        let mut systems: Vec<BlockSystem> = Vec::new();
        for g in &case.factorizations {
            if let Ok(ps) = position_system(g) {
                systems.push(ps.block_system());
                systems.push(ps.cycle_block_system());
                let pi = difference_class_orbits(g, &ps);
                systems.extend(
                    invariant_refinements(g, &ps, &pi)
                        .iter()
                        .filter_map(|r| r.block_system(g.n())),
                );
            }
        }
        let mut runner = runner(64);
        runner
            .run(&(0..=full), |mask| {
                let h = swap_relabel(f, &alt, mask);
                for bs in &systems {
                    if let (Ok(a), Ok(b)) = (relative_block_permutation(f, bs), relative_block_permutation(&h, bs)) {
                        prop_assert_eq!(a.tau, b.tau);
                        tested.set(tested.get() + 1);
                    }
                }
                Ok(())
            })
            .unwrap();
    }
    assert!(tested.get() > 0);
}

#[test]
fn block_construction_output_is_sharply_transitive() {
    let budget = SharpSearchBudget::default();
    for m in 3..=6 {
        let f = toy_factorization(m);
        let ps = position_system(&f).unwrap();
        let ws = block_construction(&f, &ps.block_system(), 4 * f.n(), &budget).unwrap();
        assert!(verify_sharply_transitive(&ws, &f).passes, "toy:{m}");
    }
}

#[test]
fn splicing_keeps_the_root_image_set() {
    let budget = SharpSearchBudget::default();
    for m in 3..=5 {
        let f = toy_factorization(m);
        let SharpSearch::Found(ws) = search_sharply_transitive(&f, &[], &budget) else {
            panic!("toy:{m}")
        };
        for root in 0..f.n() {
            let ws = ws.clone().with_root(root);
            let spliced = splice_generators(&ws, &f).unwrap();
            let mut a = ws.evaluate_at(root);
            let mut b = spliced.evaluate_at(root);
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b);
        }
    }
}
