#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spanfact::blocks::PositionSystem;
use spanfact::digraph::{
    build_toy, enumerate_with_reference, initial_factorization, CosetDigraph, Digraph2, Factorization,
};
use spanfact::{fixtures, Permutation};

pub struct Case {
    pub name: String,
    pub digraph: Digraph2,
    pub factorizations: Vec<Factorization>,
}

fn case(name: String, digraph: Digraph2, reference: &Factorization) -> Case {
    let (_, factorizations) = enumerate_with_reference(&digraph, reference, 24).expect("enumerable");
    Case {
        name,
        digraph,
        factorizations,
    }
}

pub fn toy(m: usize) -> Case {
    let (d, base) = build_toy(m).unwrap();
    case(format!("toy:{m}"), d, &base)
}

pub fn coset(name: &str) -> Case {
    let p = match name {
        "a5-ex2" => fixtures::a5_ex2(),
        "a5-ex3" => fixtures::a5_ex3(),
        "morris" => fixtures::morris(),
        _ => panic!("unknown fixture {name}"),
    }
    .unwrap();
    let d = CosetDigraph::build(&p).unwrap().digraph;
    let reference = initial_factorization(&d);
    case(name.to_string(), d, &reference)
}

/// Strongly connected 2-in/2-out digraphs on 3..=8 vertices from pairs of random
/// permutations.
pub fn random_small(seed: u64, count: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(3..=8);
        let mut a: Vec<usize> = (0..n).collect();
        let mut b: Vec<usize> = (0..n).collect();
        a.shuffle(&mut rng);
        b.shuffle(&mut rng);
        let f1 = Permutation::from_images(a).unwrap();
        let f2 = Permutation::from_images(b).unwrap();
        let Ok(d) = Digraph2::from_factors(&f1, &f2) else {
            continue;
        };
        let reference = Factorization { f1, f2, orientation: 0 };
        out.push(case(format!("random#{}(n={n})", out.len()), d, &reference));
    }
    out
}

/// Every digraph of the corpus with at most 8 vertices.
pub fn small_corpus() -> Vec<Case> {
    let mut v = vec![toy(3), toy(4), coset("morris")];
    v.extend(random_small(0x5eed, 24));
    v
}

/// Largest set of pairwise relocatable positive walks closed under removing the
/// last-applied letter, by exhaustive search over reachable sets of image arrays.
pub fn brute_max_tree(f: &Factorization) -> usize {
    let n = f.n();
    let gens = [f.f1.images().to_vec(), f.f2.images().to_vec()];
    let id: Vec<u32> = (0..n as u32).collect();
    let apart = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x != y);
    let mut best = 1;
    let mut seen: HashSet<BTreeSet<Vec<u32>>> = HashSet::new();
    let mut stack = vec![BTreeSet::from([id])];
    while let Some(set) = stack.pop() {
        best = best.max(set.len());
        for w in &set {
            for g in &gens {
                let child: Vec<u32> = w.iter().map(|&v| g[v as usize]).collect();
                if set.iter().all(|o| apart(o, &child)) {
                    let mut next = set.clone();
                    next.insert(child);
                    if seen.insert(next.clone()) {
                        stack.push(next);
                    }
                }
            }
        }
    }
    best
}

/// All block families `{B_j}` with `B_j = {v ∈ P_j : k(v) − j ∈ U}` (over every
/// nonempty `U ⊆ Z_m`) that both factors permute, where `k(v)` is the position of
/// `F1⁻¹(v)`.
pub fn brute_invariant_families(f: &Factorization, ps: &PositionSystem) -> BTreeSet<Vec<Vec<usize>>> {
    let (n, m) = (f.n(), ps.m);
    let f1_inv = f.f1.inverse();
    let class: Vec<usize> = (0..n)
        .map(|v| (ps.position(f1_inv.apply(v)) + m - ps.position(v)) % m)
        .collect();
    let mut out = BTreeSet::new();
    for u in 1u64..1 << m {
        let family: Vec<Vec<usize>> = (0..m)
            .map(|j| {
                (0..n)
                    .filter(|&v| ps.position(v) == j && u >> class[v] & 1 == 1)
                    .collect()
            })
            .collect();
        let sorted: BTreeSet<Vec<usize>> = family.iter().cloned().collect();
        let preserved = [&f.f1, &f.f2].iter().all(|g| {
            family.iter().all(|b| {
                let mut img: Vec<usize> = b.iter().map(|&v| g.apply(v)).collect();
                img.sort_unstable();
                sorted.contains(&img)
            })
        });
        if preserved {
            out.insert(family);
        }
    }
    out
}

pub fn library_invariant_families(refinements: &[spanfact::blocks::Refinement]) -> BTreeSet<Vec<Vec<usize>>> {
    refinements
        .iter()
        .filter(|r| r.invariant)
        .map(|r| r.blocks.clone())
        .collect()
}
