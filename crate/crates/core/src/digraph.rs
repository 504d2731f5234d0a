//! 2-regular digraphs, their 1-factorizations, and the alternating-cycle
//! decomposition that parametrizes all of them.

use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, Presentation};
use crate::perm::{CycleType, Permutation};

pub const DEFAULT_CYCLE_CAP: usize = 24;
pub const DEFAULT_AUT_GROUP_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigraphError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("vertex {vertex} has in-degree {in_degree}, expected 2")]
    InDegree { vertex: usize, in_degree: usize },
    #[error("out-neighbor {target} of vertex {vertex} is out of range")]
    OutOfRange { vertex: usize, target: usize },
    #[error("digraph is not strongly connected ({reached} of {n} vertices reachable both ways from 0)")]
    NotStronglyConnected { reached: usize, n: usize },
    #[error("toy family needs m >= 3, got {0}")]
    ToySize(usize),
    #[error("{r} alternating cycles exceed the enumeration cap of {cap}")]
    TooManyCycles { r: usize, cap: usize },
    #[error("not a 1-factorization: {0}")]
    NotAFactorization(String),
    #[error("generator {0} is not an automorphism of the digraph")]
    NotAutomorphism(String),
    #[error("factorization list is not closed under the symmetry group")]
    NotClosed,
}

/// One edge, identified by its tail and which of the two out-slots it occupies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: usize,
    pub slot: u8,
}

impl Edge {
    pub fn id(self) -> usize {
        2 * self.tail + self.slot as usize
    }
}

/// A digraph in which every vertex has exactly two out-edges and two in-edges.
///
/// Out-edges are a multiset: a doubled edge `v → w, v → w` is allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph2 {
    out: Vec<[usize; 2]>,
    in_edges: Vec<[Edge; 2]>,
}

impl Digraph2 {
    /// Validates 2-in-regularity and strong connectivity.
    pub fn new(out: Vec<[usize; 2]>) -> Result<Self, DigraphError> {
        let n = out.len();
        let mut incoming: Vec<Vec<Edge>> = vec![Vec::with_capacity(2); n];
        for (v, pair) in out.iter().enumerate() {
            for (slot, &w) in pair.iter().enumerate() {
                if w >= n {
                    return Err(DigraphError::OutOfRange { vertex: v, target: w });
                }
                incoming[w].push(Edge {
                    tail: v,
                    slot: slot as u8,
                });
            }
        }
        let mut in_edges = Vec::with_capacity(n);
        for (v, list) in incoming.into_iter().enumerate() {
            if list.len() != 2 {
                return Err(DigraphError::InDegree {
                    vertex: v,
                    in_degree: list.len(),
                });
            }
            in_edges.push([list[0], list[1]]);
        }
        let d = Digraph2 { out, in_edges };
        d.check_strongly_connected()?;
        Ok(d)
    }

    /// Union of the edges of two permutations.
    pub fn from_factors(f1: &Permutation, f2: &Permutation) -> Result<Self, DigraphError> {
        if f1.degree() != f2.degree() {
            return Err(DigraphError::NotAFactorization("factors have different degrees".into()));
        }
        Digraph2::new((0..f1.degree()).map(|v| [f1.apply(v), f2.apply(v)]).collect())
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn out_neighbors(&self, v: usize) -> [usize; 2] {
        self.out[v]
    }

    pub fn in_edges(&self, v: usize) -> [Edge; 2] {
        self.in_edges[v]
    }

    pub fn head(&self, e: Edge) -> usize {
        self.out[e.tail][e.slot as usize]
    }

    /// All `2n` edges as `(tail, head)` pairs, in edge-id order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(v, p)| [(v, p[0]), (v, p[1])])
            .collect()
    }

    fn reach(&self, forward: bool) -> Vec<bool> {
        let n = self.n();
        let mut seen = vec![false; n];
        if n == 0 {
            return seen;
        }
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let next: [usize; 2] = if forward {
                self.out[v]
            } else {
                let [a, b] = self.in_edges[v];
                [a.tail, b.tail]
            };
            for w in next {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.check_strongly_connected().is_ok()
    }

    fn check_strongly_connected(&self) -> Result<(), DigraphError> {
        let fwd = self.reach(true);
        let bwd = self.reach(false);
        let reached = fwd.iter().zip(&bwd).filter(|(a, b)| **a && **b).count();
        if reached == self.n() {
            Ok(())
        } else {
            Err(DigraphError::NotStronglyConnected { reached, n: self.n() })
        }
    }

    /// Whether `phi` maps the out-edge multiset of every `v` onto that of `phi(v)`.
    pub fn is_automorphism(&self, phi: &Permutation) -> bool {
        if phi.degree() != self.n() {
            return false;
        }
        (0..self.n()).all(|v| {
            let [a, b] = self.out[v];
            let mut img = [phi.apply(a), phi.apply(b)];
            let mut tgt = self.out[phi.apply(v)];
            img.sort_unstable();
            tgt.sort_unstable();
            img == tgt
        })
    }

    /// Image of the digraph under a relabeling of its vertices.
    pub fn relabel(&self, phi: &Permutation) -> Digraph2 {
        let mut out = vec![[0, 0]; self.n()];
        for v in 0..self.n() {
            let [a, b] = self.out[v];
            out[phi.apply(v)] = [phi.apply(a), phi.apply(b)];
        }
        Digraph2::new(out).expect("relabeling preserves regularity")
    }

    fn sorted_out(&self) -> Vec<[usize; 2]> {
        self.out
            .iter()
            .map(|&[a, b]| if a <= b { [a, b] } else { [b, a] })
            .collect()
    }
}

/// Brute-force isomorphism test over all `n!` relabelings. Intended for tiny digraphs.
pub fn find_isomorphism(a: &Digraph2, b: &Digraph2) -> Option<Permutation> {
    let n = a.n();
    if n != b.n() || n > 10 {
        return None;
    }
    let target = b.sorted_out();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let check = |perm: &[usize]| {
        (0..n).all(|v| {
            let [x, y] = a.out[v];
            let (x, y) = (perm[x], perm[y]);
            let img = if x <= y { [x, y] } else { [y, x] };
            img == target[perm[v]]
        })
    };
    if check(&perm) {
        return Permutation::from_images(perm).ok();
    }
    // Heap's algorithm
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if check(&perm) {
                return Permutation::from_images(perm).ok();
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    None
}

/// A coset digraph together with the presentation that produced it.
#[derive(Clone, Debug)]
pub struct CosetDigraph {
    pub presentation: Presentation,
    pub digraph: Digraph2,
}

impl CosetDigraph {
    /// Vertices are the cosets `gH`; the out-edges of `gH` go to `gsH` and `gtH`.
    pub fn build(p: &Presentation) -> Result<Self, DigraphError> {
        if p.s.len() != 2 {
            return Err(DigraphError::InvalidPresentation(format!(
                "|S| = {}, expected 2",
                p.s.len()
            )));
        }
        let report = p.validate();
        if !report.is_valid() {
            let failed: Vec<String> = report
                .checks
                .iter()
                .filter(|c| !c.holds)
                .map(|c| format!("({}) {} [{}]", c.condition, c.statement, c.detail))
                .collect();
            return Err(DigraphError::InvalidPresentation(failed.join("; ")));
        }
        let cs = p.cosets();
        let g = &p.group;
        let out = (0..cs.len())
            .map(|c| {
                let rep = cs.representative(c);
                [cs.coset_of(g.mul(rep, p.s[0])), cs.coset_of(g.mul(rep, p.s[1]))]
            })
            .collect();
        let digraph = Digraph2::new(out)?;
        Ok(CosetDigraph {
            presentation: p.clone(),
            digraph,
        })
    }

    /// `λ_g : kH ↦ gkH` for the group element with index `g`.
    pub fn left_multiplication(&self, g: usize) -> Permutation {
        let p = &self.presentation;
        let cs = p.cosets();
        let images: Vec<usize> = (0..cs.len())
            .map(|c| cs.coset_of(p.group.mul(g, cs.representative(c))))
            .collect();
        Permutation::from_images(images).expect("left multiplication permutes cosets")
    }

    /// Left multiplications by the generators of `G`.
    pub fn default_automorphisms(&self) -> Vec<Permutation> {
        let g = &self.presentation.group;
        g.generators()
            .iter()
            .map(|x| self.left_multiplication(g.index_of(x).expect("generator is an element")))
            .collect()
    }
}

/// The toy digraph on `{0,1} × Z_m` (vertex `m·i + j`) with its defining factors
/// `F1(i,j) = (i, j+1)` and `F2(i,j) = (1-i, j+1)`.
pub fn build_toy(m: usize) -> Result<(Digraph2, Factorization), DigraphError> {
    if m < 3 {
        return Err(DigraphError::ToySize(m));
    }
    let id = |i: usize, j: usize| m * i + (j % m);
    let mut f1 = Vec::with_capacity(2 * m);
    let mut f2 = Vec::with_capacity(2 * m);
    for i in 0..2 {
        for j in 0..m {
            f1.push(id(i, j + 1));
            f2.push(id(1 - i, j + 1));
        }
    }
    let f1 = Permutation::from_images(f1).expect("toy F1");
    let f2 = Permutation::from_images(f2).expect("toy F2");
    let d = Digraph2::from_factors(&f1, &f2)?;
    Ok((d, Factorization { f1, f2, orientation: 0 }))
}

/// An ordered pair of edge-disjoint 1-factors covering the digraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub f1: Permutation,
    pub f2: Permutation,
    /// Alternating cycles whose default direction was flipped (bit `i` = cycle `i`).
    pub orientation: u64,
}

impl Factorization {
    pub fn n(&self) -> usize {
        self.f1.degree()
    }

    /// `x = F2⁻¹ F1`.
    pub fn x(&self) -> Permutation {
        &self.f2.inverse() * &self.f1
    }

    /// `y = F1 F2⁻¹`.
    pub fn y(&self) -> Permutation {
        &self.f1 * &self.f2.inverse()
    }

    pub fn swapped(&self) -> Factorization {
        Factorization {
            f1: self.f2.clone(),
            f2: self.f1.clone(),
            orientation: self.orientation,
        }
    }

    pub fn cycle_types(&self) -> (CycleType, CycleType) {
        (self.f1.cycle_type(), self.f2.cycle_type())
    }

    /// Checks that `{F1(v), F2(v)}` is the out-edge multiset of every `v`.
    pub fn check(&self, d: &Digraph2) -> Result<(), DigraphError> {
        if self.n() != d.n() || self.f2.degree() != d.n() {
            return Err(DigraphError::NotAFactorization("degree mismatch".into()));
        }
        for v in 0..d.n() {
            let mut got = [self.f1.apply(v), self.f2.apply(v)];
            let mut want = d.out_neighbors(v);
            got.sort_unstable();
            want.sort_unstable();
            if got != want {
                return Err(DigraphError::NotAFactorization(format!(
                    "vertex {v}: factors give {got:?}, digraph has {want:?}"
                )));
            }
        }
        Ok(())
    }

    /// Slot of the `F1` edge at each vertex (slot 0 when the two out-edges coincide).
    fn f1_slots(&self, d: &Digraph2) -> Vec<u8> {
        (0..d.n())
            .map(|v| {
                if d.out_neighbors(v)[0] == self.f1.apply(v) {
                    0
                } else {
                    1
                }
            })
            .collect()
    }
}

/// Perfect matching of the out/in incidence graph (Kuhn's augmenting paths); the
/// matched edges form `F1` and the rest `F2`.
pub fn initial_factorization(d: &Digraph2) -> Factorization {
    let n = d.n();
    let mut match_of_head: Vec<Option<Edge>> = vec![None; n];
    fn augment(d: &Digraph2, v: usize, seen: &mut [bool], match_of_head: &mut [Option<Edge>]) -> bool {
        for slot in 0..2u8 {
            let w = d.out_neighbors(v)[slot as usize];
            if seen[w] {
                continue;
            }
            seen[w] = true;
            let free = match match_of_head[w] {
                None => true,
                Some(e) => augment(d, e.tail, seen, match_of_head),
            };
            if free {
                match_of_head[w] = Some(Edge { tail: v, slot });
                return true;
            }
        }
        false
    }
    for v in 0..n {
        let mut seen = vec![false; n];
        let ok = augment(d, v, &mut seen, &mut match_of_head);
        assert!(ok, "2-regular digraphs always have a perfect matching");
    }
    let mut slot = vec![0u8; n];
    for e in match_of_head.into_iter().flatten() {
        slot[e.tail] = e.slot;
    }
    let f1: Vec<usize> = (0..n).map(|v| d.out_neighbors(v)[slot[v] as usize]).collect();
    let f2: Vec<usize> = (0..n).map(|v| d.out_neighbors(v)[1 - slot[v] as usize]).collect();
    Factorization {
        f1: Permutation::from_images(f1).expect("matching gives a bijection"),
        f2: Permutation::from_images(f2).expect("complement of a 1-factor is a 1-factor"),
        orientation: 0,
    }
}

/// The partition of the `2n` edges into alternating cycles, with a reference
/// orientation taken from one factorization.
#[derive(Clone, Debug)]
pub struct AltCycleDecomposition {
    /// Each cycle lists its edges in walk order, starting from its smallest edge id.
    pub cycles: Vec<Vec<Edge>>,
    /// Cycle id of each edge, indexed by [`Edge::id`].
    pub cycle_of_edge: Vec<usize>,
    reference: Vec<u8>,
    digraph: Digraph2,
}

impl AltCycleDecomposition {
    pub fn r(&self) -> usize {
        self.cycles.len()
    }

    pub fn digraph(&self) -> &Digraph2 {
        &self.digraph
    }

    /// Cycle through the out-edges of `v`.
    pub fn out_cycle(&self, v: usize) -> usize {
        self.cycle_of_edge[2 * v]
    }

    /// Cycle through the in-edges of `v`.
    pub fn in_cycle(&self, v: usize) -> usize {
        self.cycle_of_edge[self.digraph.in_edges(v)[0].id()]
    }

    /// Edge sets of the cycles, each sorted by id. Independent of the reference
    /// factorization.
    pub fn edge_partition(&self) -> Vec<Vec<usize>> {
        let mut parts: Vec<Vec<usize>> = self
            .cycles
            .iter()
            .map(|c| {
                let mut ids: Vec<usize> = c.iter().map(|e| e.id()).collect();
                ids.sort_unstable();
                ids
            })
            .collect();
        parts.sort();
        parts
    }

    fn full_mask(&self) -> u64 {
        if self.r() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.r()) - 1
        }
    }

    /// The factorization obtained by flipping the reference direction on every cycle
    /// whose bit is set.
    pub fn factorization(&self, bitmask: u64) -> Factorization {
        let d = &self.digraph;
        let n = d.n();
        let mut f1 = Vec::with_capacity(n);
        let mut f2 = Vec::with_capacity(n);
        for v in 0..n {
            let flip = (bitmask >> self.out_cycle(v)) & 1 == 1;
            let slot = self.reference[v] ^ flip as u8;
            let [a, b] = d.out_neighbors(v);
            let (x, y) = if slot == 0 { (a, b) } else { (b, a) };
            f1.push(x);
            f2.push(y);
        }
        Factorization {
            f1: Permutation::from_images(f1).expect("alternating-cycle flips keep F1 bijective"),
            f2: Permutation::from_images(f2).expect("alternating-cycle flips keep F2 bijective"),
            orientation: bitmask & self.full_mask(),
        }
    }

    /// The orientation bitmask whose factorization has this `F1`, if any.
    ///
    /// Cycles on which both directions give the same permutations (doubled edges) get
    /// bit 0.
    pub fn bitmask_of(&self, f1: &Permutation) -> Option<u64> {
        let d = &self.digraph;
        let mut mask = 0u64;
        let mut decided = vec![false; self.r()];
        for v in 0..d.n() {
            let c = self.out_cycle(v);
            let [a, b] = d.out_neighbors(v);
            if decided[c] || a == b {
                continue;
            }
            decided[c] = true;
            let reference_target = if self.reference[v] == 0 { a } else { b };
            if f1.apply(v) != reference_target {
                mask |= 1 << c;
            }
        }
        (self.factorization(mask).f1 == *f1).then_some(mask)
    }
}

/// Walks the alternating cycles: two edges sharing a tail, then the other edge into
/// the shared head, and so on. The reference orientation is the one of `f`.
pub fn alternating_cycles(d: &Digraph2, f: &Factorization) -> AltCycleDecomposition {
    let n = d.n();
    let mut cycle_of_edge = vec![usize::MAX; 2 * n];
    let mut cycles = Vec::new();
    for start in 0..2 * n {
        if cycle_of_edge[start] != usize::MAX {
            continue;
        }
        let cid = cycles.len();
        let mut walk = Vec::new();
        let mut e = Edge {
            tail: start / 2,
            slot: (start % 2) as u8,
        };
        while cycle_of_edge[e.id()] == usize::MAX {
            cycle_of_edge[e.id()] = cid;
            walk.push(e);
            let sibling = Edge {
                tail: e.tail,
                slot: 1 - e.slot,
            };
            if cycle_of_edge[sibling.id()] == usize::MAX {
                cycle_of_edge[sibling.id()] = cid;
                walk.push(sibling);
            }
            let head = d.head(sibling);
            let [p, q] = d.in_edges(head);
            e = if p == sibling { q } else { p };
        }
        cycles.push(walk);
    }
    AltCycleDecomposition {
        cycles,
        cycle_of_edge,
        reference: f.f1_slots(d),
        digraph: d.clone(),
    }
}

/// All `2^r` factorizations in ascending bitmask order, bitmask 0 being the
/// initial factorization.
pub fn enumerate_factorizations(
    d: &Digraph2,
    cap: usize,
) -> Result<(AltCycleDecomposition, Vec<Factorization>), DigraphError> {
    enumerate_with_reference(d, &initial_factorization(d), cap)
}

/// As [`enumerate_factorizations`], with bitmask 0 being `reference`.
pub fn enumerate_with_reference(
    d: &Digraph2,
    reference: &Factorization,
    cap: usize,
) -> Result<(AltCycleDecomposition, Vec<Factorization>), DigraphError> {
    reference.check(d)?;
    let alt = alternating_cycles(d, reference);
    let r = alt.r();
    if r > cap || r >= 64 {
        return Err(DigraphError::TooManyCycles { r, cap });
    }
    let facs = (0..1u64 << r).map(|b| alt.factorization(b)).collect();
    Ok((alt, facs))
}

/// One orbit of factorizations under the symmetry group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationClass {
    pub id: usize,
    /// Smallest orientation bitmask in the orbit.
    pub representative: u64,
    pub members: Vec<u64>,
    pub f1_type: CycleType,
    pub f2_type: CycleType,
}

impl FactorizationClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Orbits of `⟨automorphisms⟩` acting by `φ·(F1,F2) = (φF1φ⁻¹, φF2φ⁻¹)`, optionally
/// together with the swap `(F1,F2) ↦ (F2,F1)`.
pub fn classify_factorizations(
    alt: &AltCycleDecomposition,
    facs: &[Factorization],
    automorphisms: &[Permutation],
    allow_swap: bool,
) -> Result<Vec<FactorizationClass>, DigraphError> {
    let d = alt.digraph();
    for phi in automorphisms {
        if !d.is_automorphism(phi) {
            return Err(DigraphError::NotAutomorphism(phi.to_cycle_string()));
        }
    }
    let group = FiniteGroup::generate_capped(d.n(), automorphisms, DEFAULT_AUT_GROUP_CAP)?;
    let by_mask: HashMap<u64, usize> = facs.iter().enumerate().map(|(i, f)| (f.orientation, i)).collect();
    let mut class_of = vec![usize::MAX; facs.len()];
    let mut classes = Vec::new();
    let mut order: Vec<usize> = (0..facs.len()).collect();
    order.sort_by_key(|&i| facs[i].orientation);
    for &start in &order {
        if class_of[start] != usize::MAX {
            continue;
        }
        let f = &facs[start];
        let mut members = Vec::new();
        for phi in group.elements() {
            let g1 = phi.conjugate(&f.f1);
            let mut images = vec![g1];
            if allow_swap {
                images.push(phi.conjugate(&f.f2));
            }
            for img in images {
                let mask = alt.bitmask_of(&img).ok_or(DigraphError::NotClosed)?;
                let idx = *by_mask.get(&mask).ok_or(DigraphError::NotClosed)?;
                if class_of[idx] == usize::MAX {
                    class_of[idx] = classes.len();
                    members.push(mask);
                }
            }
        }
        members.sort_unstable();
        let rep = &facs[by_mask[&members[0]]];
        let (f1_type, f2_type) = rep.cycle_types();
        classes.push(FactorizationClass {
            id: classes.len(),
            representative: members[0],
            members,
            f1_type,
            f2_type,
        });
    }
    Ok(classes)
}

/// Number of factorizations per `(type(F1), type(F2))` pair.
pub fn cycle_type_families(facs: &[Factorization]) -> BTreeMap<(CycleType, CycleType), Vec<u64>> {
    let mut out: BTreeMap<(CycleType, CycleType), Vec<u64>> = BTreeMap::new();
    for f in facs {
        out.entry(f.cycle_types()).or_default().push(f.orientation);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn double_edge_pair() -> Digraph2 {
        Digraph2::new(vec![[1, 1], [0, 0]]).unwrap()
    }

    #[test]
    fn toy3_factors() {
        let (d, f) = build_toy(3).unwrap();
        assert_eq!(d.n(), 6);
        assert_eq!(f.f1.images(), &[1, 2, 0, 4, 5, 3]);
        assert_eq!(f.f2.images(), &[4, 5, 3, 1, 2, 0]);
        assert_eq!(f.x().images(), &[3, 4, 5, 0, 1, 2]);
        for m in 3..8 {
            assert_eq!(build_toy(m).unwrap().0.n(), 2 * m);
        }
        assert_eq!(build_toy(2).unwrap_err(), DigraphError::ToySize(2));
    }

    #[test]
    fn rejects_bad_degree_and_disconnected() {
        assert!(matches!(
            Digraph2::new(vec![[1, 1], [1, 0]]),
            Err(DigraphError::InDegree { .. })
        ));
        let two_loops = Digraph2::new(vec![[0, 0], [1, 1]]);
        assert!(matches!(two_loops, Err(DigraphError::NotStronglyConnected { .. })));
    }

    #[test]
    fn matching_gives_valid_factorization() {
        let (d, _) = build_toy(3).unwrap();
        initial_factorization(&d).check(&d).unwrap();
        let pair = double_edge_pair();
        let f = initial_factorization(&pair);
        assert_eq!(f.f1.images(), &[1, 0]);
        assert_eq!(f.f2.images(), &[1, 0]);
        for pres in [fixtures::a5_ex2().unwrap(), fixtures::a5_ex3().unwrap()] {
            let cd = CosetDigraph::build(&pres).unwrap();
            initial_factorization(&cd.digraph).check(&cd.digraph).unwrap();
        }
    }

    #[test]
    fn toy_alternating_cycles() {
        let (d, f) = build_toy(3).unwrap();
        let alt = alternating_cycles(&d, &f);
        assert_eq!(alt.r(), 3);
        assert!(alt.cycles.iter().all(|c| c.len() == 4));
        // the cycle through the out-edges of 0 also holds the out-edges of 3 = x(0)
        assert_eq!(alt.out_cycle(0), alt.out_cycle(3));
        let pair = double_edge_pair();
        let alt = alternating_cycles(&pair, &initial_factorization(&pair));
        // doubled edges close up immediately: one 2-edge cycle per vertex
        assert_eq!(alt.r(), 2);
        assert!(alt.cycles.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn enumeration_counts() {
        let (d, _) = build_toy(3).unwrap();
        let (alt, facs) = enumerate_factorizations(&d, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(facs.len(), 8);
        assert_eq!(facs[0], initial_factorization(&d));
        let full = (1u64 << alt.r()) - 1;
        for f in &facs {
            f.check(&d).unwrap();
            let c = &facs[(full ^ f.orientation) as usize];
            assert_eq!((c.f1.clone(), c.f2.clone()), (f.f2.clone(), f.f1.clone()));
            assert_eq!(alt.bitmask_of(&f.f1), Some(f.orientation));
        }
        assert!(matches!(
            enumerate_factorizations(&d, 2),
            Err(DigraphError::TooManyCycles { r: 3, cap: 2 })
        ));
    }

    #[test]
    fn coset_digraph_sizes() {
        let cd = CosetDigraph::build(&fixtures::a5_ex2().unwrap()).unwrap();
        assert_eq!(cd.digraph.n(), 30);
        let cd = CosetDigraph::build(&fixtures::morris().unwrap()).unwrap();
        assert_eq!(cd.digraph.n(), 6);
        for phi in cd.default_automorphisms() {
            assert!(cd.digraph.is_automorphism(&phi));
        }
    }

    #[test]
    fn trivial_symmetry_gives_singleton_classes() {
        let (d, _) = build_toy(3).unwrap();
        let (alt, facs) = enumerate_factorizations(&d, DEFAULT_CYCLE_CAP).unwrap();
        let classes = classify_factorizations(&alt, &facs, &[], false).unwrap();
        assert_eq!(classes.len(), 8);
        assert!(classes.iter().all(|c| c.size() == 1));
        let bad = Permutation::from_images([1, 0, 2, 3, 4, 5]).unwrap();
        assert!(matches!(
            classify_factorizations(&alt, &facs, &[bad], false),
            Err(DigraphError::NotAutomorphism(_))
        ));
    }

    #[test]
    fn isomorphism_bruteforce() {
        let (d, _) = build_toy(3).unwrap();
        let phi = Permutation::from_images([2, 0, 1, 5, 3, 4]).unwrap();
        let e = d.relabel(&phi);
        let iso = find_isomorphism(&d, &e).unwrap();
        assert_eq!(d.relabel(&iso), e);
    }
}

#[cfg(test)]
mod a5_tests {
    use super::*;
    use crate::fixtures;

    fn setup(p: Presentation) -> (CosetDigraph, AltCycleDecomposition, Vec<Factorization>) {
        let cd = CosetDigraph::build(&p).unwrap();
        let (alt, facs) = enumerate_factorizations(&cd.digraph, DEFAULT_CYCLE_CAP).unwrap();
        (cd, alt, facs)
    }

    #[test]
    fn ex3_families() {
        let (cd, alt, facs) = setup(fixtures::a5_ex3().unwrap());
        assert_eq!(alt.r(), 6);
        assert_eq!(facs.len(), 64);
        let mut sizes: Vec<usize> = cycle_type_families(&facs).values().map(|v| v.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![12, 12, 20, 20]);
        let classes = classify_factorizations(&alt, &facs, &cd.default_automorphisms(), true).unwrap();
        assert_eq!(classes.iter().map(|c| c.size()).sum::<usize>(), 64);
    }

    #[test]
    fn ex2_classes() {
        let (cd, alt, facs) = setup(fixtures::a5_ex2().unwrap());
        assert_eq!(alt.r(), 10);
        let x = facs[0].x();
        assert!(x.cycle_type().0.iter().all(|&l| l == 3));
        let classes = classify_factorizations(&alt, &facs, &cd.default_automorphisms(), true).unwrap();
        assert_eq!(classes.len(), 20);
        assert_eq!(classes.iter().map(|c| c.size()).sum::<usize>(), 1024);
    }
}
