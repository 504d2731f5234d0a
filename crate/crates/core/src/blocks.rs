//! Position systems, tied refinements, phases and atoms, invariant refinements, and
//! block actions of a factorization.

use thiserror::Error;

use crate::digraph::{AltCycleDecomposition, Factorization};
use crate::perm::{Permutation, Word};
use crate::spanning::{search_sharply_transitive, verify_sharply_transitive, SharpSearch, SharpSearchBudget, WordSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("x-cycles have unequal lengths {lengths:?}")]
    Uniformity { lengths: Vec<usize> },
    #[error("phase of x-cycle {cycle} is not constant along the cycle: offsets {offsets:?}")]
    PhaseInconsistency { cycle: usize, offsets: Vec<usize> },
    #[error("invalid block system: {0}")]
    InvalidBlocks(String),
    #[error("{perm} does not preserve the block system (splits block {block})")]
    NotInvariant { perm: String, block: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
}

/// The `x`-cycles `C_i = (a_{i,0}, …, a_{i,m-1})` with `x = F2⁻¹F1`, and the blocks
/// `P_j = x^j(P_0)` where `P_0` holds the minimum vertex of every cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionSystem {
    pub m: usize,
    pub r: usize,
    pub cycles: Vec<Vec<usize>>,
    pub blocks: Vec<Vec<usize>>,
    coord: Vec<(usize, usize)>,
}

impl PositionSystem {
    /// The same cycles with another transversal: cycle `i` now starts at its old
    /// `a_{i, shifts[i]}`.
    pub fn rotated(&self, shifts: &[usize]) -> PositionSystem {
        assert_eq!(shifts.len(), self.r, "one shift per x-cycle");
        let cycles: Vec<Vec<usize>> = self
            .cycles
            .iter()
            .zip(shifts)
            .map(|(c, &s)| (0..self.m).map(|j| c[(j + s) % self.m]).collect())
            .collect();
        let mut coord = vec![(0, 0); self.coord.len()];
        for (i, c) in cycles.iter().enumerate() {
            for (j, &v) in c.iter().enumerate() {
                coord[v] = (i, j);
            }
        }
        let blocks = (0..self.m).map(|j| cycles.iter().map(|c| c[j]).collect()).collect();
        PositionSystem {
            m: self.m,
            r: self.r,
            cycles,
            blocks,
            coord,
        }
    }

    /// `(i, j)` with `v = a_{i,j}`.
    pub fn coord(&self, v: usize) -> (usize, usize) {
        self.coord[v]
    }

    pub fn position(&self, v: usize) -> usize {
        self.coord[v].1
    }

    pub fn cycle_of(&self, v: usize) -> usize {
        self.coord[v].0
    }

    pub fn vertex(&self, i: usize, j: usize) -> usize {
        self.cycles[i][j % self.m]
    }

    /// The `m` blocks `P_j`.
    pub fn block_system(&self) -> BlockSystem {
        BlockSystem::new(self.blocks.clone(), self.coord.len()).expect("position blocks partition V")
    }

    /// The `r` blocks given by the `x`-cycles themselves.
    pub fn cycle_block_system(&self) -> BlockSystem {
        BlockSystem::new(self.cycles.clone(), self.coord.len()).expect("x-cycles partition V")
    }
}

pub fn position_system(f: &Factorization) -> Result<PositionSystem, BlockError> {
    let cycles = f.x().orbits();
    let m = cycles[0].len();
    if cycles.iter().any(|c| c.len() != m) {
        return Err(BlockError::Uniformity {
            lengths: cycles.iter().map(Vec::len).collect(),
        });
    }
    let mut coord = vec![(0, 0); f.n()];
    for (i, c) in cycles.iter().enumerate() {
        for (j, &v) in c.iter().enumerate() {
            coord[v] = (i, j);
        }
    }
    let blocks = (0..m).map(|j| cycles.iter().map(|c| c[j]).collect()).collect();
    Ok(PositionSystem {
        m,
        r: cycles.len(),
        cycles,
        blocks,
        coord,
    })
}

/// A rotation of `ps` whose position blocks both factors permute, if one exists.
/// Cycles are fixed one at a time, each shift checked against the block maps of
/// `F1` and `F2` implied by the cycles fixed so far.
pub fn invariant_transversal(f: &Factorization, ps: &PositionSystem) -> Option<PositionSystem> {
    const UNSET: usize = usize::MAX;
    fn extend(
        gens: &[Permutation; 4],
        ps: &PositionSystem,
        shifts: &mut Vec<usize>,
        maps: &mut [Vec<usize>; 2],
    ) -> bool {
        let i = shifts.len();
        if i == ps.r {
            return true;
        }
        let m = ps.m;
        let pos = |v: usize, shifts: &[usize], t: usize| {
            let (c, j) = ps.coord(v);
            let s = if c == i { t } else { shifts.get(c).copied()? };
            Some((j + m - s) % m)
        };
        // shifting every cycle alike only relabels the blocks
        for t in 0..if i == 0 { 1 } else { m } {
            let saved = maps.clone();
            let mut ok = true;
            'check: for g in 0..2 {
                let (gen, inv) = (&gens[g], &gens[g + 2]);
                for (j, &v) in ps.cycles[i].iter().enumerate() {
                    let p = (j + m - t) % m;
                    // edges leaving and entering cycle i whose other end is already placed
                    let pairs = [
                        (Some(p), pos(gen.apply(v), shifts, t)),
                        (pos(inv.apply(v), shifts, t), Some(p)),
                    ];
                    for (a, b) in pairs {
                        let (Some(a), Some(b)) = (a, b) else { continue };
                        if maps[g][a] == UNSET {
                            if maps[g].contains(&b) {
                                ok = false;
                                break 'check;
                            }
                            maps[g][a] = b;
                        } else if maps[g][a] != b {
                            ok = false;
                            break 'check;
                        }
                    }
                }
            }
            if ok {
                shifts.push(t);
                if extend(gens, ps, shifts, maps) {
                    return true;
                }
                shifts.pop();
            }
            *maps = saved;
        }
        false
    }
    let mut shifts = Vec::with_capacity(ps.r);
    let mut maps = [vec![UNSET; ps.m], vec![UNSET; ps.m]];
    let gens = [f.f1.clone(), f.f2.clone(), f.f1.inverse(), f.f2.inverse()];
    extend(&gens, ps, &mut shifts, &mut maps).then(|| ps.rotated(&shifts))
}

/// `P'_k = F1(P_k)`, each sorted.
pub fn tied_blocks(f: &Factorization, ps: &PositionSystem) -> Vec<Vec<usize>> {
    ps.blocks
        .iter()
        .map(|b| {
            let mut t: Vec<usize> = b.iter().map(|&v| f.f1.apply(v)).collect();
            t.sort_unstable();
            t
        })
        .collect()
}

/// Tied index `k` of every vertex: `v ∈ P'_k`, i.e. the position of `F1⁻¹(v)`.
fn tied_index(f: &Factorization, ps: &PositionSystem) -> Vec<usize> {
    let inv = f.f1.inverse();
    (0..f.n()).map(|v| ps.position(inv.apply(v))).collect()
}

/// `k − j mod m` for every `a_{i,j} ∈ P'_k`, laid out as `offsets[i][j]`.
pub fn phase_offsets(f: &Factorization, ps: &PositionSystem) -> Vec<Vec<usize>> {
    let k = tied_index(f, ps);
    ps.cycles
        .iter()
        .map(|c| c.iter().enumerate().map(|(j, &v)| (k[v] + ps.m - j) % ps.m).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseProfile {
    /// `δ(i)` for every `x`-cycle.
    pub delta: Vec<usize>,
    /// `r_d = #{i : δ(i) = d}` for `d ∈ Z_m`.
    pub phase_counts: Vec<usize>,
    pub tied_blocks: Vec<Vec<usize>>,
}

impl PhaseProfile {
    /// Generator of the subgroup `⟨δ(i)⟩ ≤ Z_m` (as a divisor of `m`).
    pub fn generated_subgroup(&self) -> usize {
        let m = self.phase_counts.len();
        self.delta.iter().fold(m, |g, &d| gcd(g, d))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Phases `δ(i)` with `a_{i,j} ∈ P'_{j+δ(i)}`; fails if some cycle has a non-constant offset.
pub fn phase_profile(f: &Factorization, ps: &PositionSystem) -> Result<PhaseProfile, BlockError> {
    let offsets = phase_offsets(f, ps);
    let mut delta = Vec::with_capacity(ps.r);
    for (i, row) in offsets.into_iter().enumerate() {
        if row.iter().any(|&d| d != row[0]) {
            return Err(BlockError::PhaseInconsistency { cycle: i, offsets: row });
        }
        delta.push(row[0]);
    }
    let mut phase_counts = vec![0; ps.m];
    for &d in &delta {
        phase_counts[d] += 1;
    }
    Ok(PhaseProfile {
        delta,
        phase_counts,
        tied_blocks: tied_blocks(f, ps),
    })
}

/// The meet `A_{j,k} = P_j ∩ P'_k`, computed directly from the two partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atoms {
    pub m: usize,
    cells: Vec<Vec<Vec<usize>>>,
}

impl Atoms {
    pub fn get(&self, j: usize, k: usize) -> &[usize] {
        &self.cells[j % self.m][k % self.m]
    }

    /// `|A_{j,j+d}|`.
    pub fn class_size(&self, j: usize, d: usize) -> usize {
        self.get(j, j + d).len()
    }

    /// Whether `|A_{j,j+d}|` is independent of `j` for every `d`.
    pub fn sizes_uniform(&self) -> bool {
        (0..self.m).all(|d| (0..self.m).all(|j| self.class_size(j, d) == self.class_size(0, d)))
    }
}

pub fn atoms(f: &Factorization, ps: &PositionSystem) -> Atoms {
    let k = tied_index(f, ps);
    let mut cells = vec![vec![Vec::new(); ps.m]; ps.m];
    for v in 0..f.n() {
        cells[ps.position(v)][k[v]].push(v);
    }
    for row in &mut cells {
        for cell in row {
            cell.sort_unstable();
        }
    }
    Atoms { m: ps.m, cells }
}

/// Orbits `Π` of `⟨F1, x⟩` on the difference classes `d = k − j`, found by tracing
/// where each generator sends every vertex. Ordered by minimum class.
pub fn difference_class_orbits(f: &Factorization, ps: &PositionSystem) -> Vec<Vec<usize>> {
    let m = ps.m;
    let k = tied_index(f, ps);
    let class = |v: usize| (k[v] + m - ps.position(v)) % m;
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], a: usize) -> usize {
        let mut a = a;
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for g in [&f.f1, &f.x()] {
        for v in 0..f.n() {
            let (a, b) = (find(&mut parent, class(v)), find(&mut parent, class(g.apply(v))));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; m];
    for d in 0..m {
        let root = find(&mut parent, d);
        if slot[root] == usize::MAX {
            slot[root] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[root]].push(d);
    }
    orbits
}

/// `B_{j,U} = ⋃_{d ∈ U} A_{j,j+d}` for one choice of `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    /// The difference classes in `U`, sorted.
    pub classes: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    /// Whether both factors map every block onto a block of the family.
    pub invariant: bool,
}

impl Refinement {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn covers(&self, n: usize) -> bool {
        self.blocks.iter().map(Vec::len).sum::<usize>() == n
    }

    /// The family as a block system of `V`, when it is one.
    pub fn block_system(&self, n: usize) -> Option<BlockSystem> {
        BlockSystem::new(self.blocks.clone(), n).ok()
    }
}

/// Whether every `g` maps each set of the family onto a set of the family.
pub fn family_invariant(blocks: &[Vec<usize>], gens: &[&Permutation]) -> bool {
    let mut sorted: Vec<Vec<usize>> = blocks.to_vec();
    for b in &mut sorted {
        b.sort_unstable();
    }
    gens.iter().all(|g| {
        sorted.iter().all(|b| {
            let mut img: Vec<usize> = b.iter().map(|&v| g.apply(v)).collect();
            img.sort_unstable();
            sorted.contains(&img)
        })
    })
}

/// One family per nonempty subcollection of `Π`, in binary-counting order over `Π`.
pub fn invariant_refinements(f: &Factorization, ps: &PositionSystem, pi: &[Vec<usize>]) -> Vec<Refinement> {
    let at = atoms(f, ps);
    let gens = [&f.f1, &f.f2];
    (1u64..1 << pi.len())
        .map(|mask| {
            let mut classes: Vec<usize> = (0..pi.len())
                .filter(|&u| mask >> u & 1 == 1)
                .flat_map(|u| pi[u].iter().copied())
                .collect();
            classes.sort_unstable();
            let blocks: Vec<Vec<usize>> = (0..ps.m)
                .map(|j| {
                    let mut b: Vec<usize> = classes.iter().flat_map(|&d| at.get(j, j + d).iter().copied()).collect();
                    b.sort_unstable();
                    b
                })
                .collect();
            let invariant = family_invariant(&blocks, &gens);
            Refinement {
                classes,
                blocks,
                invariant,
            }
        })
        .collect()
}

/// A partition of `V` into nonempty parts of equal size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
}

impl BlockSystem {
    pub fn new(blocks: Vec<Vec<usize>>, n: usize) -> Result<Self, BlockError> {
        let mut block_of = vec![usize::MAX; n];
        let size = blocks.first().map_or(0, Vec::len);
        for (b, part) in blocks.iter().enumerate() {
            if part.is_empty() || part.len() != size {
                return Err(BlockError::InvalidBlocks(format!(
                    "block {b} has size {}, expected {size}",
                    part.len()
                )));
            }
            for &v in part {
                if v >= n || block_of[v] != usize::MAX {
                    return Err(BlockError::InvalidBlocks(format!(
                        "vertex {v} out of range or repeated"
                    )));
                }
                block_of[v] = b;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(BlockError::InvalidBlocks(format!("vertex {v} is in no block")));
        }
        Ok(BlockSystem { blocks, block_of })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_invariant(&self, g: &Permutation) -> bool {
        block_action(g, self).is_ok()
    }
}

/// The permutation `σ(g)` of block ids induced by `g`.
pub fn block_action(g: &Permutation, bs: &BlockSystem) -> Result<Permutation, BlockError> {
    let images: Vec<usize> = bs
        .blocks
        .iter()
        .enumerate()
        .map(|(b, part)| {
            let target = bs.block_of[g.apply(part[0])];
            if part.iter().all(|&v| bs.block_of[g.apply(v)] == target) {
                Ok(target)
            } else {
                Err(BlockError::NotInvariant {
                    perm: g.to_cycle_string(),
                    block: b,
                })
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(Permutation::from_images(images).expect("an invariant partition is permuted bijectively"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeBlockPermutation {
    /// `τ = σ(F1)⁻¹ σ(F2)`.
    pub tau: Permutation,
    pub derangement: bool,
}

pub fn relative_block_permutation(f: &Factorization, bs: &BlockSystem) -> Result<RelativeBlockPermutation, BlockError> {
    let s1 = block_action(&f.f1, bs)?;
    let s2 = block_action(&f.f2, bs)?;
    let tau = &s1.inverse() * &s2;
    let derangement = tau.is_derangement();
    Ok(RelativeBlockPermutation { tau, derangement })
}

/// Swaps the labels `F1 ↔ F2` on every alternating cycle whose bit is set.
pub fn swap_relabel(f: &Factorization, alt: &AltCycleDecomposition, swap_mask: u64) -> Factorization {
    let n = f.n();
    let mut f1 = Vec::with_capacity(n);
    let mut f2 = Vec::with_capacity(n);
    for v in 0..n {
        let (a, b) = (f.f1.apply(v), f.f2.apply(v));
        if swap_mask >> alt.out_cycle(v) & 1 == 1 {
            f1.push(b);
            f2.push(a);
        } else {
            f1.push(a);
            f2.push(b);
        }
    }
    Factorization {
        f1: Permutation::from_images(f1).expect("whole-cycle swaps keep F1 bijective"),
        f2: Permutation::from_images(f2).expect("whole-cycle swaps keep F2 bijective"),
        orientation: f.orientation ^ swap_mask,
    }
}

/// Sharply transitive word set containing `∅, [1], [2]` for a factorization whose
/// relative block permutation on `bs` is a derangement.
///
/// First tries the direct addressing: one shortest word per target of the root,
/// with the three words reaching `v0, F1(v0), F2(v0)` replaced by `∅, [1], [2]`. If that
/// set is not sharply transitive, falls back to a bounded search over words of length
/// at most `max_word_len`.
pub fn block_construction(
    f: &Factorization,
    bs: &BlockSystem,
    max_word_len: usize,
    budget: &SharpSearchBudget,
) -> Result<WordSet, BlockError> {
    let rel = relative_block_permutation(f, bs)?;
    if !rel.derangement {
        return Err(BlockError::Precondition(format!(
            "relative block permutation {} is not a derangement",
            rel.tau.to_cycle_string()
        )));
    }
    let n = f.n();
    let root = 0;
    let mut address: Vec<Option<Word>> = vec![None; n];
    address[root] = Some(Word::empty());
    let mut frontier = vec![root];
    let mut len = 0;
    while address.iter().any(Option::is_none) {
        if len == max_word_len || frontier.is_empty() {
            return Err(BlockError::ConstructionFailed(format!(
                "no word of length <= {max_word_len} reaches every vertex from {root}"
            )));
        }
        len += 1;
        let mut next = Vec::new();
        for v in frontier {
            for (s, g) in [(1u8, &f.f1), (2, &f.f2)] {
                let w = g.apply(v);
                if address[w].is_none() {
                    let word = Word::from_indices(&[s]).concat(address[v].as_ref().expect("frontier is addressed"));
                    address[w] = Some(word);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    let mut words: Vec<Word> = address.into_iter().map(|w| w.expect("all addressed")).collect();
    words[root] = Word::empty();
    words[f.f1.apply(root)] = Word::from_indices(&[1]);
    words[f.f2.apply(root)] = Word::from_indices(&[2]);
    let direct = WordSet::new(words, f).with_root(root);
    if verify_sharply_transitive(&direct, f).passes {
        return Ok(direct);
    }
    let required = [Word::empty(), Word::from_indices(&[1]), Word::from_indices(&[2])];
    let budget = SharpSearchBudget {
        max_word_len: budget.max_word_len.min(max_word_len),
        ..budget.clone()
    };
    match search_sharply_transitive(f, &required, &budget) {
        SharpSearch::Found(ws) => Ok(ws),
        SharpSearch::Exhausted { candidates } => Err(BlockError::ConstructionFailed(format!(
            "no sharply transitive set among {candidates} candidate elements"
        ))),
        SharpSearch::BudgetExceeded { nodes } => Err(BlockError::ConstructionFailed(format!(
            "search budget exhausted after {nodes} nodes"
        ))),
    }
}
