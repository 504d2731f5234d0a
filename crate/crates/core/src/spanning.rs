//! Walk semantics over a factorization: equivalence and relocatability, sharply
//! transitive sets, relocatable trees, and constructive spanning sets.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::blocks::{phase_profile, BlockError, PositionSystem};
use crate::digraph::Factorization;
use crate::perm::{Permutation, Symbol, Word};

pub const DEFAULT_MAX_NODES: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanError {
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error("C does not act on the x-cycles: {0}")]
    TopActionUndefined(String),
    #[error("top action on the x-cycles is intransitive (orbit of cycle 0 has {orbit} of {r} cycles)")]
    Intransitive { orbit: usize, r: usize },
    #[error("phases generate a proper subgroup of Z_{m} (generated by {generator})")]
    PhasesProper { generator: usize, m: usize },
    #[error("net phase shift of the transversal word for cycle {cycle} is not uniform")]
    NonUniformShift { cycle: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search supports at most 64 vertices, got {0}")]
    TooLarge(usize),
}

/// Words with their evaluated permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSet {
    pub words: Vec<Word>,
    pub images: Vec<Permutation>,
    pub root: Option<usize>,
}

impl WordSet {
    pub fn new(words: Vec<Word>, f: &Factorization) -> Self {
        let images = words.iter().map(|w| w.evaluate(&f.f1, &f.f2)).collect();
        WordSet {
            words,
            images,
            root: None,
        }
    }

    pub fn with_root(mut self, root: usize) -> Self {
        self.root = Some(root);
        self
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Whether every word is over `{1, 2}` only.
    pub fn is_positive(&self) -> bool {
        self.words.iter().all(Word::is_positive)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    /// Index pairs of words with identical images.
    pub fn duplicates(&self) -> Vec<(usize, usize)> {
        let mut seen: HashMap<&Permutation, usize> = HashMap::new();
        let mut out = Vec::new();
        for (i, p) in self.images.iter().enumerate() {
            if let Some(&j) = seen.get(p) {
                out.push((j, i));
            } else {
                seen.insert(p, i);
            }
        }
        out
    }

    /// Images of `v` under every word.
    pub fn evaluate_at(&self, v: usize) -> Vec<usize> {
        self.images.iter().map(|p| p.apply(v)).collect()
    }

    pub fn walk_strings(&self) -> Vec<String> {
        self.words.iter().map(Word::to_walk_string).collect()
    }
}

pub fn equivalent(a: &Word, b: &Word, f: &Factorization) -> bool {
    a.evaluate(&f.f1, &f.f2) == b.evaluate(&f.f1, &f.f2)
}

/// Whether the two walks disagree at every vertex, i.e. `b a⁻¹` is a derangement.
pub fn relocatable(a: &Word, b: &Word, f: &Factorization) -> bool {
    let pa = a.evaluate(&f.f1, &f.f2);
    let pb = b.evaluate(&f.f1, &f.f2);
    (&pb * &pa.inverse()).is_derangement()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpVerdict {
    pub passes: bool,
    pub size_ok: bool,
    /// Every pair of words disagrees at every vertex.
    pub pairwise_relocatable: bool,
    /// Every ordered vertex pair is hit by exactly one word.
    pub pair_count_exact: bool,
    pub violation: Option<String>,
}

/// Checks `|ws| = n` and sharp transitivity, both pairwise and by counting ordered pairs.
pub fn verify_sharply_transitive(ws: &WordSet, f: &Factorization) -> SharpVerdict {
    let n = f.n();
    let size_ok = ws.len() == n;
    let mut violation = None;
    let mut pairwise_relocatable = true;
    'outer: for a in 0..ws.len() {
        for b in a + 1..ws.len() {
            if let Some(v) = (0..n).find(|&v| ws.images[a].apply(v) == ws.images[b].apply(v)) {
                pairwise_relocatable = false;
                violation = Some(format!("words {} and {} agree at vertex {v}", ws.words[a], ws.words[b]));
                break 'outer;
            }
        }
    }
    let mut hits = vec![0u32; n * n];
    for p in &ws.images {
        for u in 0..n {
            hits[u * n + p.apply(u)] += 1;
        }
    }
    let bad = hits.iter().position(|&c| c != 1);
    let pair_count_exact = bad.is_none();
    if let (Some(i), None) = (bad, &violation) {
        violation = Some(format!(
            "ordered pair ({}, {}) is hit by {} words",
            i / n,
            i % n,
            hits[i]
        ));
    }
    if !size_ok && violation.is_none() {
        violation = Some(format!("{} words for {n} vertices", ws.len()));
    }
    SharpVerdict {
        passes: size_ok && pairwise_relocatable && pair_count_exact,
        size_ok,
        pairwise_relocatable,
        pair_count_exact,
        violation,
    }
}

/// Which letter is dropped to get a word's parent in a prefix-closed set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PrefixConvention {
    /// Drop the last-applied letter: the tree grows by extending walks.
    #[default]
    LastApplied,
    FirstApplied,
}

/// A prefix-closed, pairwise relocatable word set containing `∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelocTree {
    pub words: WordSet,
}

impl RelocTree {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Standalone tree check: evaluates words by walking each vertex, without the
/// permutation or search machinery.
pub fn check_reloc_tree(words: &[Word], f1: &[u32], f2: &[u32], convention: PrefixConvention) -> Result<(), String> {
    let n = f1.len();
    if !words.iter().any(|w| w.is_empty()) {
        return Err("tree does not contain the empty word".into());
    }
    let set: HashSet<&Word> = words.iter().collect();
    if set.len() != words.len() {
        return Err("repeated word".into());
    }
    for w in words {
        if !w.is_positive() {
            return Err(format!("word {w} uses an inverse letter"));
        }
        if w.is_empty() {
            continue;
        }
        let parent = match convention {
            PrefixConvention::LastApplied => Word {
                symbols: w.symbols[1..].to_vec(),
            },
            PrefixConvention::FirstApplied => Word {
                symbols: w.symbols[..w.len() - 1].to_vec(),
            },
        };
        if !set.contains(&parent) {
            return Err(format!("parent {parent} of {w} is missing"));
        }
    }
    let walk = |w: &Word, v: usize| {
        let mut v = v as u32;
        for s in w.symbols.iter().rev() {
            v = if *s == Symbol::F1 {
                f1[v as usize]
            } else {
                f2[v as usize]
            };
        }
        v
    };
    for v in 0..n {
        let mut seen = HashMap::new();
        for w in words {
            if let Some(other) = seen.insert(walk(w, v), w) {
                return Err(format!("{other} and {w} collide at vertex {v}"));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeBudget {
    pub max_nodes: u64,
    /// Largest closure explored when bounding a node; beyond it the bound is trivial.
    pub closure_cap: usize,
}

impl Default for TreeBudget {
    fn default() -> Self {
        TreeBudget {
            max_nodes: DEFAULT_MAX_NODES,
            closure_cap: 4096,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TreeSearchOutcome {
    pub tree: RelocTree,
    /// The search finished: no larger relocatable tree exists.
    pub certified: bool,
    pub nodes: u64,
}

impl TreeSearchOutcome {
    pub fn size(&self) -> usize {
        self.tree.len()
    }
}

struct TreeSearch {
    n: usize,
    f: [Vec<u8>; 2],
    members: Vec<(Vec<u8>, Word)>,
    used: Vec<u64>,
    excluded: HashSet<Vec<u8>>,
    best: Vec<Word>,
    nodes: u64,
    budget: TreeBudget,
    aborted: bool,
}

impl TreeSearch {
    fn admissible(&self, img: &[u8]) -> bool {
        img.iter().zip(&self.used).all(|(&t, &u)| u >> t & 1 == 0)
    }

    fn step(&self, s: usize, g: &[u8]) -> Vec<u8> {
        g.iter().map(|&v| self.f[s][v as usize]).collect()
    }

    fn set_used(&mut self, img: &[u8], on: bool) {
        for (u, &t) in self.used.iter_mut().zip(img) {
            if on {
                *u |= 1 << t;
            } else {
                *u &= !(1 << t);
            }
        }
    }

    fn candidates(&self) -> Vec<(Vec<u8>, Word)> {
        let mut out: Vec<(Vec<u8>, Word)> = Vec::new();
        for (g, w) in &self.members {
            for (s, sym) in [(0, Symbol::F1), (1, Symbol::F2)] {
                let c = self.step(s, g);
                if self.admissible(&c) && !self.excluded.contains(&c) && !out.iter().any(|(o, _)| *o == c) {
                    out.push((c, w.then(sym)));
                }
            }
        }
        out
    }

    /// Upper bound on how many elements can still join: everything reachable from the
    /// candidates through admissible, non-excluded elements, limited per vertex by the
    /// number of distinct targets available there.
    fn bound(&self, cands: &[(Vec<u8>, Word)]) -> usize {
        let trivial = self.n - self.members.len();
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut masks = vec![0u64; self.n];
        for (c, _) in cands {
            seen.insert(c.clone());
            queue.push_back(c.clone());
        }
        while let Some(g) = queue.pop_front() {
            for (m, &t) in masks.iter_mut().zip(&g) {
                *m |= 1 << t;
            }
            for s in 0..2 {
                let c = self.step(s, &g);
                if self.admissible(&c) && !self.excluded.contains(&c) && !seen.contains(&c) {
                    if seen.len() >= self.budget.closure_cap {
                        return trivial;
                    }
                    seen.insert(c.clone());
                    queue.push_back(c);
                }
            }
        }
        let per_vertex = masks.iter().map(|m| m.count_ones() as usize).min().unwrap_or(0);
        seen.len().min(per_vertex).min(trivial)
    }

    fn dfs(&mut self) {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            self.aborted = true;
            return;
        }
        if self.members.len() > self.best.len() {
            self.best = self.members.iter().map(|(_, w)| w.clone()).collect();
        }
        if self.best.len() == self.n {
            return;
        }
        let cands = self.candidates();
        if cands.is_empty() || self.members.len() + self.bound(&cands) <= self.best.len() {
            return;
        }
        let (c, w) = cands.into_iter().next().expect("nonempty");
        self.set_used(&c, true);
        self.members.push((c.clone(), w));
        self.dfs();
        self.members.pop();
        self.set_used(&c, false);
        if self.aborted || self.best.len() == self.n {
            return;
        }
        self.excluded.insert(c.clone());
        self.dfs();
        self.excluded.remove(&c);
    }
}

/// Branch-and-bound for a largest relocatable tree of positive words.
///
/// Trees are enumerated as sets of group elements reachable from the identity by
/// left multiplication with `F1`/`F2`; each set is visited once by branching on
/// including or permanently excluding one frontier element.
pub fn max_relocatable_tree(f: &Factorization, budget: &TreeBudget) -> Result<TreeSearchOutcome, SpanError> {
    let n = f.n();
    if n > 64 {
        return Err(SpanError::TooLarge(n));
    }
    let to_u8 = |p: &Permutation| p.images().iter().map(|&v| v as u8).collect::<Vec<u8>>();
    let id: Vec<u8> = (0..n as u8).collect();
    let mut search = TreeSearch {
        n,
        f: [to_u8(&f.f1), to_u8(&f.f2)],
        members: Vec::new(),
        used: vec![0; n],
        excluded: HashSet::new(),
        best: Vec::new(),
        nodes: 0,
        budget: budget.clone(),
        aborted: false,
    };
    search.set_used(&id, true);
    search.members.push((id, Word::empty()));
    search.dfs();
    let mut words = search.best;
    words.sort_by(|a, b| (a.len(), &a.symbols).cmp(&(b.len(), &b.symbols)));
    Ok(TreeSearchOutcome {
        tree: RelocTree {
            words: WordSet::new(words, f).with_root(0),
        },
        certified: !search.aborted,
        nodes: search.nodes,
    })
}

/// Exhaustive oracle for tiny digraphs: explores every reachable pairwise-relocatable
/// element set by depth-first search with memoization. Returns the maximum size.
pub fn naive_max_tree_size(f: &Factorization) -> usize {
    let n = f.n();
    let compose = |p: &[u32], q: &[u32]| q.iter().map(|&v| p[v as usize]).collect::<Vec<u32>>();
    let disjoint = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x != y);
    let gens = [f.f1.images().to_vec(), f.f2.images().to_vec()];
    let id: Vec<u32> = (0..n as u32).collect();
    let mut visited: HashSet<Vec<Vec<u32>>> = HashSet::new();
    let mut stack = vec![vec![id]];
    let mut best = 0;
    while let Some(set) = stack.pop() {
        let mut key = set.clone();
        key.sort();
        if !visited.insert(key) {
            continue;
        }
        best = best.max(set.len());
        for g in &set {
            for s in &gens {
                let c = compose(s, g);
                if set.iter().all(|h| disjoint(h, &c)) {
                    let mut next = set.clone();
                    next.push(c);
                    stack.push(next);
                }
            }
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpSearchBudget {
    /// Candidate elements are collected breadth-first up to this word length.
    pub max_word_len: usize,
    pub max_candidates: usize,
    pub max_nodes: u64,
}

impl Default for SharpSearchBudget {
    fn default() -> Self {
        SharpSearchBudget {
            max_word_len: 64,
            max_candidates: 100_000,
            max_nodes: 10_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SharpSearch {
    Found(WordSet),
    /// Every candidate combination was tried.
    Exhausted {
        candidates: usize,
    },
    BudgetExceeded {
        nodes: u64,
    },
}

/// Backtracking search for a sharply transitive set of positive words containing
/// `required`, drawn from the elements reachable breadth-first (shortest word each).
pub fn search_sharply_transitive(f: &Factorization, required: &[Word], budget: &SharpSearchBudget) -> SharpSearch {
    let n = f.n();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut cands: Vec<(Vec<u32>, Word)> = Vec::new();
    let id: Vec<u32> = (0..n as u32).collect();
    index.insert(id.clone(), 0);
    cands.push((id, Word::empty()));
    let mut level = vec![0usize];
    for _ in 0..budget.max_word_len {
        let mut next = Vec::new();
        for &i in &level {
            for (sym, g) in [(Symbol::F1, &f.f1), (Symbol::F2, &f.f2)] {
                if cands.len() >= budget.max_candidates {
                    break;
                }
                let img: Vec<u32> = cands[i].0.iter().map(|&v| g.images()[v as usize]).collect();
                if !index.contains_key(&img) {
                    index.insert(img.clone(), cands.len());
                    let w = cands[i].1.then(sym);
                    next.push(cands.len());
                    cands.push((img, w));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }

    let mut chosen: Vec<usize> = Vec::new();
    let mut used = vec![false; n * n];
    let fits = |used: &[bool], c: &[u32]| c.iter().enumerate().all(|(u, &t)| !used[u * n + t as usize]);
    let mark = |used: &mut [bool], c: &[u32]| {
        for (u, &t) in c.iter().enumerate() {
            used[u * n + t as usize] = true;
        }
    };
    for w in required {
        let p = w.evaluate(&f.f1, &f.f2);
        let img = p.images().to_vec();
        if !fits(&used, &img) {
            return SharpSearch::Exhausted {
                candidates: cands.len(),
            };
        }
        mark(&mut used, &img);
        let i = match index.get(&img) {
            Some(&i) => i,
            None => {
                index.insert(img.clone(), cands.len());
                cands.push((img, w.clone()));
                cands.len() - 1
            }
        };
        cands[i].1 = w.clone();
        chosen.push(i);
    }
    let alive: Vec<usize> = (0..cands.len()).filter(|&i| fits(&used, &cands[i].0)).collect();

    struct Ctx<'a> {
        n: usize,
        cands: &'a [(Vec<u32>, Word)],
        nodes: u64,
        max_nodes: u64,
    }
    // Forward checking: `alive` holds the candidates compatible with everything chosen.
    fn go(ctx: &mut Ctx, covered: &mut [bool], alive: &[usize], chosen: &mut Vec<usize>) -> Option<bool> {
        ctx.nodes += 1;
        if ctx.nodes > ctx.max_nodes {
            return None;
        }
        let n = ctx.n;
        if chosen.len() == n {
            return Some(true);
        }
        // every uncovered (u, t) must still be reachable
        let mut reach = vec![false; n * n];
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &i in alive {
            let img = &ctx.cands[i].0;
            for (u, &t) in img.iter().enumerate() {
                reach[u * n + t as usize] = true;
            }
            buckets[img[0] as usize].push(i);
        }
        if (0..n * n).any(|k| !covered[k] && !reach[k]) {
            return Some(false);
        }
        let t = (0..n)
            .filter(|&t| !covered[t])
            .min_by_key(|&t| buckets[t].len())
            .expect("an uncovered target remains");
        for &i in &buckets[t] {
            let img = ctx.cands[i].0.clone();
            for (u, &v) in img.iter().enumerate() {
                covered[u * n + v as usize] = true;
            }
            let next: Vec<usize> = alive
                .iter()
                .copied()
                .filter(|&j| j != i && ctx.cands[j].0.iter().zip(&img).all(|(a, b)| a != b))
                .collect();
            chosen.push(i);
            match go(ctx, covered, &next, chosen) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            chosen.pop();
            for (u, &v) in img.iter().enumerate() {
                covered[u * n + v as usize] = false;
            }
        }
        Some(false)
    }
    let mut ctx = Ctx {
        n,
        cands: &cands,
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    match go(&mut ctx, &mut used, &alive, &mut chosen) {
        Some(true) => {
            let words = chosen.iter().map(|&i| cands[i].1.clone()).collect();
            SharpSearch::Found(WordSet::new(words, f).with_root(0))
        }
        Some(false) => SharpSearch::Exhausted {
            candidates: cands.len(),
        },
        None => SharpSearch::BudgetExceeded { nodes: ctx.nodes },
    }
}

/// `x = F2⁻¹ F1` as a word.
pub fn x_word() -> Word {
    Word {
        symbols: vec![Symbol::F2Inv, Symbol::F1],
    }
}

/// The induced permutations of `F1` and `F2` on the `x`-cycles, if both map every
/// cycle onto a cycle.
pub fn top_action(f: &Factorization, ps: &PositionSystem) -> Result<[Permutation; 2], SpanError> {
    let mut out = Vec::with_capacity(2);
    for (name, g) in [("F1", &f.f1), ("F2", &f.f2)] {
        let mut images = Vec::with_capacity(ps.r);
        for (i, c) in ps.cycles.iter().enumerate() {
            let target = ps.cycle_of(g.apply(c[0]));
            if c.iter().any(|&v| ps.cycle_of(g.apply(v)) != target) {
                return Err(SpanError::TopActionUndefined(format!(
                    "{name} splits x-cycle {i} across several cycles"
                )));
            }
            images.push(target);
        }
        out.push(Permutation::from_images(images).map_err(|e| SpanError::TopActionUndefined(e.to_string()))?);
    }
    let f2 = out.pop().expect("two factors");
    let f1 = out.pop().expect("two factors");
    Ok([f1, f2])
}

/// Addressing family `W_{i,j} = x^{j−σ(i)} u_i` with root `a_{0,0}`, where `u_i` carries
/// cycle 0 onto cycle `i` with uniform net position shift `σ(i)`.
pub fn phase_addressing(f: &Factorization, ps: &PositionSystem) -> Result<WordSet, SpanError> {
    let top = top_action(f, ps)?;
    let pp = phase_profile(f, ps)?;
    let generator = pp.generated_subgroup();
    if generator != 1 && ps.m > 1 {
        return Err(SpanError::PhasesProper { generator, m: ps.m });
    }
    // transversal words by breadth-first search over the top action
    let mut u: Vec<Option<Word>> = vec![None; ps.r];
    u[0] = Some(Word::empty());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (sym, g) in [(Symbol::F1, &top[0]), (Symbol::F2, &top[1])] {
            let k = g.apply(i);
            if u[k].is_none() {
                u[k] = Some(u[i].as_ref().expect("visited").then(sym));
                queue.push_back(k);
            }
        }
    }
    let orbit = u.iter().filter(|w| w.is_some()).count();
    if orbit < ps.r {
        return Err(SpanError::Intransitive { orbit, r: ps.r });
    }
    let x = x_word();
    let mut words = Vec::with_capacity(f.n());
    for (i, ui) in u.into_iter().enumerate() {
        let ui = ui.expect("transitive");
        let p = ui.evaluate(&f.f1, &f.f2);
        let shift = |j: usize| {
            let (ci, k) = ps.coord(p.apply(ps.vertex(0, j)));
            debug_assert_eq!(ci, i);
            (k + ps.m - j) % ps.m
        };
        let sigma = shift(0);
        if (1..ps.m).any(|j| shift(j) != sigma) {
            return Err(SpanError::NonUniformShift { cycle: i });
        }
        for j in 0..ps.m {
            words.push(x.power((j + ps.m - sigma) % ps.m).concat(&ui));
        }
    }
    Ok(WordSet::new(words, f).with_root(ps.vertex(0, 0)))
}

/// Replaces the words taking the root to `v0`, `F1(v0)`, `F2(v0)` by `∅`, `[1]`, `[2]`.
pub fn splice_generators(s0: &WordSet, f: &Factorization) -> Result<WordSet, SpanError> {
    let root = s0.root.unwrap_or(0);
    let targets = [root, f.f1.apply(root), f.f2.apply(root)];
    if targets[0] == targets[1] || targets[0] == targets[2] || targets[1] == targets[2] {
        return Err(SpanError::Precondition(format!(
            "root {root} and its out-neighbors are not distinct"
        )));
    }
    let at_root = s0.evaluate_at(root);
    let mut sorted = at_root.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != f.n() || s0.len() != f.n() {
        return Err(SpanError::Precondition("word set is not bijective at the root".into()));
    }
    let mut words = s0.words.clone();
    let mut images = s0.images.clone();
    for (t, w) in targets
        .iter()
        .zip([Word::empty(), Word::from_indices(&[1]), Word::from_indices(&[2])])
    {
        let i = at_root.iter().position(|v| v == t).expect("bijective at root");
        images[i] = w.evaluate(&f.f1, &f.f2);
        words[i] = w;
    }
    Ok(WordSet {
        words,
        images,
        root: Some(root),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::build_toy;

    fn toy3() -> Factorization {
        build_toy(3).unwrap().1
    }

    fn w(s: &str) -> Word {
        Word::parse_walk(s).unwrap()
    }

    #[test]
    fn equivalence_and_relocatability() {
        let f = toy3();
        assert!(equivalent(&w("111"), &w("e"), &f));
        assert!(!equivalent(&w("1"), &w("2"), &f));
        assert!(relocatable(&w("e"), &w("1"), &f));
        assert!(relocatable(&w("1"), &w("2"), &f));
        assert!(!relocatable(&w("12"), &w("12"), &f));
    }

    #[test]
    fn verifier_readings() {
        let f1 = Permutation::identity(1);
        let one = Factorization {
            f1: f1.clone(),
            f2: f1,
            orientation: 0,
        };
        assert!(verify_sharply_transitive(&WordSet::new(vec![Word::empty()], &one), &one).passes);

        let f = toy3();
        let dup = WordSet::new(vec![w("e"), w("111")], &f);
        let v = verify_sharply_transitive(&dup, &f);
        assert!(!v.passes && !v.pairwise_relocatable);
        assert!(v.violation.unwrap().contains("111"));
        assert_eq!(dup.duplicates(), vec![(0, 1)]);
    }

    #[test]
    fn toy_regular_set_found() {
        let f = toy3();
        let required = [w("e"), w("1"), w("2")];
        let SharpSearch::Found(ws) = search_sharply_transitive(&f, &required, &SharpSearchBudget::default()) else {
            panic!("toy digraph is a Cayley digraph");
        };
        let v = verify_sharply_transitive(&ws, &f);
        assert!(v.passes && v.pairwise_relocatable && v.pair_count_exact);
    }

    #[test]
    fn tree_search_matches_oracle_on_toys() {
        for m in 3..=4 {
            let f = build_toy(m).unwrap().1;
            let out = max_relocatable_tree(&f, &TreeBudget::default()).unwrap();
            assert!(out.certified);
            assert_eq!(out.size(), naive_max_tree_size(&f));
            let words = &out.tree.words.words;
            check_reloc_tree(words, f.f1.images(), f.f2.images(), PrefixConvention::LastApplied).unwrap();
        }
    }

    #[test]
    fn tree_checker_rejects() {
        let f = toy3();
        let (a, b) = (f.f1.images(), f.f2.images());
        assert!(check_reloc_tree(&[w("1")], a, b, PrefixConvention::LastApplied).is_err());
        assert!(check_reloc_tree(&[w("e"), w("12")], a, b, PrefixConvention::LastApplied).is_err());
        assert!(check_reloc_tree(&[w("e"), w("1"), w("111")], a, b, PrefixConvention::LastApplied).is_err());
        // "12" = F2∘F1: its last-applied parent is "1", its first-applied parent is "2"
        let set = [w("e"), w("1"), w("12")];
        assert!(check_reloc_tree(&set, a, b, PrefixConvention::LastApplied).is_ok());
        assert!(check_reloc_tree(&set, a, b, PrefixConvention::FirstApplied).is_err());
    }

    #[test]
    fn trivial_tree() {
        let f1 = Permutation::identity(1);
        let f = Factorization {
            f1: f1.clone(),
            f2: f1,
            orientation: 0,
        };
        let out = max_relocatable_tree(&f, &TreeBudget::default()).unwrap();
        assert_eq!(out.size(), 1);
        assert!(out.certified);
    }

    #[test]
    fn toy_addressing_fails_on_phases() {
        let f = toy3();
        let ps = crate::blocks::position_system(&f).unwrap();
        let err = phase_addressing(&f, &ps).unwrap_err();
        assert!(matches!(err, SpanError::PhasesProper { generator: 2, m: 2 }), "{err}");
    }

    #[test]
    fn single_cycle_addressing() {
        // x is one 4-cycle and the only phase is 1
        let f1 = Permutation::from_images([1, 2, 3, 0]).unwrap();
        let f2 = Permutation::from_images([2, 3, 0, 1]).unwrap();
        let f = Factorization { f1, f2, orientation: 0 };
        let ps = crate::blocks::position_system(&f).unwrap();
        let s0 = phase_addressing(&f, &ps).unwrap();
        let mut at_root = s0.evaluate_at(0);
        at_root.sort_unstable();
        assert_eq!(at_root, vec![0, 1, 2, 3]);
        assert_eq!(s0.words[2], x_word().power(2));
        let s = splice_generators(&s0, &f).unwrap();
        let mut spliced = s.evaluate_at(0);
        spliced.sort_unstable();
        assert_eq!(spliced, vec![0, 1, 2, 3]);
        assert!(s.contains(&w("1")) && s.contains(&w("2")) && s.contains(&w("e")));
    }
}
