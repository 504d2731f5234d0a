//! Permutations on `{0..n-1}`, cycle types, and words over the two factors.
//!
//! Composition convention: `g.compose(&f)` is the permutation `v ↦ g(f(v))`, so the
//! right-hand factor is applied first. Words follow the same convention.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("size mismatch: {left} points vs {right} points")]
    SizeMismatch { left: usize, right: usize },
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("parse error at token `{token}`: {reason}")]
    Parse { token: String, reason: String },
}

/// A bijection on `{0..n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation from `images[v] = image of v`, checking bijectivity.
    pub fn from_images<I>(images: I) -> Result<Self, PermError>
    where
        I: IntoIterator,
        I::Item: TryInto<u32>,
    {
        let images: Vec<u32> = images
            .into_iter()
            .map(|v| {
                v.try_into()
                    .map_err(|_| PermError::NotBijection("point out of range".into()))
            })
            .collect::<Result<_, _>>()?;
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            let v = v as usize;
            if v >= n {
                return Err(PermError::NotBijection(format!(
                    "image {v} out of range for {n} points"
                )));
            }
            if seen[v] {
                return Err(PermError::NotBijection(format!("image {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= n {
                    return Err(PermError::NotBijection(format!(
                        "point {p} out of range for {n} points"
                    )));
                }
                if touched[p] {
                    return Err(PermError::NotBijection(format!("point {p} appears twice")));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Number of points.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `v ↦ self(f(v))`.
    pub fn compose(&self, f: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != f.degree() {
            return Err(PermError::SizeMismatch {
                left: self.degree(),
                right: f.degree(),
            });
        }
        Ok(self.compose_unchecked(f))
    }

    pub(crate) fn compose_unchecked(&self, f: &Permutation) -> Permutation {
        Permutation {
            images: f.images.iter().map(|&v| self.images[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = sq.compose_unchecked(&acc);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    /// `self ∘ g ∘ self⁻¹`.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        self.compose_unchecked(&g.compose_unchecked(&self.inverse()))
    }

    /// Cycles sorted by minimum element, each starting at its minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.apply(v);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lengths: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        lengths.sort_unstable();
        CycleType(lengths)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &v)| *i as u32 == v)
            .map(|(i, _)| i)
    }

    pub fn is_derangement(&self) -> bool {
        self.fixed_points().next().is_none()
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycle_type()
            .0
            .iter()
            .fold(1u64, |acc, &l| acc / gcd(acc, l as u64) * l as u64)
    }

    /// Cycle notation with fixed points omitted; the identity is `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles: Vec<String> = self
            .orbits()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect();
        if cycles.is_empty() {
            "()".to_string()
        } else {
            cycles.concat()
        }
    }

    /// One-line form `[a,b,c]`.
    pub fn to_one_line(&self) -> String {
        let pts: Vec<String> = self.images.iter().map(|p| p.to_string()).collect();
        format!("[{}]", pts.join(","))
    }

    /// Parses either cycle notation `(0 2)(1 3)` or one-line form `[1,2,0]`.
    ///
    /// Cycle notation does not carry the degree; `degree` fills it in, and when it is
    /// `None` the degree is one more than the largest point mentioned.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Permutation, PermError> {
        let t = text.trim();
        if t.starts_with('[') {
            let p = parse_one_line(t)?;
            if let Some(d) = degree {
                if d != p.degree() {
                    return Err(PermError::SizeMismatch {
                        left: d,
                        right: p.degree(),
                    });
                }
            }
            return Ok(p);
        }
        let cycles = parse_cycles(t)?;
        let max_point = cycles.iter().flatten().copied().max();
        let n = match (degree, max_point) {
            (Some(d), Some(mx)) if mx >= d => {
                return Err(PermError::Parse {
                    token: mx.to_string(),
                    reason: format!("point exceeds degree {d}"),
                })
            }
            (Some(d), _) => d,
            (None, Some(mx)) => mx + 1,
            (None, None) => 0,
        };
        Permutation::from_cycles(n, &cycles)
    }

    /// Largest point mentioned in a cycle-notation or one-line string, if any.
    pub fn max_point(text: &str) -> Result<Option<usize>, PermError> {
        let t = text.trim();
        if t.starts_with('[') {
            let p = parse_one_line(t)?;
            return Ok(p.degree().checked_sub(1));
        }
        Ok(parse_cycles(t)?.into_iter().flatten().max())
    }
}

fn parse_one_line(t: &str) -> Result<Permutation, PermError> {
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| PermError::Parse {
            token: t.to_string(),
            reason: "unterminated one-line form".into(),
        })?;
    let mut images = Vec::new();
    for tok in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let v: usize = tok.parse().map_err(|_| PermError::Parse {
            token: tok.to_string(),
            reason: "expected a point index".into(),
        })?;
        images.push(v);
    }
    Permutation::from_images(images)
}

fn parse_cycles(t: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let mut cycles = Vec::new();
    let mut rest = t;
    loop {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('(') {
            let tok: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
            return Err(PermError::Parse {
                token: tok,
                reason: "expected `(`".into(),
            });
        }
        let close = rest.find(')').ok_or_else(|| PermError::Parse {
            token: rest.to_string(),
            reason: "unterminated cycle".into(),
        })?;
        let body = &rest[1..close];
        let mut cycle = Vec::new();
        for tok in body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
        {
            let p: usize = tok.parse().map_err(|_| PermError::Parse {
                token: tok.to_string(),
                reason: "expected a point index".into(),
            })?;
            cycle.push(p);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = &rest[close + 1..];
    }
    Ok(cycles)
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_one_line())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl FromStr for Permutation {
    type Err = PermError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Permutation::parse(s, None)
    }
}

/// `&g * &f` is `g ∘ f`. Panics on a degree mismatch; use [`Permutation::compose`]
/// for a checked product.
impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            rhs.degree(),
            "composing permutations of different degree"
        );
        self.compose_unchecked(rhs)
    }
}

/// Sorted multiset of cycle lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(pub Vec<usize>);

impl CycleType {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn has_fixed_point(&self) -> bool {
        self.0.first() == Some(&1)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A letter of a word: one of the two factors or an inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    F1,
    F2,
    F1Inv,
    F2Inv,
}

impl Symbol {
    pub fn is_positive(self) -> bool {
        matches!(self, Symbol::F1 | Symbol::F2)
    }

    pub fn inverse(self) -> Symbol {
        match self {
            Symbol::F1 => Symbol::F1Inv,
            Symbol::F2 => Symbol::F2Inv,
            Symbol::F1Inv => Symbol::F1,
            Symbol::F2Inv => Symbol::F2,
        }
    }

    fn to_char(self) -> char {
        match self {
            Symbol::F1 => '1',
            Symbol::F2 => '2',
            Symbol::F1Inv => 'a',
            Symbol::F2Inv => 'b',
        }
    }

    fn from_char(c: char) -> Option<Symbol> {
        match c {
            '1' => Some(Symbol::F1),
            '2' => Some(Symbol::F2),
            'a' => Some(Symbol::F1Inv),
            'b' => Some(Symbol::F2Inv),
            _ => None,
        }
    }
}

/// A word `F_{i_k} ⋯ F_{i_1}` over the factors.
///
/// `symbols` is stored in written order: `symbols[0]` is the leftmost letter, which is
/// applied last. The text form (see [`Word::to_walk_string`]) lists letters in walk
/// order instead, so `"112"` is `F2∘F1∘F1`. `1`/`2` are the factors, `a`/`b` their
/// inverses, and `e` is the empty word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub symbols: Vec<Symbol>,
}

impl Word {
    pub fn empty() -> Self {
        Word { symbols: Vec::new() }
    }

    /// Word from written-order factor indices (`1` or `2`), e.g. `[2, 1]` is `F2 F1`.
    pub fn from_indices(indices: &[u8]) -> Word {
        Word {
            symbols: indices
                .iter()
                .map(|&i| match i {
                    1 => Symbol::F1,
                    2 => Symbol::F2,
                    _ => panic!("factor index must be 1 or 2, got {i}"),
                })
                .collect(),
        }
    }

    pub fn single(s: Symbol) -> Word {
        Word { symbols: vec![s] }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.symbols.iter().all(|s| s.is_positive())
    }

    /// `s · self`: the walk `self` followed by one more step `s`.
    pub fn then(&self, s: Symbol) -> Word {
        let mut symbols = Vec::with_capacity(self.len() + 1);
        symbols.push(s);
        symbols.extend_from_slice(&self.symbols);
        Word { symbols }
    }

    /// Written-order concatenation `self · other` (apply `other` first).
    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word { symbols }
    }

    pub fn inverse(&self) -> Word {
        Word {
            symbols: self.symbols.iter().rev().map(|s| s.inverse()).collect(),
        }
    }

    /// `self^k` for `k ≥ 0`.
    pub fn power(&self, k: usize) -> Word {
        let mut symbols = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            symbols.extend_from_slice(&self.symbols);
        }
        Word { symbols }
    }

    /// The word with its last-applied (leftmost) letter removed.
    pub fn parent_last_applied(&self) -> Option<Word> {
        (!self.is_empty()).then(|| Word {
            symbols: self.symbols[1..].to_vec(),
        })
    }

    /// The word with its first-applied (rightmost) letter removed.
    pub fn parent_first_applied(&self) -> Option<Word> {
        (!self.is_empty()).then(|| Word {
            symbols: self.symbols[..self.len() - 1].to_vec(),
        })
    }

    /// Letters in walk order (first applied first); `e` for the empty word.
    pub fn to_walk_string(&self) -> String {
        if self.is_empty() {
            return "e".to_string();
        }
        self.symbols.iter().rev().map(|s| s.to_char()).collect()
    }

    pub fn parse_walk(text: &str) -> Result<Word, PermError> {
        let t = text.trim();
        if t == "e" || t.is_empty() {
            return Ok(Word::empty());
        }
        let mut symbols = Vec::with_capacity(t.len());
        for c in t.chars() {
            symbols.push(Symbol::from_char(c).ok_or_else(|| PermError::Parse {
                token: c.to_string(),
                reason: "word letters are 1, 2, a (F1⁻¹), b (F2⁻¹)".into(),
            })?);
        }
        symbols.reverse();
        Ok(Word { symbols })
    }

    /// Evaluates the word against the factor pair, applying letters right to left.
    pub fn evaluate(&self, f1: &Permutation, f2: &Permutation) -> Permutation {
        evaluate(self, f1, f2)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_walk_string())
    }
}

/// The permutation a word denotes; the empty word is the identity.
pub fn evaluate(w: &Word, f1: &Permutation, f2: &Permutation) -> Permutation {
    let n = f1.degree();
    let mut f1_inv = None;
    let mut f2_inv = None;
    let mut images: Vec<u32> = (0..n as u32).collect();
    for s in w.symbols.iter().rev() {
        let p = match s {
            Symbol::F1 => f1,
            Symbol::F2 => f2,
            Symbol::F1Inv => &*f1_inv.get_or_insert_with(|| f1.inverse()),
            Symbol::F2Inv => &*f2_inv.get_or_insert_with(|| f2.inverse()),
        };
        for v in images.iter_mut() {
            *v = p.images[*v as usize];
        }
    }
    Permutation { images }
}
