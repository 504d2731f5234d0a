//! Finite permutation groups by explicit enumeration, right cosets `gH`, and
//! Cayley–coset presentations `(G, S, H)`.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::perm::{PermError, Permutation};

pub const DEFAULT_GROUP_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("group closure exceeds the cap of {cap} elements")]
    SizeCap { cap: usize },
    #[error("generator has degree {found}, expected {expected}")]
    Degree { expected: usize, found: usize },
    #[error("subgroup generator {0} is not an element of the group")]
    NotASubgroup(String),
    #[error("element {0} is not in the group")]
    NotAnElement(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// A finite group given by generating permutations, with every element listed.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl FiniteGroup {
    /// Closure of `generators` under composition with the default size cap.
    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<Self, GroupError> {
        Self::generate_capped(degree, generators, DEFAULT_GROUP_CAP)
    }

    /// Breadth-first closure from the identity; element `0` is the identity and the
    /// order is determined by the generator order.
    pub fn generate_capped(degree: usize, generators: &[Permutation], cap: usize) -> Result<Self, GroupError> {
        for g in generators {
            if g.degree() != degree {
                return Err(GroupError::Degree {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let h = &elements[i] * g;
                if !index.contains_key(&h) {
                    if elements.len() >= cap {
                        return Err(GroupError::SizeCap { cap });
                    }
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        Ok(FiniteGroup {
            degree,
            generators: generators.to_vec(),
            elements,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&(&self.elements[a] * &self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Element indices of the subgroup generated by the given element indices.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = HashSet::from([0usize]);
        let mut out = vec![0usize];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let h = self.mul(out[i], g);
                if seen.insert(h) {
                    out.push(h);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }
}

/// The right cosets `gH` of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    subgroup: Vec<usize>,
    cosets: Vec<Vec<usize>>,
    representatives: Vec<usize>,
    coset_of: Vec<usize>,
}

impl CosetSpace {
    /// Cosets ordered by their minimal element index, which is also the representative;
    /// coset `0` is `H` itself.
    pub fn new(group: &FiniteGroup, h_generators: &[Permutation]) -> Result<Self, GroupError> {
        let mut gens = Vec::with_capacity(h_generators.len());
        for h in h_generators {
            if h.degree() != group.degree() {
                return Err(GroupError::Degree {
                    expected: group.degree(),
                    found: h.degree(),
                });
            }
            gens.push(
                group
                    .index_of(h)
                    .ok_or_else(|| GroupError::NotASubgroup(h.to_cycle_string()))?,
            );
        }
        let subgroup = group.subgroup_closure(&gens);
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut cosets = Vec::new();
        let mut representatives = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = cosets.len();
            let mut members: Vec<usize> = subgroup.iter().map(|&h| group.mul(g, h)).collect();
            members.sort_unstable();
            for &m in &members {
                coset_of[m] = id;
            }
            representatives.push(g);
            cosets.push(members);
        }
        Ok(CosetSpace {
            subgroup,
            cosets,
            representatives,
            coset_of,
        })
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c]
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    pub fn in_subgroup(&self, g: usize) -> bool {
        self.coset_of[g] == 0
    }
}

/// A Cayley–coset presentation `D(G, S, H)`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: Option<String>,
    pub group: FiniteGroup,
    pub h_generators: Vec<Permutation>,
    /// Element indices of `S`.
    pub s: Vec<usize>,
    cosets: CosetSpace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub condition: u8,
    pub statement: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<ConditionCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn holds(&self, condition: u8) -> bool {
        self.checks.iter().any(|c| c.condition == condition && c.holds)
    }
}

/// Outcome of rewriting a degree-2 presentation as `S' = {s, hs}`.
#[derive(Clone, Debug)]
pub enum Normalization {
    Swapped {
        /// Element index of the chosen `h ∈ H` with `hsH ≠ sH`.
        h: usize,
        /// Element index of `k ∈ H` with `hs = tk`.
        k: usize,
        presentation: Box<Presentation>,
    },
    /// Every `h ∈ H` fixes both cosets `sH` and `tH`.
    NoSwap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalActionKernel {
    /// Element indices of the kernel, ascending.
    pub elements: Vec<usize>,
    pub normal_in_group: bool,
}

impl LocalActionKernel {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

impl Presentation {
    pub fn new(
        name: Option<String>,
        group: FiniteGroup,
        h_generators: Vec<Permutation>,
        s_elements: &[Permutation],
    ) -> Result<Self, GroupError> {
        let cosets = CosetSpace::new(&group, &h_generators)?;
        let s = s_elements
            .iter()
            .map(|p| {
                group
                    .index_of(p)
                    .ok_or_else(|| GroupError::NotAnElement(p.to_cycle_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Presentation {
            name,
            group,
            h_generators,
            s,
            cosets,
        })
    }

    pub fn cosets(&self) -> &CosetSpace {
        &self.cosets
    }

    pub fn subgroup(&self) -> &[usize] {
        self.cosets.subgroup()
    }

    pub fn s_elements(&self) -> Vec<&Permutation> {
        self.s.iter().map(|&i| self.group.element(i)).collect()
    }

    /// Checks conditions (1)–(4) of a Cayley–coset presentation.
    pub fn validate(&self) -> ValidationReport {
        let g = &self.group;
        let h = self.subgroup();
        let cs = &self.cosets;

        let in_h: Vec<usize> = self.s.iter().copied().filter(|&s| cs.in_subgroup(s)).collect();
        let c1 = ConditionCheck {
            condition: 1,
            statement: "S ∩ H = ∅",
            holds: in_h.is_empty(),
            detail: if in_h.is_empty() {
                "no element of S lies in H".into()
            } else {
                format!("S elements in H: {}", self.describe(&in_h))
            },
        };

        let sh: HashSet<usize> = self
            .s
            .iter()
            .flat_map(|&s| h.iter().map(move |&k| (s, k)))
            .map(|(s, k)| g.mul(s, k))
            .collect();
        let hsh: HashSet<usize> = h
            .iter()
            .flat_map(|&a| sh.iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.mul(a, b))
            .collect();
        let c2 = ConditionCheck {
            condition: 2,
            statement: "HSH = SH",
            holds: hsh == sh,
            detail: format!("|HSH| = {}, |SH| = {}", hsh.len(), sh.len()),
        };

        let s_cosets: Vec<usize> = self.s.iter().map(|&s| cs.coset_of(s)).collect();
        let distinct: HashSet<usize> = s_cosets.iter().copied().collect();
        let c3 = ConditionCheck {
            condition: 3,
            statement: "S has one representative per coset of SH",
            holds: distinct.len() == self.s.len(),
            detail: format!("{} elements of S cover {} cosets", self.s.len(), distinct.len()),
        };

        let gen_s = g.subgroup_closure(&self.s);
        let prod: HashSet<usize> = gen_s
            .iter()
            .flat_map(|&a| h.iter().map(move |&k| (a, k)))
            .map(|(a, k)| g.mul(a, k))
            .collect();
        let c4 = ConditionCheck {
            condition: 4,
            statement: "G = ⟨S⟩H",
            holds: prod.len() == g.order(),
            detail: format!("|⟨S⟩H| = {}, |G| = {}", prod.len(), g.order()),
        };

        ValidationReport {
            checks: vec![c1, c2, c3, c4],
        }
    }

    fn describe(&self, elems: &[usize]) -> String {
        elems
            .iter()
            .map(|&e| self.group.element(e).to_cycle_string())
            .collect::<Vec<_>>()
            .join(", ")
    }

    fn require_degree2(&self) -> Result<(usize, usize), GroupError> {
        if self.s.len() != 2 {
            return Err(GroupError::Precondition(format!("|S| = {}, expected 2", self.s.len())));
        }
        let report = self.validate();
        if !report.is_valid() {
            let failed: Vec<String> = report
                .checks
                .iter()
                .filter(|c| !c.holds)
                .map(|c| format!("({}) {}", c.condition, c.statement))
                .collect();
            return Err(GroupError::Precondition(format!(
                "invalid presentation: {}",
                failed.join("; ")
            )));
        }
        Ok((self.s[0], self.s[1]))
    }

    /// Rewrites `S = {s, t}` as `{s, hs}` using the first `h ∈ H` (by element index)
    /// with `hsH ≠ sH`.
    pub fn normalize_degree2(&self) -> Result<Normalization, GroupError> {
        let (s, t) = self.require_degree2()?;
        let g = &self.group;
        let cs = &self.cosets;
        let s_coset = cs.coset_of(s);
        let Some(&h) = self.subgroup().iter().find(|&&h| cs.coset_of(g.mul(h, s)) != s_coset) else {
            return Ok(Normalization::NoSwap);
        };
        let hs = g.mul(h, s);
        let k = g.mul(g.inv(t), hs);
        debug_assert!(cs.in_subgroup(k));
        let presentation = Presentation {
            name: self.name.clone(),
            group: self.group.clone(),
            h_generators: self.h_generators.clone(),
            s: vec![s, hs],
            cosets: self.cosets.clone(),
        };
        Ok(Normalization::Swapped {
            h,
            k,
            presentation: Box::new(presentation),
        })
    }

    /// Kernel of the action of `H` on the two cosets `{sH, tH}` by left multiplication,
    /// and whether that kernel is normal in `G`.
    pub fn local_action_kernel(&self) -> Result<LocalActionKernel, GroupError> {
        let (s, t) = self.require_degree2()?;
        let g = &self.group;
        let cs = &self.cosets;
        let kernel: Vec<usize> = self
            .subgroup()
            .iter()
            .copied()
            .filter(|&h| cs.coset_of(g.mul(h, s)) == cs.coset_of(s) && cs.coset_of(g.mul(h, t)) == cs.coset_of(t))
            .collect();
        let members: HashSet<usize> = kernel.iter().copied().collect();
        let gens: Vec<usize> = g.generators().iter().filter_map(|p| g.index_of(p)).collect();
        let normal = gens.iter().all(|&x| {
            let xi = g.inv(x);
            kernel.iter().all(|&k| members.contains(&g.mul(g.mul(x, k), xi)))
        });
        Ok(LocalActionKernel {
            elements: kernel,
            normal_in_group: normal,
        })
    }

    /// Same presentation with `S` replaced by the given element indices.
    pub fn with_s(&self, s: Vec<usize>) -> Presentation {
        Presentation {
            name: self.name.clone(),
            group: self.group.clone(),
            h_generators: self.h_generators.clone(),
            s,
            cosets: self.cosets.clone(),
        }
    }
}
