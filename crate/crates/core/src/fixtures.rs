//! Built-in instances: the two 30-vertex `A5` coset digraphs, the Morris
//! presentation, and the toy family on `{0,1} × Z_m`.

use std::fmt;
use std::str::FromStr;

use crate::group::{FiniteGroup, GroupError, Presentation};
use crate::perm::Permutation;

fn perm(s: &str, n: usize) -> Permutation {
    Permutation::parse(s, Some(n)).expect("fixture permutation")
}

fn a5_with_involution(name: &str, h: &str) -> Result<Presentation, GroupError> {
    let s = perm("(0 1 2 3 4)", 5);
    let h = perm(h, 5);
    let group = FiniteGroup::generate(5, &[s.clone(), perm("(0 1 2)", 5)])?;
    let hs = &h * &s;
    Presentation::new(Some(name.to_string()), group, vec![h], &[s, hs])
}

/// `D(A5, {s, hs}, ⟨h⟩)` with `h = (0 2)(1 3)`, `s = (0 1 2 3 4)`.
pub fn a5_ex2() -> Result<Presentation, GroupError> {
    a5_with_involution("a5-ex2", "(0 2)(1 3)")
}

/// `D(A5, {s, hs}, ⟨h⟩)` with `h = (0 1)(2 3)`, `s = (0 1 2 3 4)`.
pub fn a5_ex3() -> Result<Presentation, GroupError> {
    a5_with_involution("a5-ex3", "(0 1)(2 3)")
}

/// Generator `a_i` (`i ∈ {1,2,3}`) of `C2^3` in the 6-point realization of `C2^3 ⋊ C3`:
/// `a_i` swaps the `i`-th pair of points.
pub fn morris_a(i: usize) -> Permutation {
    assert!((1..=3).contains(&i));
    let p = 2 * (i - 1);
    Permutation::from_cycles(6, &[vec![p, p + 1]]).expect("valid cycle")
}

/// The 3-cycle `b` permuting the three pairs, so that `b a_i b⁻¹ = a_{i+1}`.
pub fn morris_b() -> Permutation {
    perm("(0 2 4)(1 3 5)", 6)
}

/// `G = C2^3 ⋊ C3`, `S = {b, a2 b}`, `H = ⟨a2, a3⟩`.
pub fn morris() -> Result<Presentation, GroupError> {
    let (a1, a2, a3, b) = (morris_a(1), morris_a(2), morris_a(3), morris_b());
    let group = FiniteGroup::generate(6, &[a1, a2.clone(), a3.clone(), b.clone()])?;
    let a2b = &a2 * &b;
    Presentation::new(Some("morris".to_string()), group, vec![a2, a3], &[b, a2b])
}

/// A named built-in instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    A5Ex2,
    A5Ex3,
    Morris,
    Toy(usize),
}

impl Fixture {
    pub fn presentation(self) -> Option<Result<Presentation, GroupError>> {
        match self {
            Fixture::A5Ex2 => Some(a5_ex2()),
            Fixture::A5Ex3 => Some(a5_ex3()),
            Fixture::Morris => Some(morris()),
            Fixture::Toy(_) => None,
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::A5Ex2 => f.write_str("a5-ex2"),
            Fixture::A5Ex3 => f.write_str("a5-ex3"),
            Fixture::Morris => f.write_str("morris"),
            Fixture::Toy(m) => write!(f, "toy:{m}"),
        }
    }
}

impl FromStr for Fixture {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a5-ex2" => Ok(Fixture::A5Ex2),
            "a5-ex3" => Ok(Fixture::A5Ex3),
            "morris" => Ok(Fixture::Morris),
            _ => {
                let m = s
                    .strip_prefix("toy:")
                    .ok_or_else(|| format!("unknown fixture `{s}` (expected a5-ex2, a5-ex3, morris or toy:<m>)"))?;
                m.parse::<usize>()
                    .map(Fixture::Toy)
                    .map_err(|_| format!("bad toy size `{m}`"))
            }
        }
    }
}
