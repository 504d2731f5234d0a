// Enumerates the 2^r one-factorizations of the 30-vertex A5 coset digraph and
// classifies them up to left multiplication and the swap F1 <-> F2.

use std::collections::BTreeMap;

use spanfact::digraph::{classify_factorizations, enumerate_factorizations, CosetDigraph};
use spanfact::fixtures;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let cd = CosetDigraph::build(&fixtures::a5_ex2()?)?;
    let (alt, facs) = enumerate_factorizations(&cd.digraph, 24)?;
    println!("r = {} alternating cycles, {} factorizations", alt.r(), facs.len());
    let classes = classify_factorizations(&alt, &facs, &cd.default_automorphisms(), true)?;
    let mut by_type: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for c in &classes {
        by_type.entry(c.f1_type.to_string()).or_default().push(c.size());
    }
    println!("{} classes", classes.len());
    println!("{:<14} {:>8}  class sizes", "cycle type", "classes");
    for (t, sizes) in &by_type {
        println!("{t:<14} {:>8}  {sizes:?}", sizes.len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
