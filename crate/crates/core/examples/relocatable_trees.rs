// Exhaustive branch-and-bound for the largest relocatable tree of one
// factorization per class, with the witness re-checked independently.

use spanfact::digraph::{classify_factorizations, enumerate_factorizations, CosetDigraph};
use spanfact::fixtures;
use spanfact::spanning::{check_reloc_tree, max_relocatable_tree, PrefixConvention, TreeBudget};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let cd = CosetDigraph::build(&fixtures::a5_ex3()?)?;
    let (alt, facs) = enumerate_factorizations(&cd.digraph, 24)?;
    let classes = classify_factorizations(&alt, &facs, &cd.default_automorphisms(), true)?;
    for c in &classes {
        let f = &facs[c.representative as usize];
        let out = max_relocatable_tree(f, &TreeBudget::default())?;
        let words = &out.tree.words.words;
        let checked = check_reloc_tree(words, f.f1.images(), f.f2.images(), PrefixConvention::LastApplied);
        println!(
            "class {} {}: max tree {} (certified {}, {} nodes, checker {:?})",
            c.id,
            c.f1_type,
            out.size(),
            out.certified,
            out.nodes,
            checked.map(|_| "ok")
        );
        println!("  {}", out.tree.words.walk_strings().join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
