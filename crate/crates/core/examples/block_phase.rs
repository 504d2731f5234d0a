// The block/phase analysis on the toy family: position system, phases, atoms,
// invariant refinements, and the relative block permutation before and after
// swapping labels on alternating cycles.

use spanfact::blocks::{
    difference_class_orbits, invariant_refinements, invariant_transversal, phase_profile, position_system,
    relative_block_permutation, swap_relabel,
};
use spanfact::digraph::{alternating_cycles, build_toy};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let (d, f) = build_toy(4)?;
    let ps = position_system(&f)?;
    println!("x = {}, m = {}, r = {}", f.x().to_cycle_string(), ps.m, ps.r);
    let pp = phase_profile(&f, &ps)?;
    println!("phases δ = {:?}, phase counts r_d = {:?}", pp.delta, pp.phase_counts);
    let pi = difference_class_orbits(&f, &ps);
    for r in invariant_refinements(&f, &ps, &pi) {
        println!(
            "  U = {:?}: block sizes {:?}, invariant = {}",
            r.classes,
            r.block_sizes(),
            r.invariant
        );
    }

    let alt = alternating_cycles(&d, &f);
    for (label, bs) in [("position", ps.block_system()), ("x-cycles", ps.cycle_block_system())] {
        let tau = relative_block_permutation(&f, &bs)?;
        println!(
            "{label}: τ = {}, derangement = {}",
            tau.tau.to_cycle_string(),
            tau.derangement
        );
    }

    // a mixed factorization can need a different transversal for its position blocks
    let g = swap_relabel(&f, &alt, 0b01);
    let gs = position_system(&g)?;
    match invariant_transversal(&g, &gs) {
        Some(q) => {
            let tau = relative_block_permutation(&g, &q.block_system())?;
            println!(
                "swapped cycle 0: invariant transversal P_0 = {:?}, τ = {}",
                q.blocks[0],
                tau.tau.to_cycle_string()
            );
        }
        None => println!("swapped cycle 0: no transversal gives invariant position blocks"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
