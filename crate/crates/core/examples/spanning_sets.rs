// Sharply transitive word sets containing ∅, [1], [2]: the block-derangement
// construction where its precondition holds, and direct search where it does not.

use spanfact::blocks::{block_construction, position_system};
use spanfact::digraph::build_toy;
use spanfact::spanning::{search_sharply_transitive, verify_sharply_transitive, SharpSearch, SharpSearchBudget};
use spanfact::Word;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let budget = SharpSearchBudget::default();
    let required = [Word::empty(), Word::from_indices(&[1]), Word::from_indices(&[2])];
    for m in 3..=5 {
        let f = build_toy(m)?.1;
        let ps = position_system(&f)?;
        match block_construction(&f, &ps.block_system(), 4 * f.n(), &budget) {
            Ok(ws) => println!(
                "toy:{m} position blocks: {} (verified {})",
                ws.walk_strings().join(" "),
                verify_sharply_transitive(&ws, &f).passes
            ),
            Err(e) => println!("toy:{m} position blocks: {e}"),
        }
        if let Err(e) = block_construction(&f, &ps.cycle_block_system(), 4 * f.n(), &budget) {
            println!("toy:{m} x-cycle blocks: {e}");
        }
        if let SharpSearch::Found(ws) = search_sharply_transitive(&f, &required, &budget) {
            println!("toy:{m} search: {}", ws.walk_strings().join(" "));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
