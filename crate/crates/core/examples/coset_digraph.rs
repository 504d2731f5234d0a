// Builds coset digraphs from group data, checks the four presentation conditions and
// shows the Morris counterexample: a local-action kernel that is not normal.

use spanfact::digraph::CosetDigraph;
use spanfact::fixtures;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for p in [fixtures::a5_ex2()?, fixtures::morris()?] {
        let name = p.name.clone().unwrap_or_default();
        let report = p.validate();
        println!(
            "{name}: |G| = {}, |H| = {}, valid = {}",
            p.group.order(),
            p.subgroup().len(),
            report.is_valid()
        );
        for c in &report.checks {
            println!("  ({}) {:<42} {}", c.condition, c.statement, c.detail);
        }
        let kernel = p.local_action_kernel()?;
        println!(
            "  local-action kernel: order {}, normal in G: {}",
            kernel.order(),
            kernel.normal_in_group
        );
        let d = CosetDigraph::build(&p)?.digraph;
        println!(
            "  digraph: {} vertices, strongly connected: {}",
            d.n(),
            d.is_strongly_connected()
        );
        for v in 0..d.n().min(4) {
            println!("    {v} -> {:?}", d.out_neighbors(v));
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
