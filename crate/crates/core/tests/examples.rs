macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(coset_digraph, "coset_digraph.rs");
example!(classify_factorizations, "classify_factorizations.rs");
example!(block_phase, "block_phase.rs");
example!(relocatable_trees, "relocatable_trees.rs");
example!(spanning_sets, "spanning_sets.rs");
example!(config_pipeline, "config_pipeline.rs");

#[test]
fn examples_run() {
    coset_digraph::run().unwrap();
    classify_factorizations::run().unwrap();
    block_phase::run().unwrap();
    relocatable_trees::run().unwrap();
    spanning_sets::run().unwrap();
    config_pipeline::run().unwrap();
}

#[test]
fn example_configs_parse() {
    for name in ["toy5", "a5-ex2", "morris"] {
        let path = format!("{}/examples/configs/{name}.json", env!("CARGO_MANIFEST_DIR"));
        let text = std::fs::read_to_string(&path).unwrap();
        spanfact::ExperimentConfig::parse(&text).unwrap_or_else(|e| panic!("{path}: {e}"));
    }
}
