// Runs the configured pipeline from a JSON document and prints the record stream,
// as `spanfact run --config` does.

use spanfact::cli::run_pipeline;
use spanfact::report::{emit_table, Format};
use spanfact::ExperimentConfig;

const CONFIG: &str = include_str!("configs/toy5.json");

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::parse(CONFIG)?;
    let outcome = run_pipeline(&cfg);
    print!("{}", emit_table(&outcome.records, cfg.format.unwrap_or(Format::Tsv)));
    if let Some(e) = outcome.error {
        return Err(e.into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
