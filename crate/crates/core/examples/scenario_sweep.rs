//! Programmatic sweep from a scenario file, written as CSV to stdout.

use larmor_clock::scenario::record::write_csv;
use larmor_clock::scenario::{run_sweep, ScenarioConfig, Spacing, SweepAxis, SweepSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/rectangular.json");
    let config = ScenarioConfig::from_json(&std::fs::read_to_string(path)?)?;
    let spec = SweepSpec {
        axis: SweepAxis::D,
        start: 0.1,
        stop: 5.0,
        count: 12,
        spacing: Spacing::Log,
    };
    let records = run_sweep(&config, &spec)?;
    write_csv(std::io::stdout().lock(), &records)?;
    Ok(())
}
