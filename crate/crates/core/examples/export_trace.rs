// Writes a run as a JSON Lines trace, reads it back, and shows one record.

use std::path::Path;

use edgescale::report::{export_trace, read_trace};
use edgescale::scenario::parse_scenario;
use edgescale::sim::run_scenario;

pub fn run_example() -> edgescale::Result<()> {
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/fd-32.cfg"));
    let scenario = parse_scenario(path)?;
    let mut config = scenario.config(3);
    config.rounds = 4;
    let run = run_scenario(&config, scenario.descriptors(3)?)?;

    let out = std::env::temp_dir().join(format!("edgescale-trace-{}.jsonl", std::process::id()));
    export_trace(&run.timeline, &out)?;
    let records = read_trace(&out)?;
    println!("wrote {} records to {}", records.len(), out.display());

    let last = records.last().expect("four rounds");
    println!("round {} ({}, {}): vr_e {}", last.round, last.policy, last.pricing, last.vr_e);
    for s in last.servers.iter().take(5) {
        println!(
            "  {:<5} cpu {:>4} latency {:>8} ms  {}",
            s.id, s.allocation_cpu, s.avg_latency_ms, s.decision
        );
    }
    std::fs::remove_file(&out).map_err(|e| edgescale::Error::Io { path: out, source: e })?;
    Ok(())
}

fn main() -> edgescale::Result<()> {
    run_example()
}
