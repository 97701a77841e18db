// Bins every request of a run into latency bands relative to its SLO and
// compares the baseline against dynamic scaling.

use std::path::Path;

use edgescale::report::LatencyBands;
use edgescale::scenario::parse_scenario;
use edgescale::sim::run_scenario;
use edgescale::PriorityPolicy;

pub fn run_example() -> edgescale::Result<()> {
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/ipokemon-32.cfg"));
    let scenario = parse_scenario(path)?;
    let edges = &scenario.experiment.band_edges;
    let seed = 2;

    let mut labels_printed = false;
    for policy in [PriorityPolicy::NoScaling, PriorityPolicy::Sdps] {
        let mut config = scenario.config(seed);
        config.policy = policy;
        let run = run_scenario(&config, scenario.descriptors(seed)?)?;
        let mut bands = LatencyBands::empty(edges);
        for (latency, slo) in run.samples.iter() {
            bands.add(latency, slo);
        }
        if !labels_printed {
            print!("{:<10}", "");
            for l in bands.labels() {
                print!(" {l:>12}");
            }
            println!();
            labels_printed = true;
        }
        print!("{:<10}", policy.name());
        for f in bands.fractions() {
            print!(" {:>12.3}", f);
        }
        println!();
    }
    Ok(())
}

fn main() -> edgescale::Result<()> {
    run_example()
}
