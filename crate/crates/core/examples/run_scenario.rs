// Runs the bundled game-server scenario for one seed and prints the node
// violation rate round by round.

use std::path::Path;

use edgescale::scenario::parse_scenario;
use edgescale::sim::run_scenario;

pub fn run_example() -> edgescale::Result<()> {
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/ipokemon-32.cfg"));
    let scenario = parse_scenario(path)?;
    let seed = 7;
    let run = run_scenario(&scenario.config(seed), scenario.descriptors(seed)?)?;

    println!("{} seed {seed}, policy {}", scenario.name, run.timeline.policy);
    println!("{:>5} {:>7} {:>11} {:>7} {:>9}", "round", "vr_e", "vr_e(after)", "active", "evictions");
    for r in &run.timeline.rounds {
        let active = r.servers.iter().filter(|s| s.active).count();
        println!(
            "{:>5} {:>7.3} {:>11.3} {:>7} {:>9}",
            r.round_index,
            r.vr_e_before,
            r.vr_e_after.unwrap_or(f64::NAN),
            active,
            r.evictions.len()
        );
    }
    println!("mean vr_e {:.4} over {} requests", run.timeline.mean_vr_e(), run.samples.len());
    Ok(())
}

fn main() -> edgescale::Result<()> {
    run_example()
}
