// Runs every policy of a scenario on the same seeds and workload traces and
// prints mean violation rate and lowest-band share per policy.
//
// cargo run --release --example compare_policies -- [scenario.cfg]

use std::path::{Path, PathBuf};

use edgescale::runner::{cmd_compare, RunOptions};
use edgescale::scenario::parse_scenario;

fn compare(path: &Path) -> edgescale::Result<()> {
    let scenario = parse_scenario(path)?;
    let cmp = cmd_compare(&scenario, &RunOptions::default())?;
    println!("{:>6} {:>4} {:>10} {:>8} {:>8} {:>8}", "slo", "n", "policy", "vr_e", "std", "lowest");
    for row in &cmp.rows {
        let (mean, std) = row.vr_e();
        let slo = row.slo.map_or_else(|| "own".to_string(), |s| s.0.to_string());
        println!(
            "{:>6} {:>4} {:>10} {:>8.4} {:>8.4} {:>8.4}",
            slo,
            row.n_servers,
            row.policy,
            mean,
            std,
            row.lowest_band()
        );
    }
    Ok(())
}

pub fn run_example() -> edgescale::Result<()> {
    compare(Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/ipokemon-32.cfg")))
}

fn main() -> edgescale::Result<()> {
    match std::env::args().nth(1) {
        Some(p) => compare(&PathBuf::from(p)),
        None => run_example(),
    }
}
