// Violation rate against the number of tenants sharing the node, for the
// baseline and two scaling policies.

use std::path::Path;

use edgescale::runner::{sweep_servers, RunOptions};
use edgescale::scenario::parse_scenario;
use edgescale::PriorityPolicy;

pub fn run_example() -> edgescale::Result<()> {
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/ipokemon-32.cfg"));
    let mut scenario = parse_scenario(path)?;
    scenario.experiment.server_counts = vec![8, 16, 24, 32];
    scenario.experiment.slo_ms = vec![78.0];
    scenario.experiment.policies = vec![PriorityPolicy::NoScaling, PriorityPolicy::Spm, PriorityPolicy::Sdps];
    scenario.experiment.seeds = (1..=5).collect();

    for curve in sweep_servers(&scenario, &RunOptions::default())? {
        println!("SLO {} ms", curve.slo.map_or(f64::NAN, |s| s.0));
        for r in &curve.rows {
            println!("  {:<10} n={:<3} vr_e {:.3} ± {:.3}", r.policy, r.n_servers, r.mean_vr_e, r.std_vr_e);
        }
    }
    Ok(())
}

fn main() -> edgescale::Result<()> {
    run_example()
}
