// Swaps the default contention model for a queueing-style one.
//
// Anything implementing `LatencyModel` can drive the simulator. Here the
// service time grows as `1 / (1 - ρ)` and saturates just below ρ = 1.

use std::path::Path;
use std::sync::Arc;

use edgescale::model::Millis;
use edgescale::scenario::parse_scenario;
use edgescale::sim::{LatencyModel, Simulator, WorkloadTrace};

struct Queueing {
    base: f64,
    cv: f64,
}

impl LatencyModel for Queueing {
    fn edge_latency(&self, net: Millis, rho: f64, jitter: f64) -> Millis {
        let load = rho.min(0.98);
        Millis(net.0 + self.base / (1.0 - load) * (1.0 + jitter))
    }

    fn cloud_latency(&self, net: Millis, jitter: f64) -> Millis {
        Millis(net.0 + self.base * (1.0 + jitter))
    }

    fn noise_cv(&self) -> f64 {
        self.cv
    }
}

pub fn run_example() -> edgescale::Result<()> {
    let path = Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/ipokemon-32.cfg"));
    let scenario = parse_scenario(path)?;
    let config = scenario.config(11);
    let descriptors = scenario.descriptors(11)?;
    let trace = Arc::new(WorkloadTrace::generate(&descriptors, config.rounds, config.seed));
    let model = Box::new(Queueing { base: 20.0, cv: 0.1 });

    let mut sim = Simulator::with_model(config.clone(), descriptors, trace, model)?;
    for _ in 0..config.rounds {
        let out = sim.simulate_round()?;
        println!(
            "round {:>2}: vr_e {:.3}, {} evictions",
            out.report.round_index,
            out.report.vr_e_before,
            out.report.evictions.len()
        );
    }
    Ok(())
}

fn main() -> edgescale::Result<()> {
    run_example()
}
