#[allow(dead_code)]
mod priority_scores {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/priority_scores.rs"));
}

#[test]
fn priority_scores_example_runs() {
    priority_scores::run_example().expect("priority_scores example should run");
}

#[allow(dead_code)]
mod rank_servers {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rank_servers.rs"));
}

#[test]
fn rank_servers_example_runs() {
    rank_servers::run_example().expect("rank_servers example should run");
}

#[allow(dead_code)]
mod scaling_round {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scaling_round.rs"));
}

#[test]
fn scaling_round_example_runs() {
    scaling_round::run_example().expect("scaling_round example should run");
}

#[allow(dead_code)]
mod run_scenario {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/run_scenario.rs"));
}

#[test]
fn run_scenario_example_runs() {
    run_scenario::run_example().expect("run_scenario example should run");
}

#[allow(dead_code)]
mod compare_policies {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/compare_policies.rs"));
}

#[test]
fn compare_policies_example_runs() {
    compare_policies::run_example().expect("compare_policies example should run");
}

#[allow(dead_code)]
mod sweep_servers {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sweep_servers.rs"));
}

#[test]
fn sweep_servers_example_runs() {
    sweep_servers::run_example().expect("sweep_servers example should run");
}

#[allow(dead_code)]
mod weight_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/weight_sweep.rs"));
}

#[test]
fn weight_sweep_example_runs() {
    weight_sweep::run_example().expect("weight_sweep example should run");
}

#[allow(dead_code)]
mod export_trace {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/export_trace.rs"));
}

#[test]
fn export_trace_example_runs() {
    export_trace::run_example().expect("export_trace example should run");
}

#[allow(dead_code)]
mod latency_bands {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/latency_bands.rs"));
}

#[test]
fn latency_bands_example_runs() {
    latency_bands::run_example().expect("latency_bands example should run");
}

#[allow(dead_code)]
mod custom_latency_model {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/custom_latency_model.rs"));
}

#[test]
fn custom_latency_model_example_runs() {
    custom_latency_model::run_example().expect("custom_latency_model example should run");
}

#[allow(dead_code)]
mod parse_scenario {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/parse_scenario.rs"));
}

#[test]
fn parse_scenario_example_runs() {
    parse_scenario::run_example().expect("parse_scenario example should run");
}
