// Parses scenario text, expands its templates, and shows how validation
// errors point at the offending field.

use std::path::Path;

use edgescale::scenario::parse_scenario_str;

const SCENARIO: &str = r#"
name = "small"

[node]
capacity = { cpu = 1024, mem = 512 }
latency = { base_service_ms = 40, contention_exponent = 1.5, noise_cv = 0.1 }

[[templates]]
count = 3
id_prefix = "web"
users = [10, 60]
slo_ms = 100
down_threshold = 0.8
requests_per_user = 1.5
data_per_request = 2.0
service_demand = [1.5, 3.0]
net_latency_edge_ms = 15
net_latency_cloud_ms = 70

[[templates]]
count = 1
id_prefix = "batch"
users = 5
slo_ms = 400
donation_probability = 1.0
down_threshold = 0.5
requests_per_user = 10
data_per_request = 50.0
service_demand = 1.0
net_latency_edge_ms = 15
net_latency_cloud_ms = 70
"#;

pub fn run_example() -> edgescale::Result<()> {
    let origin = Path::new("inline.cfg");
    let scenario = parse_scenario_str(SCENARIO, origin, true)?;
    println!("{}: {} servers, seeds {:?}", scenario.name, scenario.server_count(), scenario.seeds());
    for d in scenario.descriptors(1)? {
        println!(
            "  {:<6} users {:>3}  slo {:>5}  rate {:>6.1}/round  demand {:.2}  donates {}",
            d.id, d.users, d.slo_latency, d.workload.request_rate, d.workload.service_demand, d.donation
        );
    }

    let broken = SCENARIO.replace("down_threshold = 0.5", "down_threshold = 1.5");
    match parse_scenario_str(&broken, origin, true) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("threshold above 1 must be rejected"),
    }
    let typo = SCENARIO.replace("users = 5", "user = 5");
    match parse_scenario_str(&typo, origin, true) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!("missing field must be rejected"),
    }
    Ok(())
}

fn main() -> edgescale::Result<()> {
    run_example()
}
