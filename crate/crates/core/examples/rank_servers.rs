// Orders a handful of servers under static and dynamic priorities.
//
// The static order follows premium, arrival, age and loyalty. The dynamic
// orders also reward heavy recent workload.

use edgescale::model::{
    MetricsWindow, Millis, PricingModel, PriorityPolicy, ResourceVector, ServerDescriptor, ServerRuntime, Weights,
    WorkloadSpec,
};
use edgescale::priority::{compute_sps, rank_servers};

fn server(id: &str, ordinal: u32, premium: f64, users: u32) -> ServerDescriptor {
    ServerDescriptor {
        id: id.into(),
        users,
        slo_latency: Millis(78.0),
        donation: false,
        down_threshold: 0.8,
        premium,
        arrival_ordinal: ordinal,
        age: 0,
        loyalty: 0,
        workload: WorkloadSpec {
            request_rate: 2.0 * users as f64,
            rate_jitter: 0.0,
            data_per_request: 1.0,
            service_demand: 2.4,
        },
        net_latency_edge: Millis(20.0),
        net_latency_cloud: Millis(45.0),
        stateful: false,
        state_kb: 0.0,
    }
}

pub fn run_example() -> edgescale::Result<()> {
    let w = Weights::default();
    let share = ResourceVector::new(256, 128);
    let servers: Vec<(ServerRuntime, MetricsWindow)> = [
        server("early-quiet", 1, 0.0, 5),
        server("premium", 2, 1.0, 30),
        server("late-busy", 3, 0.0, 90),
        server("late-twin", 4, 0.0, 90),
    ]
    .into_iter()
    .map(|d| {
        let requests = d.workload.request_rate as u64;
        let m = MetricsWindow::from_aggregates(requests, d.users, requests as f64, Millis(70.0), 0.0);
        let sps = compute_sps(&d, &w);
        (ServerRuntime::new(d, share, sps), m)
    })
    .collect();

    for policy in [PriorityPolicy::Spm, PriorityPolicy::Wdps] {
        println!("{policy}:");
        for (rank, r) in rank_servers(&servers, policy, &w, PricingModel::Pfr)?.iter().enumerate() {
            println!("  {}. {:<12} {:>9.3}", rank + 1, r.id, r.score);
        }
    }
    // late-busy and late-twin carry identical workloads; only the arrival
    // term of the static score separates them.
    Ok(())
}

fn main() -> edgescale::Result<()> {
    run_example()
}
