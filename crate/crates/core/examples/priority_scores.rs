// Scores one server with every priority function and prints the terms.

use edgescale::model::{MetricsWindow, Millis, PricingModel, PriorityPolicy, ServerDescriptor, Weights, WorkloadSpec};
use edgescale::priority::{compute_priority, DynamicCounters};

fn server() -> ServerDescriptor {
    ServerDescriptor {
        id: "arena".into(),
        users: 40,
        slo_latency: Millis(78.0),
        donation: true,
        down_threshold: 0.8,
        premium: 0.5,
        arrival_ordinal: 2,
        age: 1,
        loyalty: 3,
        workload: WorkloadSpec {
            request_rate: 80.0,
            rate_jitter: 0.0,
            data_per_request: 1.5,
            service_demand: 2.4,
        },
        net_latency_edge: Millis(20.0),
        net_latency_cloud: Millis(45.0),
        stateful: false,
        state_kb: 0.0,
    }
}

pub fn run_example() -> edgescale::Result<()> {
    let d = server();
    // One closed monitoring window: 80 requests from 40 users, 120 KB.
    let m = MetricsWindow::from_aggregates(80, 40, 120.0, Millis(64.0), 0.1);
    let counters = DynamicCounters { reward: 2, scale: 4 };
    let w = Weights::default();

    for pricing in [PricingModel::Pfr, PricingModel::Pfp] {
        println!("pricing {pricing}");
        println!("  {:<8} {:>8} {:>10} {:>8} {:>8} {:>10}", "policy", "static", "workload", "reward", "penalty", "total");
        for policy in [PriorityPolicy::Spm, PriorityPolicy::Wdps, PriorityPolicy::Cdps, PriorityPolicy::Sdps] {
            let b = compute_priority(policy, &d, &m, &w, pricing, counters)?;
            println!(
                "  {:<8} {:>8.3} {:>10.3} {:>8.3} {:>8.3} {:>10.3}",
                policy.name(),
                b.static_part,
                b.workload_part,
                b.reward_part,
                b.penalty_part,
                b.total
            );
        }
    }
    Ok(())
}

fn main() -> edgescale::Result<()> {
    run_example()
}
