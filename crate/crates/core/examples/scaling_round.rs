// One scaling round on a small, full node.
//
// `hot` violates its SLO and needs more CPU than the free pool holds, so the
// lowest-priority server is evicted to make room. `idle` is well under its
// SLO and gives back one unit.

use edgescale::model::{MetricsWindow, Millis, PricingModel, PriorityPolicy, ResourceVector, ServerDescriptor, Weights, WorkloadSpec};
use edgescale::{EdgeNode, Scaler};

fn server(id: &str, ordinal: u32, users: u32) -> ServerDescriptor {
    ServerDescriptor {
        id: id.into(),
        users,
        slo_latency: Millis(78.0),
        donation: false,
        down_threshold: 0.8,
        premium: 0.0,
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
    let unit = ResourceVector::new(64, 32);
    let mut node = EdgeNode::deploy(
        ResourceVector::new(1024, 512),
        unit,
        unit,
        vec![server("hot", 1, 90), server("steady", 2, 50), server("idle", 3, 5), server("spare", 4, 1)],
        &Weights::default(),
    )?;

    let windows = [
        MetricsWindow::from_aggregates(180, 90, 180.0, Millis(96.0), 0.8),
        MetricsWindow::from_aggregates(100, 50, 100.0, Millis(70.0), 0.0),
        MetricsWindow::from_aggregates(10, 5, 10.0, Millis(60.0), 0.0),
        MetricsWindow::from_aggregates(2, 1, 2.0, Millis(61.0), 0.0),
    ];
    let report = Scaler::default().scaling_round(
        &mut node,
        &windows,
        1,
        PriorityPolicy::Wdps,
        &Weights::default(),
        PricingModel::Pfr,
    )?;

    println!("order: {}", report.ordering.join(" > "));
    for s in &report.servers {
        let decision = s.decision.as_ref().map_or("-".to_string(), ToString::to_string);
        println!("  {:<7} {:<32} now {}", s.id, decision, s.allocation);
    }
    for e in &report.evictions {
        println!("evicted {} (freed {}) for {}", e.victim, e.freed, e.cause);
    }
    println!("free pool {}, conserved: {}", node.free(), node.is_conserved());
    println!("vr_e this round {:.3}, {} operations", report.vr_e_before, report.op_count);
    Ok(())
}

fn main() -> edgescale::Result<()> {
    run_example()
}
