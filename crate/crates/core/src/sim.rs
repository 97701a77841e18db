//! Deterministic round-based simulation of one edge node.
//!
//! Each round draws a request count per server from a pre-generated workload
//! trace, turns allocations into per-request latencies through a
//! [`LatencyModel`], feeds the monitor, and hands the closed windows to the
//! scaler. Workload and latency noise come from separate substreams of the
//! run seed, so the workload a policy sees does not depend on the policy.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    MetricsWindow, Millis, PricingModel, PriorityPolicy, ResourceVector, ServerDescriptor, Weights,
};
use crate::monitor::{finalize, node_violation_rate, Monitor};
use crate::node::EdgeNode;
use crate::priority::FactorScaling;
use crate::scaler::{RoundReport, Scaler};

/// Named substreams of a run seed.
pub mod streams {
    pub const WORKLOAD: u64 = 1;
    pub const NOISE: u64 = 2;
    pub const EXPANSION: u64 = 3;
}

/// A ChaCha generator for `stream` of `seed`.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatencyModelParams {
    /// Service time of one request when the server is not overloaded.
    #[serde(rename = "base_service_ms")]
    pub base_service_time: Millis,
    pub contention_exponent: f64,
    /// Coefficient of variation of the multiplicative per-request jitter.
    #[serde(default)]
    pub noise_cv: f64,
}

impl LatencyModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.base_service_time.0.is_finite() && self.base_service_time.0 > 0.0) {
            return Err(Error::invalid("latency.base_service_ms", "must be positive"));
        }
        if !(self.contention_exponent.is_finite() && self.contention_exponent >= 1.0) {
            return Err(Error::invalid("latency.contention_exponent", "must be at least 1"));
        }
        if !(self.noise_cv.is_finite() && self.noise_cv >= 0.0) {
            return Err(Error::invalid("latency.noise_cv", "must be non-negative"));
        }
        Ok(())
    }
}

/// Maps utilization and network delay to a request latency.
pub trait LatencyModel: Send + Sync {
    /// Latency of one request served on the edge at utilization `rho`.
    fn edge_latency(&self, net: Millis, rho: f64, jitter: f64) -> Millis;
    /// Latency of one request served by the (uncontended) cloud.
    fn cloud_latency(&self, net: Millis, jitter: f64) -> Millis;
    fn noise_cv(&self) -> f64;
}

/// `net + base · max(1, ρ)^k · (1 + jitter)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContentionModel(pub LatencyModelParams);

impl LatencyModel for ContentionModel {
    fn edge_latency(&self, net: Millis, rho: f64, jitter: f64) -> Millis {
        let p = &self.0;
        Millis(net.0 + p.base_service_time.0 * rho.max(1.0).powf(p.contention_exponent) * (1.0 + jitter))
    }

    fn cloud_latency(&self, net: Millis, jitter: f64) -> Millis {
        Millis(net.0 + self.0.base_service_time.0 * (1.0 + jitter))
    }

    fn noise_cv(&self) -> f64 {
        self.0.noise_cv
    }
}

/// Utilization of a server handling `requests` in a round with `cpu` shares.
pub fn utilization(requests: u64, service_demand: f64, cpu: u64) -> f64 {
    if cpu == 0 {
        return f64::INFINITY;
    }
    requests as f64 * service_demand / cpu as f64
}

/// Node-wide settings for one simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeConfig {
    pub capacity: ResourceVector,
    pub unit: ResourceVector,
    pub min_allocation: ResourceVector,
    pub round_interval: Millis,
    pub rounds: u32,
    pub policy: PriorityPolicy,
    pub pricing: PricingModel,
    pub weights: Weights,
    pub latency: LatencyModelParams,
    pub seed: u64,
    pub factor_scaling: FactorScaling,
    pub idle_limit: Option<u32>,
    pub migration_bandwidth_kbps: f64,
}

impl NodeConfig {
    pub fn validate(&self, n_servers: usize) -> Result<()> {
        if self.unit.is_zero() {
            return Err(Error::invalid("node.unit", "must be non-zero"));
        }
        if self.round_interval.0.is_nan() || self.round_interval.0 <= 0.0 {
            return Err(Error::invalid("node.round_interval_s", "must be positive"));
        }
        if !self.min_allocation.times(n_servers as u64).fits_in(&self.capacity) {
            return Err(Error::InsufficientCapacity(format!(
                "{n_servers} servers need {} but capacity is {}",
                self.min_allocation.times(n_servers as u64),
                self.capacity
            )));
        }
        self.weights.validate()?;
        self.latency.validate()?;
        if !(self.migration_bandwidth_kbps.is_finite() && self.migration_bandwidth_kbps >= 0.0) {
            return Err(Error::invalid("node.migration_bandwidth_kbps", "must be non-negative"));
        }
        Ok(())
    }

    pub fn scaler(&self) -> Scaler {
        Scaler {
            idle_limit: self.idle_limit,
            migration_bandwidth_kbps: self.migration_bandwidth_kbps,
            factor_scaling: self.factor_scaling,
        }
    }
}

/// Per-round request counts for every server, fixed before a run starts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkloadTrace {
    /// `counts[round][server]`.
    pub counts: Vec<Vec<u64>>,
}

impl WorkloadTrace {
    pub fn generate(descriptors: &[ServerDescriptor], rounds: u32, seed: u64) -> Self {
        let mut rng = substream(seed, streams::WORKLOAD);
        let counts = (0..rounds)
            .map(|_| {
                descriptors
                    .iter()
                    .map(|d| {
                        let (lo, hi) = d.workload.request_bounds();
                        rng.random_range(lo..=hi).round() as u64
                    })
                    .collect()
            })
            .collect();
        WorkloadTrace { counts }
    }

    pub fn rounds(&self) -> usize {
        self.counts.len()
    }
}

/// Per-request latencies observed in one round, indexed like the node's servers.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RoundSamples {
    pub round: u32,
    pub per_server: Vec<Vec<Millis>>,
    /// Whether the server was on the edge (true) or redirected to the cloud.
    pub on_edge: Vec<bool>,
}

/// All samples of a run together with each server's SLO.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SampleArchive {
    pub ids: Vec<String>,
    pub slo: Vec<Millis>,
    pub rounds: Vec<RoundSamples>,
}

impl SampleArchive {
    /// Every `(latency, slo)` pair in the archive.
    pub fn iter(&self) -> impl Iterator<Item = (Millis, Millis)> + '_ {
        self.rounds.iter().flat_map(move |r| {
            r.per_server
                .iter()
                .enumerate()
                .flat_map(move |(i, xs)| xs.iter().map(move |&l| (l, self.slo[i])))
        })
    }

    pub fn len(&self) -> usize {
        self.rounds.iter().flat_map(|r| &r.per_server).map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The sequence of round reports of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timeline {
    pub policy: PriorityPolicy,
    pub pricing: PricingModel,
    pub seed: u64,
    pub rounds: Vec<RoundReport>,
}

impl Timeline {
    /// Mean node violation rate over all rounds, 0 for an empty timeline.
    pub fn mean_vr_e(&self) -> f64 {
        mean(self.rounds.iter().map(|r| r.vr_e_before))
    }

    pub fn mean_vr_request(&self) -> f64 {
        mean(self.rounds.iter().map(|r| r.vr_request))
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundOutcome {
    pub samples: RoundSamples,
    pub report: RoundReport,
}

/// One edge node driven round by round.
pub struct Simulator {
    config: NodeConfig,
    node: EdgeNode,
    scaler: Scaler,
    edge: Monitor,
    cloud: Monitor,
    trace: Arc<WorkloadTrace>,
    noise: ChaCha8Rng,
    model: Box<dyn LatencyModel>,
    round: u32,
}

impl Simulator {
    /// Deploys `descriptors` and generates their workload trace from the
    /// config seed.
    pub fn new(config: NodeConfig, descriptors: Vec<ServerDescriptor>) -> Result<Self> {
        let trace = Arc::new(WorkloadTrace::generate(&descriptors, config.rounds, config.seed));
        Self::with_trace(config, descriptors, trace)
    }

    /// Deploys with an externally supplied trace, so several policies can
    /// replay the same workload.
    pub fn with_trace(config: NodeConfig, descriptors: Vec<ServerDescriptor>, trace: Arc<WorkloadTrace>) -> Result<Self> {
        let model = Box::new(ContentionModel(config.latency));
        Self::with_model(config, descriptors, trace, model)
    }

    pub fn with_model(
        config: NodeConfig,
        descriptors: Vec<ServerDescriptor>,
        trace: Arc<WorkloadTrace>,
        model: Box<dyn LatencyModel>,
    ) -> Result<Self> {
        config.validate(descriptors.len())?;
        if trace.rounds() < config.rounds as usize || trace.counts.iter().any(|r| r.len() != descriptors.len()) {
            return Err(Error::invalid("trace", "does not cover every round and server"));
        }
        let node = EdgeNode::deploy(config.capacity, config.unit, config.min_allocation, descriptors, &config.weights)?;
        let mut edge = Monitor::new();
        for s in node.servers() {
            edge.register(s.id(), s.descriptor.users);
        }
        Ok(Simulator {
            scaler: config.scaler(),
            noise: substream(config.seed, streams::NOISE),
            config,
            node,
            edge,
            cloud: Monitor::new(),
            trace,
            model,
            round: 0,
        })
    }

    pub fn node(&self) -> &EdgeNode {
        &self.node
    }

    pub fn config(&self) -> &NodeConfig {
        &self.config
    }

    pub fn round(&self) -> u32 {
        self.round
    }

    /// Runs one round: traffic, monitoring, then scaling.
    pub fn simulate_round(&mut self) -> Result<RoundOutcome> {
        let r = self.round as usize;
        if r >= self.trace.rounds() {
            return Err(Error::invalid("round", format!("trace has only {} rounds", self.trace.rounds())));
        }
        let cv = self.model.noise_cv();
        let normal = Normal::new(0.0, cv.max(f64::MIN_POSITIVE)).expect("finite std dev");

        let mut on_edge = Vec::with_capacity(self.node.servers().len());
        for (i, rt) in self.node.servers().iter().enumerate() {
            let d = &rt.descriptor;
            let requests = self.trace.counts[r][i];
            let rho = utilization(requests, d.workload.service_demand, rt.allocation.cpu);
            for _ in 0..requests {
                let jitter = if cv > 0.0 { normal.sample(&mut self.noise).max(-0.95) } else { 0.0 };
                if rt.active {
                    let l = self.model.edge_latency(d.net_latency_edge, rho, jitter);
                    self.edge.record_request(rt.id(), l, d.workload.data_per_request)?;
                } else {
                    let l = self.model.cloud_latency(d.net_latency_cloud, jitter);
                    self.cloud.record_request(rt.id(), l, d.workload.data_per_request)?;
                }
            }
            on_edge.push(rt.active);
        }

        let mut windows = Vec::with_capacity(self.node.servers().len());
        for rt in self.node.servers() {
            let slo = rt.descriptor.slo_latency;
            let w = if rt.active {
                self.edge.close_window(rt.id(), slo)?
            } else {
                self.cloud.close_window(rt.id(), slo)?
            };
            windows.push(w);
        }

        let mut report = self.scaler.scaling_round(
            &mut self.node,
            &windows,
            self.round + 1,
            self.config.policy,
            &self.config.weights,
            self.config.pricing,
        )?;
        debug_assert!(self.node.is_conserved());

        for (rt, was_on_edge) in self.node.servers().iter().zip(&on_edge) {
            if *was_on_edge && !rt.active {
                self.edge.deactivate(rt.id())?;
                self.cloud.register(rt.id(), rt.descriptor.users);
            }
        }
        report.vr_e_after = Some(self.predicted_vr_e(r));

        let per_server = windows.into_iter().map(|w| w.latency_samples).collect();
        self.round += 1;
        Ok(RoundOutcome {
            samples: RoundSamples {
                round: self.round,
                per_server,
                on_edge,
            },
            report,
        })
    }

    /// Noise-free node violation rate of round `r`'s workload under the
    /// current allocations.
    fn predicted_vr_e(&self, r: usize) -> f64 {
        let windows: Vec<(MetricsWindow, Millis)> = self
            .node
            .servers()
            .iter()
            .enumerate()
            .map(|(i, rt)| {
                let d = &rt.descriptor;
                let requests = self.trace.counts[r][i];
                let l = if rt.active {
                    let rho = utilization(requests, d.workload.service_demand, rt.allocation.cpu);
                    self.model.edge_latency(d.net_latency_edge, rho, 0.0)
                } else {
                    self.model.cloud_latency(d.net_latency_cloud, 0.0)
                };
                (finalize(vec![l; requests as usize], d.users, 0.0, d.slo_latency), d.slo_latency)
            })
            .collect();
        node_violation_rate(windows.iter().map(|(m, s)| (m, *s))).unwrap_or(0.0)
    }
}

/// Output of [`run_scenario`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRun {
    pub timeline: Timeline,
    pub samples: SampleArchive,
}

/// Runs `config.rounds` rounds with a workload trace drawn from `config.seed`.
pub fn run_scenario(config: &NodeConfig, descriptors: Vec<ServerDescriptor>) -> Result<ScenarioRun> {
    let trace = Arc::new(WorkloadTrace::generate(&descriptors, config.rounds, config.seed));
    run_with_trace(config, descriptors, trace)
}

/// Runs `config.rounds` rounds replaying `trace`.
pub fn run_with_trace(config: &NodeConfig, descriptors: Vec<ServerDescriptor>, trace: Arc<WorkloadTrace>) -> Result<ScenarioRun> {
    let ids = descriptors.iter().map(|d| d.id.clone()).collect();
    let slo = descriptors.iter().map(|d| d.slo_latency).collect();
    let mut sim = Simulator::with_trace(config.clone(), descriptors, trace)?;
    let mut rounds = Vec::with_capacity(config.rounds as usize);
    let mut samples = Vec::with_capacity(config.rounds as usize);
    for _ in 0..config.rounds {
        let out = sim.simulate_round()?;
        rounds.push(out.report);
        samples.push(out.samples);
    }
    Ok(ScenarioRun {
        timeline: Timeline {
            policy: config.policy,
            pricing: config.pricing,
            seed: config.seed,
            rounds,
        },
        samples: SampleArchive { ids, slo, rounds: samples },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::descriptor;

    fn params(cv: f64) -> LatencyModelParams {
        LatencyModelParams {
            base_service_time: Millis(40.0),
            contention_exponent: 1.0,
            noise_cv: cv,
        }
    }

    pub(crate) fn config(policy: PriorityPolicy, rounds: u32) -> NodeConfig {
        NodeConfig {
            capacity: ResourceVector::new(1024, 512),
            unit: ResourceVector::new(64, 32),
            min_allocation: ResourceVector::new(64, 32),
            round_interval: Millis::from_secs(300.0),
            rounds,
            policy,
            pricing: PricingModel::Pfr,
            weights: Weights::default(),
            latency: params(0.1),
            seed: 7,
            factor_scaling: FactorScaling::Raw,
            idle_limit: None,
            migration_bandwidth_kbps: 1024.0,
        }
    }

    fn servers(n: u32) -> Vec<ServerDescriptor> {
        (1..=n)
            .map(|i| {
                let mut d = descriptor(&format!("s{i}"), i);
                d.workload.request_rate = 10.0 * i as f64;
                d.workload.rate_jitter = 0.2;
                d.donation = i % 2 == 0;
                d
            })
            .collect()
    }

    #[test]
    fn latency_at_balance_point() {
        let m = ContentionModel(params(0.0));
        assert_eq!(m.edge_latency(Millis(20.0), 1.0, 0.0), Millis(60.0));
        assert_eq!(m.edge_latency(Millis(20.0), 0.3, 0.0), Millis(60.0));
        assert_eq!(m.edge_latency(Millis(20.0), 2.0, 0.0), Millis(100.0));
        assert_eq!(m.cloud_latency(Millis(50.0), 0.0), Millis(90.0));
    }

    #[test]
    fn latency_is_monotone_in_allocation_and_demand() {
        let m = ContentionModel(LatencyModelParams {
            contention_exponent: 1.7,
            ..params(0.0)
        });
        let mut prev = f64::INFINITY;
        for cpu in (16..2048).step_by(16) {
            let l = m.edge_latency(Millis(10.0), utilization(100, 5.0, cpu), 0.0).0;
            assert!(l <= prev);
            prev = l;
        }
        let mut prev = 0.0;
        for req in 0..400 {
            let l = m.edge_latency(Millis(10.0), utilization(req, 5.0, 256), 0.0).0;
            assert!(l >= prev);
            prev = l;
        }
    }

    #[test]
    fn trace_is_seeded_and_bounded() {
        let ds = servers(4);
        let a = WorkloadTrace::generate(&ds, 10, 3);
        assert_eq!(a, WorkloadTrace::generate(&ds, 10, 3));
        assert_ne!(a, WorkloadTrace::generate(&ds, 10, 4));
        for round in &a.counts {
            for (d, &c) in ds.iter().zip(round) {
                let (lo, hi) = d.workload.request_bounds();
                assert!((lo.round() as u64..=hi.round() as u64).contains(&c));
            }
        }
    }

    #[test]
    fn no_scaling_keeps_allocations() {
        let run = run_scenario(&config(PriorityPolicy::NoScaling, 6), servers(6)).unwrap();
        let first: Vec<_> = run.timeline.rounds[0].servers.iter().map(|s| s.allocation).collect();
        for r in &run.timeline.rounds {
            let now: Vec<_> = r.servers.iter().map(|s| s.allocation).collect();
            assert_eq!(now, first);
        }
    }

    #[test]
    fn runs_are_reproducible() {
        let a = run_scenario(&config(PriorityPolicy::Sdps, 8), servers(6)).unwrap();
        let b = run_scenario(&config(PriorityPolicy::Sdps, 8), servers(6)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn terminated_users_are_served_from_the_cloud() {
        let mut cfg = config(PriorityPolicy::Sdps, 2);
        cfg.latency = params(0.0);
        let mut ds = servers(2);
        // Edge path is no faster than the cloud, so the first round terminates it.
        ds[0].net_latency_edge = Millis(60.0);
        let mut sim = Simulator::new(cfg, ds.clone()).unwrap();
        sim.simulate_round().unwrap();
        assert!(!sim.node().server(0).active);
        let out = sim.simulate_round().unwrap();
        assert!(!out.samples.on_edge[0]);
        assert!(out.samples.per_server[0].iter().all(|&l| l == Millis(60.0 + 40.0)));
    }

    #[test]
    fn stateful_termination_charges_migration() {
        let mut cfg = config(PriorityPolicy::Sdps, 1);
        cfg.migration_bandwidth_kbps = 100.0;
        let mut ds = servers(2);
        ds[0].net_latency_edge = Millis(60.0);
        ds[0].stateful = true;
        ds[0].state_kb = 50.0;
        let run = run_scenario(&cfg, ds.clone()).unwrap();
        assert_eq!(run.timeline.rounds[0].migration_delay, Millis(500.0));
        ds[0].stateful = false;
        let run = run_scenario(&cfg, ds).unwrap();
        assert_eq!(run.timeline.rounds[0].migration_delay, Millis(0.0));
    }

    #[test]
    fn allocations_conserved_every_round() {
        let mut sim = Simulator::new(config(PriorityPolicy::Cdps, 20), servers(12)).unwrap();
        for _ in 0..20 {
            sim.simulate_round().unwrap();
            assert!(sim.node().is_conserved());
        }
    }
}
