//! Domain types shared by every other module.
//!
//! Resources are integer CPU shares and memory units so that capacity
//! accounting on a node is exact. One memory unit stands for 8 MB, which puts
//! the default scaling unit of 32 memory units at 256 MB. Latencies are
//! carried as [`Millis`]; data volumes are in kilobytes.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Megabytes represented by one memory unit.
pub const MB_PER_MEM_UNIT: u64 = 8;

/// A latency or duration in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Millis(pub f64);

impl Millis {
    pub fn from_secs(secs: f64) -> Self {
        Millis(secs * 1000.0)
    }

    pub fn as_f64(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Millis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}ms", self.0)
    }
}

/// A CPU-share and memory-unit pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ResourceVector {
    pub cpu: u64,
    pub mem: u64,
}

impl ResourceVector {
    pub const ZERO: ResourceVector = ResourceVector { cpu: 0, mem: 0 };

    pub const fn new(cpu: u64, mem: u64) -> Self {
        ResourceVector { cpu, mem }
    }

    pub fn is_zero(&self) -> bool {
        self.cpu == 0 && self.mem == 0
    }

    /// True when `self ≤ other` in every component.
    pub fn fits_in(&self, other: &ResourceVector) -> bool {
        self.cpu <= other.cpu && self.mem <= other.mem
    }

    pub fn checked_sub(&self, rhs: &ResourceVector) -> Result<ResourceVector> {
        match (self.cpu.checked_sub(rhs.cpu), self.mem.checked_sub(rhs.mem)) {
            (Some(cpu), Some(mem)) => Ok(ResourceVector { cpu, mem }),
            _ => Err(Error::ResourceUnderflow {
                lhs: self.to_string(),
                rhs: rhs.to_string(),
            }),
        }
    }

    pub fn saturating_sub(&self, rhs: &ResourceVector) -> ResourceVector {
        ResourceVector {
            cpu: self.cpu.saturating_sub(rhs.cpu),
            mem: self.mem.saturating_sub(rhs.mem),
        }
    }

    pub fn min(&self, other: &ResourceVector) -> ResourceVector {
        ResourceVector {
            cpu: self.cpu.min(other.cpu),
            mem: self.mem.min(other.mem),
        }
    }

    pub fn max(&self, other: &ResourceVector) -> ResourceVector {
        ResourceVector {
            cpu: self.cpu.max(other.cpu),
            mem: self.mem.max(other.mem),
        }
    }

    /// Componentwise `ceil(self * factor)`. `factor` must be finite and ≥ 0.
    pub fn scale_ceil(&self, factor: f64) -> ResourceVector {
        debug_assert!(factor.is_finite() && factor >= 0.0);
        ResourceVector {
            cpu: (self.cpu as f64 * factor).ceil() as u64,
            mem: (self.mem as f64 * factor).ceil() as u64,
        }
    }

    /// Componentwise integer division, used for equal-share deployment.
    pub fn div_floor(&self, n: u64) -> ResourceVector {
        ResourceVector {
            cpu: self.cpu / n,
            mem: self.mem / n,
        }
    }

    pub fn times(&self, n: u64) -> ResourceVector {
        ResourceVector {
            cpu: self.cpu * n,
            mem: self.mem * n,
        }
    }
}

impl Add for ResourceVector {
    type Output = ResourceVector;

    fn add(self, rhs: ResourceVector) -> ResourceVector {
        ResourceVector {
            cpu: self.cpu + rhs.cpu,
            mem: self.mem + rhs.mem,
        }
    }
}

impl AddAssign for ResourceVector {
    fn add_assign(&mut self, rhs: ResourceVector) {
        self.cpu += rhs.cpu;
        self.mem += rhs.mem;
    }
}

impl std::iter::Sum for ResourceVector {
    fn sum<I: Iterator<Item = ResourceVector>>(iter: I) -> Self {
        iter.fold(ResourceVector::ZERO, Add::add)
    }
}

impl fmt::Display for ResourceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.cpu, self.mem)
    }
}

/// How a tenant's request volume behaves from round to round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkloadSpec {
    /// Mean requests per scaling round.
    pub request_rate: f64,
    /// Each round draws its request count uniformly from
    /// `request_rate * [1 - rate_jitter, 1 + rate_jitter]`.
    #[serde(default)]
    pub rate_jitter: f64,
    /// Kilobytes transferred per request.
    pub data_per_request: f64,
    /// CPU shares needed per request-per-round to run at base latency.
    pub service_demand: f64,
}

impl WorkloadSpec {
    /// Inclusive bounds on the per-round request count.
    pub fn request_bounds(&self) -> (f64, f64) {
        (
            self.request_rate * (1.0 - self.rate_jitter),
            self.request_rate * (1.0 + self.rate_jitter),
        )
    }
}

/// Static identity of one tenant server, as supplied at deployment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ServerDescriptor {
    pub id: String,
    /// Number of users the server is deployed for.
    pub users: u32,
    #[serde(rename = "slo_ms")]
    pub slo_latency: Millis,
    pub donation: bool,
    /// Fraction of the SLO below which the server may be scaled down.
    pub down_threshold: f64,
    /// Price paid for premium service; unitless.
    #[serde(default)]
    pub premium: f64,
    /// First-come-first-serve ordinal, starting at 1.
    pub arrival_ordinal: u32,
    /// Number of times the server has been denied edge resources.
    #[serde(default)]
    pub age: u32,
    /// Number of times the tenant has used the edge service before.
    #[serde(default)]
    pub loyalty: u32,
    pub workload: WorkloadSpec,
    #[serde(rename = "net_latency_edge_ms")]
    pub net_latency_edge: Millis,
    #[serde(rename = "net_latency_cloud_ms")]
    pub net_latency_cloud: Millis,
    /// Stateful servers migrate `state_kb` to the cloud on termination.
    #[serde(default)]
    pub stateful: bool,
    #[serde(default)]
    pub state_kb: f64,
}

fn finite_non_negative(field: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be a finite non-negative number, got {v}")))
    }
}

fn finite_positive(field: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("must be positive, got {v}")))
    }
}

/// Checks every descriptor invariant, naming the first offending field.
pub fn validate_descriptor(d: &ServerDescriptor) -> Result<()> {
    if d.id.is_empty() {
        return Err(Error::invalid("id", "must not be empty"));
    }
    if d.users == 0 {
        return Err(Error::invalid("users", "must be positive, got 0"));
    }
    finite_positive("slo_ms", d.slo_latency.0)?;
    if !(d.down_threshold > 0.0 && d.down_threshold < 1.0) {
        return Err(Error::invalid(
            "down_threshold",
            format!("must lie in (0, 1), got {}", d.down_threshold),
        ));
    }
    finite_non_negative("premium", d.premium)?;
    if d.arrival_ordinal == 0 {
        return Err(Error::invalid("arrival_ordinal", "must be at least 1"));
    }
    finite_positive("workload.request_rate", d.workload.request_rate)?;
    finite_positive("workload.data_per_request", d.workload.data_per_request)?;
    finite_positive("workload.service_demand", d.workload.service_demand)?;
    if !(d.workload.rate_jitter >= 0.0 && d.workload.rate_jitter < 1.0) {
        return Err(Error::invalid(
            "workload.rate_jitter",
            format!("must lie in [0, 1), got {}", d.workload.rate_jitter),
        ));
    }
    finite_non_negative("net_latency_edge_ms", d.net_latency_edge.0)?;
    finite_non_negative("net_latency_cloud_ms", d.net_latency_cloud.0)?;
    finite_non_negative("state_kb", d.state_kb)?;
    Ok(())
}

/// Validates a set of descriptors destined for one node, including
/// uniqueness of ids and arrival ordinals.
pub fn validate_descriptors(ds: &[ServerDescriptor]) -> Result<()> {
    let mut ids = HashSet::new();
    let mut ordinals = HashSet::new();
    for (i, d) in ds.iter().enumerate() {
        validate_descriptor(d).map_err(|e| match e {
            Error::Invalid { field, reason } => Error::invalid(format!("servers[{i}].{field}"), reason),
            other => other,
        })?;
        if !ids.insert(d.id.as_str()) {
            return Err(Error::invalid(format!("servers[{i}].id"), format!("duplicate id `{}`", d.id)));
        }
        if !ordinals.insert(d.arrival_ordinal) {
            return Err(Error::invalid(
                format!("servers[{i}].arrival_ordinal"),
                format!("duplicate ordinal {}", d.arrival_ordinal),
            ));
        }
    }
    Ok(())
}

/// Mutable per-server state on a node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ServerRuntime {
    pub descriptor: ServerDescriptor,
    pub allocation: ResourceVector,
    /// Priority score used for the most recent ordering.
    pub score: f64,
    /// Static score computed once at deployment.
    pub static_score: f64,
    pub reward_count: u32,
    pub scale_count: u32,
    /// Consecutive closed windows without a single request.
    pub idle_rounds: u32,
    pub active: bool,
}

impl ServerRuntime {
    pub fn new(descriptor: ServerDescriptor, allocation: ResourceVector, static_score: f64) -> Self {
        ServerRuntime {
            descriptor,
            allocation,
            score: static_score,
            static_score,
            reward_count: 0,
            scale_count: 0,
            idle_rounds: 0,
            active: true,
        }
    }

    pub fn id(&self) -> &str {
        &self.descriptor.id
    }
}

/// Observations for one server over one scaling round.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MetricsWindow {
    pub requests: u64,
    pub users_seen: u32,
    /// Kilobytes transferred.
    pub data: f64,
    pub avg_latency: Millis,
    /// Fraction of requests whose latency exceeded the SLO.
    pub violation_rate: f64,
    pub latency_samples: Vec<Millis>,
}

impl MetricsWindow {
    /// Window built from aggregates only, without per-request samples.
    pub fn from_aggregates(requests: u64, users_seen: u32, data: f64, avg_latency: Millis, violation_rate: f64) -> Self {
        MetricsWindow {
            requests,
            users_seen,
            data,
            avg_latency,
            violation_rate,
            latency_samples: Vec::new(),
        }
    }
}

/// Factor weights for the priority scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Weights {
    pub w_p: f64,
    pub w_id: f64,
    pub w_age: f64,
    pub w_loyalty: f64,
    pub w_request: f64,
    pub w_u: f64,
    pub w_data: f64,
    pub w_reward: f64,
    pub w_scale: f64,
}

impl Default for Weights {
    fn default() -> Self {
        Weights {
            w_p: 1.0,
            w_id: 1.0,
            w_age: 1.0,
            w_loyalty: 1.0,
            w_request: 1.0,
            w_u: 1.0,
            w_data: 1.0,
            w_reward: 1.0,
            w_scale: 1.0,
        }
    }
}

impl Weights {
    pub fn validate(&self) -> Result<()> {
        let all = [
            ("w_p", self.w_p),
            ("w_id", self.w_id),
            ("w_age", self.w_age),
            ("w_loyalty", self.w_loyalty),
            ("w_request", self.w_request),
            ("w_u", self.w_u),
            ("w_data", self.w_data),
            ("w_reward", self.w_reward),
            ("w_scale", self.w_scale),
        ];
        for (name, v) in all {
            finite_non_negative(&format!("weights.{name}"), v)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PricingModel {
    /// Pay for resources.
    #[default]
    Pfr,
    /// Pay for period.
    Pfp,
    Hybrid,
}

impl PricingModel {
    pub fn name(self) -> &'static str {
        match self {
            PricingModel::Pfr => "pfr",
            PricingModel::Pfp => "pfp",
            PricingModel::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for PricingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for PricingModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pfr" => Ok(PricingModel::Pfr),
            "pfp" => Ok(PricingModel::Pfp),
            "hybrid" => Ok(PricingModel::Hybrid),
            other => Err(Error::invalid("pricing", format!("unknown pricing model `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PriorityPolicy {
    /// Baseline: allocations never change.
    NoScaling,
    /// Static priority, frozen at deployment.
    Spm,
    Wdps,
    Cdps,
    Sdps,
}

impl PriorityPolicy {
    pub const ALL: [PriorityPolicy; 5] = [
        PriorityPolicy::NoScaling,
        PriorityPolicy::Spm,
        PriorityPolicy::Wdps,
        PriorityPolicy::Cdps,
        PriorityPolicy::Sdps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PriorityPolicy::NoScaling => "noscaling",
            PriorityPolicy::Spm => "spm",
            PriorityPolicy::Wdps => "wdps",
            PriorityPolicy::Cdps => "cdps",
            PriorityPolicy::Sdps => "sdps",
        }
    }

    pub fn is_dynamic(self) -> bool {
        matches!(self, PriorityPolicy::Wdps | PriorityPolicy::Cdps | PriorityPolicy::Sdps)
    }
}

impl fmt::Display for PriorityPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for PriorityPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "noscaling" | "none" => Ok(PriorityPolicy::NoScaling),
            "spm" => Ok(PriorityPolicy::Spm),
            "wdps" => Ok(PriorityPolicy::Wdps),
            "cdps" => Ok(PriorityPolicy::Cdps),
            "sdps" => Ok(PriorityPolicy::Sdps),
            other => Err(Error::invalid("policy", format!("unknown policy `{other}`"))),
        }
    }
}

/// Why a server left the edge node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminationReason {
    /// Evicted to free resources for a higher-priority server.
    Evicted { by: String },
    /// The edge network path is no faster than the cloud path.
    NoNetworkBenefit,
    /// No requests for the configured number of rounds.
    Idle,
    /// The server was already off the node when the round reached it.
    Inactive,
}

impl fmt::Display for TerminationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TerminationReason::Evicted { by } => write!(f, "evicted_by:{by}"),
            TerminationReason::NoNetworkBenefit => f.write_str("no_network_benefit"),
            TerminationReason::Idle => f.write_str("idle"),
            TerminationReason::Inactive => f.write_str("inactive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingDecision {
    ScaleUp(ResourceVector),
    ScaleDown(ResourceVector),
    Donate(ResourceVector),
    NoChange,
    Terminate(TerminationReason),
}

impl fmt::Display for ScalingDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalingDecision::ScaleUp(r) => write!(f, "scale_up{r}"),
            ScalingDecision::ScaleDown(r) => write!(f, "scale_down{r}"),
            ScalingDecision::Donate(r) => write!(f, "donate{r}"),
            ScalingDecision::NoChange => f.write_str("no_change"),
            ScalingDecision::Terminate(reason) => write!(f, "terminate({reason})"),
        }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::descriptor;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn down_threshold_in_range_is_accepted() {
        let d = descriptor("a", 1);
        assert!(validate_descriptor(&d).is_ok());
    }

    #[test]
    fn down_threshold_out_of_range_is_rejected() {
        let mut d = descriptor("a", 1);
        d.down_threshold = 1.2;
        match validate_descriptor(&d) {
            Err(Error::Invalid { field, .. }) => assert_eq!(field, "down_threshold"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_users_is_rejected() {
        let mut d = descriptor("a", 1);
        d.users = 0;
        match validate_descriptor(&d) {
            Err(Error::Invalid { field, .. }) => assert_eq!(field, "users"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_ordinals_are_rejected() {
        let ds = vec![descriptor("a", 1), descriptor("b", 1)];
        let err = validate_descriptors(&ds).unwrap_err().to_string();
        assert!(err.contains("servers[1].arrival_ordinal"), "{err}");
    }

    #[test]
    fn subtraction_below_zero_is_an_error() {
        let a = ResourceVector::new(10, 5);
        assert!(a.checked_sub(&ResourceVector::new(11, 0)).is_err());
        assert_eq!(a.checked_sub(&ResourceVector::new(4, 5)).unwrap(), ResourceVector::new(6, 0));
    }

    #[test]
    fn decision_display() {
        assert_eq!(ScalingDecision::ScaleUp(ResourceVector::new(50, 25)).to_string(), "scale_up(50,25)");
        assert_eq!(
            ScalingDecision::Terminate(TerminationReason::Evicted { by: "s".into() }).to_string(),
            "terminate(evicted_by:s)"
        );
    }

    #[test]
    fn policy_parses_loosely() {
        assert_eq!("no-scaling".parse::<PriorityPolicy>().unwrap(), PriorityPolicy::NoScaling);
        assert_eq!("SDPS".parse::<PriorityPolicy>().unwrap(), PriorityPolicy::Sdps);
        assert!("fifo".parse::<PriorityPolicy>().is_err());
    }

    fn rv() -> impl Strategy<Value = ResourceVector> {
        (0u64..1 << 40, 0u64..1 << 40).prop_map(|(c, m)| ResourceVector::new(c, m))
    }

    proptest! {
        #[test]
        fn addition_is_commutative_and_associative(a in rv(), b in rv(), c in rv()) {
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!((a + b) + c, a + (b + c));
        }

        #[test]
        fn sub_inverts_add(a in rv(), b in rv()) {
            prop_assert_eq!((a + b).checked_sub(&b).unwrap(), a);
        }

        #[test]
        fn descriptor_serde_round_trip(users in 1u32..1000, slo in 1.0f64..5000.0, thr in 0.01f64..0.99, p in 0.0f64..100.0) {
            let mut d = descriptor("x", 3);
            d.users = users;
            d.slo_latency = Millis(slo);
            d.down_threshold = thr;
            d.premium = p;
            let text = serde_json::to_string(&d).unwrap();
            let back: ServerDescriptor = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, d);
        }
    }
}
