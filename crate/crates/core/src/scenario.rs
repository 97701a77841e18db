//! Scenario files: node settings, server templates, and the experiment to run.
//!
//! Scenarios are TOML. A minimal file looks like
//!
//! ```toml
//! [node]
//! capacity = { cpu = 4096, mem = 2048 }
//! latency = { base_service_ms = 40, contention_exponent = 1.5 }
//!
//! [[templates]]
//! count = 16
//! users = [1, 100]
//! slo_ms = 78
//! down_threshold = 0.8
//! requests_per_user = 2
//! data_per_request = 1.0
//! service_demand = 4
//! net_latency_edge_ms = 20
//! net_latency_cloud_ms = 45
//! ```
//!
//! Template fields written as a two-element array are drawn uniformly from
//! that range when the template is expanded. Expansion uses its own substream
//! of the run seed, so the same seed always yields the same servers.

use std::path::{Path, PathBuf};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    validate_descriptor, validate_descriptors, Millis, PricingModel, PriorityPolicy, ResourceVector,
    ServerDescriptor, Weights, WorkloadSpec,
};
use crate::priority::FactorScaling;
use crate::report::{WeightGroup, DEFAULT_BAND_EDGES};
use crate::sim::{streams, substream, LatencyModelParams, NodeConfig};

/// A fixed value or an inclusive `[lo, hi]` range to draw from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Spread<T> {
    Fixed(T),
    Between([T; 2]),
}

impl<T: Copy> Spread<T> {
    fn bounds(&self) -> (T, T) {
        match *self {
            Spread::Fixed(v) => (v, v),
            Spread::Between([lo, hi]) => (lo, hi),
        }
    }
}

impl Spread<f64> {
    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        let (lo, hi) = self.bounds();
        if lo == hi {
            lo
        } else {
            rng.random_range(lo..=hi)
        }
    }

    fn check(&self, field: &str) -> Result<()> {
        let (lo, hi) = self.bounds();
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::invalid(field, format!("range [{lo}, {hi}] is empty or not finite")));
        }
        Ok(())
    }
}

impl Spread<u32> {
    fn draw(&self, rng: &mut ChaCha8Rng) -> u32 {
        let (lo, hi) = self.bounds();
        if lo == hi {
            lo
        } else {
            rng.random_range(lo..=hi)
        }
    }

    fn check(&self, field: &str) -> Result<()> {
        let (lo, hi) = self.bounds();
        if lo > hi {
            return Err(Error::invalid(field, format!("range [{lo}, {hi}] is empty")));
        }
        Ok(())
    }
}

fn default_unit() -> ResourceVector {
    ResourceVector::new(64, 32)
}

fn default_interval() -> f64 {
    300.0
}

fn default_rounds() -> u32 {
    12
}

fn default_policy() -> PriorityPolicy {
    PriorityPolicy::Sdps
}

fn default_bandwidth() -> f64 {
    1024.0
}

/// The `[node]` table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeSection {
    pub capacity: ResourceVector,
    #[serde(default = "default_unit")]
    pub unit: ResourceVector,
    /// Defaults to `unit`.
    #[serde(default)]
    pub min_allocation: Option<ResourceVector>,
    #[serde(default = "default_interval")]
    pub round_interval_s: f64,
    #[serde(default = "default_rounds")]
    pub rounds: u32,
    #[serde(default = "default_policy")]
    pub policy: PriorityPolicy,
    #[serde(default)]
    pub pricing: PricingModel,
    #[serde(default)]
    pub weights: Weights,
    pub latency: LatencyModelParams,
    #[serde(default)]
    pub factor_scaling: FactorScaling,
    #[serde(default)]
    pub idle_limit: Option<u32>,
    #[serde(default = "default_bandwidth")]
    pub migration_bandwidth_kbps: f64,
}

impl NodeSection {
    fn to_config(&self, seed: u64) -> NodeConfig {
        NodeConfig {
            capacity: self.capacity,
            unit: self.unit,
            min_allocation: self.min_allocation.unwrap_or(self.unit),
            round_interval: Millis::from_secs(self.round_interval_s),
            rounds: self.rounds,
            policy: self.policy,
            pricing: self.pricing,
            weights: self.weights,
            latency: self.latency,
            seed,
            factor_scaling: self.factor_scaling,
            idle_limit: self.idle_limit,
            migration_bandwidth_kbps: self.migration_bandwidth_kbps,
        }
    }
}

fn default_prefix() -> String {
    "s".into()
}

fn zero_f() -> Spread<f64> {
    Spread::Fixed(0.0)
}

fn zero_u() -> Spread<u32> {
    Spread::Fixed(0)
}

/// Expands to `count` servers with independently drawn fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ServerTemplate {
    pub count: usize,
    #[serde(default = "default_prefix")]
    pub id_prefix: String,
    pub users: Spread<u32>,
    pub slo_ms: f64,
    /// Chance that a generated server volunteers donations.
    #[serde(default)]
    pub donation_probability: f64,
    pub down_threshold: f64,
    #[serde(default = "zero_f")]
    pub premium: Spread<f64>,
    #[serde(default = "zero_u")]
    pub loyalty: Spread<u32>,
    /// Mean requests per round is `users * requests_per_user`.
    pub requests_per_user: Spread<f64>,
    #[serde(default)]
    pub rate_jitter: f64,
    pub data_per_request: Spread<f64>,
    pub service_demand: Spread<f64>,
    pub net_latency_edge_ms: Spread<f64>,
    pub net_latency_cloud_ms: Spread<f64>,
    #[serde(default)]
    pub stateful: bool,
    #[serde(default)]
    pub state_kb: f64,
}

impl ServerTemplate {
    fn check(&self) -> Result<()> {
        self.users.check("users")?;
        self.premium.check("premium")?;
        self.loyalty.check("loyalty")?;
        self.requests_per_user.check("requests_per_user")?;
        self.data_per_request.check("data_per_request")?;
        self.service_demand.check("service_demand")?;
        self.net_latency_edge_ms.check("net_latency_edge_ms")?;
        self.net_latency_cloud_ms.check("net_latency_cloud_ms")?;
        if !(0.0..=1.0).contains(&self.donation_probability) {
            return Err(Error::invalid(
                "donation_probability",
                format!("must lie in [0, 1], got {}", self.donation_probability),
            ));
        }
        // Both ends of every range must produce a valid server.
        let lo = |s: &Spread<f64>| s.bounds().0;
        let hi = |s: &Spread<f64>| s.bounds().1;
        for pick in [lo, hi] {
            let d = ServerDescriptor {
                id: "probe".into(),
                users: self.users.bounds().0,
                slo_latency: Millis(self.slo_ms),
                donation: false,
                down_threshold: self.down_threshold,
                premium: pick(&self.premium),
                arrival_ordinal: 1,
                age: 0,
                loyalty: 0,
                workload: WorkloadSpec {
                    request_rate: pick(&self.requests_per_user) * self.users.bounds().0 as f64,
                    rate_jitter: self.rate_jitter,
                    data_per_request: pick(&self.data_per_request),
                    service_demand: pick(&self.service_demand),
                },
                net_latency_edge: Millis(pick(&self.net_latency_edge_ms)),
                net_latency_cloud: Millis(pick(&self.net_latency_cloud_ms)),
                stateful: self.stateful,
                state_kb: self.state_kb,
            };
            validate_descriptor(&d).map_err(|e| match e {
                Error::Invalid { field, reason } => {
                    let field = match field.as_str() {
                        "workload.request_rate" => "requests_per_user".to_string(),
                        "workload.rate_jitter" => "rate_jitter".to_string(),
                        f => f.strip_prefix("workload.").unwrap_or(f).to_string(),
                    };
                    Error::invalid(field, reason)
                }
                other => other,
            })?;
        }
        Ok(())
    }

    fn expand_one(&self, rng: &mut ChaCha8Rng, id: String, ordinal: u32) -> ServerDescriptor {
        let users = self.users.draw(rng);
        let donation = rng.random_bool(self.donation_probability);
        let premium = self.premium.draw(rng);
        let loyalty = self.loyalty.draw(rng);
        let per_user = self.requests_per_user.draw(rng);
        let data = self.data_per_request.draw(rng);
        let demand = self.service_demand.draw(rng);
        let edge = self.net_latency_edge_ms.draw(rng);
        let cloud = self.net_latency_cloud_ms.draw(rng);
        ServerDescriptor {
            id,
            users,
            slo_latency: Millis(self.slo_ms),
            donation,
            down_threshold: self.down_threshold,
            premium,
            arrival_ordinal: ordinal,
            age: 0,
            loyalty,
            workload: WorkloadSpec {
                request_rate: users as f64 * per_user,
                rate_jitter: self.rate_jitter,
                data_per_request: data,
                service_demand: demand,
            },
            net_latency_edge: Millis(edge),
            net_latency_cloud: Millis(cloud),
            stateful: self.stateful,
            state_kb: self.state_kb,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    #[default]
    Run,
    ComparePolicies,
    SweepServers,
    SweepWeights,
}

fn default_seeds() -> Vec<u64> {
    vec![1]
}

fn default_policies() -> Vec<PriorityPolicy> {
    PriorityPolicy::ALL.to_vec()
}

fn default_band_edges() -> Vec<f64> {
    DEFAULT_BAND_EDGES.to_vec()
}

fn default_steps() -> usize {
    11
}

fn default_to() -> f64 {
    1.0
}

/// The `[experiment.weight_sweep]` table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSweepSection {
    pub x: WeightGroup,
    pub y: WeightGroup,
    #[serde(default)]
    pub from: f64,
    #[serde(default = "default_to")]
    pub to: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_policy")]
    pub policy: PriorityPolicy,
    #[serde(default)]
    pub pricing: PricingModel,
    /// Index of the generated server to score.
    #[serde(default)]
    pub server: usize,
    #[serde(default)]
    pub reward: u32,
    #[serde(default)]
    pub scale: u32,
}

/// The `[experiment]` table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSection {
    #[serde(default)]
    pub kind: ExperimentKind,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    /// SLOs to compare at; empty means the servers' own SLOs.
    #[serde(default)]
    pub slo_ms: Vec<f64>,
    /// Server counts to compare at; empty means the scenario's own count.
    #[serde(default)]
    pub server_counts: Vec<usize>,
    #[serde(default = "default_policies")]
    pub policies: Vec<PriorityPolicy>,
    /// Band edges as fractions of the SLO.
    #[serde(default = "default_band_edges")]
    pub band_edges: Vec<f64>,
    #[serde(default)]
    pub weight_sweep: Option<WeightSweepSection>,
}

impl Default for ExperimentSection {
    fn default() -> Self {
        ExperimentSection {
            kind: ExperimentKind::Run,
            seeds: default_seeds(),
            slo_ms: Vec::new(),
            server_counts: Vec::new(),
            policies: default_policies(),
            band_edges: default_band_edges(),
            weight_sweep: None,
        }
    }
}

/// A scenario file as written on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFile {
    #[serde(default)]
    pub name: Option<String>,
    pub node: NodeSection,
    #[serde(default)]
    pub servers: Vec<ServerDescriptor>,
    #[serde(default)]
    pub templates: Vec<ServerTemplate>,
    #[serde(default)]
    pub experiment: ExperimentSection,
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub node: NodeSection,
    pub servers: Vec<ServerDescriptor>,
    pub templates: Vec<ServerTemplate>,
    pub experiment: ExperimentSection,
    /// Keys that were present in the file but not understood. Always empty
    /// for strict parses.
    pub ignored_keys: Vec<String>,
}

impl Scenario {
    /// Validates a parsed file.
    pub fn from_file(file: ScenarioFile) -> Result<Scenario> {
        let scenario = Scenario {
            name: file.name.unwrap_or_else(|| "scenario".into()),
            node: file.node,
            servers: file.servers,
            templates: file.templates,
            experiment: file.experiment,
            ignored_keys: Vec::new(),
        };
        scenario.validate()?;
        Ok(scenario)
    }

    /// Number of servers the scenario deploys by default.
    pub fn server_count(&self) -> usize {
        self.servers.len() + self.templates.iter().map(|t| t.count).sum::<usize>()
    }

    /// Node settings for a run with `seed`.
    pub fn config(&self, seed: u64) -> NodeConfig {
        self.node.to_config(seed)
    }

    pub fn seeds(&self) -> &[u64] {
        &self.experiment.seeds
    }

    /// Servers for `seed` at the scenario's own count and SLOs.
    pub fn descriptors(&self, seed: u64) -> Result<Vec<ServerDescriptor>> {
        self.descriptors_for(seed, None, None)
    }

    /// Servers for `seed`, optionally with `n` servers and a common SLO.
    ///
    /// Explicit servers come first. Template servers fill the rest, cycling
    /// through the templates in proportion to their counts.
    pub fn descriptors_for(&self, seed: u64, n: Option<usize>, slo: Option<Millis>) -> Result<Vec<ServerDescriptor>> {
        let n = n.unwrap_or_else(|| self.server_count());
        if n < self.servers.len() {
            return Err(Error::invalid(
                "server_counts",
                format!("{n} is below the {} explicit servers", self.servers.len()),
            ));
        }
        let slots: Vec<usize> = self
            .templates
            .iter()
            .enumerate()
            .flat_map(|(i, t)| std::iter::repeat_n(i, t.count))
            .collect();
        let generated = n - self.servers.len();
        if generated > 0 && slots.is_empty() {
            return Err(Error::invalid(
                "server_counts",
                format!("{n} servers requested but there are no templates to expand"),
            ));
        }
        let mut rng = substream(seed, streams::EXPANSION);
        let mut out = self.servers.clone();
        let mut ordinal = out.iter().map(|d| d.arrival_ordinal).max().unwrap_or(0);
        for k in 0..generated {
            let t = &self.templates[slots[k % slots.len()]];
            ordinal += 1;
            let id = format!("{}{}", t.id_prefix, k + 1);
            out.push(t.expand_one(&mut rng, id, ordinal));
        }
        if let Some(slo) = slo {
            for d in &mut out {
                d.slo_latency = slo;
            }
        }
        validate_descriptors(&out)?;
        Ok(out)
    }

    /// SLOs a comparison runs at.
    pub fn slo_cells(&self) -> Vec<Option<Millis>> {
        if self.experiment.slo_ms.is_empty() {
            vec![None]
        } else {
            self.experiment.slo_ms.iter().map(|&s| Some(Millis(s))).collect()
        }
    }

    /// Server counts a comparison or sweep runs at.
    pub fn count_cells(&self) -> Vec<usize> {
        if self.experiment.server_counts.is_empty() {
            vec![self.server_count()]
        } else {
            self.experiment.server_counts.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.server_count() == 0 {
            return Err(Error::EmptyInput("scenario defines no servers or templates".into()));
        }
        for (i, t) in self.templates.iter().enumerate() {
            t.check().map_err(|e| prefix(e, &format!("templates[{i}]")))?;
        }
        let e = &self.experiment;
        if e.seeds.is_empty() {
            return Err(Error::invalid("experiment.seeds", "need at least one seed"));
        }
        if e.policies.is_empty() {
            return Err(Error::invalid("experiment.policies", "need at least one policy"));
        }
        for (i, s) in e.slo_ms.iter().enumerate() {
            if !(s.is_finite() && *s > 0.0) {
                return Err(Error::invalid(format!("experiment.slo_ms[{i}]"), format!("must be positive, got {s}")));
            }
        }
        if e.band_edges.is_empty() || e.band_edges.windows(2).any(|w| w[0] >= w[1])
            || e.band_edges[0] <= 0.0
            || *e.band_edges.last().unwrap() != 1.0
        {
            return Err(Error::invalid(
                "experiment.band_edges",
                "must be strictly increasing positive fractions ending at 1.0",
            ));
        }
        if let Some(ws) = &e.weight_sweep {
            if ws.steps == 0 {
                return Err(Error::invalid("experiment.weight_sweep.steps", "must be positive"));
            }
            if !(ws.from.is_finite() && ws.to.is_finite() && ws.from >= 0.0 && ws.to >= ws.from) {
                return Err(Error::invalid(
                    "experiment.weight_sweep",
                    "`from` and `to` must be finite with 0 <= from <= to",
                ));
            }
        } else if e.kind == ExperimentKind::SweepWeights {
            return Err(Error::invalid("experiment.weight_sweep", "required for kind = \"sweep_weights\""));
        }
        let seed = e.seeds[0];
        for n in self.count_cells() {
            if n == 0 {
                return Err(Error::invalid("experiment.server_counts", "counts must be positive"));
            }
            self.config(seed).validate(n).map_err(prefix_node)?;
            self.descriptors_for(seed, Some(n), None)?;
        }
        Ok(())
    }
}

fn prefix(e: Error, path: &str) -> Error {
    match e {
        Error::Invalid { field, reason } => Error::invalid(format!("{path}.{field}"), reason),
        other => other,
    }
}

fn prefix_node(e: Error) -> Error {
    match e {
        Error::Invalid { field, reason } if !field.starts_with("node.") => {
            Error::invalid(format!("node.{field}"), reason)
        }
        other => other,
    }
}

/// Reads and validates a scenario, rejecting unknown keys.
pub fn parse_scenario(path: &Path) -> Result<Scenario> {
    parse_scenario_with(path, true)
}

/// Reads and validates a scenario. With `strict` unset, unknown keys are
/// collected in [`Scenario::ignored_keys`] instead of failing the parse.
pub fn parse_scenario_with(path: &Path, strict: bool) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_scenario_str(&text, path, strict)
}

/// Parses scenario text; `origin` is only used in error messages.
pub fn parse_scenario_str(text: &str, origin: &Path, strict: bool) -> Result<Scenario> {
    let parse_err = |message: String| Error::Parse {
        path: PathBuf::from(origin),
        message,
    };
    let de = toml::Deserializer::parse(text).map_err(|e| parse_err(describe(&e, text)))?;
    let mut ignored = Vec::new();
    let file: ScenarioFile =
        serde_ignored::deserialize(de, |p| ignored.push(p.to_string())).map_err(|e| parse_err(describe(&e, text)))?;
    if strict && !ignored.is_empty() {
        return Err(parse_err(format!("unknown key `{}`", ignored.join("`, `"))));
    }
    let mut scenario = Scenario::from_file(file)?;
    scenario.ignored_keys = ignored;
    Ok(scenario)
}

fn describe(e: &toml::de::Error, text: &str) -> String {
    match e.span() {
        Some(span) => {
            let line = text[..span.start.min(text.len())].matches('\n').count() + 1;
            format!("line {line}: {}", e.message())
        }
        None => e.message().to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[node]
capacity = { cpu = 2048, mem = 1024 }
latency = { base_service_ms = 40, contention_exponent = 1.5 }

[[templates]]
count = 8
users = [1, 100]
slo_ms = 78
down_threshold = 0.8
requests_per_user = 2
data_per_request = 1.0
service_demand = 4
net_latency_edge_ms = 20
net_latency_cloud_ms = 45
"#;

    fn parse(text: &str, strict: bool) -> Result<Scenario> {
        parse_scenario_str(text, Path::new("test.cfg"), strict)
    }

    #[test]
    fn minimal_scenario_gets_defaults() {
        let s = parse(MINIMAL, true).unwrap();
        assert_eq!(s.server_count(), 8);
        let c = s.config(5);
        assert_eq!(c.unit, ResourceVector::new(64, 32));
        assert_eq!(c.min_allocation, c.unit);
        assert_eq!(c.round_interval, Millis(300_000.0));
        assert_eq!(c.rounds, 12);
        assert_eq!(c.policy, PriorityPolicy::Sdps);
        assert_eq!(c.pricing, PricingModel::Pfr);
        assert_eq!(c.seed, 5);
        assert_eq!(s.experiment.kind, ExperimentKind::Run);
    }

    #[test]
    fn expansion_is_deterministic_per_seed() {
        let s = parse(MINIMAL, true).unwrap();
        let a = s.descriptors(3).unwrap();
        assert_eq!(a, s.descriptors(3).unwrap());
        assert_ne!(a, s.descriptors(4).unwrap());
        assert!(a.iter().all(|d| (1..=100).contains(&d.users)));
        assert_eq!(a[0].id, "s1");
        assert_eq!(a.iter().map(|d| d.arrival_ordinal).collect::<Vec<_>>(), (1..=8).collect::<Vec<_>>());
        assert_eq!(a[0].workload.request_rate, 2.0 * a[0].users as f64);
    }

    #[test]
    fn count_and_slo_overrides() {
        let s = parse(MINIMAL, true).unwrap();
        let d = s.descriptors_for(1, Some(12), Some(Millis(82.0))).unwrap();
        assert_eq!(d.len(), 12);
        assert!(d.iter().all(|d| d.slo_latency == Millis(82.0)));
        // A smaller count is a prefix of a larger one.
        let small = s.descriptors_for(1, Some(4), None).unwrap();
        assert_eq!(small[..], s.descriptors(1).unwrap()[..4]);
    }

    #[test]
    fn unknown_keys_rejected_in_strict_mode_only() {
        let text = MINIMAL.replace("[[templates]]", "colour = \"blue\"\n\n[[templates]]");
        let err = parse(&text, true).unwrap_err().to_string();
        assert!(err.contains("node.colour"), "{err}");
        let s = parse(&text, false).unwrap();
        assert_eq!(s.ignored_keys, vec!["node.colour".to_string()]);
    }

    #[test]
    fn syntax_error_reports_line() {
        let text = MINIMAL.replace("count = 8", "count = = 8");
        let err = parse(&text, true).unwrap_err().to_string();
        assert!(err.contains("line 7"), "{err}");
    }

    #[test]
    fn out_of_range_threshold_names_field() {
        let text = MINIMAL.replace("down_threshold = 0.8", "down_threshold = 1.5");
        match parse(&text, true).unwrap_err() {
            Error::Invalid { field, .. } => assert_eq!(field, "templates[0].down_threshold"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn explicit_server_fields_are_validated_with_path() {
        let text = format!(
            "{MINIMAL}\n[[servers]]\nid = \"x\"\nusers = 3\nslo_ms = 78\ndonation = false\ndown_threshold = 0.8\n\
             arrival_ordinal = 1\nnet_latency_edge_ms = 20\nnet_latency_cloud_ms = -1\n\
             workload = {{ request_rate = 5, data_per_request = 1, service_demand = 4 }}\n"
        );
        match parse(&text, true).unwrap_err() {
            Error::Invalid { field, .. } => assert_eq!(field, "servers[0].net_latency_cloud_ms"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn oversubscribed_node_is_rejected() {
        let text = MINIMAL.replace("count = 8", "count = 64");
        assert!(matches!(parse(&text, true), Err(Error::InsufficientCapacity(_))));
    }

    #[test]
    fn sweep_weights_requires_grid() {
        let text = format!("{MINIMAL}\n[experiment]\nkind = \"sweep_weights\"\n");
        assert!(parse(&text, true).is_err());
        let text = format!("{MINIMAL}\n[experiment]\nkind = \"sweep_weights\"\nweight_sweep = {{ x = \"static\", y = \"workload\" }}\n");
        let s = parse(&text, true).unwrap();
        assert_eq!(s.experiment.weight_sweep.unwrap().steps, 11);
    }
}
