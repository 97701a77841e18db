//! Aggregation of simulation output into tables, histograms, and traces.
//!
//! Trace files are JSON Lines, one record per round. Reals are rounded to six
//! significant digits before they are written, so a trace is a stable
//! function of the timeline it came from.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{MetricsWindow, Millis, PricingModel, PriorityPolicy, ServerDescriptor, Weights};
use crate::priority::{compute_priority, DynamicCounters};
use crate::sim::Timeline;

/// Default band edges as fractions of the SLO.
pub const DEFAULT_BAND_EDGES: [f64; 5] = [0.8, 0.85, 0.9, 0.95, 1.0];

/// Request counts per latency band, with edges relative to the SLO.
///
/// With edges `e_0 < … < e_k = 1` the bands are `[0, e_0·L)`,
/// `[e_0·L, e_1·L)`, …, `[e_{k-1}·L, L]`, and `(L, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatencyBands {
    pub edge_fractions: Vec<f64>,
    pub counts: Vec<u64>,
}

impl LatencyBands {
    pub fn empty(edge_fractions: &[f64]) -> Self {
        LatencyBands {
            edge_fractions: edge_fractions.to_vec(),
            counts: vec![0; edge_fractions.len() + 1],
        }
    }

    /// Band edges as latencies for a given SLO.
    pub fn band_edges(&self, slo: Millis) -> Vec<Millis> {
        self.edge_fractions.iter().map(|f| Millis(f * slo.0)).collect()
    }

    pub fn band_of(&self, latency: Millis, slo: Millis) -> usize {
        let k = self.edge_fractions.len();
        if latency.0 > slo.0 {
            return k;
        }
        self.edge_fractions[..k - 1]
            .iter()
            .position(|f| latency.0 < f * slo.0)
            .unwrap_or(k - 1)
    }

    pub fn add(&mut self, latency: Millis, slo: Millis) {
        let b = self.band_of(latency, slo);
        self.counts[b] += 1;
    }

    pub fn merge(&mut self, other: &LatencyBands) {
        assert_eq!(self.edge_fractions, other.edge_fractions, "band edges differ");
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Share of all requests in each band; zeros when empty.
    pub fn fractions(&self) -> Vec<f64> {
        let t = self.total();
        self.counts
            .iter()
            .map(|&c| if t == 0 { 0.0 } else { c as f64 / t as f64 })
            .collect()
    }

    /// Share of requests in the lowest band.
    pub fn lowest_fraction(&self) -> f64 {
        self.fractions()[0]
    }

    /// Human-readable band labels such as `[0.80,0.85)`.
    pub fn labels(&self) -> Vec<String> {
        let k = self.edge_fractions.len();
        let mut out = Vec::with_capacity(k + 1);
        out.push(format!("[0,{:.2})", self.edge_fractions[0]));
        for w in 0..k - 1 {
            let close = if w + 1 == k - 1 { "]" } else { ")" };
            out.push(format!("[{:.2},{:.2}{close}", self.edge_fractions[w], self.edge_fractions[w + 1]));
        }
        out.push(format!(">{:.2}", self.edge_fractions[k - 1]));
        out
    }
}

/// Bins `samples` against `slo` using the default edges.
pub fn latency_histogram(samples: &[Millis], slo: Millis) -> Result<LatencyBands> {
    latency_histogram_with(samples, slo, &DEFAULT_BAND_EDGES)
}

pub fn latency_histogram_with(samples: &[Millis], slo: Millis, edges: &[f64]) -> Result<LatencyBands> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if edges.is_empty() || edges.windows(2).any(|w| w[0] >= w[1]) || *edges.last().unwrap() != 1.0 {
        return Err(Error::invalid("band_edges", "must be increasing and end at 1.0"));
    }
    let mut bands = LatencyBands::empty(edges);
    for &s in samples {
        bands.add(s, slo);
    }
    Ok(bands)
}

/// One row of a violation-rate curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub policy: PriorityPolicy,
    pub n_servers: usize,
    pub seeds: usize,
    pub mean_vr_e: f64,
    /// Sample standard deviation across seeds; 0 for a single seed.
    pub std_vr_e: f64,
}

/// Mean and spread of `vr_e` across seeds for every `(policy, n)` key.
pub fn violation_curve(timelines: &BTreeMap<(PriorityPolicy, usize), Vec<Timeline>>) -> Result<Vec<CurveRow>> {
    if timelines.is_empty() {
        return Err(Error::EmptyInput("no timelines".into()));
    }
    timelines
        .iter()
        .map(|(&(policy, n), runs)| {
            if runs.is_empty() {
                return Err(Error::EmptyInput(format!("no timelines for {policy} with {n} servers")));
            }
            let values: Vec<f64> = runs.iter().map(Timeline::mean_vr_e).collect();
            let (mean, std) = mean_std(&values);
            Ok(CurveRow {
                policy,
                n_servers: n,
                seeds: runs.len(),
                mean_vr_e: mean,
                std_vr_e: std,
            })
        })
        .collect()
}

/// Mean and sample standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, var.sqrt())
}

/// A group of weights that a sweep varies together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightGroup {
    /// Premium, arrival order, age, loyalty.
    Static,
    /// Requests, users, data.
    Workload,
    /// Donation reward.
    Community,
    /// Scaling penalty.
    System,
}

impl WeightGroup {
    pub fn apply(self, w: &mut Weights, value: f64) {
        match self {
            WeightGroup::Static => {
                w.w_p = value;
                w.w_id = value;
                w.w_age = value;
                w.w_loyalty = value;
            }
            WeightGroup::Workload => {
                w.w_request = value;
                w.w_u = value;
                w.w_data = value;
            }
            WeightGroup::Community => w.w_reward = value,
            WeightGroup::System => w.w_scale = value,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WeightGroup::Static => "static",
            WeightGroup::Workload => "workload",
            WeightGroup::Community => "community",
            WeightGroup::System => "system",
        }
    }
}

/// Two weight groups swept over a common set of values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightGrid {
    pub x: WeightGroup,
    pub y: WeightGroup,
    pub values: Vec<f64>,
    pub policy: PriorityPolicy,
    pub pricing: PricingModel,
}

impl WeightGrid {
    /// `steps` evenly spaced values from `start` to `stop` inclusive.
    pub fn linspace(start: f64, stop: f64, steps: usize) -> Vec<f64> {
        match steps {
            0 => Vec::new(),
            1 => vec![start],
            _ => (0..steps)
                .map(|i| start + (stop - start) * i as f64 / (steps - 1) as f64)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub x: f64,
    pub y: f64,
    pub score: f64,
}

/// Scores one server at every point of `grid`, starting from `base` weights.
/// Rows are ordered by `y`, then `x`.
pub fn weight_sweep(
    d: &ServerDescriptor,
    m: &MetricsWindow,
    counters: DynamicCounters,
    base: &Weights,
    grid: &WeightGrid,
) -> Result<Vec<SweepPoint>> {
    if grid.values.is_empty() {
        return Err(Error::invalid("grid.values", "need at least one step"));
    }
    let mut out = Vec::with_capacity(grid.values.len() * grid.values.len());
    for &y in &grid.values {
        for &x in &grid.values {
            let mut w = *base;
            grid.y.apply(&mut w, y);
            grid.x.apply(&mut w, x);
            let score = compute_priority(grid.policy, d, m, &w, grid.pricing, counters)?.total;
            out.push(SweepPoint { x, y, score });
        }
    }
    Ok(out)
}

/// Rounds to six significant digits.
pub fn sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceServer {
    pub id: String,
    pub score: f64,
    pub allocation_cpu: u64,
    pub allocation_mem: u64,
    pub requests: u64,
    pub avg_latency_ms: f64,
    pub vr_s: f64,
    pub decision: String,
    pub reward_count: u32,
    pub scale_count: u32,
    pub age: u32,
    pub active: bool,
}

/// One line of a trace file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceRecord {
    pub round: u32,
    pub policy: PriorityPolicy,
    pub pricing: PricingModel,
    pub vr_e: f64,
    pub servers: Vec<TraceServer>,
}

/// Converts a timeline into trace records.
pub fn trace_records(timeline: &Timeline) -> Vec<TraceRecord> {
    timeline
        .rounds
        .iter()
        .map(|r| TraceRecord {
            round: r.round_index,
            policy: timeline.policy,
            pricing: timeline.pricing,
            vr_e: sig6(r.vr_e_before),
            servers: r
                .servers
                .iter()
                .map(|s| TraceServer {
                    id: s.id.clone(),
                    score: sig6(s.score),
                    allocation_cpu: s.allocation.cpu,
                    allocation_mem: s.allocation.mem,
                    requests: s.requests,
                    avg_latency_ms: sig6(s.avg_latency.0),
                    vr_s: sig6(s.vr_s),
                    decision: s.decision.as_ref().map_or_else(|| "inactive".to_string(), ToString::to_string),
                    reward_count: s.reward_count,
                    scale_count: s.scale_count,
                    age: s.age,
                    active: s.active,
                })
                .collect(),
        })
        .collect()
}

pub fn write_trace<W: Write>(timeline: &Timeline, mut out: W) -> Result<()> {
    for rec in trace_records(timeline) {
        serde_json::to_writer(&mut out, &rec)?;
        out.write_all(b"\n").map_err(|e| Error::io("<trace>", e))?;
    }
    Ok(())
}

/// Writes `timeline` to `path` as JSON Lines.
pub fn export_trace(timeline: &Timeline, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_trace(timeline, &mut w).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_trace(path: &Path) -> Result<Vec<TraceRecord>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: format!("line {}: {e}", i + 1),
        })?;
        out.push(rec);
    }
    Ok(out)
}

/// A plain comma-separated table with a header row.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }
}

/// Formats a real for tables.
pub fn fmt6(x: f64) -> String {
    format!("{}", sig6(x))
}
