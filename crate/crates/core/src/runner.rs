//! Experiment drivers behind the command-line tool.
//!
//! Everything the binary does is reachable from here, so results can be
//! reproduced from library code alone. Runs for different seeds and cells
//! are independent and fan out over a thread pool; results are gathered in
//! a fixed order, so output files do not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{MetricsWindow, Millis, PricingModel, PriorityPolicy};
use crate::priority::DynamicCounters;
use crate::report::{export_trace, fmt6, mean_std, violation_curve, weight_sweep, CurveRow, LatencyBands, SweepPoint, Table, WeightGrid};
use crate::scenario::Scenario;
use crate::sim::{run_with_trace, NodeConfig, ScenarioRun, Timeline, WorkloadTrace};

/// Which files a command writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Trace,
    Summary,
    #[default]
    Both,
}

impl OutputFormat {
    fn traces(self) -> bool {
        matches!(self, OutputFormat::Trace | OutputFormat::Both)
    }

    fn summary(self) -> bool {
        matches!(self, OutputFormat::Summary | OutputFormat::Both)
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trace" => Ok(OutputFormat::Trace),
            "summary" => Ok(OutputFormat::Summary),
            "both" => Ok(OutputFormat::Both),
            other => Err(Error::invalid("format", format!("expected trace, summary or both, got `{other}`"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Trace => "trace",
            OutputFormat::Summary => "summary",
            OutputFormat::Both => "both",
        })
    }
}

/// Overrides applied on top of a scenario.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub policy: Option<PriorityPolicy>,
    pub pricing: Option<PricingModel>,
    pub rounds: Option<u32>,
    pub seeds: Option<Vec<u64>>,
    /// Directory for output files; nothing is written when unset.
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

impl RunOptions {
    pub fn config(&self, scenario: &Scenario, seed: u64) -> NodeConfig {
        let mut c = scenario.config(seed);
        if let Some(p) = self.policy {
            c.policy = p;
        }
        if let Some(p) = self.pricing {
            c.pricing = p;
        }
        if let Some(r) = self.rounds {
            c.rounds = r;
        }
        c
    }

    pub fn seeds(&self, scenario: &Scenario) -> Result<Vec<u64>> {
        let seeds = self.seeds.clone().unwrap_or_else(|| scenario.seeds().to_vec());
        if seeds.is_empty() {
            return Err(Error::invalid("seeds", "need at least one seed"));
        }
        Ok(seeds)
    }

    fn out_dir(&self) -> Result<Option<&Path>> {
        match &self.output {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
                Ok(Some(dir))
            }
            None => Ok(None),
        }
    }
}

/// Per-seed outcome of one policy run.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedResult {
    pub seed: u64,
    pub mean_vr_e: f64,
    pub mean_vr_request: f64,
    /// Every request of the run, binned against its server's SLO.
    pub bands: LatencyBands,
}

impl SeedResult {
    fn from_run(run: &ScenarioRun, edges: &[f64]) -> Self {
        let mut bands = LatencyBands::empty(edges);
        for (l, slo) in run.samples.iter() {
            bands.add(l, slo);
        }
        SeedResult {
            seed: run.timeline.seed,
            mean_vr_e: run.timeline.mean_vr_e(),
            mean_vr_request: run.timeline.mean_vr_request(),
            bands,
        }
    }

    /// Share of requests in the lowest band.
    pub fn lowest_band(&self) -> f64 {
        self.bands.lowest_fraction()
    }
}

/// Result of [`cmd_run`].
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub policy: PriorityPolicy,
    pub pricing: PricingModel,
    pub per_seed: Vec<SeedResult>,
    pub timelines: Vec<Timeline>,
}

impl RunSummary {
    pub fn mean_vr_e(&self) -> f64 {
        mean_std(&self.per_seed.iter().map(|s| s.mean_vr_e).collect::<Vec<_>>()).0
    }
}

fn band_header(edges: &[f64]) -> Vec<String> {
    LatencyBands::empty(edges).labels().into_iter().map(|l| format!("band{l}")).collect()
}

/// Runs the scenario once per seed with the configured policy.
pub fn cmd_run(scenario: &Scenario, opts: &RunOptions) -> Result<RunSummary> {
    let seeds = opts.seeds(scenario)?;
    let edges = &scenario.experiment.band_edges;
    let runs: Vec<ScenarioRun> = seeds
        .par_iter()
        .map(|&seed| {
            let config = opts.config(scenario, seed);
            let descriptors = scenario.descriptors(seed)?;
            let trace = Arc::new(WorkloadTrace::generate(&descriptors, config.rounds, seed));
            run_with_trace(&config, descriptors, trace)
        })
        .collect::<Result<_>>()?;
    let first = opts.config(scenario, seeds[0]);
    let summary = RunSummary {
        policy: first.policy,
        pricing: first.pricing,
        per_seed: runs.iter().map(|r| SeedResult::from_run(r, edges)).collect(),
        timelines: runs.into_iter().map(|r| r.timeline).collect(),
    };
    if let Some(dir) = opts.out_dir()? {
        if opts.format.traces() {
            for t in &summary.timelines {
                export_trace(t, &dir.join(format!("trace-{}-seed{}.jsonl", t.policy, t.seed)))?;
            }
        }
        if opts.format.summary() {
            let mut header = vec!["seed", "policy", "pricing", "mean_vr_e", "mean_vr_request"]
                .into_iter()
                .map(String::from)
                .collect::<Vec<_>>();
            header.extend(band_header(edges));
            let mut table = Table {
                header,
                rows: Vec::new(),
            };
            for s in &summary.per_seed {
                let mut row = vec![
                    s.seed.to_string(),
                    summary.policy.to_string(),
                    summary.pricing.to_string(),
                    fmt6(s.mean_vr_e),
                    fmt6(s.mean_vr_request),
                ];
                row.extend(s.bands.fractions().into_iter().map(fmt6));
                table.push(row);
            }
            table.write(&dir.join("summary.csv"))?;
        }
    }
    Ok(summary)
}

/// One policy in one (SLO, server count) cell of a comparison.
#[derive(Debug, Clone)]
pub struct ComparisonRow {
    /// `None` when the servers keep their own SLOs.
    pub slo: Option<Millis>,
    pub n_servers: usize,
    pub policy: PriorityPolicy,
    pub per_seed: Vec<SeedResult>,
}

impl ComparisonRow {
    /// Mean and sample standard deviation of per-seed `vr_e`.
    pub fn vr_e(&self) -> (f64, f64) {
        mean_std(&self.per_seed.iter().map(|s| s.mean_vr_e).collect::<Vec<_>>())
    }

    /// Mean over seeds of the lowest-band share.
    pub fn lowest_band(&self) -> f64 {
        mean_std(&self.per_seed.iter().map(SeedResult::lowest_band).collect::<Vec<_>>()).0
    }

    /// Band counts pooled over seeds.
    pub fn pooled_bands(&self) -> LatencyBands {
        let mut b = LatencyBands::empty(&self.per_seed[0].bands.edge_fractions);
        for s in &self.per_seed {
            b.merge(&s.bands);
        }
        b
    }
}

/// Result of [`cmd_compare`]: rows ordered by cell, then by policy.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    pub fn row(&self, slo: Option<Millis>, n: usize, policy: PriorityPolicy) -> Option<&ComparisonRow> {
        self.rows
            .iter()
            .find(|r| r.slo == slo && r.n_servers == n && r.policy == policy)
    }

    pub fn to_table(&self) -> Table {
        let edges = &self.rows[0].per_seed[0].bands.edge_fractions;
        let mut header: Vec<String> = [
            "slo_ms",
            "n_servers",
            "policy",
            "seeds",
            "mean_vr_e",
            "std_vr_e",
            "mean_vr_request",
            "lowest_band",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        header.extend(band_header(edges));
        let mut table = Table {
            header,
            rows: Vec::new(),
        };
        for r in &self.rows {
            let (m, s) = r.vr_e();
            let vr_req = mean_std(&r.per_seed.iter().map(|s| s.mean_vr_request).collect::<Vec<_>>()).0;
            let mut row = vec![
                r.slo.map_or_else(|| "own".to_string(), |s| fmt6(s.0)),
                r.n_servers.to_string(),
                r.policy.to_string(),
                r.per_seed.len().to_string(),
                fmt6(m),
                fmt6(s),
                fmt6(vr_req),
                fmt6(r.lowest_band()),
            ];
            row.extend(r.pooled_bands().fractions().into_iter().map(fmt6));
            table.push(row);
        }
        table
    }
}

fn cell_tag(slo: Option<Millis>, n: usize) -> String {
    match slo {
        Some(s) => format!("slo{}-n{n}", s.0),
        None => format!("n{n}"),
    }
}

/// Runs every policy of the scenario on identical seeds and identical
/// workload traces, for every (SLO, server count) cell.
///
/// Within a seed, all policies replay one trace generated before any of them
/// runs, so differences between rows come from the policies alone.
pub fn cmd_compare(scenario: &Scenario, opts: &RunOptions) -> Result<Comparison> {
    let (comparison, cells, timelines) = compare_inner(scenario, opts)?;
    if let Some(dir) = opts.out_dir()? {
        if opts.format.traces() {
            for (c, t) in &timelines {
                let (slo, n) = cells[*c];
                let name = format!("trace-{}-{}-seed{}.jsonl", cell_tag(slo, n), t.policy, t.seed);
                export_trace(t, &dir.join(name))?;
            }
        }
        if opts.format.summary() {
            comparison.to_table().write(&dir.join("compare.csv"))?;
        }
    }
    Ok(comparison)
}

type Cells = Vec<(Option<Millis>, usize)>;
type CellTimelines = Vec<(usize, Timeline)>;

fn compare_inner(scenario: &Scenario, opts: &RunOptions) -> Result<(Comparison, Cells, CellTimelines)> {
    let seeds = opts.seeds(scenario)?;
    let policies = match opts.policy {
        Some(p) => vec![p],
        None => scenario.experiment.policies.clone(),
    };
    let edges = &scenario.experiment.band_edges;
    let cells: Cells = scenario
        .slo_cells()
        .into_iter()
        .flat_map(|slo| scenario.count_cells().into_iter().map(move |n| (slo, n)))
        .collect();
    let jobs: Vec<(usize, u64)> = (0..cells.len()).flat_map(|c| seeds.iter().map(move |&s| (c, s))).collect();

    let results: Vec<Vec<(SeedResult, Timeline)>> = jobs
        .par_iter()
        .map(|&(c, seed)| {
            let (slo, n) = cells[c];
            let descriptors = scenario.descriptors_for(seed, Some(n), slo)?;
            let base = opts.config(scenario, seed);
            let trace = Arc::new(WorkloadTrace::generate(&descriptors, base.rounds, seed));
            policies
                .iter()
                .map(|&policy| {
                    let config = NodeConfig { policy, ..base.clone() };
                    let run = run_with_trace(&config, descriptors.clone(), Arc::clone(&trace))?;
                    Ok((SeedResult::from_run(&run, edges), run.timeline))
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut by_key: BTreeMap<(usize, usize), ComparisonRow> = BTreeMap::new();
    let mut timelines = Vec::new();
    for (&(c, _), per_policy) in jobs.iter().zip(results) {
        for (p, (res, timeline)) in per_policy.into_iter().enumerate() {
            by_key
                .entry((c, p))
                .or_insert_with(|| ComparisonRow {
                    slo: cells[c].0,
                    n_servers: cells[c].1,
                    policy: policies[p],
                    per_seed: Vec::new(),
                })
                .per_seed
                .push(res);
            timelines.push((c, timeline));
        }
    }
    let comparison = Comparison {
        rows: by_key.into_values().collect(),
    };
    Ok((comparison, cells, timelines))
}

/// Violation-rate curve rows for one SLO.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCurve {
    pub slo: Option<Millis>,
    pub rows: Vec<CurveRow>,
}

/// Mean `vr_e` against server count, one curve per SLO.
pub fn sweep_servers(scenario: &Scenario, opts: &RunOptions) -> Result<Vec<SweepCurve>> {
    let (_, cells, timelines) = compare_inner(scenario, opts)?;
    let mut curves = Vec::new();
    for slo in scenario.slo_cells() {
        let mut keyed: BTreeMap<(PriorityPolicy, usize), Vec<Timeline>> = BTreeMap::new();
        for (c, t) in &timelines {
            let (cell_slo, n) = cells[*c];
            if cell_slo == slo {
                keyed.entry((t.policy, n)).or_default().push(t.clone());
            }
        }
        curves.push(SweepCurve {
            slo,
            rows: violation_curve(&keyed)?,
        });
    }
    if let Some(dir) = opts.out_dir()? {
        let mut table = Table::new(&["slo_ms", "policy", "n_servers", "seeds", "mean_vr_e", "std_vr_e"]);
        for c in &curves {
            for r in &c.rows {
                table.push(vec![
                    c.slo.map_or_else(|| "own".to_string(), |s| fmt6(s.0)),
                    r.policy.to_string(),
                    r.n_servers.to_string(),
                    r.seeds.to_string(),
                    fmt6(r.mean_vr_e),
                    fmt6(r.std_vr_e),
                ]);
            }
        }
        table.write(&dir.join("server_sweep.csv"))?;
    }
    Ok(curves)
}

/// Scores one generated server over the scenario's weight grid.
pub fn sweep_weights(scenario: &Scenario, opts: &RunOptions) -> Result<(WeightGrid, Vec<SweepPoint>)> {
    let ws = scenario
        .experiment
        .weight_sweep
        .as_ref()
        .ok_or_else(|| Error::invalid("experiment.weight_sweep", "missing"))?;
    let seed = opts.seeds(scenario)?[0];
    let descriptors = scenario.descriptors(seed)?;
    let d = descriptors.get(ws.server).ok_or_else(|| {
        Error::invalid(
            "experiment.weight_sweep.server",
            format!("index {} but only {} servers", ws.server, descriptors.len()),
        )
    })?;
    let requests = d.workload.request_rate.round() as u64;
    let m = MetricsWindow::from_aggregates(
        requests,
        d.users,
        requests as f64 * d.workload.data_per_request,
        Millis(0.0),
        0.0,
    );
    let grid = WeightGrid {
        x: ws.x,
        y: ws.y,
        values: WeightGrid::linspace(ws.from, ws.to, ws.steps),
        policy: opts.policy.unwrap_or(ws.policy),
        pricing: opts.pricing.unwrap_or(ws.pricing),
    };
    let counters = DynamicCounters {
        reward: ws.reward,
        scale: ws.scale,
    };
    let points = weight_sweep(d, &m, counters, &scenario.node.weights, &grid)?;
    if let Some(dir) = opts.out_dir()? {
        let mut table = Table::new(&["x_group", "y_group", "x", "y", "score"]);
        for p in &points {
            table.push(vec![
                grid.x.name().to_string(),
                grid.y.name().to_string(),
                fmt6(p.x),
                fmt6(p.y),
                fmt6(p.score),
            ]);
        }
        table.write(&dir.join("weight_sweep.csv"))?;
    }
    Ok((grid, points))
}
