use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edgescale::runner::{cmd_compare, cmd_run, sweep_servers, sweep_weights, OutputFormat, RunOptions};
use edgescale::scenario::parse_scenario_with;
use edgescale::{PricingModel, PriorityPolicy};

#[derive(Parser)]
#[command(name = "edgescale", version, about = "Run and compare vertical scaling policies on a simulated edge node")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one policy over every seed.
    Run(Common),
    /// Run every policy on the same seeds and workloads.
    Compare(Common),
    /// Sweep server counts or priority weights.
    Sweep {
        #[arg(value_enum)]
        what: SweepKind,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Servers,
    Weights,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    policy: Option<PriorityPolicy>,
    #[arg(long)]
    pricing: Option<PricingModel>,
    #[arg(long)]
    rounds: Option<u32>,
    /// A single seed; may be repeated.
    #[arg(long)]
    seed: Vec<u64>,
    /// Comma-separated seeds.
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "both")]
    format: OutputFormat,
    /// Reject unknown scenario keys instead of warning.
    #[arg(long)]
    strict: bool,
}

impl Common {
    fn options(&self) -> RunOptions {
        let mut seeds = self.seed.clone();
        seeds.extend(&self.seeds);
        RunOptions {
            policy: self.policy,
            pricing: self.pricing,
            rounds: self.rounds,
            seeds: (!seeds.is_empty()).then_some(seeds),
            output: self.output.clone(),
            format: self.format,
        }
    }
}

fn run(cli: Cli) -> edgescale::Result<()> {
    let common = match &cli.command {
        Command::Run(c) | Command::Compare(c) => c,
        Command::Sweep { common, .. } => common,
    };
    let scenario = parse_scenario_with(&common.scenario, common.strict)?;
    for key in &scenario.ignored_keys {
        eprintln!("warning: ignoring unknown key `{key}`");
    }
    let opts = common.options();
    match cli.command {
        Command::Run(_) => {
            let summary = cmd_run(&scenario, &opts)?;
            for s in &summary.per_seed {
                println!("seed {:>4}  vr_e {:.4}", s.seed, s.mean_vr_e);
            }
            println!("{} mean vr_e {:.6}", summary.policy, summary.mean_vr_e());
        }
        Command::Compare(_) => {
            let cmp = cmd_compare(&scenario, &opts)?;
            print!("{}", cmp.to_table().to_csv());
        }
        Command::Sweep { what: SweepKind::Servers, .. } => {
            for curve in sweep_servers(&scenario, &opts)? {
                let slo = curve.slo.map_or_else(|| "own".to_string(), |s| s.0.to_string());
                for r in curve.rows {
                    println!("slo {slo} {} n={} vr_e {:.4} ± {:.4}", r.policy, r.n_servers, r.mean_vr_e, r.std_vr_e);
                }
            }
        }
        Command::Sweep { what: SweepKind::Weights, .. } => {
            let (grid, points) = sweep_weights(&scenario, &opts)?;
            println!("{},{},score", grid.x.name(), grid.y.name());
            for p in points {
                println!("{},{},{}", p.x, p.y, p.score);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
