//! Priority-driven vertical scaling for multi-tenant edge nodes.
//!
//! The crate has three layers:
//!
//! - [`priority`] scores tenant servers with a static score or one of three
//!   dynamic scores and orders them.
//! - [`scaler`] walks that order each round and scales servers up, down, or
//!   off the node, evicting low-priority tenants when a scale-up does not fit.
//! - [`sim`] drives a node round by round with seeded workloads and a
//!   pluggable latency model; [`runner`] and [`report`] turn runs into
//!   policy comparisons, latency-band histograms, and trace files.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod error;
pub mod model;
pub mod monitor;
pub mod node;
pub mod priority;
pub mod report;
pub mod runner;
pub mod scaler;
pub mod scenario;
pub mod sim;

pub use error::{Error, Result};
pub use model::{
    validate_descriptor, MetricsWindow, Millis, PricingModel, PriorityPolicy, ResourceVector, ScalingDecision,
    ServerDescriptor, ServerRuntime, TerminationReason, Weights, WorkloadSpec,
};
pub use node::EdgeNode;
pub use scaler::{RoundReport, Scaler};
pub use scenario::{parse_scenario, Scenario};
pub use sim::{run_scenario, NodeConfig, Simulator, Timeline};
