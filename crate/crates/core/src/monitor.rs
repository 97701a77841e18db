//! Per-round observation windows and node-level violation rates.
//!
//! Two violation measures exist side by side. The per-server `VR_s` counts
//! individual requests above the SLO and drives scale-up sizing. The node
//! rate `VR_e` weights each server's request count by whether its *average*
//! latency exceeds the SLO. Both use strict `>`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{MetricsWindow, Millis};

#[derive(Debug, Clone, Default)]
struct Accumulator {
    active: bool,
    users: u32,
    data: f64,
    samples: Vec<Millis>,
}

/// Collects request observations for a set of servers, one window per
/// scaling round.
#[derive(Debug, Clone, Default)]
pub struct Monitor {
    windows: BTreeMap<String, Accumulator>,
}

impl Monitor {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts tracking `id` as an active server with an empty window.
    pub fn register(&mut self, id: impl Into<String>, users: u32) {
        self.windows.insert(
            id.into(),
            Accumulator {
                active: true,
                users,
                ..Default::default()
            },
        );
    }

    /// Stops accepting requests for `id`. Already-recorded samples remain
    /// until the window is closed.
    pub fn deactivate(&mut self, id: &str) -> Result<()> {
        self.slot(id)?.active = false;
        Ok(())
    }

    pub fn is_active(&self, id: &str) -> bool {
        self.windows.get(id).is_some_and(|a| a.active)
    }

    pub fn set_users(&mut self, id: &str, users: u32) -> Result<()> {
        self.slot(id)?.users = users;
        Ok(())
    }

    fn slot(&mut self, id: &str) -> Result<&mut Accumulator> {
        self.windows.get_mut(id).ok_or_else(|| Error::UnknownServer(id.to_string()))
    }

    pub fn record_request(&mut self, id: &str, latency: Millis, data: f64) -> Result<()> {
        let acc = self.slot(id)?;
        if !acc.active {
            return Err(Error::InactiveServer(id.to_string()));
        }
        acc.samples.push(latency);
        acc.data += data;
        Ok(())
    }

    /// Finalizes the current window for `id` and starts a fresh one.
    pub fn close_window(&mut self, id: &str, slo: Millis) -> Result<MetricsWindow> {
        let acc = self.slot(id)?;
        let samples = std::mem::take(&mut acc.samples);
        let data = std::mem::replace(&mut acc.data, 0.0);
        Ok(finalize(samples, acc.users, data, slo))
    }
}

/// Builds a window from raw samples.
pub fn finalize(samples: Vec<Millis>, users: u32, data: f64, slo: Millis) -> MetricsWindow {
    let requests = samples.len() as u64;
    let (avg_latency, violation_rate) = if requests == 0 {
        (Millis(0.0), 0.0)
    } else {
        let sum: f64 = samples.iter().map(|s| s.0).sum();
        let violated = samples.iter().filter(|s| s.0 > slo.0).count();
        (Millis(sum / requests as f64), violated as f64 / requests as f64)
    };
    MetricsWindow {
        requests,
        users_seen: if requests == 0 { 0 } else { users },
        data,
        avg_latency,
        violation_rate,
        latency_samples: samples,
    }
}

/// Numerator and denominator of the node violation rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ViolationCount {
    pub violated: u64,
    pub total: u64,
}

impl ViolationCount {
    pub fn rate(&self) -> Result<f64> {
        if self.total == 0 {
            return Err(Error::NoRequests);
        }
        Ok(self.violated as f64 / self.total as f64)
    }
}

/// Request-weighted count of servers whose average latency exceeds their SLO.
pub fn node_violation_count<'a, I>(windows: I) -> ViolationCount
where
    I: IntoIterator<Item = (&'a MetricsWindow, Millis)>,
{
    windows.into_iter().fold(ViolationCount::default(), |mut acc, (m, slo)| {
        acc.total += m.requests;
        if m.requests > 0 && m.avg_latency.0 > slo.0 {
            acc.violated += m.requests;
        }
        acc
    })
}

/// Node-level violation rate `Σ Request_s·[aL_s > L_s] / Σ Request_s`.
pub fn node_violation_rate<'a, I>(windows: I) -> Result<f64>
where
    I: IntoIterator<Item = (&'a MetricsWindow, Millis)>,
{
    node_violation_count(windows).rate()
}

/// Fraction of all requests on the node that individually exceeded their SLO.
pub fn request_violation_rate<'a, I>(windows: I) -> Result<f64>
where
    I: IntoIterator<Item = (&'a MetricsWindow, Millis)>,
{
    let (violated, total) = windows.into_iter().fold((0u64, 0u64), |(v, t), (m, slo)| {
        let over = m.latency_samples.iter().filter(|s| s.0 > slo.0).count() as u64;
        (v + over, t + m.requests)
    });
    ViolationCount { violated, total }.rate()
}

/// Closed windows for every server on a node, plus the node rate.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct NodeMetrics {
    pub per_server: BTreeMap<String, MetricsWindow>,
    pub slo: BTreeMap<String, Millis>,
    /// Zero when no requests were observed.
    pub vr_e: f64,
}

impl NodeMetrics {
    pub fn new(entries: impl IntoIterator<Item = (String, MetricsWindow, Millis)>) -> Self {
        let mut per_server = BTreeMap::new();
        let mut slo = BTreeMap::new();
        for (id, m, l) in entries {
            slo.insert(id.clone(), l);
            per_server.insert(id, m);
        }
        let mut nm = NodeMetrics {
            per_server,
            slo,
            vr_e: 0.0,
        };
        nm.vr_e = nm.recompute_vr_e();
        nm
    }

    pub fn recompute_vr_e(&self) -> f64 {
        node_violation_rate(self.per_server.iter().map(|(id, m)| (m, self.slo[id]))).unwrap_or(0.0)
    }

    pub fn request_vr(&self) -> f64 {
        request_violation_rate(self.per_server.iter().map(|(id, m)| (m, self.slo[id]))).unwrap_or(0.0)
    }
}
