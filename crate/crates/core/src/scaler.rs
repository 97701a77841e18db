//! Priority-ordered vertical scaling.
//!
//! A scaling round scores every running server, sorts them, and walks the
//! list from the highest priority down. Each server is scaled up by its
//! violation share of its current allocation, scaled down by one unit, asked
//! to donate a unit, left alone, or terminated. A scale-up that does not fit
//! in the free pool evicts servers from the bottom of the list, never
//! reaching the server being scaled or anything above it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{
    MetricsWindow, Millis, PricingModel, PriorityPolicy, ResourceVector, ScalingDecision, ServerRuntime,
    TerminationReason, Weights,
};
use crate::monitor::{node_violation_rate, request_violation_rate};
use crate::node::EdgeNode;
use crate::priority::{order_by_rank, scale_factors, score_with_factors, FactorScaling, RankKey};

/// One server terminated to make room for another.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eviction {
    pub victim: String,
    pub freed: ResourceVector,
    pub cause: String,
}

/// Post-round view of one server, suitable for tracing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ServerSnapshot {
    pub id: String,
    pub score: f64,
    pub allocation: ResourceVector,
    pub requests: u64,
    pub avg_latency: Millis,
    pub vr_s: f64,
    /// `None` for servers that were already off the node when the round began.
    pub decision: Option<ScalingDecision>,
    pub reward_count: u32,
    pub scale_count: u32,
    pub age: u32,
    pub active: bool,
}

/// Everything one scaling round did.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundReport {
    pub round_index: u32,
    /// Ids of the servers that were running, highest priority first.
    pub ordering: Vec<String>,
    pub decisions: BTreeMap<String, ScalingDecision>,
    pub evictions: Vec<Eviction>,
    pub vr_e_before: f64,
    /// Fraction of individual requests above their SLO in the closed windows.
    pub vr_request: f64,
    /// Filled in by the simulator from the post-scaling allocations.
    pub vr_e_after: Option<f64>,
    /// Comparisons, decisions, and mutations performed.
    pub op_count: u64,
    pub migration_delay: Millis,
    pub servers: Vec<ServerSnapshot>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleDownKind {
    Ordinary,
    Donation,
}

/// Result of a scale-up request.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScaleUpOutcome {
    pub applied: ResourceVector,
    pub evictions: Vec<Eviction>,
    /// State migration time charged for evicted stateful servers.
    pub migration_delay: Millis,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminationOutcome {
    pub freed: ResourceVector,
    pub migration_delay: Millis,
}

/// Tunables for the scaler that are not part of the node's resources.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    /// Terminate a server after this many consecutive request-free rounds.
    pub idle_limit: Option<u32>,
    /// Kilobytes per second available for migrating server state to the cloud.
    pub migration_bandwidth_kbps: f64,
    pub factor_scaling: FactorScaling,
}

impl Default for Scaler {
    fn default() -> Self {
        Scaler {
            idle_limit: None,
            migration_bandwidth_kbps: 1024.0,
            factor_scaling: FactorScaling::Raw,
        }
    }
}

/// `ceil(R_s · VR_s)` per component; a component that rounds to zero takes
/// the unit's value instead.
pub fn scale_up_amount(allocation: ResourceVector, violation_rate: f64, unit: ResourceVector) -> ResourceVector {
    let raw = allocation.scale_ceil(violation_rate.clamp(0.0, 1.0));
    ResourceVector {
        cpu: if raw.cpu == 0 { unit.cpu } else { raw.cpu },
        mem: if raw.mem == 0 { unit.mem } else { raw.mem },
    }
}

impl Scaler {
    /// Picks the action for one server from its just-closed window.
    pub fn decide(&self, rt: &ServerRuntime, m: &MetricsWindow, unit: ResourceVector, floor: ResourceVector) -> ScalingDecision {
        let d = &rt.descriptor;
        if !rt.active {
            return ScalingDecision::Terminate(TerminationReason::Inactive);
        }
        if d.net_latency_edge.0 >= d.net_latency_cloud.0 {
            return ScalingDecision::Terminate(TerminationReason::NoNetworkBenefit);
        }
        if self.idle_limit.is_some_and(|limit| rt.idle_rounds >= limit) {
            return ScalingDecision::Terminate(TerminationReason::Idle);
        }
        let latency = m.avg_latency.0;
        let slo = d.slo_latency.0;
        let reducible = !rt.allocation.saturating_sub(&floor).is_zero();
        if latency > slo {
            ScalingDecision::ScaleUp(scale_up_amount(rt.allocation, m.violation_rate, unit))
        } else if latency > d.down_threshold * slo {
            if d.donation && reducible {
                ScalingDecision::Donate(unit)
            } else {
                ScalingDecision::NoChange
            }
        } else if reducible {
            ScalingDecision::ScaleDown(unit)
        } else {
            ScalingDecision::NoChange
        }
    }

    /// Grows server `idx` by up to `amount`, evicting lower-ranked servers
    /// when the free pool is short. `order` is the round's priority order.
    pub fn scale_up(&self, node: &mut EdgeNode, idx: usize, amount: ResourceVector, order: &[usize]) -> Result<ScaleUpOutcome> {
        let rank = order
            .iter()
            .position(|&i| i == idx)
            .ok_or_else(|| crate::error::Error::UnknownServer(node.server(idx).id().to_string()))?;
        let mut tail = order.len();
        let mut ops = 0;
        self.scale_up_inner(node, idx, rank, amount, order, &mut tail, &mut ops, &mut |_| {})
    }

    #[allow(clippy::too_many_arguments)]
    fn scale_up_inner(
        &self,
        node: &mut EdgeNode,
        idx: usize,
        rank: usize,
        amount: ResourceVector,
        order: &[usize],
        tail: &mut usize,
        ops: &mut u64,
        observe: &mut dyn FnMut(&EdgeNode),
    ) -> Result<ScaleUpOutcome> {
        let mut outcome = ScaleUpOutcome::default();
        if !amount.fits_in(&node.free()) {
            let cause = node.server(idx).id().to_string();
            // Everything at or beyond `tail` is already inactive.
            while !amount.fits_in(&node.free()) {
                if *tail <= rank + 1 {
                    break;
                }
                *tail -= 1;
                *ops += 1;
                let victim = order[*tail];
                if !node.server(victim).active {
                    continue;
                }
                let t = self.terminate(node, victim, TerminationReason::Evicted { by: cause.clone() })?;
                outcome.migration_delay.0 += t.migration_delay.0;
                let freed = t.freed;
                *ops += 1;
                observe(node);
                outcome.evictions.push(Eviction {
                    victim: node.server(victim).id().to_string(),
                    freed,
                    cause: cause.clone(),
                });
            }
        }
        let applied = amount.min(&node.free());
        node.grant(idx, applied)?;
        node.server_mut(idx).scale_count += 1;
        *ops += 1;
        observe(node);
        outcome.applied = applied;
        Ok(outcome)
    }

    /// Shrinks server `idx` by up to `amount` without going below the node's
    /// minimum allocation. Donations bump the reward counter; ordinary
    /// scale-downs bump the scale counter.
    pub fn scale_down(&self, node: &mut EdgeNode, idx: usize, amount: ResourceVector, kind: ScaleDownKind) -> Result<ResourceVector> {
        let headroom = node.server(idx).allocation.saturating_sub(&node.min_allocation());
        let freed = amount.min(&headroom);
        node.reclaim(idx, freed)?;
        let s = node.server_mut(idx);
        match kind {
            ScaleDownKind::Ordinary => s.scale_count += 1,
            ScaleDownKind::Donation => s.reward_count += 1,
        }
        Ok(freed)
    }

    /// Removes server `idx` from the node; its users fall back to the cloud.
    pub fn terminate(&self, node: &mut EdgeNode, idx: usize, _reason: TerminationReason) -> Result<TerminationOutcome> {
        let was_active = node.server(idx).active;
        let freed = node.release_all(idx);
        let s = node.server_mut(idx);
        let mut migration_delay = Millis(0.0);
        if was_active {
            s.descriptor.age += 1;
            if s.descriptor.stateful && self.migration_bandwidth_kbps > 0.0 {
                migration_delay = Millis(s.descriptor.state_kb / self.migration_bandwidth_kbps * 1000.0);
            }
        }
        Ok(TerminationOutcome { freed, migration_delay })
    }

    /// Runs one full round. `windows` is indexed like `node.servers()`.
    pub fn scaling_round(
        &self,
        node: &mut EdgeNode,
        windows: &[MetricsWindow],
        round_index: u32,
        policy: PriorityPolicy,
        weights: &Weights,
        pricing: PricingModel,
    ) -> Result<RoundReport> {
        self.scaling_round_observed(node, windows, round_index, policy, weights, pricing, &mut |_| {})
    }

    /// As [`Scaler::scaling_round`], calling `observe` after every mutation
    /// of node state.
    #[allow(clippy::too_many_arguments)]
    pub fn scaling_round_observed(
        &self,
        node: &mut EdgeNode,
        windows: &[MetricsWindow],
        round_index: u32,
        policy: PriorityPolicy,
        weights: &Weights,
        pricing: PricingModel,
        observe: &mut dyn FnMut(&EdgeNode),
    ) -> Result<RoundReport> {
        assert_eq!(windows.len(), node.servers().len(), "one window per server");
        let vr_e_before = node_violation_rate(
            windows
                .iter()
                .zip(node.servers())
                .map(|(m, s)| (m, s.descriptor.slo_latency)),
        )
        .unwrap_or(0.0);
        let vr_request = request_violation_rate(
            windows
                .iter()
                .zip(node.servers())
                .map(|(m, s)| (m, s.descriptor.slo_latency)),
        )
        .unwrap_or(0.0);

        for (s, m) in (0..node.servers().len()).zip(windows) {
            let rt = node.server_mut(s);
            if rt.active {
                rt.idle_rounds = if m.requests == 0 { rt.idle_rounds + 1 } else { 0 };
            }
        }

        let running: Vec<usize> = (0..node.servers().len()).filter(|&i| node.server(i).active).collect();
        let scores: Vec<f64> = match policy {
            PriorityPolicy::NoScaling | PriorityPolicy::Spm => {
                running.iter().map(|&i| node.server(i).static_score).collect()
            }
            _ => {
                let active_windows: Vec<MetricsWindow> = running
                    .iter()
                    .map(|&i| MetricsWindow {
                        latency_samples: Vec::new(),
                        ..windows[i].clone()
                    })
                    .collect();
                let factors = scale_factors(&active_windows, self.factor_scaling, pricing);
                running
                    .iter()
                    .zip(&factors)
                    .map(|(&i, f)| {
                        let rt = node.server(i);
                        score_with_factors(policy, &rt.descriptor, f, weights, pricing, rt.into()).map(|b| b.total)
                    })
                    .collect::<Result<_>>()?
            }
        };
        for (&i, &score) in running.iter().zip(&scores) {
            node.server_mut(i).score = score;
        }

        let keys: Vec<RankKey<'_>> = running
            .iter()
            .zip(&scores)
            .map(|(&i, &score)| RankKey {
                score,
                arrival_ordinal: node.server(i).descriptor.arrival_ordinal,
                id: node.server(i).id(),
            })
            .collect();
        let (rank_order, comparisons) = order_by_rank(&keys);
        let order: Vec<usize> = rank_order.into_iter().map(|k| running[k]).collect();
        let mut op_count = comparisons;

        let mut decisions = BTreeMap::new();
        let mut evictions: Vec<Eviction> = Vec::new();
        let mut migration_delay = 0.0;
        let mut tail = order.len();

        for (rank, &idx) in order.iter().enumerate() {
            op_count += 1;
            let id = node.server(idx).id().to_string();
            if policy == PriorityPolicy::NoScaling {
                decisions.insert(id, ScalingDecision::NoChange);
                continue;
            }
            if !node.server(idx).active {
                let by = evictions
                    .iter()
                    .find(|e| e.victim == id)
                    .map(|e| e.cause.clone())
                    .unwrap_or_default();
                decisions.insert(id, ScalingDecision::Terminate(TerminationReason::Evicted { by }));
                continue;
            }
            let decision = self.decide(node.server(idx), &windows[idx], node.unit(), node.min_allocation());
            match &decision {
                ScalingDecision::ScaleUp(amount) => {
                    let out =
                        self.scale_up_inner(node, idx, rank, *amount, &order, &mut tail, &mut op_count, observe)?;
                    migration_delay += out.migration_delay.0;
                    evictions.extend(out.evictions);
                }
                ScalingDecision::ScaleDown(amount) => {
                    self.scale_down(node, idx, *amount, ScaleDownKind::Ordinary)?;
                    op_count += 1;
                    observe(node);
                }
                ScalingDecision::Donate(amount) => {
                    self.scale_down(node, idx, *amount, ScaleDownKind::Donation)?;
                    op_count += 1;
                    observe(node);
                }
                ScalingDecision::NoChange => {}
                ScalingDecision::Terminate(reason) => {
                    migration_delay += self.terminate(node, idx, reason.clone())?.migration_delay.0;
                    op_count += 1;
                    observe(node);
                }
            }
            decisions.insert(id, decision);
        }

        let servers = node
            .servers()
            .iter()
            .zip(windows)
            .map(|(rt, m)| ServerSnapshot {
                id: rt.id().to_string(),
                score: rt.score,
                allocation: rt.allocation,
                requests: m.requests,
                avg_latency: m.avg_latency,
                vr_s: m.violation_rate,
                decision: decisions.get(rt.id()).cloned(),
                reward_count: rt.reward_count,
                scale_count: rt.scale_count,
                age: rt.descriptor.age,
                active: rt.active,
            })
            .collect();

        Ok(RoundReport {
            round_index,
            ordering: order.iter().map(|&i| node.server(i).id().to_string()).collect(),
            decisions,
            evictions,
            vr_e_before,
            vr_request,
            vr_e_after: None,
            op_count,
            migration_delay: Millis(migration_delay),
            servers,
        })
    }
}
