//! Static and dynamic priority scores, and the ordering built from them.
//!
//! ```text
//! SPS  = w_p·P + w_id/ID + w_age·Age + w_loyalty·Loyalty
//! wDPS = SPS + w_request·Request + w_u·|U| + w_data·Data                  (PFR, Hybrid)
//! wDPS = SPS + 1/(w_request·Request) + 1/(w_u·|U|) + 1/(w_data·Data)      (PFP)
//! cDPS = wDPS + w_reward·Reward
//! sDPS = cDPS + 1/(w_scale·Scale)
//! ```
//!
//! Every factor in a reciprocal term is floored at 1 so idle and never-scaled
//! servers keep a finite score.

use std::cell::Cell;
use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{MetricsWindow, PricingModel, PriorityPolicy, ServerDescriptor, ServerRuntime, Weights};

/// The per-term decomposition of a priority score.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ScoreBreakdown {
    pub static_part: f64,
    pub workload_part: f64,
    pub reward_part: f64,
    pub penalty_part: f64,
    pub total: f64,
}

impl ScoreBreakdown {
    fn new(static_part: f64, workload_part: f64, reward_part: f64, penalty_part: f64) -> Self {
        ScoreBreakdown {
            static_part,
            workload_part,
            reward_part,
            penalty_part,
            total: static_part + workload_part + reward_part + penalty_part,
        }
    }
}

/// Reward and scale counters carried by a running server.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DynamicCounters {
    pub reward: u32,
    pub scale: u32,
}

impl From<&ServerRuntime> for DynamicCounters {
    fn from(rt: &ServerRuntime) -> Self {
        DynamicCounters {
            reward: rt.reward_count,
            scale: rt.scale_count,
        }
    }
}

/// The three workload factors as they enter the score.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WorkloadFactors {
    pub requests: f64,
    pub users: f64,
    pub data: f64,
}

impl WorkloadFactors {
    pub fn from_window(m: &MetricsWindow) -> Self {
        WorkloadFactors {
            requests: m.requests as f64,
            users: m.users_seen as f64,
            data: m.data,
        }
    }
}

/// How raw workload factors are turned into score inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorScaling {
    /// Use the observed values directly.
    #[default]
    Raw,
    /// Min-max scale each factor across the servers of a round. Additive
    /// terms land in [0, 1]; reciprocal terms (PFP) land in [1, 2] so the
    /// guard floor does not flatten them.
    MinMax,
}

/// Rescales the workload factors of one round according to `scaling`.
pub fn scale_factors(windows: &[MetricsWindow], scaling: FactorScaling, pricing: PricingModel) -> Vec<WorkloadFactors> {
    let raw: Vec<WorkloadFactors> = windows.iter().map(WorkloadFactors::from_window).collect();
    if scaling == FactorScaling::Raw || raw.is_empty() {
        return raw;
    }
    let offset = if pricing == PricingModel::Pfp { 1.0 } else { 0.0 };
    let span = |get: fn(&WorkloadFactors) -> f64| {
        let lo = raw.iter().map(get).fold(f64::INFINITY, f64::min);
        let hi = raw.iter().map(get).fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    };
    let (rq, us, da) = (span(|f| f.requests), span(|f| f.users), span(|f| f.data));
    let unit = |v: f64, (lo, hi): (f64, f64)| if hi > lo { (v - lo) / (hi - lo) } else { 0.0 };
    raw.iter()
        .map(|f| WorkloadFactors {
            requests: offset + unit(f.requests, rq),
            users: offset + unit(f.users, us),
            data: offset + unit(f.data, da),
        })
        .collect()
}

fn reciprocal(weight: f64, factor: f64, name: &'static str) -> Result<f64> {
    if weight == 0.0 {
        return Err(Error::ZeroWeight(name));
    }
    Ok(1.0 / (weight * factor.max(1.0)))
}

/// Static priority score.
pub fn compute_sps(d: &ServerDescriptor, w: &Weights) -> f64 {
    debug_assert!(d.arrival_ordinal >= 1);
    w.w_p * d.premium + w.w_id / d.arrival_ordinal as f64 + w.w_age * d.age as f64 + w.w_loyalty * d.loyalty as f64
}

fn workload_term(f: &WorkloadFactors, w: &Weights, pricing: PricingModel) -> Result<f64> {
    match pricing {
        PricingModel::Pfr | PricingModel::Hybrid => {
            Ok(w.w_request * f.requests + w.w_u * f.users + w.w_data * f.data)
        }
        PricingModel::Pfp => Ok(reciprocal(w.w_request, f.requests, "w_request")?
            + reciprocal(w.w_u, f.users, "w_u")?
            + reciprocal(w.w_data, f.data, "w_data")?),
    }
}

/// Workload-aware dynamic score.
pub fn compute_wdps(d: &ServerDescriptor, m: &MetricsWindow, w: &Weights, pricing: PricingModel) -> Result<f64> {
    Ok(compute_sps(d, w) + workload_term(&WorkloadFactors::from_window(m), w, pricing)?)
}

/// Community-aware dynamic score: wDPS plus the donation reward.
pub fn compute_cdps(
    d: &ServerDescriptor,
    m: &MetricsWindow,
    w: &Weights,
    pricing: PricingModel,
    reward_count: u32,
) -> Result<f64> {
    Ok(compute_wdps(d, m, w, pricing)? + w.w_reward * reward_count as f64)
}

/// System-aware dynamic score: cDPS plus a term that shrinks as the server
/// is scaled more often.
pub fn compute_sdps(
    d: &ServerDescriptor,
    m: &MetricsWindow,
    w: &Weights,
    pricing: PricingModel,
    reward_count: u32,
    scale_count: u32,
) -> Result<f64> {
    Ok(compute_cdps(d, m, w, pricing, reward_count)? + reciprocal(w.w_scale, scale_count as f64, "w_scale")?)
}

/// Score breakdown for an already-scaled set of workload factors.
pub fn score_with_factors(
    policy: PriorityPolicy,
    d: &ServerDescriptor,
    factors: &WorkloadFactors,
    w: &Weights,
    pricing: PricingModel,
    counters: DynamicCounters,
) -> Result<ScoreBreakdown> {
    let sps = compute_sps(d, w);
    let b = match policy {
        // NoScaling never acts on its ordering; it reports the static order.
        PriorityPolicy::NoScaling | PriorityPolicy::Spm => ScoreBreakdown::new(sps, 0.0, 0.0, 0.0),
        PriorityPolicy::Wdps => ScoreBreakdown::new(sps, workload_term(factors, w, pricing)?, 0.0, 0.0),
        PriorityPolicy::Cdps => ScoreBreakdown::new(
            sps,
            workload_term(factors, w, pricing)?,
            w.w_reward * counters.reward as f64,
            0.0,
        ),
        PriorityPolicy::Sdps => ScoreBreakdown::new(
            sps,
            workload_term(factors, w, pricing)?,
            w.w_reward * counters.reward as f64,
            reciprocal(w.w_scale, counters.scale as f64, "w_scale")?,
        ),
    };
    Ok(b)
}

/// Dispatches to the score of `policy`. For SPM only the static score is
/// produced and the metrics window is ignored.
pub fn compute_priority(
    policy: PriorityPolicy,
    d: &ServerDescriptor,
    m: &MetricsWindow,
    w: &Weights,
    pricing: PricingModel,
    counters: DynamicCounters,
) -> Result<ScoreBreakdown> {
    score_with_factors(policy, d, &WorkloadFactors::from_window(m), w, pricing, counters)
}

/// One entry of a priority ordering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedServer {
    /// Position of the server in the caller's input slice.
    pub index: usize,
    pub id: String,
    pub score: f64,
}

/// Sort key used to order servers: score descending, then arrival ordinal
/// ascending, then id.
#[derive(Debug, Clone, Copy)]
pub struct RankKey<'a> {
    pub score: f64,
    pub arrival_ordinal: u32,
    pub id: &'a str,
}

pub fn compare_rank(a: &RankKey<'_>, b: &RankKey<'_>) -> Ordering {
    b.score
        .total_cmp(&a.score)
        .then(a.arrival_ordinal.cmp(&b.arrival_ordinal))
        .then_with(|| a.id.cmp(b.id))
}

/// Returns indices into `keys` in priority order and the number of
/// comparisons the sort performed.
pub fn order_by_rank(keys: &[RankKey<'_>]) -> (Vec<usize>, u64) {
    let comparisons = Cell::new(0u64);
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| {
        comparisons.set(comparisons.get() + 1);
        compare_rank(&keys[a], &keys[b])
    });
    (order, comparisons.get())
}

/// Scores every server for `policy` and returns them highest priority first.
/// SPM uses each server's deployment-time static score.
pub fn rank_servers(
    servers: &[(ServerRuntime, MetricsWindow)],
    policy: PriorityPolicy,
    w: &Weights,
    pricing: PricingModel,
) -> Result<Vec<RankedServer>> {
    let scores = servers
        .iter()
        .map(|(rt, m)| match policy {
            PriorityPolicy::NoScaling | PriorityPolicy::Spm => Ok(rt.static_score),
            _ => compute_priority(policy, &rt.descriptor, m, w, pricing, rt.into()).map(|b| b.total),
        })
        .collect::<Result<Vec<f64>>>()?;
    let keys: Vec<RankKey<'_>> = servers
        .iter()
        .zip(&scores)
        .map(|((rt, _), &score)| RankKey {
            score,
            arrival_ordinal: rt.descriptor.arrival_ordinal,
            id: rt.id(),
        })
        .collect();
    let (order, _) = order_by_rank(&keys);
    Ok(order
        .into_iter()
        .map(|i| RankedServer {
            index: i,
            id: servers[i].0.id().to_string(),
            score: scores[i],
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::descriptor;
    use crate::model::{Millis, ResourceVector};
    use proptest::prelude::*;

    fn sps_descriptor(p: f64, id: u32, age: u32, loyalty: u32) -> ServerDescriptor {
        let mut d = descriptor("s", id);
        d.premium = p;
        d.age = age;
        d.loyalty = loyalty;
        d
    }

    fn window(requests: u64, users: u32, data: f64) -> MetricsWindow {
        MetricsWindow::from_aggregates(requests, users, data, Millis(0.0), 0.0)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn sps_examples() {
        let w = Weights::default();
        assert_eq!(compute_sps(&sps_descriptor(0.0, 1, 0, 0), &w), 1.0);
        assert!(close(compute_sps(&sps_descriptor(2.0, 4, 3, 5), &w), 10.25));
        assert!(close(compute_sps(&sps_descriptor(0.0, 10, 0, 0), &w), 0.1));
    }

    #[test]
    fn wdps_examples() {
        let w = Weights::default();
        let d = sps_descriptor(0.0, 1, 0, 0);
        let m = window(100, 10, 50.0);
        assert!(close(compute_wdps(&d, &m, &w, PricingModel::Pfr).unwrap(), 161.0));
        assert!(close(compute_wdps(&d, &m, &w, PricingModel::Pfp).unwrap(), 1.13));
        assert!(close(compute_wdps(&d, &window(0, 0, 0.0), &w, PricingModel::Pfp).unwrap(), 4.0));
    }

    #[test]
    fn pfp_with_zero_weight_is_an_error() {
        let w = Weights {
            w_data: 0.0,
            ..Weights::default()
        };
        let d = sps_descriptor(0.0, 1, 0, 0);
        let err = compute_wdps(&d, &window(1, 1, 1.0), &w, PricingModel::Pfp).unwrap_err();
        assert!(matches!(err, Error::ZeroWeight("w_data")));
        // additive branch accepts a zero weight
        assert!(compute_wdps(&d, &window(1, 1, 1.0), &w, PricingModel::Pfr).is_ok());
    }

    #[test]
    fn cdps_examples() {
        let d = sps_descriptor(0.0, 1, 0, 0);
        let m = window(100, 10, 50.0);
        let w = Weights::default();
        assert!(close(compute_cdps(&d, &m, &w, PricingModel::Pfp, 2).unwrap(), 3.13));
        assert!(close(compute_cdps(&d, &m, &w, PricingModel::Pfr, 0).unwrap(), 161.0));
        let half = Weights { w_reward: 0.5, ..w };
        assert!(close(compute_cdps(&d, &m, &half, PricingModel::Pfp, 2).unwrap(), 2.13));
    }

    #[test]
    fn sdps_examples() {
        let d = sps_descriptor(0.0, 1, 0, 0);
        let m = window(100, 10, 50.0);
        let w = Weights::default();
        assert!(close(compute_sdps(&d, &m, &w, PricingModel::Pfp, 2, 4).unwrap(), 3.38));
        assert!(close(compute_sdps(&d, &m, &w, PricingModel::Pfp, 2, 1).unwrap(), 4.13));
        assert!(close(compute_sdps(&d, &m, &w, PricingModel::Pfp, 2, 0).unwrap(), 4.13));
        let no_scale = Weights { w_scale: 0.0, ..w };
        assert!(compute_sdps(&d, &m, &no_scale, PricingModel::Pfr, 0, 0).is_err());
    }

    #[test]
    fn spm_ignores_metrics() {
        let d = sps_descriptor(2.0, 4, 3, 5);
        let w = Weights::default();
        let r1 = compute_priority(PriorityPolicy::Spm, &d, &window(5, 1, 3.0), &w, PricingModel::Pfr, Default::default());
        let r2 = compute_priority(PriorityPolicy::Spm, &d, &window(500, 90, 30.0), &w, PricingModel::Pfr, Default::default());
        assert_eq!(r1.unwrap(), r2.unwrap());
    }

    #[test]
    fn sdps_with_idle_factors() {
        let d = sps_descriptor(0.0, 1, 0, 0);
        let b = compute_priority(
            PriorityPolicy::Sdps,
            &d,
            &window(0, 0, 0.0),
            &Weights::default(),
            PricingModel::Pfp,
            DynamicCounters { reward: 0, scale: 0 },
        )
        .unwrap();
        assert!(close(b.total, 5.0));
        assert_eq!(b.static_part, 1.0);
        assert_eq!(b.workload_part, 3.0);
        assert_eq!(b.penalty_part, 1.0);
    }

    #[test]
    fn hybrid_matches_pfr() {
        let d = sps_descriptor(1.5, 3, 1, 2);
        let m = window(42, 7, 13.5);
        let w = Weights::default();
        let a = compute_priority(PriorityPolicy::Wdps, &d, &m, &w, PricingModel::Pfr, Default::default()).unwrap();
        let b = compute_priority(PriorityPolicy::Wdps, &d, &m, &w, PricingModel::Hybrid, Default::default()).unwrap();
        assert_eq!(a, b);
    }

    fn runtime(id: &str, ordinal: u32, score: f64) -> ServerRuntime {
        ServerRuntime::new(descriptor(id, ordinal), ResourceVector::new(64, 32), score)
    }

    fn ids(r: &[RankedServer]) -> Vec<&str> {
        r.iter().map(|s| s.id.as_str()).collect()
    }

    #[test]
    fn ranking_by_static_score() {
        let servers = vec![
            (runtime("a", 1, 5.0), MetricsWindow::default()),
            (runtime("b", 2, 3.0), MetricsWindow::default()),
            (runtime("s", 3, 4.0), MetricsWindow::default()),
        ];
        let r = rank_servers(&servers, PriorityPolicy::Spm, &Weights::default(), PricingModel::Pfr).unwrap();
        assert_eq!(ids(&r), ["a", "s", "b"]);
    }

    #[test]
    fn ties_fall_back_to_arrival_order() {
        let servers = vec![
            (runtime("x", 2, 1.0), MetricsWindow::default()),
            (runtime("y", 1, 1.0), MetricsWindow::default()),
        ];
        let r = rank_servers(&servers, PriorityPolicy::Spm, &Weights::default(), PricingModel::Pfr).unwrap();
        assert_eq!(ids(&r), ["y", "x"]);
        let single = vec![(runtime("z", 1, 0.0), MetricsWindow::default())];
        let r = rank_servers(&single, PriorityPolicy::Spm, &Weights::default(), PricingModel::Pfr).unwrap();
        assert_eq!(ids(&r), ["z"]);
    }

    #[test]
    fn minmax_scaling_ranges() {
        let ws = vec![window(10, 1, 5.0), window(30, 3, 5.0), window(20, 2, 5.0)];
        let pfr = scale_factors(&ws, FactorScaling::MinMax, PricingModel::Pfr);
        assert_eq!(pfr[0].requests, 0.0);
        assert_eq!(pfr[1].requests, 1.0);
        assert_eq!(pfr[2].users, 0.5);
        assert_eq!(pfr[0].data, 0.0);
        let pfp = scale_factors(&ws, FactorScaling::MinMax, PricingModel::Pfp);
        assert_eq!(pfp[1].requests, 2.0);
        assert_eq!(pfp[0].data, 1.0);
    }

    proptest! {
        #[test]
        fn ranking_is_order_invariant(
            scores in prop::collection::vec(0u8..4, 1..20),
            seed in any::<u64>(),
        ) {
            let servers: Vec<_> = scores
                .iter()
                .enumerate()
                .map(|(i, &s)| (runtime(&format!("s{i}"), i as u32 + 1, s as f64), MetricsWindow::default()))
                .collect();
            let mut shuffled = servers.clone();
            // deterministic Fisher-Yates driven by the seed
            let mut x = seed | 1;
            for i in (1..shuffled.len()).rev() {
                x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                shuffled.swap(i, (x % (i as u64 + 1)) as usize);
            }
            let w = Weights::default();
            let a = rank_servers(&servers, PriorityPolicy::Spm, &w, PricingModel::Pfr).unwrap();
            let b = rank_servers(&shuffled, PriorityPolicy::Spm, &w, PricingModel::Pfr).unwrap();
            prop_assert_eq!(ids(&a), ids(&b));
            let mut seen: Vec<usize> = a.iter().map(|r| r.index).collect();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..servers.len()).collect::<Vec<_>>());
        }

        #[test]
        fn additive_factors_never_lower_the_score(
            req in 0u64..10_000, users in 0u32..500, data in 0.0f64..1e5,
            reward in 0u32..100, bump in 1u64..100,
        ) {
            let d = sps_descriptor(1.0, 2, 0, 1);
            let w = Weights::default();
            let base = compute_cdps(&d, &window(req, users, data), &w, PricingModel::Pfr, reward).unwrap();
            let more_req = compute_cdps(&d, &window(req + bump, users, data), &w, PricingModel::Pfr, reward).unwrap();
            let more_reward = compute_cdps(&d, &window(req, users, data), &w, PricingModel::Pfr, reward + 1).unwrap();
            prop_assert!(more_req >= base);
            prop_assert!(more_reward >= base);
        }

        #[test]
        fn reciprocal_factors_never_raise_the_score(
            req in 1u64..10_000, users in 1u32..500, data in 1.0f64..1e5,
            scale in 1u32..100, bump in 1u64..100,
        ) {
            let d = sps_descriptor(1.0, 2, 0, 1);
            let w = Weights::default();
            let base = compute_sdps(&d, &window(req, users, data), &w, PricingModel::Pfp, 0, scale).unwrap();
            let more_req = compute_sdps(&d, &window(req + bump, users, data), &w, PricingModel::Pfp, 0, scale).unwrap();
            let more_scale = compute_sdps(&d, &window(req, users, data), &w, PricingModel::Pfp, 0, scale + 1).unwrap();
            prop_assert!(more_req <= base);
            prop_assert!(more_scale <= base);
        }
    }
}
