//! The earlier Saaty-era closed forms, reproduced as published.
//!
//! These formulas pick ε* from a two-gate rule over the extreme criteria of
//! each side instead of taking the maximum over all candidates, and size
//! the modification of each criterion with its own η. Off the Saaty scale
//! both steps can go wrong; the result records when they do instead of
//! correcting it.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::consistency::legacy_saaty_ci;
use crate::deviation::{classify, eps_pair, eps_single, Class};
use crate::error::{BwmError, Result};
use crate::interval::{interval_weights_at, IntervalWeights};
use crate::model::{PairwiseComparisonSystem, PcsJson, Role, WeightSet};

const FLAG_TOLERANCE: f64 = 1e-9;

/// Which branch of the gate rule produced ε*.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum WuCase {
    /// The most deviating criterion below `a_bw`.
    Below,
    /// The most deviating criterion above `a_bw`.
    Above,
    /// The balance of those two criteria.
    Pair,
    /// Nothing to modify.
    Consistent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WuEpsilon {
    pub epsilon_star: f64,
    pub case: WuCase,
    pub abw_star: f64,
    /// Most deviating criterion below `a_bw`, if any.
    pub below: Option<usize>,
    /// Most deviating criterion above `a_bw`, if any.
    pub above: Option<usize>,
}

fn require_single(pcs: &PairwiseComparisonSystem) -> Result<()> {
    if pcs.n_best() != 1 || pcs.n_worst() != 1 {
        return Err(BwmError::LegacyUnsupported);
    }
    Ok(())
}

fn argmax_eps(pcs: &PairwiseComparisonSystem, class: Class) -> Option<(usize, f64)> {
    pcs.others()
        .iter()
        .filter(|&&i| classify(pcs, i) == class)
        .map(|&i| (i, eps_single(pcs.a_b(i), pcs.a_w(i), pcs.abw())))
        .fold(None, |best, (i, e)| match best {
            Some((_, be)) if be >= e => best,
            _ => Some((i, e)),
        })
}

/// ε* and `ã_bw*` by the two-gate rule. An empty side fails its own gate
/// and lets the other side's gate pass.
pub fn wu_epsilon_star(pcs: &PairwiseComparisonSystem) -> Result<WuEpsilon> {
    require_single(pcs)?;
    let abw = pcs.abw();
    let below = argmax_eps(pcs, Class::Below);
    let above = argmax_eps(pcs, Class::Above);
    let (epsilon_star, case, abw_star) = match (below, above) {
        (None, None) => (0.0, WuCase::Consistent, abw),
        (Some((_, e1)), None) => (e1, WuCase::Below, abw - e1),
        (None, Some((_, e2))) => (e2, WuCase::Above, abw + e2),
        (Some((i1, e1)), Some((i2, e2))) => {
            let (b1, w1) = (pcs.a_b(i1), pcs.a_w(i1));
            let (b2, w2) = (pcs.a_b(i2), pcs.a_w(i2));
            if (b2 - e1) * (w2 - e1) <= abw - e1 {
                (e1, WuCase::Below, abw - e1)
            } else if (b1 + e2) * (w1 + e2) >= abw + e2 {
                (e2, WuCase::Above, abw + e2)
            } else {
                let e = eps_pair(b1, w1, b2, w2);
                (e, WuCase::Pair, (b2 - e) * (w2 - e))
            }
        }
    };
    Ok(WuEpsilon {
        epsilon_star,
        case,
        abw_star,
        below: below.map(|b| b.0),
        above: above.map(|a| a.0),
    })
}

/// Interval weights from the legacy ε* and `ã_bw*`, as computed.
pub fn wu_interval_weights(pcs: &PairwiseComparisonSystem) -> Result<IntervalWeights> {
    let eps = wu_epsilon_star(pcs)?;
    Ok(interval_weights_at(pcs, eps.epsilon_star, eps.abw_star))
}

/// Per-criterion modification `η_i` needed to make `a_bi a_iw = r` by
/// moving both entries the same way.
pub fn eta(ab: f64, aw: f64, r: f64) -> f64 {
    let s = ab + aw;
    let delta = ab * aw - r;
    let disc = (s * s - 4.0 * delta).max(0.0);
    (2.0 * delta / (s + disc.sqrt())).abs()
}

/// The legacy modified system and each criterion's η.
pub fn wu_best_modified_pcs(
    pcs: &PairwiseComparisonSystem,
) -> Result<(PairwiseComparisonSystem, BTreeMap<usize, f64>)> {
    let r = wu_epsilon_star(pcs)?.abw_star;
    modified_with_eta(pcs, r)
}

fn modified_with_eta(
    pcs: &PairwiseComparisonSystem,
    r: f64,
) -> Result<(PairwiseComparisonSystem, BTreeMap<usize, f64>)> {
    let n = pcs.n();
    let mut bto = vec![0.0; n];
    let mut otw = vec![0.0; n];
    let mut etas = BTreeMap::new();
    for k in 0..n {
        (bto[k], otw[k]) = match pcs.role(k) {
            Role::Best => (1.0, r),
            Role::Worst => (r, 1.0),
            Role::Other => {
                let (ab, aw) = (pcs.a_b(k), pcs.a_w(k));
                let e = eta(ab, aw, r);
                etas.insert(k, e);
                if ab * aw <= r {
                    (ab + e, aw + e)
                } else {
                    (ab - e, aw - e)
                }
            }
        };
    }
    let out = PairwiseComparisonSystem::with_names(
        pcs.names().to_vec(),
        bto,
        otw,
        pcs.best_indices(),
        pcs.worst_indices(),
    )?;
    Ok((out, etas))
}

fn one_based<S: Serializer>(
    map: &BTreeMap<usize, f64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(map.iter().map(|(k, v)| ((k + 1).to_string(), *v)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LegacyResult {
    pub epsilon_star: f64,
    pub case: WuCase,
    pub abw_star: f64,
    /// Not guaranteed to satisfy `lower <= upper`.
    pub intervals: IntervalWeights,
    pub best_modified_pcs: PcsJson,
    pub best_weights: WeightSet,
    #[serde(serialize_with = "one_based")]
    pub eta: BTreeMap<usize, f64>,
    pub malformed_intervals: bool,
    pub eta_exceeds_epsilon: bool,
    /// Index from the earlier Saaty table, when `a_bw` is an integer 2..=9.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub legacy_ci: Option<f64>,
}

pub fn legacy_analysis(pcs: &PairwiseComparisonSystem) -> Result<LegacyResult> {
    let eps = wu_epsilon_star(pcs)?;
    let intervals = interval_weights_at(pcs, eps.epsilon_star, eps.abw_star);
    let (modified, eta) = modified_with_eta(pcs, eps.abw_star)?;
    let best_weights = WeightSet::from_unnormalized(modified.other_to_worst());
    let malformed_intervals = !intervals.is_well_formed(FLAG_TOLERANCE);
    let eta_exceeds_epsilon = eta.values().any(|&e| e > eps.epsilon_star + FLAG_TOLERANCE);
    Ok(LegacyResult {
        epsilon_star: eps.epsilon_star,
        case: eps.case,
        abw_star: eps.abw_star,
        intervals,
        best_modified_pcs: modified.to_json(),
        best_weights,
        eta,
        malformed_intervals,
        eta_exceeds_epsilon,
        legacy_ci: legacy_saaty_ci(pcs.abw()),
    })
}
