//! Closed forms against the brute-force oracle.

use serde::Serialize;

use crate::deviation::{abw_star, deviation_profile};
use crate::interval::interval_weights;
use crate::model::PairwiseComparisonSystem;
use crate::oracle::{feasible_at, random_pcs, solve_all_weight_bounds, solve_epsilon_star};
use crate::scale::Scale;

pub const EPSILON_TOLERANCE: f64 = 1e-6;
pub const INTERVAL_TOLERANCE: f64 = 5e-4;
const BISECTION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseReport {
    pub label: String,
    pub n: usize,
    pub n_best: usize,
    pub n_worst: usize,
    pub analytic_epsilon: f64,
    pub oracle_epsilon: f64,
    pub epsilon_diff: f64,
    /// `None` when the oracle found no solution at the analytic ε*.
    pub max_interval_diff: Option<f64>,
    pub anchor_feasible: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub max_epsilon_diff: f64,
    pub max_interval_diff: f64,
    pub epsilon_tolerance: f64,
    pub interval_tolerance: f64,
    /// Every failing case, plus every case when there are few.
    pub details: Vec<CaseReport>,
}

/// Oracle check of one system.
pub fn verify_pcs(pcs: &PairwiseComparisonSystem, label: impl Into<String>) -> CaseReport {
    let profile = deviation_profile(pcs);
    let eps = profile.epsilon_star;
    let oracle_eps = solve_epsilon_star(pcs, BISECTION_TOLERANCE);
    let epsilon_diff = (eps - oracle_eps).abs();
    let slack = 1e-9 * eps.max(1.0);
    let anchor_feasible = feasible_at(pcs, eps + slack, abw_star(&profile, pcs));
    let analytic = interval_weights(pcs);
    let max_interval_diff = solve_all_weight_bounds(pcs, eps + slack)
        .ok()
        .map(|bounds| {
            bounds
                .iter()
                .zip(analytic.as_slice())
                .map(|(o, a)| (o.lower - a.lower).abs().max((o.upper - a.upper).abs()))
                .fold(0.0, f64::max)
        });
    let passed = epsilon_diff <= EPSILON_TOLERANCE
        && anchor_feasible
        && max_interval_diff.is_some_and(|d| d <= INTERVAL_TOLERANCE);
    CaseReport {
        label: label.into(),
        n: pcs.n(),
        n_best: pcs.n_best(),
        n_worst: pcs.n_worst(),
        analytic_epsilon: eps,
        oracle_epsilon: oracle_eps,
        epsilon_diff,
        max_interval_diff,
        anchor_feasible,
        passed,
    }
}

pub fn summarize(cases: Vec<CaseReport>) -> VerificationReport {
    let failures = cases.iter().filter(|c| !c.passed).count();
    let max_epsilon_diff = cases.iter().map(|c| c.epsilon_diff).fold(0.0, f64::max);
    let max_interval_diff = cases
        .iter()
        .map(|c| c.max_interval_diff.unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    let total = cases.len();
    let details = if total <= 20 {
        cases
    } else {
        cases.into_iter().filter(|c| !c.passed).collect()
    };
    VerificationReport {
        passed: failures == 0,
        cases: total,
        failures,
        max_epsilon_diff,
        max_interval_diff,
        epsilon_tolerance: EPSILON_TOLERANCE,
        interval_tolerance: INTERVAL_TOLERANCE,
        details,
    }
}

/// The `index`-th system of a seeded random batch: `n` cycles through
/// 2..=7 and every third system has repeated best/worst roles.
pub fn batch_case(scale: &Scale, seed: u64, index: usize) -> PairwiseComparisonSystem {
    let n = 2 + index % 6;
    let multi = index % 3 == 2;
    let case_seed = seed.wrapping_mul(1_000_003).wrapping_add(index as u64);
    random_pcs(scale, n, multi, case_seed)
}

pub fn verify_random(scale: &Scale, count: usize, seed: u64) -> VerificationReport {
    let cases = (0..count)
        .map(|k| verify_pcs(&batch_case(scale, seed, k), format!("{}#{k}", scale.name())))
        .collect();
    summarize(cases)
}
