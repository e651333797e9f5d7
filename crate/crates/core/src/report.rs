//! The bundled analysis of one comparison system and its JSON rendering.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::consistency::{assess, ConsistencyAssessment};
use crate::deviation::{abw_star, deviation_profile, tie_warnings, Anchor, DeviationProfile};
use crate::error::{BwmError, Result};
use crate::interval::{interval_weights, IntervalWeights};
use crate::legacy::{legacy_analysis, LegacyResult};
use crate::model::{
    aggregate_geometric, PairwiseComparisonSystem, PcsJson, Warning, WarningCode, WeightSet,
};
use crate::modified::modified_at;
use crate::oracle::feasible_at;
use crate::verify::{verify_pcs, CaseReport};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct AnalysisOptions {
    /// Add the legacy closed-form results.
    pub legacy: bool,
    /// Round every number in the rendered JSON to this many decimals.
    pub round: Option<u32>,
    /// Cross-check against the oracle.
    pub verify: bool,
}

/// Deviation candidates with 1-based criterion labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DeviationSummary {
    pub below: Vec<usize>,
    pub above: Vec<usize>,
    pub on: Vec<usize>,
    pub eps_i: BTreeMap<String, f64>,
    /// `[i, j, ε_{i,j}]` with `i < j`.
    pub eps_ij: Vec<(usize, usize, f64)>,
}

impl From<&DeviationProfile> for DeviationSummary {
    fn from(p: &DeviationProfile) -> Self {
        let plus = |v: &[usize]| v.iter().map(|k| k + 1).collect();
        DeviationSummary {
            below: plus(&p.d1),
            above: plus(&p.d2),
            on: plus(&p.d3),
            eps_i: p
                .eps_i
                .iter()
                .map(|(k, v)| ((k + 1).to_string(), *v))
                .collect(),
            eps_ij: p
                .eps_ij
                .iter()
                .map(|(&(i, j), &v)| (i + 1, j + 1, v))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub names: Vec<String>,
    pub epsilon_star: f64,
    pub abw_star: f64,
    pub anchor: Anchor,
    pub intervals: IntervalWeights,
    pub best_weights: WeightSet,
    pub best_modified_pcs: PcsJson,
    pub ci: f64,
    pub cr: Option<f64>,
    pub bounds_respected: bool,
    pub deviations: DeviationSummary,
    pub warnings: Vec<Warning>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub legacy: Option<LegacyResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<CaseReport>,
    #[serde(skip)]
    pub profile: DeviationProfile,
    #[serde(skip)]
    pub consistency: ConsistencyAssessment,
}

impl AnalysisReport {
    /// False only when verification ran and failed.
    pub fn verified(&self) -> bool {
        self.verification.as_ref().is_none_or(|v| v.passed)
    }
}

pub fn analyze(pcs: &PairwiseComparisonSystem, options: &AnalysisOptions) -> AnalysisReport {
    let profile = deviation_profile(pcs);
    let eps = profile.epsilon_star;
    let r = abw_star(&profile, pcs);
    let intervals = interval_weights(pcs);
    let best = modified_at(pcs, r);
    let best_weights = best.weights();
    let consistency = assess(pcs, eps);

    let mut warnings = pcs.warnings().to_vec();
    warnings.extend(tie_warnings(&profile, pcs));
    if !feasible_at(pcs, eps + 1e-9 * eps.max(1.0), r) {
        warnings.push(Warning::new(
            WarningCode::OracleRejected,
            format!("oracle finds a_bw* = {r} infeasible at epsilon* = {eps}"),
        ));
    }
    warnings.extend(consistency.warnings.iter().cloned());

    let legacy = if options.legacy {
        match legacy_analysis(pcs) {
            Ok(l) => Some(l),
            Err(e) => {
                warnings.push(Warning::new(WarningCode::LegacyUnavailable, e.to_string()));
                None
            }
        }
    } else {
        None
    };
    let verification = options.verify.then(|| verify_pcs(pcs, "input"));

    AnalysisReport {
        names: pcs.names().to_vec(),
        epsilon_star: eps,
        abw_star: r,
        anchor: profile.anchor,
        intervals,
        best_weights,
        best_modified_pcs: best.pcs().to_json(),
        ci: consistency.ci,
        cr: consistency.cr,
        bounds_respected: consistency.bounds_respected,
        deviations: DeviationSummary::from(&profile),
        warnings,
        legacy,
        verification,
        profile,
        consistency,
    }
}

/// Aggregate a group of systems (or pass a single one through) and analyze
/// the result.
pub fn analyze_group(
    systems: &[PairwiseComparisonSystem],
    options: &AnalysisOptions,
) -> Result<(PairwiseComparisonSystem, AnalysisReport)> {
    let merged = match systems {
        [] => return Err(BwmError::AggregationMismatch("no systems given".into())),
        [one] => one.clone(),
        many => aggregate_geometric(many)?,
    };
    let report = analyze(&merged, options);
    Ok((merged, report))
}

fn round_in_place(v: &mut Value, digits: u32) {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            if let Some(x) = n.as_f64() {
                let scale = 10f64.powi(digits as i32);
                let rounded = (x * scale).round() / scale;
                // -0.0 renders as "-0.0"; fold it into 0.
                let rounded = if rounded == 0.0 { 0.0 } else { rounded };
                if let Some(num) = serde_json::Number::from_f64(rounded) {
                    *n = num;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|x| round_in_place(x, digits)),
        Value::Object(map) => map.values_mut().for_each(|x| round_in_place(x, digits)),
        _ => {}
    }
}

/// Pretty JSON with a trailing newline, optionally rounded. The CLI and the
/// HTTP service both emit exactly this text.
pub fn render<T: Serialize>(value: &T, round: Option<u32>) -> String {
    let mut v = serde_json::to_value(value).expect("report types serialize");
    if let Some(d) = round {
        round_in_place(&mut v, d);
    }
    let mut out = serde_json::to_string_pretty(&v).expect("values serialize");
    out.push('\n');
    out
}
