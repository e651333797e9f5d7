//! Pairwise comparison systems: validation, consistency, exact weights and
//! geometric-mean aggregation.
//!
//! Indices are 0-based throughout the library. The JSON form (`PcsJson`)
//! uses 1-based criterion indices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{BwmError, Result};
use crate::scale::ScaleId;

/// Default relative tolerance for consistency and role-equality checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub(crate) fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Wire form of a comparison system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PcsJson {
    #[serde(default)]
    pub names: Vec<String>,
    pub best: Vec<usize>,
    pub worst: Vec<usize>,
    pub best_to_other: Vec<f64>,
    pub other_to_worst: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<ScaleId>,
}

impl PcsJson {
    pub fn validate(&self) -> Result<PairwiseComparisonSystem> {
        let to_zero_based = |idx: &[usize], what: &str| -> Result<Vec<usize>> {
            idx.iter()
                .map(|&k| {
                    k.checked_sub(1).ok_or_else(|| {
                        BwmError::InvalidRoles(format!(
                            "{what} index 0 is invalid (indices are 1-based)"
                        ))
                    })
                })
                .collect()
        };
        let best = to_zero_based(&self.best, "best")?;
        let worst = to_zero_based(&self.worst, "worst")?;
        let mut pcs = PairwiseComparisonSystem::with_names(
            self.names.clone(),
            self.best_to_other.clone(),
            self.other_to_worst.clone(),
            &best,
            &worst,
        )?;
        pcs.set_scale(self.scale);
        Ok(pcs)
    }
}

/// Role of a criterion in the comparison system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Role {
    Best,
    Worst,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WarningCode {
    EntryBelowOne,
    EntryAboveAbw,
    AbwAboveScaleMax,
    IndistinguishableFromBest,
    IndistinguishableFromWorst,
    AnchorTieDisagreement,
    OracleRejected,
    BoundsNotRespected,
    CrUndefined,
    LegacyUnavailable,
}

/// A non-fatal diagnostic attached to a system or report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Warning {
    pub code: WarningCode,
    pub message: String,
}

impl Warning {
    pub fn new(code: WarningCode, message: impl Into<String>) -> Self {
        Warning {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.code, self.message)
    }
}

/// A validated best-to-others / others-to-worst comparison system.
///
/// Multiple best (or worst) criteria share a single pair of vectors: every
/// best criterion has `best_to_other = 1` and `other_to_worst = a_bw`, every
/// worst criterion has `other_to_worst = 1` and `best_to_other = a_bw`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseComparisonSystem {
    names: Vec<String>,
    roles: Vec<Role>,
    best: Vec<usize>,
    worst: Vec<usize>,
    others: Vec<usize>,
    best_to_other: Vec<f64>,
    other_to_worst: Vec<f64>,
    abw: f64,
    scale: Option<ScaleId>,
    warnings: Vec<Warning>,
}

impl PairwiseComparisonSystem {
    /// Validate vectors with default criterion names `c1..cn`.
    pub fn new(
        best_to_other: Vec<f64>,
        other_to_worst: Vec<f64>,
        best: &[usize],
        worst: &[usize],
    ) -> Result<Self> {
        Self::with_names(Vec::new(), best_to_other, other_to_worst, best, worst)
    }

    pub fn with_names(
        names: Vec<String>,
        mut best_to_other: Vec<f64>,
        mut other_to_worst: Vec<f64>,
        best: &[usize],
        worst: &[usize],
    ) -> Result<Self> {
        let n = best_to_other.len();
        if n < 2 {
            return Err(BwmError::TooFewCriteria(n));
        }
        if other_to_worst.len() != n {
            return Err(BwmError::LengthMismatch {
                field: "otherToWorst",
                expected: n,
                actual: other_to_worst.len(),
            });
        }
        let names = if names.is_empty() {
            (1..=n).map(|k| format!("c{k}")).collect()
        } else if names.len() != n {
            return Err(BwmError::LengthMismatch {
                field: "names",
                expected: n,
                actual: names.len(),
            });
        } else {
            names
        };
        for (field, values) in [
            ("bestToOther", &best_to_other),
            ("otherToWorst", &other_to_worst),
        ] {
            if let Some((index, &value)) = values
                .iter()
                .enumerate()
                .find(|(_, v)| !v.is_finite() || **v <= 0.0)
            {
                return Err(BwmError::NonPositiveEntry {
                    field,
                    index,
                    value,
                });
            }
        }

        let best = role_set(best, n, "best")?;
        let worst = role_set(worst, n, "worst")?;
        if let Some(k) = best.iter().find(|k| worst.contains(k)) {
            return Err(BwmError::InvalidRoles(format!(
                "criterion {} is both best and worst",
                k + 1
            )));
        }

        for &b in &best {
            if !rel_eq(best_to_other[b], 1.0, DEFAULT_TOLERANCE) {
                return Err(BwmError::MalformedMultiRole(format!(
                    "best criterion {} must have bestToOther = 1, got {}",
                    b + 1,
                    best_to_other[b]
                )));
            }
        }
        for &w in &worst {
            if !rel_eq(other_to_worst[w], 1.0, DEFAULT_TOLERANCE) {
                return Err(BwmError::MalformedMultiRole(format!(
                    "worst criterion {} must have otherToWorst = 1, got {}",
                    w + 1,
                    other_to_worst[w]
                )));
            }
        }

        let abw = best_to_other[worst[0]];
        let role_entries = worst
            .iter()
            .map(|&w| ("bestToOther", w, best_to_other[w]))
            .chain(best.iter().map(|&b| ("otherToWorst", b, other_to_worst[b])));
        for (field, k, value) in role_entries {
            if !rel_eq(value, abw, DEFAULT_TOLERANCE) {
                return Err(BwmError::MalformedMultiRole(format!(
                    "{field}[{}] = {value} differs from a_bw = {abw}",
                    k + 1
                )));
            }
        }

        // Snap role entries so equal-role criteria are bit-identical.
        for &b in &best {
            best_to_other[b] = 1.0;
            other_to_worst[b] = abw;
        }
        for &w in &worst {
            other_to_worst[w] = 1.0;
            best_to_other[w] = abw;
        }

        let mut roles = vec![Role::Other; n];
        best.iter().for_each(|&b| roles[b] = Role::Best);
        worst.iter().for_each(|&w| roles[w] = Role::Worst);
        let others = (0..n).filter(|&k| roles[k] == Role::Other).collect();

        let mut pcs = PairwiseComparisonSystem {
            names,
            roles,
            best,
            worst,
            others,
            best_to_other,
            other_to_worst,
            abw,
            scale: None,
            warnings: Vec::new(),
        };
        pcs.warnings = pcs.collect_warnings();
        Ok(pcs)
    }

    fn collect_warnings(&self) -> Vec<Warning> {
        let mut out = Vec::new();
        for (field, values) in [
            ("bestToOther", &self.best_to_other),
            ("otherToWorst", &self.other_to_worst),
        ] {
            for (k, &v) in values.iter().enumerate() {
                if v < 1.0 && !rel_eq(v, 1.0, DEFAULT_TOLERANCE) {
                    out.push(Warning::new(
                        WarningCode::EntryBelowOne,
                        format!("{field}[{}] = {v} is below 1", k + 1),
                    ));
                }
                if v > self.abw && !rel_eq(v, self.abw, DEFAULT_TOLERANCE) {
                    out.push(Warning::new(
                        WarningCode::EntryAboveAbw,
                        format!("{field}[{}] = {v} exceeds a_bw = {}", k + 1, self.abw),
                    ));
                }
            }
        }
        for &i in &self.others {
            let (b, w) = (self.best_to_other[i], self.other_to_worst[i]);
            if rel_eq(b, 1.0, DEFAULT_TOLERANCE) && rel_eq(w, self.abw, DEFAULT_TOLERANCE) {
                out.push(Warning::new(
                    WarningCode::IndistinguishableFromBest,
                    format!(
                        "criterion {} compares like a best criterion; consider adding it to best",
                        i + 1
                    ),
                ));
            }
            if rel_eq(w, 1.0, DEFAULT_TOLERANCE) && rel_eq(b, self.abw, DEFAULT_TOLERANCE) {
                out.push(Warning::new(
                    WarningCode::IndistinguishableFromWorst,
                    format!(
                        "criterion {} compares like a worst criterion; consider adding it to worst",
                        i + 1
                    ),
                ));
            }
        }
        out
    }

    pub(crate) fn set_scale(&mut self, scale: Option<ScaleId>) {
        self.scale = scale;
        self.warnings
            .retain(|w| w.code != WarningCode::AbwAboveScaleMax);
        if let Some(max) = scale.and_then(|s| s.scale()).map(|s| s.max_value()) {
            if self.abw > max && !rel_eq(self.abw, max, DEFAULT_TOLERANCE) {
                self.warnings.push(Warning::new(
                    WarningCode::AbwAboveScaleMax,
                    format!(
                        "a_bw = {} exceeds the largest {} value {max}",
                        self.abw,
                        scale.map(|s| s.as_str()).unwrap_or_default()
                    ),
                ));
            }
        }
    }

    /// Attach the scale the entries were quantified with.
    pub fn with_scale(mut self, scale: ScaleId) -> Self {
        self.set_scale(Some(scale));
        self
    }

    pub fn n(&self) -> usize {
        self.best_to_other.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn role(&self, k: usize) -> Role {
        self.roles[k]
    }

    pub fn best_indices(&self) -> &[usize] {
        &self.best
    }

    pub fn worst_indices(&self) -> &[usize] {
        &self.worst
    }

    /// Criteria that are neither best nor worst.
    pub fn others(&self) -> &[usize] {
        &self.others
    }

    pub fn best_to_other(&self) -> &[f64] {
        &self.best_to_other
    }

    pub fn other_to_worst(&self) -> &[f64] {
        &self.other_to_worst
    }

    /// `a_bi`
    pub fn a_b(&self, i: usize) -> f64 {
        self.best_to_other[i]
    }

    /// `a_iw`
    pub fn a_w(&self, i: usize) -> f64 {
        self.other_to_worst[i]
    }

    /// `a_bw`
    pub fn abw(&self) -> f64 {
        self.abw
    }

    /// `a_bi * a_iw`
    pub fn product(&self, i: usize) -> f64 {
        self.best_to_other[i] * self.other_to_worst[i]
    }

    pub fn n_best(&self) -> usize {
        self.best.len()
    }

    pub fn n_worst(&self) -> usize {
        self.worst.len()
    }

    pub fn scale(&self) -> Option<ScaleId> {
        self.scale
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    /// True when every entry lies in `[1, a_bw]`.
    pub fn bounds_respected(&self) -> bool {
        self.best_to_other
            .iter()
            .chain(&self.other_to_worst)
            .all(|&v| {
                (v >= 1.0 || rel_eq(v, 1.0, DEFAULT_TOLERANCE))
                    && (v <= self.abw || rel_eq(v, self.abw, DEFAULT_TOLERANCE))
            })
    }

    pub fn to_json(&self) -> PcsJson {
        PcsJson {
            names: self.names.clone(),
            best: self.best.iter().map(|k| k + 1).collect(),
            worst: self.worst.iter().map(|k| k + 1).collect(),
            best_to_other: self.best_to_other.clone(),
            other_to_worst: self.other_to_worst.clone(),
            scale: self.scale,
        }
    }

    /// Largest relative residual `|a_bi a_iw - a_bw| / a_bw` over the others.
    pub fn consistency_residual(&self) -> f64 {
        self.others
            .iter()
            .map(|&i| (self.product(i) - self.abw).abs() / self.abw)
            .fold(0.0, f64::max)
    }

    /// Copy of the system without criterion `k` (which must be an "other").
    pub fn without_criterion(&self, k: usize) -> Result<Self> {
        if self.roles.get(k) != Some(&Role::Other) {
            return Err(BwmError::IndexNotInD { index: k });
        }
        let keep = |v: &[f64]| -> Vec<f64> {
            v.iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, x)| *x)
                .collect()
        };
        let shift = |idx: &[usize]| -> Vec<usize> {
            idx.iter().map(|&i| if i > k { i - 1 } else { i }).collect()
        };
        let names = self
            .names
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, s)| s.clone())
            .collect();
        let mut out = Self::with_names(
            names,
            keep(&self.best_to_other),
            keep(&self.other_to_worst),
            &shift(&self.best),
            &shift(&self.worst),
        )?;
        out.set_scale(self.scale);
        Ok(out)
    }

    /// Reorder criteria: criterion `perm[k]` of `self` becomes criterion `k`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(BwmError::InvalidRoles("not a permutation".into()));
        }
        let mut inverse = vec![0; n];
        for (k, &p) in perm.iter().enumerate() {
            inverse[p] = k;
        }
        let pick = |v: &[f64]| perm.iter().map(|&p| v[p]).collect::<Vec<_>>();
        let map = |idx: &[usize]| idx.iter().map(|&i| inverse[i]).collect::<Vec<_>>();
        let names = perm.iter().map(|&p| self.names[p].clone()).collect();
        let mut out = Self::with_names(
            names,
            pick(&self.best_to_other),
            pick(&self.other_to_worst),
            &map(&self.best),
            &map(&self.worst),
        )?;
        out.set_scale(self.scale);
        Ok(out)
    }
}

fn role_set(idx: &[usize], n: usize, what: &str) -> Result<Vec<usize>> {
    if idx.is_empty() {
        return Err(BwmError::InvalidRoles(format!("no {what} criterion given")));
    }
    if let Some(k) = idx.iter().find(|&&k| k >= n) {
        return Err(BwmError::InvalidRoles(format!(
            "{what} index {} is out of range 1..={n}",
            k + 1
        )));
    }
    let mut out = idx.to_vec();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// True iff `a_bi * a_iw = a_bw` for every other criterion, within `tol`
/// relative to `a_bw`.
pub fn is_consistent(pcs: &PairwiseComparisonSystem, tol: f64) -> bool {
    pcs.consistency_residual() <= tol
}

/// A normalized weight vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightSet(Vec<f64>);

impl WeightSet {
    /// Normalizes `raw` to sum to one.
    pub fn from_unnormalized(raw: &[f64]) -> Self {
        let total: f64 = raw.iter().sum();
        WeightSet(raw.iter().map(|v| v / total).collect())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl std::ops::Index<usize> for WeightSet {
    type Output = f64;

    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

/// A comparison system known to satisfy `a_bi * a_iw = a_bw` on every other
/// criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsistentPcs(PairwiseComparisonSystem);

impl ConsistentPcs {
    pub fn new(pcs: PairwiseComparisonSystem) -> Result<Self> {
        Self::with_tolerance(pcs, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(pcs: PairwiseComparisonSystem, tol: f64) -> Result<Self> {
        let residual = pcs.consistency_residual();
        if residual > tol {
            return Err(BwmError::NotConsistent { residual });
        }
        Ok(ConsistentPcs(pcs))
    }

    pub fn pcs(&self) -> &PairwiseComparisonSystem {
        &self.0
    }

    pub fn into_inner(self) -> PairwiseComparisonSystem {
        self.0
    }

    /// The unique weights `w_i = a_iw / Σ a_jw`. Criteria sharing a role
    /// receive identical weights.
    pub fn weights(&self) -> WeightSet {
        WeightSet::from_unnormalized(self.0.other_to_worst())
    }
}

/// Exact weights of a consistent system.
pub fn weights_from_consistent(pcs: &PairwiseComparisonSystem) -> Result<WeightSet> {
    Ok(ConsistentPcs::new(pcs.clone())?.weights())
}

/// Component-wise geometric mean of several decision makers' systems.
pub fn aggregate_geometric(
    systems: &[PairwiseComparisonSystem],
) -> Result<PairwiseComparisonSystem> {
    let first = systems
        .first()
        .ok_or_else(|| BwmError::AggregationMismatch("no systems given".into()))?;
    for (k, s) in systems.iter().enumerate().skip(1) {
        if s.n() != first.n() {
            return Err(BwmError::AggregationMismatch(format!(
                "system {} has {} criteria, expected {}",
                k + 1,
                s.n(),
                first.n()
            )));
        }
        if s.best != first.best || s.worst != first.worst {
            return Err(BwmError::AggregationMismatch(format!(
                "system {} has different best/worst criteria",
                k + 1
            )));
        }
    }
    let mean = |get: fn(&PairwiseComparisonSystem) -> &[f64]| -> Vec<f64> {
        (0..first.n())
            .map(|i| {
                let v0 = get(first)[i];
                if systems.iter().all(|s| get(s)[i] == v0) {
                    return v0;
                }
                let log_sum: f64 = systems.iter().map(|s| get(s)[i].ln()).sum();
                (log_sum / systems.len() as f64).exp()
            })
            .collect()
    };
    let mut out = PairwiseComparisonSystem::with_names(
        first.names.clone(),
        mean(|s| s.best_to_other()),
        mean(|s| s.other_to_worst()),
        &first.best,
        &first.worst,
    )?;
    let scale = first
        .scale
        .filter(|sc| systems.iter().all(|s| s.scale == Some(*sc)));
    out.set_scale(scale);
    Ok(out)
}
