//! Consistency index and input-based consistency ratio.

use serde::Serialize;

use crate::deviation::deviation_profile;
use crate::error::{BwmError, Result};
use crate::model::{PairwiseComparisonSystem, Warning, WarningCode};
use crate::scale::Scale;

/// Largest ε* over all systems that share `a_bw`.
pub fn consistency_index(abw: f64) -> Result<f64> {
    if !abw.is_finite() || abw < 1.0 {
        return Err(BwmError::InvalidAbw(abw));
    }
    let first = (2.0 * abw + 1.0 - (8.0 * abw + 1.0).sqrt()) / 2.0;
    let second = (abw * abw - 1.0) / (2.0 * abw + 2.0);
    Ok(first.max(second).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CiRow {
    pub abw: f64,
    pub ci: f64,
}

/// One row per level above indifference.
pub fn ci_table(scale: &Scale) -> Vec<CiRow> {
    scale
        .levels()
        .iter()
        .skip(1)
        .map(|l| CiRow {
            abw: l.value,
            ci: consistency_index(l.value).expect("scale values are at least 1"),
        })
        .collect()
}

/// Saaty-scale index values from the earlier formulation, for `a_bw = 2..=9`.
pub const LEGACY_SAATY_CI: [(f64, f64); 8] = [
    (2.0, 0.4384),
    (3.0, 1.0),
    (4.0, 1.6277),
    (5.0, 2.2984),
    (6.0, 3.0),
    (7.0, 3.7250),
    (8.0, 4.4688),
    (9.0, 5.2279),
];

pub fn legacy_saaty_ci(abw: f64) -> Option<f64> {
    LEGACY_SAATY_CI
        .iter()
        .find(|(a, _)| *a == abw)
        .map(|(_, ci)| *ci)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConsistencyAssessment {
    pub abw: f64,
    pub ci: f64,
    pub epsilon_star: f64,
    /// `None` when CI is zero but ε* is not (only possible off the bounds).
    pub cr: Option<f64>,
    pub input_based: bool,
    pub bounds_respected: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<Warning>,
}

pub fn consistency_ratio(pcs: &PairwiseComparisonSystem) -> ConsistencyAssessment {
    assess(pcs, deviation_profile(pcs).epsilon_star)
}

pub(crate) fn assess(pcs: &PairwiseComparisonSystem, epsilon_star: f64) -> ConsistencyAssessment {
    let abw = pcs.abw();
    let bounds_respected = pcs.bounds_respected();
    let mut warnings = Vec::new();
    let ci = match consistency_index(abw) {
        Ok(ci) => ci,
        Err(_) => {
            warnings.push(Warning::new(
                WarningCode::CrUndefined,
                format!("a_bw = {abw} is below 1; the index is taken as 0"),
            ));
            0.0
        }
    };
    let cr = if ci > 0.0 {
        Some(epsilon_star / ci)
    } else if epsilon_star == 0.0 {
        Some(0.0)
    } else {
        warnings.push(Warning::new(
            WarningCode::CrUndefined,
            format!("consistency index is 0 but epsilon* = {epsilon_star}; ratio undefined"),
        ));
        None
    };
    if let Some(v) = cr {
        if !bounds_respected {
            warnings.push(Warning::new(
                WarningCode::BoundsNotRespected,
                format!("entries outside [1, a_bw]; CR = {v} is not guaranteed to lie in [0, 1]"),
            ));
        }
    }
    ConsistencyAssessment {
        abw,
        ci,
        epsilon_star,
        cr,
        input_based: true,
        bounds_respected,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn index_values() {
        let nine = consistency_index(9.0).unwrap();
        assert_eq!(nine, (19.0 - 73f64.sqrt()) / 2.0);
        // The published 5.2279 is truncated, not rounded.
        assert!((nine - 5.2279).abs() < 1e-4);
        assert_eq!(consistency_index(2.0).unwrap(), 0.5);
        assert_eq!(consistency_index(1.0).unwrap(), 0.0);
        assert_eq!(consistency_index(0.5), Err(BwmError::InvalidAbw(0.5)));
        assert!(consistency_index(f64::NAN).is_err());
    }

    #[test]
    fn second_branch_wins_for_small_abw() {
        // (a^2 - 1) / (2a + 2) exceeds the radical branch up to a_bw = 3.
        assert!(consistency_index(2.0).unwrap() > legacy_saaty_ci(2.0).unwrap());
        assert_eq!(consistency_index(3.0).unwrap(), 1.0);
    }

    #[test]
    fn tables() {
        let lootsma = ci_table(&Scale::lootsma());
        let last = lootsma.last().unwrap();
        assert_eq!(last.abw, 16.0);
        assert!((last.ci - 10.8211).abs() < 5e-5);
        let salo = ci_table(&Scale::salo_hamalainen());
        assert!((salo[0].abw - 1.2222).abs() < 5e-5 && (salo[0].ci - 0.1111).abs() < 5e-5);
        let single = Scale::new(
            "one",
            vec![crate::scale::Level {
                term: "Indifference".into(),
                value: 1.0,
            }],
        )
        .unwrap();
        assert!(ci_table(&single).is_empty());
    }

    #[test]
    fn ratios() {
        let a = consistency_ratio(&example2());
        assert!((a.cr.unwrap() - 0.1663).abs() < 5e-5);
        let a = consistency_ratio(&example5());
        assert!((a.cr.unwrap() - 1.0).abs() < 1e-12);
        assert!(a.input_based && a.bounds_respected);
        let a = consistency_ratio(&consistent3());
        assert_eq!(a.cr, Some(0.0));
    }

    #[test]
    fn out_of_bounds_warns() {
        let pcs =
            PairwiseComparisonSystem::new(vec![1.0, 0.5, 4.0], vec![4.0, 3.0, 1.0], &[0], &[2])
                .unwrap();
        let a = consistency_ratio(&pcs);
        assert!(!a.bounds_respected);
        assert!(a
            .warnings
            .iter()
            .any(|w| w.code == WarningCode::BoundsNotRespected));
    }

    #[test]
    fn zero_index_with_deviation_is_undefined() {
        let pcs =
            PairwiseComparisonSystem::new(vec![1.0, 2.0, 1.0], vec![1.0, 2.0, 1.0], &[0], &[2])
                .unwrap();
        let a = consistency_ratio(&pcs);
        assert_eq!(a.ci, 0.0);
        assert!(a.epsilon_star > 0.0);
        assert_eq!(a.cr, None);
    }
}
