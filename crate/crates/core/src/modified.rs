//! The best optimally modified comparison system and its weights.

use crate::deviation::{abw_star, deviation_profile};
use crate::model::{ConsistentPcs, PairwiseComparisonSystem, Role, WeightSet};

/// Split `r` into `x * y = r` with `x - y = ab - aw`.
pub(crate) fn balanced_split(ab: f64, aw: f64, r: f64) -> (f64, f64) {
    let d = ab - aw;
    let root = (d * d + 4.0 * r).sqrt();
    if d >= 0.0 {
        let x = 0.5 * (d + root);
        (x, r / x)
    } else {
        let y = 0.5 * (root - d);
        (r / y, y)
    }
}

/// Consistent system with best-to-worst ratio `r` that moves each other
/// criterion's two entries by the same amount in opposite directions.
pub fn modified_at(pcs: &PairwiseComparisonSystem, r: f64) -> ConsistentPcs {
    let n = pcs.n();
    let mut bto = vec![0.0; n];
    let mut otw = vec![0.0; n];
    for k in 0..n {
        (bto[k], otw[k]) = match pcs.role(k) {
            Role::Best => (1.0, r),
            Role::Worst => (r, 1.0),
            Role::Other => balanced_split(pcs.a_b(k), pcs.a_w(k), r),
        };
    }
    let mut out = PairwiseComparisonSystem::with_names(
        pcs.names().to_vec(),
        bto,
        otw,
        pcs.best_indices(),
        pcs.worst_indices(),
    )
    .expect("modified system keeps the roles of a valid system");
    if let Some(s) = pcs.scale() {
        out = out.with_scale(s);
    }
    ConsistentPcs::with_tolerance(out, 1e-12).expect("balanced split is consistent")
}

/// The unique best optimally modified system.
pub fn best_modified_pcs(pcs: &PairwiseComparisonSystem) -> ConsistentPcs {
    let profile = deviation_profile(pcs);
    modified_at(pcs, abw_star(&profile, pcs))
}

/// Weights of [`best_modified_pcs`].
pub fn best_weights(pcs: &PairwiseComparisonSystem) -> WeightSet {
    best_modified_pcs(pcs).weights()
}

/// Largest absolute entry change between two systems of the same shape.
pub fn max_modification(a: &PairwiseComparisonSystem, b: &PairwiseComparisonSystem) -> f64 {
    a.best_to_other()
        .iter()
        .zip(b.best_to_other())
        .chain(a.other_to_worst().iter().zip(b.other_to_worst()))
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
