//! Best-worst method weights engine.
//!
//! Closed-form optimal deviation, interval weights, the best modified
//! comparison system and an input-based consistency ratio for systems with
//! one or several best and worst criteria. A brute-force oracle in
//! [`oracle`] solves the same problems numerically for cross-checking.

pub mod consistency;
pub mod deviation;
pub mod error;
pub mod fixtures;
pub mod interval;
pub mod io;
pub mod legacy;
pub mod model;
pub mod modified;
pub mod oracle;
pub mod report;
pub mod scale;
pub mod service;
pub mod verify;

pub use consistency::{ci_table, consistency_index, consistency_ratio, ConsistencyAssessment};
pub use deviation::{abw_star, deviation_profile, epsilon_i, epsilon_ij, Anchor, DeviationProfile};
pub use error::{BwmError, Result};
pub use interval::{interval_weights, Interval, IntervalWeights};
pub use model::{
    aggregate_geometric, is_consistent, weights_from_consistent, ConsistentPcs,
    PairwiseComparisonSystem, PcsJson, Role, Warning, WarningCode, WeightSet, DEFAULT_TOLERANCE,
};
pub use modified::best_modified_pcs;
pub use report::{analyze, AnalysisOptions, AnalysisReport};
pub use scale::{Level, Scale, ScaleId};
