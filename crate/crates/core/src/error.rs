use thiserror::Error;

/// Errors raised while building or analyzing a pairwise comparison system.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BwmError {
    #[error("unknown linguistic term '{term}' for scale '{scale}'")]
    UnknownTerm { term: String, scale: String },

    #[error("unknown scale '{0}'")]
    UnknownScale(String),

    #[error("invalid scale '{scale}': {reason}")]
    InvalidScale { scale: String, reason: String },

    #[error("at least two criteria are required, got {0}")]
    TooFewCriteria(usize),

    #[error("{field} has length {actual}, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("{field}[{index}] = {value} is not a strictly positive finite number")]
    NonPositiveEntry {
        field: &'static str,
        index: usize,
        value: f64,
    },

    #[error("invalid roles: {0}")]
    InvalidRoles(String),

    #[error("malformed best/worst rows: {0}")]
    MalformedMultiRole(String),

    #[error("criterion {index} is not in D (it is a best or worst criterion)")]
    IndexNotInD { index: usize },

    #[error("the comparison system is not consistent (max relative residual {residual:e})")]
    NotConsistent { residual: f64 },

    #[error("cannot aggregate: {0}")]
    AggregationMismatch(String),

    #[error("a_bw = {0} is below 1")]
    InvalidAbw(f64),

    #[error("the legacy formulas support a single best and a single worst criterion only")]
    LegacyUnsupported,

    #[error("epsilon {0} is infeasible for the comparison system")]
    InfeasibleEpsilon(f64),

    #[error("parse error: {0}")]
    Parse(String),
}

impl BwmError {
    /// Stable machine-readable code for the error variant.
    pub fn code(&self) -> &'static str {
        match self {
            BwmError::UnknownTerm { .. } => "UnknownTerm",
            BwmError::UnknownScale(_) => "UnknownScale",
            BwmError::InvalidScale { .. } => "InvalidScale",
            BwmError::TooFewCriteria(_) => "TooFewCriteria",
            BwmError::LengthMismatch { .. } => "LengthMismatch",
            BwmError::NonPositiveEntry { .. } => "NonPositiveEntry",
            BwmError::InvalidRoles(_) => "InvalidRoles",
            BwmError::MalformedMultiRole(_) => "MalformedMultiRole",
            BwmError::IndexNotInD { .. } => "IndexNotInD",
            BwmError::NotConsistent { .. } => "NotConsistent",
            BwmError::AggregationMismatch(_) => "AggregationMismatch",
            BwmError::InvalidAbw(_) => "InvalidAbw",
            BwmError::LegacyUnsupported => "LegacyUnsupported",
            BwmError::InfeasibleEpsilon(_) => "InfeasibleEpsilon",
            BwmError::Parse(_) => "Parse",
        }
    }

    /// Field the error refers to, when there is one.
    pub fn field(&self) -> Option<String> {
        match self {
            BwmError::LengthMismatch { field, .. } => Some((*field).to_string()),
            BwmError::NonPositiveEntry { field, index, .. } => Some(format!("{field}[{index}]")),
            BwmError::InvalidRoles(_) => Some("best".to_string()),
            BwmError::MalformedMultiRole(_) => Some("bestToOther".to_string()),
            BwmError::TooFewCriteria(_) => Some("names".to_string()),
            BwmError::UnknownScale(_) => Some("scale".to_string()),
            _ => None,
        }
    }

    /// Role errors are well-formed requests whose best/worst structure is wrong.
    pub fn is_role_error(&self) -> bool {
        matches!(
            self,
            BwmError::InvalidRoles(_)
                | BwmError::MalformedMultiRole(_)
                | BwmError::AggregationMismatch(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, BwmError>;
