//! Linguistic preference scales.
//!
//! Each built-in scale maps the nine standard linguistic terms to a ratio.
//! Values are computed from their defining expressions rather than stored as
//! rounded decimals, so `2√2` on the Lootsma scale is exact to double
//! precision.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{BwmError, Result};

/// The nine terms shared by the built-in scales, in increasing order.
pub const STANDARD_TERMS: [&str; 9] = [
    "Indifference",
    "Indifference to moderate",
    "Moderate preference",
    "Moderate to strong",
    "Strong preference",
    "Strong to very strong",
    "Very strong preference",
    "Very strong to extreme",
    "Extreme preference",
];

/// Identifier of a scale as it appears in the PCS JSON `scale` field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScaleId {
    Saaty,
    Salo,
    Lootsma,
    Ddm7,
    Custom,
}

impl ScaleId {
    pub const BUILT_IN: [ScaleId; 4] = [
        ScaleId::Saaty,
        ScaleId::Salo,
        ScaleId::Lootsma,
        ScaleId::Ddm7,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ScaleId::Saaty => "saaty",
            ScaleId::Salo => "salo",
            ScaleId::Lootsma => "lootsma",
            ScaleId::Ddm7 => "ddm7",
            ScaleId::Custom => "custom",
        }
    }

    /// The built-in scale for this id. `Custom` has no built-in levels.
    pub fn scale(&self) -> Option<Scale> {
        match self {
            ScaleId::Saaty => Some(Scale::saaty()),
            ScaleId::Salo => Some(Scale::salo_hamalainen()),
            ScaleId::Lootsma => Some(Scale::lootsma()),
            ScaleId::Ddm7 => Some(Scale::donegan_dodd_mcmaster()),
            ScaleId::Custom => None,
        }
    }
}

impl fmt::Display for ScaleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScaleId {
    type Err = BwmError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "saaty" => Ok(ScaleId::Saaty),
            "salo" | "salo-hamalainen" | "salo-hämäläinen" => Ok(ScaleId::Salo),
            "lootsma" => Ok(ScaleId::Lootsma),
            "ddm7" | "ddm" | "donegan-dodd-mcmaster" => Ok(ScaleId::Ddm7),
            "custom" => Ok(ScaleId::Custom),
            _ => Err(BwmError::UnknownScale(s.to_string())),
        }
    }
}

/// One level of a scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub term: String,
    pub value: f64,
}

/// An ordered linguistic scale. The first level is always indifference (1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scale {
    name: String,
    levels: Vec<Level>,
}

impl Scale {
    /// Build a custom scale. Values must start at 1 and strictly increase.
    pub fn new(name: impl Into<String>, levels: Vec<Level>) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: &str| BwmError::InvalidScale {
            scale: name.clone(),
            reason: reason.to_string(),
        };
        let first = levels.first().ok_or_else(|| invalid("no levels"))?;
        if first.value != 1.0 {
            return Err(invalid("first level must have value 1"));
        }
        if levels
            .iter()
            .any(|l| !l.value.is_finite() || l.value <= 0.0)
        {
            return Err(invalid("level values must be positive and finite"));
        }
        if levels.windows(2).any(|w| w[1].value <= w[0].value) {
            return Err(invalid("level values must be strictly increasing"));
        }
        Ok(Scale { name, levels })
    }

    fn standard(name: &str, values: [f64; 9]) -> Self {
        let levels = STANDARD_TERMS
            .iter()
            .zip(values)
            .map(|(term, value)| Level {
                term: (*term).to_string(),
                value,
            })
            .collect();
        Scale {
            name: name.to_string(),
            levels,
        }
    }

    /// Integer 1..9 scale.
    pub fn saaty() -> Self {
        Self::standard("Saaty", [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0])
    }

    /// Balanced scale: p / (1 - p) for p = 0.50, 0.55, ..., 0.90.
    pub fn salo_hamalainen() -> Self {
        let mut values = [0.0; 9];
        for (k, v) in values.iter_mut().enumerate() {
            let p = (10 + k) as f64 / 20.0;
            *v = p / (1.0 - p);
        }
        Self::standard("Salo-Hamalainen", values)
    }

    /// Geometric scale: (√2)^k.
    pub fn lootsma() -> Self {
        let mut values = [0.0; 9];
        for (k, v) in values.iter_mut().enumerate() {
            *v = if k % 2 == 0 {
                (1u32 << (k / 2)) as f64
            } else {
                (1u32 << (k / 2)) as f64 * std::f64::consts::SQRT_2
            };
        }
        Self::standard("Lootsma", values)
    }

    /// Donegan-Dodd-McMaster 7-based scale: exp(atanh(k / √72)).
    pub fn donegan_dodd_mcmaster() -> Self {
        let mut values = [0.0; 9];
        let denom = 72f64.sqrt();
        for (k, v) in values.iter_mut().enumerate() {
            *v = (k as f64 / denom).atanh().exp();
        }
        Self::standard("Donegan-Dodd-McMaster", values)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Value of the strongest level ("Extreme preference" on built-in scales).
    pub fn max_value(&self) -> f64 {
        self.levels.last().map(|l| l.value).unwrap_or(1.0)
    }

    /// Value of a linguistic term. Matching ignores ASCII case.
    pub fn quantify(&self, term: &str) -> Result<f64> {
        let wanted = term.trim();
        self.levels
            .iter()
            .find(|l| l.term.eq_ignore_ascii_case(wanted))
            .map(|l| l.value)
            .ok_or_else(|| BwmError::UnknownTerm {
                term: term.to_string(),
                scale: self.name.clone(),
            })
    }
}
