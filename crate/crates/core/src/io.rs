//! Reading comparison systems from JSON and CSV.
//!
//! Input JSON accepts a little more than [`PcsJson`]: `best` and `worst`
//! may be a single index, and entries may be linguistic terms of the
//! system's scale instead of numbers.
//!
//! CSV files carry one labelled row per field:
//!
//! ```text
//! names,price,quality,speed
//! bestToOther,1,2,4
//! otherToWorst,4,2,1
//! role,best,,worst
//! ```
//!
//! The `names` and `role` rows are optional. Without a `role` row the best
//! criteria are those with `bestToOther = 1` and `otherToWorst = a_bw`, and
//! the worst are the mirror image, where `a_bw` is the largest entry.

use serde::Deserialize;

use crate::error::{BwmError, Result};
use crate::model::{rel_eq, PairwiseComparisonSystem, PcsJson, DEFAULT_TOLERANCE};
use crate::scale::ScaleId;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum EntryValue {
    Number(f64),
    Term(String),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

impl OneOrMany {
    fn into_vec(self) -> Vec<usize> {
        match self {
            OneOrMany::One(k) => vec![k],
            OneOrMany::Many(v) => v,
        }
    }
}

/// A comparison system as submitted by a user, before validation.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PcsInput {
    #[serde(default)]
    pub names: Vec<String>,
    pub best: OneOrMany,
    pub worst: OneOrMany,
    pub best_to_other: Vec<EntryValue>,
    pub other_to_worst: Vec<EntryValue>,
    #[serde(default)]
    pub scale: Option<ScaleId>,
}

impl PcsInput {
    /// Quantify terms and validate. `fallback_scale` applies when the input
    /// names no scale.
    pub fn resolve(self, fallback_scale: Option<ScaleId>) -> Result<PairwiseComparisonSystem> {
        let scale_id = self.scale.or(fallback_scale);
        let quantify = |values: Vec<EntryValue>| -> Result<Vec<f64>> {
            values
                .into_iter()
                .map(|v| match v {
                    EntryValue::Number(x) => Ok(x),
                    EntryValue::Term(term) => {
                        let id = scale_id.ok_or_else(|| {
                            BwmError::Parse(format!("term '{term}' given but no scale named"))
                        })?;
                        let scale = id.scale().ok_or_else(|| BwmError::InvalidScale {
                            scale: id.to_string(),
                            reason: "custom scales have no built-in terms".into(),
                        })?;
                        scale.quantify(&term)
                    }
                })
                .collect()
        };
        PcsJson {
            names: self.names,
            best: self.best.into_vec(),
            worst: self.worst.into_vec(),
            best_to_other: quantify(self.best_to_other)?,
            other_to_worst: quantify(self.other_to_worst)?,
            scale: scale_id,
        }
        .validate()
    }
}

impl From<PcsJson> for PcsInput {
    fn from(p: PcsJson) -> Self {
        PcsInput {
            names: p.names,
            best: OneOrMany::Many(p.best),
            worst: OneOrMany::Many(p.worst),
            best_to_other: p
                .best_to_other
                .into_iter()
                .map(EntryValue::Number)
                .collect(),
            other_to_worst: p
                .other_to_worst
                .into_iter()
                .map(EntryValue::Number)
                .collect(),
            scale: p.scale,
        }
    }
}

/// One system, or several to be aggregated.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum PcsOrGroup {
    One(PcsInput),
    Group(Vec<PcsInput>),
}

pub(crate) fn json_error(e: serde_json::Error) -> BwmError {
    BwmError::Parse(e.to_string())
}

pub fn parse_pcs_json(
    text: &str,
    fallback_scale: Option<ScaleId>,
) -> Result<PairwiseComparisonSystem> {
    let input: PcsInput = serde_json::from_str(text).map_err(json_error)?;
    input.resolve(fallback_scale)
}

fn parse_number(label: &str, k: usize, cell: &str) -> Result<f64> {
    cell.trim().parse::<f64>().map_err(|_| {
        BwmError::Parse(format!(
            "{label}: column {} is not a number: '{cell}'",
            k + 1
        ))
    })
}

pub fn parse_pcs_csv(
    text: &str,
    fallback_scale: Option<ScaleId>,
) -> Result<PairwiseComparisonSystem> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut names = None;
    let mut bto = None;
    let mut otw = None;
    let mut roles = None;
    let mut scale = None;
    for record in reader.records() {
        let record = record.map_err(|e| BwmError::Parse(e.to_string()))?;
        let mut cells = record.iter();
        let Some(label) = cells.next() else { continue };
        let rest: Vec<String> = cells.map(str::to_string).collect();
        match label.to_ascii_lowercase().as_str() {
            "" => continue,
            "names" | "criteria" => names = Some(rest),
            "besttoother" => bto = Some(rest),
            "othertoworst" => otw = Some(rest),
            "role" | "roles" => roles = Some(rest),
            "scale" => scale = rest.first().map(|s| s.parse::<ScaleId>()).transpose()?,
            other => return Err(BwmError::Parse(format!("unknown CSV row label '{other}'"))),
        }
    }
    let bto = bto.ok_or_else(|| BwmError::Parse("missing bestToOther row".into()))?;
    let otw = otw.ok_or_else(|| BwmError::Parse("missing otherToWorst row".into()))?;
    let scale_id = scale.or(fallback_scale);
    let to_entries = |label: &str, row: Vec<String>| -> Result<Vec<EntryValue>> {
        row.into_iter()
            .enumerate()
            .map(|(k, cell)| {
                if cell.trim().parse::<f64>().is_ok() {
                    parse_number(label, k, &cell).map(EntryValue::Number)
                } else {
                    Ok(EntryValue::Term(cell))
                }
            })
            .collect()
    };
    let best_to_other = to_entries("bestToOther", bto)?;
    let other_to_worst = to_entries("otherToWorst", otw)?;

    let (best, worst) = match roles {
        Some(row) => {
            let mut best = Vec::new();
            let mut worst = Vec::new();
            for (k, cell) in row.iter().enumerate() {
                match cell.to_ascii_lowercase().as_str() {
                    "best" | "b" => best.push(k + 1),
                    "worst" | "w" => worst.push(k + 1),
                    "" | "other" | "-" => {}
                    other => return Err(BwmError::Parse(format!("unknown role '{other}'"))),
                }
            }
            (best, worst)
        }
        None => {
            let quantified = PcsInput {
                names: Vec::new(),
                best: OneOrMany::Many(Vec::new()),
                worst: OneOrMany::Many(Vec::new()),
                best_to_other: best_to_other.clone(),
                other_to_worst: other_to_worst.clone(),
                scale: scale_id,
            };
            infer_roles(&quantified)?
        }
    };
    PcsInput {
        names: names.unwrap_or_default(),
        best: OneOrMany::Many(best),
        worst: OneOrMany::Many(worst),
        best_to_other,
        other_to_worst,
        scale: scale_id,
    }
    .resolve(None)
}

fn infer_roles(input: &PcsInput) -> Result<(Vec<usize>, Vec<usize>)> {
    let numbers = |values: &[EntryValue]| -> Result<Vec<f64>> {
        values
            .iter()
            .map(|v| match v {
                EntryValue::Number(x) => Ok(*x),
                EntryValue::Term(t) => {
                    let id = input.scale.ok_or_else(|| {
                        BwmError::Parse(format!("term '{t}' given but no scale named"))
                    })?;
                    id.scale()
                        .ok_or_else(|| BwmError::InvalidScale {
                            scale: id.to_string(),
                            reason: "custom scales have no built-in terms".into(),
                        })?
                        .quantify(t)
                }
            })
            .collect()
    };
    let bto = numbers(&input.best_to_other)?;
    let otw = numbers(&input.other_to_worst)?;
    let abw = bto.iter().chain(&otw).fold(0.0f64, |m, &v| m.max(v));
    let eq = |a: f64, b: f64| rel_eq(a, b, DEFAULT_TOLERANCE);
    let pick = |first: &[f64], second: &[f64]| -> Vec<usize> {
        (0..first.len().min(second.len()))
            .filter(|&k| eq(first[k], 1.0) && eq(second[k], abw))
            .map(|k| k + 1)
            .collect()
    };
    Ok((pick(&bto, &otw), pick(&otw, &bto)))
}

/// Parse JSON or CSV, chosen by the first non-blank character.
pub fn parse_pcs(text: &str, fallback_scale: Option<ScaleId>) -> Result<PairwiseComparisonSystem> {
    if text.trim_start().starts_with('{') {
        parse_pcs_json(text, fallback_scale)
    } else {
        parse_pcs_csv(text, fallback_scale)
    }
}

/// Parse one system or a JSON array of systems.
pub fn parse_pcs_or_group(
    text: &str,
    fallback_scale: Option<ScaleId>,
) -> Result<Vec<PairwiseComparisonSystem>> {
    if text.trim_start().starts_with('[') {
        let inputs: Vec<PcsInput> = serde_json::from_str(text).map_err(json_error)?;
        inputs
            .into_iter()
            .map(|i| i.resolve(fallback_scale))
            .collect()
    } else {
        Ok(vec![parse_pcs(text, fallback_scale)?])
    }
}

pub fn pcs_to_csv(pcs: &PairwiseComparisonSystem) -> String {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    let row = |label: &str, cells: Vec<String>| {
        std::iter::once(label.to_string())
            .chain(cells)
            .collect::<Vec<_>>()
    };
    let fmt = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let roles = (0..pcs.n())
        .map(|k| match pcs.role(k) {
            crate::model::Role::Best => "best".to_string(),
            crate::model::Role::Worst => "worst".to_string(),
            crate::model::Role::Other => String::new(),
        })
        .collect();
    let rows = [
        row("names", pcs.names().to_vec()),
        row("bestToOther", fmt(pcs.best_to_other())),
        row("otherToWorst", fmt(pcs.other_to_worst())),
        row("role", roles),
    ];
    for r in rows {
        w.write_record(&r).expect("writing to memory");
    }
    if let Some(s) = pcs.scale() {
        w.write_record(["scale", s.as_str()])
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn json_with_terms_and_single_roles() {
        let pcs = parse_pcs_json(
            r#"{"best":1,"worst":3,"scale":"saaty",
                "bestToOther":["Indifference","Indifference to moderate",4],
                "otherToWorst":[4,"indifference to moderate","Indifference"]}"#,
            None,
        )
        .unwrap();
        assert_eq!(pcs.best_to_other(), &[1.0, 2.0, 4.0]);
        assert_eq!(pcs.other_to_worst(), &[4.0, 2.0, 1.0]);
    }

    #[test]
    fn terms_need_a_scale() {
        let err = parse_pcs_json(
            r#"{"best":[1],"worst":[2],"bestToOther":[1,"Extreme preference"],"otherToWorst":[9,1]}"#,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, BwmError::Parse(_)));
        let ok = parse_pcs_json(
            r#"{"best":[1],"worst":[2],"bestToOther":[1,"Extreme preference"],"otherToWorst":[9,1]}"#,
            Some(ScaleId::Saaty),
        );
        assert_eq!(ok.unwrap().abw(), 9.0);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(parse_pcs_json(
            r#"{"best":[1],"worst":[2],"bestToOther":[1,2],"otherToWorst":[2,1],"bogus":1}"#,
            None
        )
        .is_err());
    }

    #[test]
    fn csv_round_trip() {
        let pcs = fixtures::example6();
        let text = pcs_to_csv(&pcs);
        let back = parse_pcs_csv(&text, None).unwrap();
        assert_eq!(back, pcs);
    }

    #[test]
    fn csv_role_inference() {
        let text = "bestToOther,1,2,4\notherToWorst,4,2,1\n";
        let pcs = parse_pcs(text, None).unwrap();
        assert_eq!(pcs.best_indices(), &[0]);
        assert_eq!(pcs.worst_indices(), &[2]);
        assert_eq!(pcs.names()[1], "c2");
    }

    #[test]
    fn csv_errors() {
        assert!(parse_pcs_csv("bestToOther,1,2\n", None).is_err());
        assert!(parse_pcs_csv("bestToOther,1,x\notherToWorst,2,1\n", None).is_err());
        assert!(parse_pcs_csv("weird,1\n", None).is_err());
    }

    #[test]
    fn group_parsing() {
        let one = serde_json::to_string(&fixtures::example1().to_json()).unwrap();
        let group = format!("[{one},{one}]");
        assert_eq!(parse_pcs_or_group(&group, None).unwrap().len(), 2);
        assert_eq!(parse_pcs_or_group(&one, None).unwrap().len(), 1);
    }
}
