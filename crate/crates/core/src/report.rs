//! Rendering of classification reports as Markdown, CSV or JSON.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closed_forms::FormulaId;
use crate::enumeration::{ClassificationReport, Provenance};
use crate::BiVincularPattern;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unknown format {0:?} (expected md, csv or json)")]
    UnknownFormat(String),
    #[error("invalid report JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Md,
    Csv,
    Json,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Md => "md",
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for ReportFormat {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(ReportFormat::Md),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(ReportError::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub tool_version: String,
    pub k: usize,
    pub horizon: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub representative: BiVincularPattern,
    pub terms: Vec<u64>,
    pub formula_id: Option<FormulaId>,
    pub oeis_id: Option<String>,
    pub provenance: Provenance,
    pub members: Vec<BiVincularPattern>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub metadata: ReportMetadata,
    pub rows: Vec<ReportRow>,
}

impl From<&ClassificationReport> for ReportDocument {
    fn from(r: &ClassificationReport) -> Self {
        ReportDocument {
            metadata: ReportMetadata {
                tool_version: TOOL_VERSION.to_string(),
                k: r.k,
                horizon: r.horizon,
            },
            rows: r
                .classes
                .iter()
                .map(|c| ReportRow {
                    representative: c.representative.clone(),
                    terms: c.terms.clone(),
                    formula_id: c.formula_id,
                    oeis_id: c.oeis_id.clone(),
                    provenance: c.provenance,
                    members: c.members.clone(),
                })
                .collect(),
        }
    }
}

impl ReportDocument {
    pub fn from_json(s: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// `(132,{1,2},{})` style.
pub fn tuple_form(p: &BiVincularPattern) -> String {
    let set = |s: crate::BoundarySet| format!("{{{s}}}");
    format!("({},{},{})", p.sigma(), set(p.x()), set(p.y()))
}

fn joined(terms: &[u64], sep: &str) -> String {
    terms.iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}

fn formula_cell(row: &ReportRow) -> String {
    let mut parts = Vec::new();
    if let Some(id) = row.formula_id {
        match id.entry().formula {
            Some(f) => parts.push(format!("{id}: {f}")),
            None => parts.push(id.to_string()),
        }
    }
    if let Some(o) = &row.oeis_id {
        parts.push(o.clone());
    }
    parts.join("; ")
}

pub fn emit_report(doc: &ReportDocument, format: ReportFormat) -> Result<String, ReportError> {
    match format {
        ReportFormat::Md => Ok(emit_md(doc)),
        ReportFormat::Csv => emit_csv(doc),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(doc)?;
            s.push('\n');
            Ok(s)
        }
    }
}

fn emit_md(doc: &ReportDocument) -> String {
    let m = &doc.metadata;
    let mut out = format!(
        "# Wilf classes of length {}\n\nCounts a_1..a_{} by exhaustive search (bivinc {}).\n\n",
        m.k, m.horizon, m.tool_version
    );
    out.push_str("| Representative | Sequence | Formula / OEIS | Provenance |\n");
    out.push_str("|---|---|---|---|\n");
    for row in &doc.rows {
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            tuple_form(&row.representative),
            joined(&row.terms, ", "),
            formula_cell(row),
            row.provenance
        ));
    }
    out
}

fn emit_csv(doc: &ReportDocument) -> Result<String, ReportError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(["representative", "terms", "formula_id", "oeis_id", "provenance"])?;
    for row in &doc.rows {
        w.write_record([
            row.representative.to_string(),
            joined(&row.terms, ","),
            row.formula_id.map(|f| f.to_string()).unwrap_or_default(),
            row.oeis_id.clone().unwrap_or_default(),
            row.provenance.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::wilf_classify;

    #[test]
    fn formats_parse() {
        assert_eq!("md".parse::<ReportFormat>().unwrap(), ReportFormat::Md);
        assert_eq!("JSON".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert!("xml".parse::<ReportFormat>().is_err());
    }

    #[test]
    fn markdown_and_csv_row_counts() {
        let doc = ReportDocument::from(&wilf_classify(2, 7).unwrap());
        let md = emit_report(&doc, ReportFormat::Md).unwrap();
        assert_eq!(md.lines().filter(|l| l.starts_with("| (")).count(), 7);
        assert!(md.contains("| (12,{1},{1}) | 1, 1, 3, 11, 53, 309, 2119 |"));
        let csv = emit_report(&doc, ReportFormat::Csv).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "representative,terms,formula_id,oeis_id,provenance");
        assert_eq!(lines.count(), 7);
        assert!(csv.contains("12|X=1|Y=1,\"1,1,3,11,53,309,2119\",B03,A000255,proved-in-paper"));
    }

    #[test]
    fn json_round_trip() {
        let doc = ReportDocument::from(&wilf_classify(2, 5).unwrap());
        let s = emit_report(&doc, ReportFormat::Json).unwrap();
        assert_eq!(ReportDocument::from_json(&s).unwrap(), doc);
    }

    #[test]
    fn empty_report_json() {
        let doc = ReportDocument {
            metadata: ReportMetadata {
                tool_version: TOOL_VERSION.into(),
                k: 3,
                horizon: 7,
            },
            rows: vec![],
        };
        let s = emit_report(&doc, ReportFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["rows"], serde_json::json!([]));
        assert_eq!(v["metadata"]["k"], 3);
        assert_eq!(ReportDocument::from_json(&s).unwrap(), doc);
    }
}
