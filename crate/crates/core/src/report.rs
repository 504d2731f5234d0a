//! Self-describing report records and their TSV / JSON-lines renderings.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    JsonLines,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "json-lines" | "jsonl" => Ok(Format::JsonLines),
            _ => Err("expected `tsv` or `json-lines`".into()),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Tsv => "tsv",
            Format::JsonLines => "json-lines",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub schema: String,
    pub experiment: String,
    pub command: String,
    pub version: String,
    #[serde(flatten)]
    pub fields: IndexMap<String, Value>,
}

impl ReportRecord {
    /// A record with schema `spanfact.<command>/1`.
    pub fn new(experiment: &str, command: &str) -> Self {
        ReportRecord {
            schema: format!("spanfact.{command}/1"),
            experiment: experiment.to_string(),
            command: command.to_string(),
            version: VERSION.to_string(),
            fields: IndexMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.to_string(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.get(key)
    }
}

const FIXED: [&str; 4] = ["schema", "experiment", "command", "version"];

fn tsv_cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    s.replace('\\', "\\\\").replace('\t', "\\t").replace('\n', "\\n")
}

/// Renders records. TSV always has a header row: the fixed columns followed by the
/// union of field names in first-seen order.
pub fn emit_table(records: &[ReportRecord], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::JsonLines => {
            for r in records {
                out.push_str(&serde_json::to_string(r).expect("records serialize"));
                out.push('\n');
            }
        }
        Format::Tsv => {
            let mut columns: IndexMap<&str, ()> = IndexMap::new();
            for r in records {
                for k in r.fields.keys() {
                    columns.insert(k, ());
                }
            }
            let header: Vec<&str> = FIXED.iter().copied().chain(columns.keys().copied()).collect();
            out.push_str(&header.join("\t"));
            out.push('\n');
            for r in records {
                let mut row = vec![
                    r.schema.clone(),
                    r.experiment.clone(),
                    r.command.clone(),
                    r.version.clone(),
                ];
                row.extend(
                    columns
                        .keys()
                        .map(|k| r.fields.get(*k).map(tsv_cell).unwrap_or_default()),
                );
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
        }
    }
    out
}

pub fn parse_json_lines(text: &str) -> Result<Vec<ReportRecord>, serde_json::Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Vec<ReportRecord> {
        vec![
            ReportRecord::new("toy:3", "enumerate")
                .with("bitmask", 3)
                .with("f1_type", "(3,3)")
                .with("delta", json!([0, 1])),
            ReportRecord::new("toy:3", "enumerate")
                .with("bitmask", 4)
                .with("note", "tab\there"),
        ]
    }

    #[test]
    fn tsv_header_and_rows() {
        let text = emit_table(&sample(), Format::Tsv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "schema\texperiment\tcommand\tversion\tbitmask\tf1_type\tdelta\tnote"
        );
        assert_eq!(lines.len(), 3);
        assert!(lines[1].ends_with("\t3\t(3,3)\t[0,1]\t"));
        assert!(lines[2].ends_with("\t4\t\t\ttab\\there"));
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(emit_table(&[], Format::Tsv), "schema\texperiment\tcommand\tversion\n");
        assert_eq!(emit_table(&[], Format::JsonLines), "");
    }

    #[test]
    fn json_lines_round_trip() {
        let recs = sample();
        let text = emit_table(&recs, Format::JsonLines);
        assert_eq!(parse_json_lines(&text).unwrap(), recs);
        assert_eq!(emit_table(&parse_json_lines(&text).unwrap(), Format::JsonLines), text);
    }

    #[test]
    fn format_names() {
        assert_eq!("json-lines".parse::<Format>(), Ok(Format::JsonLines));
        assert!("csv".parse::<Format>().is_err());
        assert_eq!(Format::Tsv.to_string(), "tsv");
    }
}
