//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "name": "a5-ex2",
//!   "group_generators": ["(0 1 2 3 4)", "(0 1 2)"],
//!   "H_generators": ["(0 2)(1 3)"],
//!   "S": ["(0 1 2 3 4)", "(0 3 4 2 1)"],
//!   "analysis": { "classify": true, "swap": true },
//!   "budgets": { "max_nodes": 1000000 }
//! }
//! ```
//!
//! `{"toy": {"m": 5}}` replaces the presentation fields for the toy family.

use serde::Deserialize;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, Presentation, DEFAULT_GROUP_CAP};
use crate::perm::Permutation;
use crate::report::Format;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("config is not valid JSON: {0}")]
    Json(String),
    #[error("field `{field}`: bad token `{token}`: {reason}")]
    Field {
        field: String,
        token: String,
        reason: String,
    },
    #[error("config must give either a presentation (group_generators, H_generators, S) or toy, {0}")]
    Source(String),
    #[error("presentation rejected: {0}")]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Analysis {
    #[serde(default = "yes")]
    pub classify: bool,
    #[serde(default = "yes")]
    pub swap: bool,
    #[serde(default)]
    pub blocks: bool,
    #[serde(default)]
    pub tree_search: bool,
    #[serde(default)]
    pub spanning: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct Budgets {
    pub group_cap: usize,
    pub cycle_cap: usize,
    pub max_nodes: u64,
    pub closure_cap: usize,
    pub max_word_len: usize,
    pub max_candidates: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            group_cap: DEFAULT_GROUP_CAP,
            cycle_cap: crate::digraph::DEFAULT_CYCLE_CAP,
            max_nodes: crate::spanning::DEFAULT_MAX_NODES,
            closure_cap: 4096,
            max_word_len: 64,
            max_candidates: 100_000,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ToyDoc {
    m: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    name: Option<String>,
    degree: Option<usize>,
    group_generators: Option<Vec<String>>,
    #[serde(rename = "H_generators")]
    h_generators: Option<Vec<String>>,
    #[serde(rename = "S")]
    s: Option<Vec<String>>,
    toy: Option<ToyDoc>,
    analysis: Option<Analysis>,
    budgets: Option<Budgets>,
    format: Option<String>,
}

#[derive(Clone, Debug)]
pub enum Source {
    Presentation(Box<Presentation>),
    Toy(usize),
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub name: String,
    pub source: Source,
    pub analysis: Analysis,
    pub budgets: Budgets,
    pub format: Option<Format>,
}

fn field_err(field: String, token: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Field {
        field,
        token: token.to_string(),
        reason: reason.into(),
    }
}

fn parse_list(field: &str, items: &[String], degree: usize) -> Result<Vec<Permutation>, ConfigError> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| {
            Permutation::parse(s, Some(degree)).map_err(|e| field_err(format!("{field}[{i}]"), s, e.to_string()))
        })
        .collect()
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let doc: ConfigDoc = serde_json::from_str(text).map_err(|e| ConfigError::Json(e.to_string()))?;
        let analysis = doc.analysis.unwrap_or(Analysis {
            classify: true,
            swap: true,
            ..Analysis::default()
        });
        let budgets = doc.budgets.unwrap_or_default();
        let format = doc
            .format
            .as_deref()
            .map(|f| f.parse::<Format>().map_err(|e| field_err("format".into(), f, e)))
            .transpose()?;
        let has_presentation = doc.group_generators.is_some() || doc.h_generators.is_some() || doc.s.is_some();
        let (name, source) = match (doc.toy, has_presentation) {
            (Some(_), true) => return Err(ConfigError::Source("not both".into())),
            (None, false) => return Err(ConfigError::Source("found neither".into())),
            (Some(t), false) => (doc.name.unwrap_or_else(|| format!("toy:{}", t.m)), Source::Toy(t.m)),
            (None, true) => {
                let missing = |f: &str| ConfigError::Source(format!("`{f}` is missing"));
                let gens = doc.group_generators.ok_or_else(|| missing("group_generators"))?;
                let hs = doc.h_generators.unwrap_or_default();
                let s = doc.s.ok_or_else(|| missing("S"))?;
                let mut degree = 0;
                for (field, list) in [("group_generators", &gens), ("H_generators", &hs), ("S", &s)] {
                    for (i, text) in list.iter().enumerate() {
                        let max = Permutation::max_point(text)
                            .map_err(|e| field_err(format!("{field}[{i}]"), text, e.to_string()))?;
                        degree = degree.max(max.map_or(0, |p| p + 1));
                    }
                }
                if let Some(d) = doc.degree {
                    if d < degree {
                        return Err(field_err(
                            "degree".into(),
                            &d.to_string(),
                            format!("generators move point {}", degree - 1),
                        ));
                    }
                    degree = d;
                }
                let degree = degree.max(1);
                let gens = parse_list("group_generators", &gens, degree)?;
                let hs = parse_list("H_generators", &hs, degree)?;
                let s = parse_list("S", &s, degree)?;
                let group = FiniteGroup::generate_capped(degree, &gens, budgets.group_cap)?;
                let name = doc.name.unwrap_or_else(|| "custom".into());
                let p = Presentation::new(Some(name.clone()), group, hs, &s)?;
                (name, Source::Presentation(Box::new(p)))
            }
        };
        Ok(ExperimentConfig {
            name,
            source,
            analysis,
            budgets,
            format,
        })
    }

    pub fn from_source(name: String, source: Source) -> Self {
        ExperimentConfig {
            name,
            source,
            analysis: Analysis {
                classify: true,
                swap: true,
                ..Analysis::default()
            },
            budgets: Budgets::default(),
            format: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A5: &str = r#"{
        "name": "a5",
        "group_generators": ["(0 1 2 3 4)", "(0 1 2)"],
        "H_generators": ["(0 2)(1 3)"],
        "S": ["(0 1 2 3 4)", "(0 3 4 2 1)"]
    }"#;

    #[test]
    fn parses_presentation() {
        let c = ExperimentConfig::parse(A5).unwrap();
        let Source::Presentation(p) = &c.source else { panic!() };
        assert_eq!(p.group.order(), 60);
        assert_eq!(p.cosets().len(), 30);
        assert!(c.analysis.classify && c.analysis.swap && !c.analysis.tree_search);
    }

    #[test]
    fn parses_toy_and_toggles() {
        let c = ExperimentConfig::parse(r#"{"toy": {"m": 4}, "analysis": {"blocks": true}, "format": "json-lines"}"#)
            .unwrap();
        assert!(matches!(c.source, Source::Toy(4)));
        assert!(c.analysis.blocks && c.analysis.classify);
        assert_eq!(c.format, Some(Format::JsonLines));
    }

    #[test]
    fn errors_cite_field_and_token() {
        let bad = A5.replace("(0 2)(1 3)", "(0 2)(1 x)");
        let err = ExperimentConfig::parse(&bad).unwrap_err();
        let ConfigError::Field { field, token, .. } = &err else {
            panic!("{err}")
        };
        assert_eq!(field, "H_generators[0]");
        assert_eq!(token, "(0 2)(1 x)");
        assert!(matches!(ExperimentConfig::parse("{}"), Err(ConfigError::Source(_))));
        assert!(matches!(ExperimentConfig::parse(""), Err(ConfigError::Json(_))));
        assert!(matches!(
            ExperimentConfig::parse(r#"{"toy": {"m": 3}, "S": []}"#),
            Err(ConfigError::Source(_))
        ));
        assert!(matches!(
            ExperimentConfig::parse(r#"{"toy": {"m": 3}, "bogus": 1}"#),
            Err(ConfigError::Json(_))
        ));
    }

    #[test]
    fn s_outside_group_is_rejected() {
        let bad = A5.replace("(0 3 4 2 1)", "(0 1)");
        assert!(matches!(ExperimentConfig::parse(&bad), Err(ConfigError::Group(_))));
    }
}
