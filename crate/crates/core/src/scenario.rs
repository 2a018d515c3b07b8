//! JSON scenario files: a finite space, named multimeasures and functions,
//! and optional direction, tolerance and cap settings.
//!
//! ```json
//! {
//!   "space": ["w1", "w2"],
//!   "dimension": 1,
//!   "multimeasures": {
//!     "N": { "atoms": [{"interval": [0, 1]}, {"interval": [0, 1]}] },
//!     "M": { "atoms": {"w1": {"interval": [0, 2]}, "w2": {"interval": [0, 5]}} }
//!   },
//!   "functions": { "f": [2, -3] },
//!   "directions": { "count": 16, "seed": 7 }
//! }
//! ```
//!
//! A multimeasure may instead list `"events": [{"event": ["w1"], "body": ..}, ..]`;
//! every singleton must appear and the table is checked for additivity.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convex::{BodyLiteral, ConvexBody};
use crate::error::Error;
use crate::measure::{Event, FiniteMeasurableSpace, MeasurableFunction};
use crate::multimeasure::Multimeasure;
use crate::radstrom::DirectionSet;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("unknown {kind} \"{name}\"")]
    Name { kind: &'static str, name: String },
    #[error("{path}: {source}")]
    Invalid { path: String, source: Error },
}

impl ScenarioError {
    fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        ScenarioError::Field {
            path: path.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectionSpec {
    pub count: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AtomBodies {
    List(Vec<BodyLiteral>),
    ByLabel(BTreeMap<String, BodyLiteral>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventEntry {
    pub event: Vec<String>,
    pub body: BodyLiteral,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultimeasureSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atoms: Option<AtomBodies>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub events: Option<Vec<EventEntry>>,
}

/// Scenario file contents before validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub space: Vec<String>,
    pub dimension: usize,
    #[serde(default)]
    pub multimeasures: BTreeMap<String, MultimeasureSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directions: Option<DirectionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub event_cap: Option<usize>,
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub space: FiniteMeasurableSpace,
    pub dim: usize,
    pub multimeasures: BTreeMap<String, Multimeasure>,
    pub functions: BTreeMap<String, MeasurableFunction>,
    /// Names of multimeasures given as event tables.
    pub event_tables: Vec<String>,
}

pub fn parse(text: &str) -> Result<ScenarioFile, ScenarioError> {
    serde_json::from_str(text).map_err(|e| ScenarioError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn body(lit: &BodyLiteral, dim: usize, path: &str) -> Result<ConvexBody, ScenarioError> {
    let b = ConvexBody::try_from(lit.clone()).map_err(|source| ScenarioError::Invalid {
        path: path.to_string(),
        source,
    })?;
    if b.dim() != dim {
        return Err(ScenarioError::Invalid {
            path: path.to_string(),
            source: Error::Dimension {
                expected: dim,
                found: b.dim(),
            },
        });
    }
    Ok(b)
}

impl ScenarioFile {
    /// Validates the file. Event tables are checked for additivity on `dirs`
    /// within `tol`.
    pub fn build(&self, dirs: &DirectionSet, tol: f64) -> Result<Scenario, ScenarioError> {
        let space = FiniteMeasurableSpace::new(self.space.clone()).map_err(|source| ScenarioError::Invalid {
            path: "space".into(),
            source,
        })?;
        let dim = self.dimension;
        if dim == 0 {
            return Err(ScenarioError::field("dimension", "must be positive"));
        }
        if let Some(t) = self.tolerance {
            if t.is_nan() || t < 0.0 {
                return Err(ScenarioError::field("tolerance", "must be ≥ 0"));
            }
        }
        let k = space.len();
        let mut multimeasures = BTreeMap::new();
        let mut event_tables = Vec::new();
        for (name, spec) in &self.multimeasures {
            let base = format!("multimeasures.{name}");
            let mm = match (&spec.atoms, &spec.events) {
                (Some(AtomBodies::List(list)), None) => {
                    if list.len() != k {
                        return Err(ScenarioError::field(
                            format!("{base}.atoms"),
                            format!("has {} entries for {k} atoms", list.len()),
                        ));
                    }
                    let atoms = list
                        .iter()
                        .enumerate()
                        .map(|(i, lit)| body(lit, dim, &format!("{base}.atoms[{i}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    Multimeasure::new(space.clone(), atoms)
                }
                (Some(AtomBodies::ByLabel(map)), None) => {
                    if let Some(extra) = map.keys().find(|l| space.index_of(l).is_none()) {
                        return Err(ScenarioError::field(format!("{base}.atoms.{extra}"), "unknown atom label"));
                    }
                    let atoms = space
                        .labels()
                        .iter()
                        .map(|l| {
                            let path = format!("{base}.atoms.{l}");
                            let lit = map.get(l).ok_or_else(|| ScenarioError::field(&path, "missing"))?;
                            body(lit, dim, &path)
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Multimeasure::new(space.clone(), atoms)
                }
                (None, Some(entries)) => {
                    let mut table = Vec::with_capacity(entries.len());
                    for (i, entry) in entries.iter().enumerate() {
                        let path = format!("{base}.events[{i}]");
                        let e = space.event_of(&entry.event).map_err(|source| ScenarioError::Invalid {
                            path: format!("{path}.event"),
                            source,
                        })?;
                        table.push((e, body(&entry.body, dim, &format!("{path}.body"))?));
                    }
                    event_tables.push(name.clone());
                    Multimeasure::from_event_table(space.clone(), dim, &table, dirs, tol)
                }
                _ => {
                    return Err(ScenarioError::field(base, "needs exactly one of \"atoms\" or \"events\""));
                }
            }
            .map_err(|source| ScenarioError::Invalid {
                path: base.clone(),
                source,
            })?;
            multimeasures.insert(name.clone(), mm);
        }
        let mut functions = BTreeMap::new();
        for (name, values) in &self.functions {
            let path = format!("functions.{name}");
            if values.len() != k {
                return Err(ScenarioError::field(path, format!("has {} entries for {k} atoms", values.len())));
            }
            let f = MeasurableFunction::new(space.clone(), values.clone())
                .map_err(|source| ScenarioError::Invalid { path, source })?;
            functions.insert(name.clone(), f);
        }
        Ok(Scenario {
            space,
            dim,
            multimeasures,
            functions,
            event_tables,
        })
    }

    /// Scenario file holding the given multimeasures as atom lists.
    pub fn from_parts(
        space: &FiniteMeasurableSpace,
        dim: usize,
        multimeasures: &[(&str, &Multimeasure)],
        functions: &[(&str, &MeasurableFunction)],
    ) -> Self {
        ScenarioFile {
            space: space.labels().to_vec(),
            dimension: dim,
            multimeasures: multimeasures
                .iter()
                .map(|(name, mm)| {
                    let atoms = mm.atoms().iter().cloned().map(BodyLiteral::from).collect();
                    (
                        name.to_string(),
                        MultimeasureSpec {
                            atoms: Some(AtomBodies::List(atoms)),
                            events: None,
                        },
                    )
                })
                .collect(),
            functions: functions
                .iter()
                .map(|(name, f)| (name.to_string(), f.values().to_vec()))
                .collect(),
            directions: None,
            tolerance: None,
            event_cap: None,
        }
    }
}

impl Scenario {
    pub fn multimeasure(&self, name: &str) -> Result<&Multimeasure, ScenarioError> {
        self.multimeasures.get(name).ok_or_else(|| ScenarioError::Name {
            kind: "multimeasure",
            name: name.to_string(),
        })
    }

    pub fn function(&self, name: &str) -> Result<&MeasurableFunction, ScenarioError> {
        self.functions.get(name).ok_or_else(|| ScenarioError::Name {
            kind: "function",
            name: name.to_string(),
        })
    }

    /// The event named by atom labels, or `Ω` when `labels` is `None`.
    pub fn event(&self, labels: Option<&[String]>) -> Result<Event, ScenarioError> {
        match labels {
            None => Ok(self.space.full()),
            Some(ls) => self.space.event_of(ls).map_err(|source| ScenarioError::Invalid {
                path: "--event".into(),
                source,
            }),
        }
    }
}
