//! Library side of the `genfilter` command: structure registries,
//! certificates, and the verification suites.

mod build;
mod recheck;
mod suites;

use std::fmt;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use genfilter::Check;

pub use build::{build, query, BuildOptions, QueryOptions};
pub use recheck::recheck;
pub use suites::{run_suite, Suite};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown {kind} structure {name:?} (known: {known})")]
    UnknownStructure {
        kind: Kind,
        name: String,
        known: &'static str,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed certificate: {0}")]
    Certificate(String),
    #[error("query failed: {0}")]
    Query(String),
}

impl CliError {
    /// Process exit code: 1 when the construction itself failed, 2 for
    /// usage and registry errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Query(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Dlo,
    Boolean,
    Graph,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Dlo => "dlo",
            Kind::Boolean => "boolean",
            Kind::Graph => "graph",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum DloName {
    Rationals,
    Dyadics,
}

impl DloName {
    pub(crate) fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "rationals" => Ok(DloName::Rationals),
            "dyadics" => Ok(DloName::Dyadics),
            _ => Err(CliError::UnknownStructure {
                kind: Kind::Dlo,
                name: name.to_string(),
                known: "rationals, dyadics",
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BooleanName {
    Clopen,
    Interval,
}

impl BooleanName {
    pub(crate) fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "clopen" => Ok(BooleanName::Clopen),
            "interval" => Ok(BooleanName::Interval),
            _ => Err(CliError::UnknownStructure {
                kind: Kind::Boolean,
                name: name.to_string(),
                known: "clopen, interval",
            }),
        }
    }
}

pub(crate) fn graph(name: &str, bound: Option<u64>) -> Result<std::sync::Arc<dyn genfilter::graphs::CountableGraph>, CliError> {
    genfilter::graphs::parse_graph(name, bound).map_err(|_| CliError::UnknownStructure {
        kind: Kind::Graph,
        name: name.to_string(),
        known: "bit, hf, random:<seed>, complement:<name>, delete:<name>:<list>, toggle:<name>:<pairs>",
    })
}

/// The output of `build`: the pairs reached by the builder and every check
/// run on them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: Kind,
    pub source: String,
    pub target: String,
    pub stage: usize,
    pub pairs: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Pretty JSON with object keys in sorted order, newline terminated.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("certificate serializes");
        let mut text = serde_json::to_string_pretty(&value).expect("value serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Certificate(e.to_string()))
    }
}
