//! Machine-readable result certificates.

use serde::Serialize;
use serde_json::Value;

use fwdiff_core::fwcore::{FwPresentation, RingPresentation};

use crate::parse::RingFile;

pub const TOOL: &str = "fwdiff";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RingEcho {
    pub base: String,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
}

impl RingEcho {
    pub fn new(file: &RingFile) -> Self {
        let a = &file.presentation;
        RingEcho {
            base: file.base.to_string(),
            vars: a.vars().to_vec(),
            relations: a.relations().iter().map(|f| a.format_poly(f)).collect(),
        }
    }
}

/// `FΩ¹_A` as generators and relation columns over the carrier `A/pA`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModuleEcho {
    pub generators: Vec<String>,
    /// One column per relation, one entry per generator.
    pub columns: Vec<Vec<String>>,
    /// Reduced Gröbner basis of the carrier ideal.
    pub carrier: Vec<String>,
}

impl ModuleEcho {
    pub fn new(a: &RingPresentation, m: &FwPresentation) -> Self {
        ModuleEcho {
            generators: m.labels().to_vec(),
            columns: m.display_columns(a.vars()),
            carrier: m.carrier().basis().iter().map(|g| g.display(a.vars())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
}

impl Meta {
    pub fn new(seed: u64) -> Self {
        Meta {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            seed,
        }
    }
}

/// Everything a command reports. Maps inside `command` and `result` are
/// key-sorted, so serialization is deterministic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultDocument {
    pub command: Value,
    pub ring: Option<RingEcho>,
    pub module: Option<ModuleEcho>,
    pub result: Value,
    pub meta: Meta,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// Plain `key: value` rendering of the result.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(r) = &self.ring {
            out.push_str(&format!("ring: {} [{}]", r.base, r.vars.join(", ")));
            if !r.relations.is_empty() {
                out.push_str(&format!(" / ({})", r.relations.join(", ")));
            }
            out.push('\n');
        }
        if let Some(m) = &self.module {
            out.push_str(&format!("generators: {}\n", m.generators.join(", ")));
            for (i, c) in m.columns.iter().enumerate() {
                out.push_str(&format!("relation {}: ({})\n", i + 1, c.join(", ")));
            }
        }
        if let Value::Object(map) = &self.result {
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    Value::Null => "-".to_string(),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k}: {shown}\n"));
            }
        }
        out.push_str(&format!("seed: {}\n", self.meta.seed));
        out
    }
}
