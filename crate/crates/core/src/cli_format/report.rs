//! Report documents and their JSON and text renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::obstruction::{Decision, Method};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionEntry {
    pub basis: String,
    /// In σ-coordinates.
    pub value: String,
    /// Written out in `Bᵉ`.
    pub expanded: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub basis: String,
    pub gamma: String,
    pub expanded: String,
}

/// An unsolvable system with the left null vector that proves it; scalars as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub target: Vec<String>,
    pub reduced_augmented: Vec<Vec<String>>,
    pub left_null: Vec<String>,
    pub rank: usize,
    pub augmented_rank: usize,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleResult {
    pub module: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decision: Option<Decision>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    pub obstruction: Vec<ObstructionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WitnessEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub element: String,
    pub value: String,
    pub expanded: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub bidegree: [i32; 2],
    pub chain_dim: usize,
    pub boundary_rank: usize,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleValidation {
    pub module: String,
    pub basis: Vec<String>,
    pub square_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ring: String,
    pub variables: Vec<String>,
    pub modules: Vec<ModuleValidation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem: Option<String>,
    pub results: Vec<ModuleResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<DeltaReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selftest: Option<Vec<SuiteReport>>,
    pub timing_ms: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(Error::Usage(format!("unknown format `{other}`"))),
        }
    }
}

pub fn emit_report(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(doc).expect("report documents serialize"),
        Format::Text => emit_text(doc),
    }
}

fn emit_text(doc: &ReportDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "dglift {} {}", doc.version, doc.command);
    if let Some(p) = &doc.problem {
        for line in p.lines() {
            let _ = writeln!(s, "  | {line}");
        }
    }
    if let Some(v) = &doc.validation {
        let _ = writeln!(s, "ring: {}", v.ring);
        for var in &v.variables {
            let _ = writeln!(s, "variable: {var}");
        }
        for m in &v.modules {
            let status = if m.square_zero { "ok" } else { "FAILED" };
            let _ = writeln!(s, "module {}: {} [{}]", m.module, status, m.basis.join(", "));
        }
    }
    for r in &doc.results {
        let _ = writeln!(s, "module {}", r.module);
        if let Some(d) = r.decision {
            let method = r.method.map_or("", Method::as_str);
            let _ = writeln!(s, "  decision: {} ({method})", d.as_str());
        }
        for o in &r.obstruction {
            let _ = writeln!(s, "  Δ({}) = {}", o.basis, o.value);
            if o.expanded != o.value {
                let _ = writeln!(s, "      = {}", o.expanded);
            }
        }
        for w in r.witness.iter().flatten() {
            let _ = writeln!(s, "  γ({}) = {}", w.basis, w.gamma);
            if w.expanded != w.gamma {
                let _ = writeln!(s, "      = {}", w.expanded);
            }
        }
        if let Some(c) = &r.certificate {
            let _ = writeln!(
                s,
                "  certificate: {}x{} system, rank {} < augmented rank {}, verified: {}",
                c.rows.len(),
                c.columns.len(),
                c.rank,
                c.augmented_rank,
                c.verified
            );
            let pairing: Vec<String> = c
                .rows
                .iter()
                .zip(&c.left_null)
                .filter(|(_, y)| y.as_str() != "0")
                .map(|(row, y)| format!("{y} on {row}"))
                .collect();
            let _ = writeln!(s, "  left null vector: {}", pairing.join("; "));
        }
    }
    for d in doc.delta.iter().flatten() {
        let _ = writeln!(s, "δ({}) = {}", d.element, d.value);
        if d.expanded != d.value {
            let _ = writeln!(s, "    = {}", d.expanded);
        }
    }
    if let Some(h) = &doc.homology {
        let _ = writeln!(
            s,
            "H({},{})(J): dimension {} (chains {}, incoming boundary rank {})",
            h.bidegree[0], h.bidegree[1], h.dimension, h.chain_dim, h.boundary_rank
        );
    }
    for suite in doc.selftest.iter().flatten() {
        let status = if suite.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{status} {} ({} cases)", suite.name, suite.cases);
        for f in &suite.failures {
            let _ = writeln!(s, "  {f}");
        }
    }
    let _ = writeln!(s, "time: {} ms", doc.timing_ms);
    s
}
