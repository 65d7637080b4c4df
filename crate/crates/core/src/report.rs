//! Identity check reports, serializable in the shared JSON schema.

use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    /// Canonical text of the first differing monomial.
    pub monomial: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    /// e.g. "derived-reduction" for lattice sums whose reduced display the
    /// source omits
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub flags: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice_points: Option<u64>,
    pub elapsed_ms: u64,
}

impl IdentityReport {
    pub fn new(id: impl Into<String>) -> ReportBuilder {
        ReportBuilder {
            id: id.into(),
            params: BTreeMap::new(),
            flags: Vec::new(),
            notes: Vec::new(),
            lattice_points: None,
            start: Instant::now(),
        }
    }
}

pub struct ReportBuilder {
    id: String,
    params: BTreeMap<String, String>,
    flags: Vec<String>,
    notes: Vec<String>,
    lattice_points: Option<u64>,
    start: Instant,
}

impl ReportBuilder {
    pub fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    pub fn flag(mut self, f: &str) -> Self {
        self.flags.push(f.to_string());
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn lattice_points(mut self, n: u64) -> Self {
        self.lattice_points = Some(n);
        self
    }

    pub fn pass(self) -> IdentityReport {
        self.finish(true, None)
    }

    pub fn fail(self, mismatch: Mismatch) -> IdentityReport {
        self.finish(false, Some(mismatch))
    }

    pub fn finish(self, pass: bool, mismatch: Option<Mismatch>) -> IdentityReport {
        IdentityReport {
            id: self.id,
            params: self.params,
            pass,
            mismatch,
            flags: self.flags,
            notes: self.notes,
            lattice_points: self.lattice_points,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}
