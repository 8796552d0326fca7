//! Verification report: one record per check plus run metadata.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::{Suite, SuiteConfig};

/// Whether the residual must stay below the tolerance or exceed it
/// (negative controls).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    AtMost,
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub suite: Suite,
    pub name: String,
    /// The identity or property under test.
    pub anchor: String,
    /// Absent when the check could not be evaluated.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub expect: Expect,
    pub pass: bool,
    pub samples: usize,
    pub wall_time_ms: f64,
    pub error: Option<String>,
}

impl CheckRecord {
    #[allow(clippy::too_many_arguments)]
    pub fn evaluated(
        suite: Suite,
        name: &str,
        anchor: &str,
        residual: f64,
        tolerance: f64,
        expect: Expect,
        samples: usize,
        wall_time_ms: f64,
    ) -> Self {
        let (residual, error) = if residual.is_finite() {
            (Some(residual), None)
        } else {
            (None, Some(format!("non-finite residual {residual}")))
        };
        let pass = residual.is_some_and(|r| match expect {
            Expect::AtMost => r <= tolerance,
            Expect::Above => r > tolerance,
        });
        Self {
            suite,
            name: name.into(),
            anchor: anchor.into(),
            residual,
            tolerance,
            expect,
            pass,
            samples,
            wall_time_ms,
            error,
        }
    }

    pub fn failed(
        suite: Suite,
        name: &str,
        anchor: &str,
        tolerance: f64,
        expect: Expect,
        error: String,
        wall_time_ms: f64,
    ) -> Self {
        Self {
            suite,
            name: name.into(),
            anchor: anchor.into(),
            residual: None,
            tolerance,
            expect,
            pass: false,
            samples: 0,
            wall_time_ms,
            error: Some(error),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub version: String,
    pub config: SuiteConfig,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub metadata: Metadata,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
}

impl Report {
    pub fn new(config: SuiteConfig, records: Vec<CheckRecord>, wall_time_ms: f64) -> Self {
        let pass = records.iter().all(|r| r.pass);
        let metadata = Metadata { version: env!("CARGO_PKG_VERSION").to_string(), config, wall_time_ms };
        Self { metadata, records, pass }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn find(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// The report with every timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.metadata.wall_time_ms = 0.0;
        for rec in &mut r.records {
            rec.wall_time_ms = 0.0;
        }
        r
    }

    pub fn canonical_json(&self) -> String {
        self.without_timing().to_json()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self.records.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
        let _ = writeln!(
            out,
            "{:<6} {:<w$} {:>11} {:>3} {:>9} {:>7} {:>10}",
            "status",
            "name",
            "residual",
            "",
            "tolerance",
            "samples",
            "time_ms",
            w = width
        );
        for r in &self.records {
            let status = if r.pass { "PASS" } else { "FAIL" };
            let residual = r.residual.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"));
            let op = match r.expect {
                Expect::AtMost => "<=",
                Expect::Above => ">",
            };
            let _ = writeln!(
                out,
                "{status:<6} {:<w$} {residual:>11} {op:>3} {:>9.1e} {:>7} {:>10.1}",
                r.name,
                r.tolerance,
                r.samples,
                r.wall_time_ms,
                w = width
            );
            if let Some(e) = &r.error {
                let _ = writeln!(out, "       {:<w$} error: {e}", "", w = width);
            }
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} checks, {} failed, {:.1} ms: {}",
            self.records.len(),
            failed,
            self.metadata.wall_time_ms,
            if self.pass { "PASS" } else { "FAIL" }
        );
        out
    }
}
