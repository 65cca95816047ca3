//! Check reports and the summary JSON document.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::json;

use super::config::{Mode, Tolerances};

/// One named check with its outcome.
#[derive(Debug, Clone)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Everything a mode run produces besides its data files.
#[derive(Debug, Clone)]
pub struct Report {
    pub mode: Mode,
    pub items: Vec<CheckItem>,
    pub counts: BTreeMap<String, u64>,
    pub max_errors: BTreeMap<String, f64>,
    pub drift: BTreeMap<String, f64>,
    pub runtime_s: f64,
}

impl Report {
    pub fn new(mode: Mode) -> Report {
        Report {
            mode,
            items: Vec::new(),
            counts: BTreeMap::new(),
            max_errors: BTreeMap::new(),
            drift: BTreeMap::new(),
            runtime_s: 0.0,
        }
    }

    /// Record an identity that must hold exactly; `failures` lists the
    /// offending cases by name.
    pub fn push_exact(&mut self, name: &str, failures: Vec<String>) {
        let detail = if failures.is_empty() {
            "exact".to_string()
        } else {
            format!("{} failure(s): {}", failures.len(), failures.join("; "))
        };
        self.items.push(CheckItem {
            name: name.to_string(),
            passed: failures.is_empty(),
            detail,
        });
    }

    /// Record a measured maximum error against a threshold.
    pub fn push_threshold(&mut self, name: &str, measured: f64, threshold: f64) {
        self.max_errors.insert(name.to_string(), measured);
        self.items.push(CheckItem {
            name: name.to_string(),
            passed: measured.is_finite() && measured <= threshold,
            detail: format!("max error {measured:.3e} (threshold {threshold:.1e})"),
        });
    }

    pub fn count(&mut self, name: &str, value: u64) {
        self.counts.insert(name.to_string(), value);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|item| item.passed)
    }

    /// One line per check plus a result line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            let status = if item.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status} {} — {}", item.name, item.detail);
        }
        for (name, value) in &self.counts {
            let _ = writeln!(out, "checked {value} {name}");
        }
        let passed = self.items.iter().filter(|i| i.passed).count();
        let _ = writeln!(
            out,
            "RESULT {}: {} ({passed}/{} checks, {:.3}s)",
            self.mode.as_str(),
            if self.passed() { "PASS" } else { "FAIL" },
            self.items.len(),
            self.runtime_s,
        );
        out
    }

    /// The summary document: mode, passed, max_errors, drift, runtime_s,
    /// plus the effective tolerances and counts.
    pub fn summary_json(&self, tolerances: &Tolerances) -> serde_json::Value {
        json!({
            "mode": self.mode.as_str(),
            "passed": self.passed(),
            "max_errors": self.max_errors,
            "drift": self.drift,
            "runtime_s": self.runtime_s,
            "tolerances": tolerances,
            "counts": self.counts,
            "checks": self.items.iter().map(|i| json!({
                "name": i.name,
                "passed": i.passed,
                "detail": i.detail,
            })).collect::<Vec<_>>(),
        })
    }
}
