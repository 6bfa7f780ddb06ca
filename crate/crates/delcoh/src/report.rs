//! Structured pass/fail reports with stable text rendering and JSON-ready
//! serialization. All content is deterministic for fixed inputs: no
//! timestamps, no map iteration order, numbers rendered as decimal strings.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

/// One named check with its outcome and a short free-form detail.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A report node: one position in a sequence, one verified object, or one
/// grouped batch of sampled checks.
#[derive(Clone, Debug, Serialize)]
pub struct NodeReport {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub checks: Vec<CheckReport>,
}

impl NodeReport {
    pub fn new(label: impl Into<String>) -> Self {
        NodeReport {
            label: label.into(),
            group: None,
            checks: Vec::new(),
        }
    }

    pub fn with_group(mut self, group: impl Into<String>) -> Self {
        self.group = Some(group.into());
        self
    }

    pub fn push_check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckReport {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// A full verification run: a titled list of nodes plus run parameters.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub title: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    pub nodes: Vec<NodeReport>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        VerificationReport {
            title: title.into(),
            seed: None,
            samples: None,
            input_sha256: None,
            nodes: Vec::new(),
            passed: true,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = Some(samples);
        self
    }

    pub fn with_input_sha256(mut self, digest: impl Into<String>) -> Self {
        self.input_sha256 = Some(digest.into());
        self
    }

    pub fn push_node(&mut self, node: NodeReport) {
        self.passed &= node.passed();
        self.nodes.push(node);
    }

    /// Absorbs another report as a flat run of nodes, prefixing labels
    /// with the sub-report's title.
    pub fn absorb(&mut self, sub: VerificationReport) {
        for mut node in sub.nodes {
            node.label = format!("{} :: {}", sub.title, node.label);
            self.push_node(node);
        }
    }

    fn mark(passed: bool) -> &'static str {
        if passed {
            "PASS"
        } else {
            "FAIL"
        }
    }

    /// Stable plain-text rendering, one line per node plus one per check.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.title);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        if let Some(samples) = self.samples {
            let _ = writeln!(out, "samples: {samples}");
        }
        if let Some(h) = &self.input_sha256 {
            let _ = writeln!(out, "input-sha256: {h}");
        }
        for node in &self.nodes {
            let group = node
                .group
                .as_ref()
                .map(|g| format!(" = {g}"))
                .unwrap_or_default();
            let _ = writeln!(out, "[{}] {}{}", Self::mark(node.passed()), node.label, group);
            for check in &node.checks {
                let detail = if check.detail.is_empty() {
                    String::new()
                } else {
                    format!(": {}", check.detail)
                };
                let _ = writeln!(out, "  [{}] {}{}", Self::mark(check.passed), check.name, detail);
            }
        }
        let _ = writeln!(out, "overall: {}", Self::mark(self.passed));
        out
    }
}

/// Hex SHA-256 of a byte string, used to pin input files in reports.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        let _ = write!(out, "{b:02x}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_aggregates_pass_state() {
        let mut r = VerificationReport::new("demo").with_seed(7);
        let mut good = NodeReport::new("first");
        good.push_check("compiles", true, "");
        r.push_node(good);
        assert!(r.passed);
        let mut bad = NodeReport::new("second").with_group("Z/2");
        bad.push_check("vanishes", false, "value 1/2");
        r.push_node(bad);
        assert!(!r.passed);
        let text = r.render_text();
        assert!(text.contains("== demo =="));
        assert!(text.contains("seed: 7"));
        assert!(text.contains("[PASS] first"));
        assert!(text.contains("[FAIL] second = Z/2"));
        assert!(text.contains("  [FAIL] vanishes: value 1/2"));
        assert!(text.contains("overall: FAIL"));
    }

    #[test]
    fn sha256_of_known_string() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn rendering_is_deterministic() {
        let mut r = VerificationReport::new("stable").with_samples(3);
        let mut n = NodeReport::new("node");
        n.push_check("a", true, "x");
        n.push_check("b", true, "y");
        r.push_node(n);
        assert_eq!(r.render_text(), r.render_text());
    }
}
