use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub steps: Vec<StepReport>,
    pub summary: Summary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    pub op: String,
    pub inputs: Value,
    pub expected: BTreeMap<String, String>,
    pub actual: BTreeMap<String, String>,
    pub anchor: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    pub fn of(steps: &[StepReport]) -> Self {
        let passed = steps.iter().filter(|s| s.pass).count();
        Summary { total: steps.len(), passed, failed: steps.len() - passed }
    }
}

impl Report {
    pub fn new(scenario: &str, steps: Vec<StepReport>) -> Self {
        let summary = Summary::of(&steps);
        Report { scenario: scenario.to_string(), steps, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("scenario {}\n", self.scenario);
        for s in &self.steps {
            let mark = if s.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "  {mark} {} ({} ms): {}", s.op, s.elapsed_ms, s.anchor);
            for (k, v) in &s.actual {
                match s.expected.get(k) {
                    Some(e) if e != v => {
                        let _ = writeln!(out, "       {k} = {v}   (expected {e})");
                    }
                    _ => {
                        let _ = writeln!(out, "       {k} = {v}");
                    }
                }
            }
            for (k, e) in s.expected.iter().filter(|(k, _)| !s.actual.contains_key(*k)) {
                let _ = writeln!(out, "       {k} missing   (expected {e})");
            }
        }
        let _ = writeln!(out, "{}/{} steps passed", self.summary.passed, self.summary.total);
        out
    }
}
