//! Verification reports: per-case status lists serialized as `qc-report/1` JSON.

use serde::Serialize;
use serde_json::{Map, Value};
use std::time::Duration;

pub const SCHEMA: &str = "qc-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "status", content = "reason")]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub name: String,
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Case {
    pub fn new(name: impl Into<String>, ok: bool) -> Case {
        Case { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, detail: None }
    }
    /// Attaches a detail string; empty strings are dropped.
    pub fn with_detail(mut self, d: impl Into<String>) -> Case {
        let d = d.into();
        self.detail = (!d.is_empty()).then_some(d);
        self
    }
    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Case {
        Case { name: name.into(), status: Status::Skipped(reason.into()), detail: None }
    }
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub suite: String,
    pub params: Map<String, Value>,
    pub conventions: Map<String, Value>,
    pub cases: Vec<Case>,
    pub timing: Option<Duration>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Report {
        Report { suite: suite.into(), ..Default::default() }
    }
    pub fn param(mut self, k: &str, v: impl Into<Value>) -> Report {
        self.params.insert(k.into(), v.into());
        self
    }
    pub fn set_param(&mut self, k: &str, v: impl Into<Value>) {
        self.params.insert(k.into(), v.into());
    }
    pub fn convention(&mut self, k: &str, v: impl Into<Value>) {
        self.conventions.insert(k.into(), v.into());
    }
    pub fn push(&mut self, c: Case) {
        self.cases.push(c);
    }
    pub fn extend(&mut self, cs: impl IntoIterator<Item = Case>) {
        self.cases.extend(cs);
    }
    /// Absorbs another report's cases, prefixing their names with its suite.
    pub fn absorb(&mut self, other: Report) {
        for mut c in other.cases {
            c.name = format!("{}/{}", other.suite, c.name);
            self.cases.push(c);
        }
        for (k, v) in other.conventions {
            self.conventions.insert(format!("{}.{}", other.suite, k), v);
        }
    }
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| c.failed()).count()
    }
    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
    pub fn counts(&self) -> (usize, usize, usize) {
        let p = self.cases.iter().filter(|c| c.passed()).count();
        let f = self.failures();
        (p, f, self.cases.len() - p - f)
    }

    pub fn to_json(&self, with_timing: bool) -> Value {
        let (p, f, s) = self.counts();
        let mut m = Map::new();
        m.insert("schema".into(), SCHEMA.into());
        m.insert("suite".into(), self.suite.clone().into());
        m.insert("status".into(), if self.passed() { "pass" } else { "fail" }.into());
        m.insert("params".into(), Value::Object(self.params.clone()));
        m.insert("conventions".into(), Value::Object(self.conventions.clone()));
        m.insert("summary".into(), serde_json::json!({"pass": p, "fail": f, "skipped": s}));
        m.insert("cases".into(), serde_json::to_value(&self.cases).expect("cases serialize"));
        if with_timing {
            if let Some(t) = self.timing {
                m.insert("timing_ms".into(), (t.as_millis() as u64).into());
            }
        }
        Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut r = Report::new("demo").param("ell", 4);
        r.push(Case::new("a", true));
        r.push(Case::skipped("b", "r <= d"));
        let j = r.to_json(false);
        assert_eq!(j["schema"], SCHEMA);
        assert_eq!(j["status"], "pass");
        assert_eq!(j["cases"][1]["status"], "skipped");
        assert_eq!(j["cases"][1]["reason"], "r <= d");
        r.push(Case::new("c", false));
        assert_eq!(r.to_json(false)["status"], "fail");
    }
}
