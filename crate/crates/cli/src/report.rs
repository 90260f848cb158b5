use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

/// One record of a report. Witnesses are structure or poset stanzas in the
/// text format, so they can be fed back to the parsers.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: &str, status: Status) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            status,
            witnesses: Vec::new(),
            data: Value::Null,
        }
    }

    pub fn info(name: impl Into<String>, anchor: &str, data: Value) -> Self {
        Self::new(name, anchor, Status::Info).with_data(data)
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }

    pub fn with_witnesses(mut self, witnesses: Vec<String>) -> Self {
        self.witnesses = witnesses;
        self
    }
}

/// Wall-clock information, kept apart so the rest of a report is reproducible.
#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub started_unix_ms: u128,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: Value,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub timing: Timing,
}

pub struct Clock {
    started: SystemTime,
    instant: Instant,
}

impl Clock {
    pub fn start() -> Self {
        Self {
            started: SystemTime::now(),
            instant: Instant::now(),
        }
    }

    pub fn finish(&self, command: &str, config: Value, checks: Vec<Check>) -> Report {
        let passed = checks.iter().all(|c| c.status != Status::Fail);
        Report {
            schema_version: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            checks,
            passed,
            timing: Timing {
                started_unix_ms: self
                    .started
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_millis())
                    .unwrap_or(0),
                runtime_ms: self.instant.elapsed().as_secs_f64() * 1e3,
            },
        }
    }
}

impl Report {
    /// One line per check, then witnesses indented.
    pub fn human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{} {}", c.status.tag(), c.name));
            if c.status == Status::Info || !c.data.is_null() {
                if let Some(summary) = summary(&c.data) {
                    out.push_str(&format!(": {summary}"));
                }
            }
            out.push('\n');
            for w in &c.witnesses {
                for line in w.lines() {
                    out.push_str(&format!("    {line}\n"));
                }
            }
        }
        out
    }
}

fn summary(v: &Value) -> Option<String> {
    match v {
        Value::Null => None,
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if m.len() <= 6 && m.values().all(|x| !x.is_object() && !x.is_array() || is_short(x)) => {
            Some(
                m.iter()
                    .map(|(k, x)| format!("{k}={x}"))
                    .collect::<Vec<_>>()
                    .join(" "),
            )
        }
        other if is_short(other) => Some(other.to_string()),
        _ => None,
    }
}

fn is_short(v: &Value) -> bool {
    v.to_string().len() <= 80
}
