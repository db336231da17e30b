use std::fmt;

use serde::Serialize;

/// Bumped whenever the JSON shape changes.
pub const SCHEMA: &str = "involution-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Error { kind: String, message: String },
    Skipped { reason: String },
}

impl Verdict {
    pub fn error(e: &involution::Error) -> Self {
        Verdict::Error { kind: e.kind().to_string(), message: e.to_string() }
    }

    fn is_failure(&self) -> bool {
        matches!(self, Verdict::Fails | Verdict::Error { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub claim: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cases: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub pass: bool,
    pub entries: Vec<Entry>,
}

impl Report {
    /// Passes iff no entry fails or errors. Skipped entries do not count
    /// against the report.
    pub fn new(entries: Vec<Entry>) -> Self {
        let pass = entries.iter().all(|e| !e.verdict.is_failure());
        Report { schema: SCHEMA, pass, entries }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.verdict.is_failure())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let tag = match &e.verdict {
                Verdict::Holds => "HOLDS",
                Verdict::Fails => "FAILS",
                Verdict::Error { .. } => "ERROR",
                Verdict::Skipped { .. } => "SKIP ",
            };
            write!(f, "{tag}  {}", e.claim)?;
            if let Some(n) = e.cases {
                write!(f, "  [{n} cases]")?;
            }
            if let Some(v) = &e.value {
                write!(f, "  -> {v}")?;
            }
            match &e.verdict {
                Verdict::Error { kind, message } => write!(f, "  ({kind}: {message})")?,
                Verdict::Skipped { reason } => write!(f, "  ({reason})")?,
                _ => {}
            }
            writeln!(f)?;
        }
        let bad = self.failures().count();
        if self.pass {
            writeln!(f, "PASS ({} entries)", self.entries.len())
        } else {
            writeln!(f, "FAIL ({bad} of {} entries did not hold)", self.entries.len())
        }
    }
}
