use serde::Serialize;

use crate::error::{Error, Result};

/// A counterexample: an input where the two sides disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(input: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Witness {
            input: input.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }

    /// A witness describing a failed construction rather than an input.
    pub fn from_error(e: &Error) -> Self {
        Witness::new("<construction>", e.to_string(), "")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    ResourceExceeded,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramResult {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    /// Wall time; zero unless timings were requested, so reports stay reproducible.
    pub millis: u64,
}

impl DiagramResult {
    pub fn from_outcome(name: &str, anchor: &str, outcome: Result<Option<Witness>>) -> Self {
        let (status, witnesses) = match outcome {
            Ok(None) => (Status::Pass, vec![]),
            Ok(Some(w)) => (Status::Fail, vec![w]),
            Err(e) if e.is_resource() => (Status::ResourceExceeded, vec![Witness::from_error(&e)]),
            Err(e) => (Status::Fail, vec![Witness::from_error(&e)]),
        };
        DiagramResult {
            name: name.to_string(),
            anchor: anchor.to_string(),
            status,
            witnesses,
            millis: 0,
        }
    }

    pub fn skipped(name: &str, anchor: &str) -> Self {
        DiagramResult {
            name: name.to_string(),
            anchor: anchor.to_string(),
            status: Status::Skipped,
            witnesses: vec![],
            millis: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub anchor: String,
    pub diagrams: Vec<DiagramResult>,
}

impl SuiteResult {
    pub fn new(name: &str, anchor: &str, diagrams: Vec<DiagramResult>) -> Self {
        SuiteResult {
            name: name.to_string(),
            anchor: anchor.to_string(),
            diagrams,
        }
    }

    /// Every diagram passed (skips count as neither pass nor fail).
    pub fn passed(&self) -> bool {
        self.diagrams
            .iter()
            .all(|d| matches!(d.status, Status::Pass | Status::Skipped))
    }

    pub fn count(&self, s: Status) -> usize {
        self.diagrams.iter().filter(|d| d.status == s).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &DiagramResult> {
        self.diagrams
            .iter()
            .filter(|d| d.status != Status::Pass && d.status != Status::Skipped)
    }

    pub fn find(&self, name: &str) -> Option<&DiagramResult> {
        self.diagrams.iter().find(|d| d.name == name)
    }

    /// Appends the diagrams of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: SuiteResult) {
        for mut d in other.diagrams {
            d.name = format!("{prefix}/{}", d.name);
            self.diagrams.push(d);
        }
    }

    /// Sorts diagrams by name (stable).
    pub fn sort(&mut self) {
        self.diagrams.sort_by(|a, b| a.name.cmp(&b.name));
    }

    /// One line per failing diagram, for test assertions and logs.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} pass, {} fail, {} resource-exceeded, {} skipped",
            self.name,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::ResourceExceeded),
            self.count(Status::Skipped)
        );
        for d in self.failures() {
            let w = d
                .witnesses
                .first()
                .map(|w| format!("{} ↦ {} vs {}", w.input, w.lhs, w.rhs))
                .unwrap_or_default();
            s.push_str(&format!("\n  {:?} {}: {}", d.status, d.name, w));
        }
        s
    }
}
