use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub n: Vec<usize>,
    /// Length bound used for each entry of `n`.
    pub max_length: Vec<usize>,
    pub max_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail { witness: Value, detail: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Number of individual cases examined.
    pub cases: usize,
    #[serde(flatten)]
    pub status: Status,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub parameters: Parameters,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub passed: bool,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{} {} (n = {:?}, {} ms)",
            verdict, self.suite, self.parameters.n, self.wall_time_ms
        );
        for c in &self.checks {
            match &c.status {
                Status::Pass => {
                    let _ = writeln!(out, "  pass {} ({} cases)", c.name, c.cases);
                }
                Status::Fail { witness, detail } => {
                    let _ = writeln!(out, "  FAIL {} after {} cases: {detail}", c.name, c.cases);
                    let _ = writeln!(out, "       witness {witness}");
                }
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "  note: {note}");
        }
        out
    }
}

/// Collects checks for one suite run. The only mutable state a suite has.
pub struct ReportBuilder {
    suite: String,
    parameters: Parameters,
    checks: Vec<Check>,
    notes: Vec<String>,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(suite: &str, parameters: Parameters) -> Self {
        ReportBuilder {
            suite: suite.to_string(),
            parameters,
            checks: Vec::new(),
            notes: Vec::new(),
            start: Instant::now(),
        }
    }

    /// Records a check from per-case outcomes given in enumeration order; the
    /// first failure is the reported witness.
    pub fn record(&mut self, name: impl Into<String>, outcomes: Vec<Outcome>) {
        let cases = outcomes.iter().map(|o| o.cases).sum();
        let status = outcomes
            .into_iter()
            .find_map(|o| o.failure)
            .map(|(witness, detail)| Status::Fail { witness, detail })
            .unwrap_or(Status::Pass);
        self.checks.push(Check {
            name: name.into(),
            cases,
            status,
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn finish(self) -> VerificationReport {
        let passed = self.checks.iter().all(Check::passed);
        VerificationReport {
            suite: self.suite,
            parameters: self.parameters,
            checks: self.checks,
            notes: self.notes,
            passed,
            wall_time_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

/// Result of checking one unit of work (usually one basis element).
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub cases: usize,
    pub failure: Option<(Value, String)>,
}

impl Outcome {
    pub fn pass(cases: usize) -> Self {
        Outcome { cases, failure: None }
    }

    pub fn fail(cases: usize, witness: Value, detail: impl Into<String>) -> Self {
        Outcome {
            cases,
            failure: Some((witness, detail.into())),
        }
    }

    /// Runs `cases` in order, stopping at the first one that returns an error.
    pub fn collect<I, F>(cases: I, mut check: F) -> Self
    where
        I: IntoIterator,
        F: FnMut(I::Item) -> Option<(Value, String)>,
    {
        let mut count = 0;
        for case in cases {
            count += 1;
            if let Some(f) = check(case) {
                return Outcome {
                    cases: count,
                    failure: Some(f),
                };
            }
        }
        Outcome::pass(count)
    }
}
