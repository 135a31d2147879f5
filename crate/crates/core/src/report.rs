//! Pass/fail reports shared by all verification routines.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One identity checked over a family of instances. `witness` names the first
/// failing instance in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub checked: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witness: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// A single yes/no fact.
    pub fn single(id: impl Into<String>, ok: bool, witness: impl FnOnce() -> Vec<String>) -> Check {
        Check {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            checked: 1,
            failures: usize::from(!ok),
            witness: if ok { Vec::new() } else { witness() },
        }
    }

    /// Runs `f` over `items` in parallel; `f` returns a witness on failure.
    pub fn over<I, F>(id: impl Into<String>, items: &[I], f: F) -> Check
    where
        I: Sync,
        F: Fn(&I) -> Option<Vec<String>> + Sync,
    {
        let results: Vec<Option<Vec<String>>> = items.par_iter().map(&f).collect();
        Check::from_results(id, results)
    }

    pub fn from_results(id: impl Into<String>, results: Vec<Option<Vec<String>>>) -> Check {
        let checked = results.len();
        let failures = results.iter().filter(|r| r.is_some()).count();
        let witness = results.into_iter().flatten().next().unwrap_or_default();
        Check {
            id: id.into(),
            status: if failures == 0 {
                Status::Pass
            } else {
                Status::Fail
            },
            checked,
            failures,
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn status(&self) -> Status {
        if self.passed() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Short human-readable rendering, one line per check.
    pub fn render(&self) -> String {
        let mut s = format!(
            "{}: {}\n",
            self.subject,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for c in &self.checks {
            s.push_str(&format!(
                "  [{}] {} ({} checked{})\n",
                if c.passed() { "ok" } else { "FAIL" },
                c.id,
                c.checked,
                if c.failures > 0 {
                    format!(", {} failing", c.failures)
                } else {
                    String::new()
                }
            ));
            if !c.witness.is_empty() {
                s.push_str(&format!("      witness: {}\n", c.witness.join(", ")));
            }
        }
        s
    }
}
