//! A registry of named, machine-checkable statements with text and JSON
//! reports.

pub mod fixtures;
pub mod io;
mod registry;

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub use registry::registry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{s}")
    }
}

/// Accumulates computed/expected pairs; any mismatch fails the claim.
#[derive(Clone, Debug, Default)]
pub struct Check {
    computed: BTreeMap<String, String>,
    expected: BTreeMap<String, String>,
    ok: bool,
    notes: Vec<String>,
}

impl Check {
    pub fn new() -> Self {
        Check { ok: true, ..Default::default() }
    }

    /// Records `computed == expected` compared by their exact printed forms.
    pub fn eq(&mut self, key: &str, computed: impl Display, expected: impl Display) -> &mut Self {
        let (c, e) = (computed.to_string(), expected.to_string());
        self.ok &= c == e;
        self.computed.insert(key.to_string(), c);
        self.expected.insert(key.to_string(), e);
        self
    }

    pub fn truth(&mut self, key: &str, value: bool) -> &mut Self {
        self.eq(key, value, true)
    }

    pub fn note(&mut self, s: impl Into<String>) -> &mut Self {
        self.notes.push(s.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.ok
    }
}

pub type CheckFn = fn() -> Result<Check>;

pub struct Claim {
    pub id: &'static str,
    pub tags: &'static [&'static str],
    /// What is being verified, as a plain mathematical statement.
    pub statement: &'static str,
    pub check: CheckFn,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub status: Status,
    pub tags: Vec<String>,
    pub statement: String,
    pub computed: BTreeMap<String, String>,
    pub expected: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub fn find(id: &str) -> Result<&'static Claim> {
    registry().iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

fn execute(c: &Claim) -> ClaimResult {
    let start = Instant::now();
    let outcome = (c.check)();
    let elapsed = start.elapsed();
    let (status, check) = match outcome {
        Ok(ch) => (if ch.ok { Status::Pass } else { Status::Fail }, ch),
        Err(e) => {
            let mut ch = Check::new();
            ch.eq("error", e, "none");
            (Status::Fail, ch)
        }
    };
    ClaimResult {
        id: c.id.to_string(),
        status,
        tags: c.tags.iter().map(|s| s.to_string()).collect(),
        statement: c.statement.to_string(),
        computed: check.computed,
        expected: check.expected,
        notes: check.notes,
        elapsed,
    }
}

pub fn run_claim(id: &str) -> Result<ClaimResult> {
    Ok(execute(find(id)?))
}

/// Runs every claim carrying `tag` (all when `None`) in parallel; results
/// are sorted by id.
pub fn run_all(tag: Option<&str>) -> Vec<ClaimResult> {
    let selected: Vec<&Claim> = registry().iter().filter(|c| tag.is_none_or(|t| c.tags.contains(&t))).collect();
    let mut out: Vec<ClaimResult> = selected.par_iter().map(|c| execute(c)).collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub fn all_passed(results: &[ClaimResult]) -> bool {
    results.iter().all(|r| r.status != Status::Fail)
}

fn pairs(m: &BTreeMap<String, String>) -> String {
    m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
}

pub fn text_report(results: &[ClaimResult]) -> String {
    let mut s = String::new();
    for r in results {
        s.push_str(&format!("{}  {}\n", r.status, r.id));
        s.push_str(&format!("      {}\n", r.statement));
        s.push_str(&format!("      computed: {}\n", pairs(&r.computed)));
        if r.status != Status::Pass {
            s.push_str(&format!("      expected: {}\n", pairs(&r.expected)));
        }
        for n in &r.notes {
            s.push_str(&format!("      note: {n}\n"));
        }
    }
    let count = |st| results.iter().filter(|r| r.status == st).count();
    s.push_str(&format!(
        "{} claims: {} passed, {} failed, {} skipped\n",
        results.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skip)
    ));
    s
}

#[derive(Serialize)]
struct JsonReport<'a> {
    claims: &'a [ClaimResult],
    summary: BTreeMap<&'static str, usize>,
}

/// Machine-readable report; timings are left out so reruns are identical.
pub fn json_report(results: &[ClaimResult]) -> String {
    let mut summary = BTreeMap::new();
    for (k, st) in [("pass", Status::Pass), ("fail", Status::Fail), ("skip", Status::Skip)] {
        summary.insert(k, results.iter().filter(|r| r.status == st).count());
    }
    serde_json::to_string_pretty(&JsonReport { claims: results, summary }).expect("report serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_unique_and_tagged() {
        let mut seen = HashSet::new();
        for c in registry() {
            assert!(seen.insert(c.id), "duplicate id {}", c.id);
            assert!(!c.tags.is_empty(), "{} has no tags", c.id);
            assert!(!c.statement.is_empty());
        }
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(run_claim("no.such.claim"), Err(Error::UnknownClaim(_))));
    }

    #[test]
    fn check_records_both_sides() {
        let mut c = Check::new();
        c.eq("x", 1, 2);
        assert!(!c.passed());
        assert_eq!(c.computed["x"], "1");
        assert_eq!(c.expected["x"], "2");
    }
}
