//! Check records, suite reports, and emission in JSON and markdown.
//!
//! Reports are plain data with deterministic field order: two runs with the
//! same configuration and binary produce byte-identical JSON. Wall-clock
//! timings are therefore kept out of the JSON and shown only in markdown.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// One verified relation: the statement is the mathematical identity
/// itself, so every record is traceable to the claim it checks.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub statement: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        statement: impl Into<String>,
        expected: impl Into<String>,
        got: impl Into<String>,
        pass: bool,
    ) -> Self {
        Check {
            id: id.into(),
            statement: statement.into(),
            expected: expected.into(),
            got: got.into(),
            pass,
        }
    }

    /// A check that passes iff `pass`, with expected/got rendered from the
    /// same displayable values.
    pub fn eq_check<T: std::fmt::Display>(
        id: impl Into<String>,
        statement: impl Into<String>,
        expected: &T,
        got: &T,
        pass: bool,
    ) -> Self {
        Check::new(id, statement, expected.to_string(), got.to_string(), pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Suite {
    pub name: String,
    /// Resolved convention tuple, when the suite depends on one.
    pub conventions: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub pass: bool,
    /// Seconds; excluded from JSON to keep output byte-identical.
    #[serde(skip)]
    pub elapsed: f64,
}

impl Suite {
    pub fn new(name: impl Into<String>, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Suite {
            name: name.into(),
            conventions: BTreeMap::new(),
            checks,
            pass,
            elapsed: 0.0,
        }
    }

    pub fn with_conventions(mut self, conv: BTreeMap<String, String>) -> Self {
        self.conventions = conv;
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub config: BTreeMap<String, String>,
    pub suites: Vec<Suite>,
    pub pass: bool,
}

impl Report {
    pub fn new(config: BTreeMap<String, String>, suites: Vec<Suite>) -> Self {
        let pass = suites.iter().all(|s| s.pass);
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            suites,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Verification report (v{})\n", self.version);
        let _ = writeln!(
            out,
            "Overall: **{}**\n",
            if self.pass { "PASS" } else { "FAIL" }
        );
        if !self.config.is_empty() {
            let _ = writeln!(out, "## Configuration\n");
            for (k, v) in &self.config {
                let _ = writeln!(out, "- `{k}` = `{v}`");
            }
            let _ = writeln!(out);
        }
        for s in &self.suites {
            let _ = writeln!(
                out,
                "## Suite `{}` - {} ({} checks, {:.2}s)\n",
                s.name,
                if s.pass { "PASS" } else { "FAIL" },
                s.checks.len(),
                s.elapsed
            );
            if !s.conventions.is_empty() {
                let _ = writeln!(out, "Resolved conventions:");
                for (k, v) in &s.conventions {
                    let _ = writeln!(out, "- `{k}` = `{v}`");
                }
                let _ = writeln!(out);
            }
            let _ = writeln!(out, "| id | statement | expected | got | pass |");
            let _ = writeln!(out, "|---|---|---|---|---|");
            for c in &s.checks {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    c.id,
                    c.statement,
                    c.expected.replace('|', "\\|"),
                    c.got.replace('|', "\\|"),
                    if c.pass { "ok" } else { "FAIL" }
                );
            }
            let _ = writeln!(out);
        }
        out
    }

    /// Exit status contract: 0 all pass, 1 any failing check.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flags_roll_up() {
        let ok = Check::new("a", "x = x", "0", "0", true);
        let bad = Check::new("b", "x = y", "0", "1", false);
        let s1 = Suite::new("good", vec![ok.clone()]);
        assert!(s1.pass);
        let s2 = Suite::new("mixed", vec![ok, bad]);
        assert!(!s2.pass);
        let r = Report::new(BTreeMap::new(), vec![s1, s2]);
        assert!(!r.pass);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_is_deterministic() {
        let s = Suite::new("s", vec![Check::new("a", "st", "e", "g", true)]);
        let r1 = Report::new(BTreeMap::new(), vec![s.clone()]);
        let r2 = Report::new(BTreeMap::new(), vec![s]);
        assert_eq!(r1.to_json(), r2.to_json());
    }
}
