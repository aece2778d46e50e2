use std::fmt::{self, Display, Write};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// One check: what was expected, what was computed, and the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub name: String,
    /// The statement being checked.
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    records: Vec<Record>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    checks: &'a [Record],
    summary: Summary,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records sorted by name.
    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn get(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn push(&mut self, record: Record) {
        let at = self.records.partition_point(|r| r.name <= record.name);
        self.records.insert(at, record);
    }

    /// Passes when the displayed values agree.
    pub fn check(
        &mut self,
        name: &str,
        anchor: &str,
        expected: impl Display,
        computed: impl Display,
    ) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let status = if expected == computed {
            Status::Pass
        } else {
            Status::Fail
        };
        self.push(Record {
            name: name.into(),
            anchor: anchor.into(),
            expected,
            computed,
            status,
        });
    }

    /// Passes when `ok`; `computed` describes what was observed.
    pub fn check_that(
        &mut self,
        name: &str,
        anchor: &str,
        expected: impl Display,
        ok: bool,
        computed: impl Display,
    ) {
        self.push(Record {
            name: name.into(),
            anchor: anchor.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
        });
    }

    /// Records the outcome of a fallible computation, failing on error.
    pub fn check_result<T: Display, E: Display>(
        &mut self,
        name: &str,
        anchor: &str,
        expected: impl Display,
        computed: Result<T, E>,
    ) {
        match computed {
            Ok(v) => self.check(name, anchor, expected, v),
            Err(e) => self.check_that(name, anchor, expected, false, format!("error: {e}")),
        }
    }

    pub fn skip(&mut self, name: &str, anchor: &str, expected: impl Display, reason: impl Display) {
        self.push(Record {
            name: name.into(),
            anchor: anchor.into(),
            expected: expected.to_string(),
            computed: reason.to_string(),
            status: Status::Skipped,
        });
    }

    pub fn merge(&mut self, other: Report) {
        for r in other.records {
            self.push(r);
        }
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }

    pub fn passed(&self) -> bool {
        self.summary().fail == 0
    }

    pub fn to_json(&self) -> String {
        let body = JsonReport {
            checks: &self.records,
            summary: self.summary(),
        };
        serde_json::to_string_pretty(&body).expect("report serializes") + "\n"
    }

    /// One table per command, in the order the records sort.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let mut section = None;
        for r in &self.records {
            let head = r.name.split('.').next().unwrap_or("");
            if section != Some(head) {
                section = Some(head);
                let _ = write!(
                    out,
                    "{}## {head}\n\n| check | statement | expected | computed | status |\n|---|---|---|---|---|\n",
                    if out.is_empty() { "" } else { "\n" }
                );
            }
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                cell(&r.name),
                cell(&r.anchor),
                cell(&r.expected),
                cell(&r.computed),
                r.status
            );
        }
        let s = self.summary();
        let _ = writeln!(
            out,
            "\n{} passed, {} failed, {} skipped",
            s.pass, s.fail, s.skipped
        );
        out
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_stay_sorted_and_render() {
        let mut r = Report::new();
        r.check("b.two", "x", 2, 2);
        r.check("a.one", "x", 1, 3);
        r.skip("b.three", "x", 3, "not run");
        let names: Vec<&str> = r.records().iter().map(|x| x.name.as_str()).collect();
        assert_eq!(names, ["a.one", "b.three", "b.two"]);
        assert_eq!(
            r.summary(),
            Summary {
                pass: 1,
                fail: 1,
                skipped: 1
            }
        );
        assert!(!r.passed());
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["summary"]["fail"], 1);
        assert_eq!(json["checks"][0]["status"], "fail");
        let md = r.to_markdown();
        assert!(md.contains("## a") && md.contains("## b"));
    }
}
