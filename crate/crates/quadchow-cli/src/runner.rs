//! Parallel evaluation of identity suites and their reports.

use std::io::{self, Write};

use quadchow::verify::{cases, run_case, CaseResult, Param, Status, Suite, Workspace};
use quadchow::Result;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Value};

/// The results of one suite at one dimension, in case order.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: u32,
    pub cases: Vec<CaseResult>,
}

/// Evaluates every case of `suite` at dimension `n` on the rayon pool. The
/// workspace is built once and shared read-only by the workers.
pub fn run_parallel(suite: Suite, n: u32) -> Result<SuiteReport> {
    let list = cases(suite, n)?;
    let ws = Workspace::for_suite(suite, n)?;
    let results = list.par_iter().map(|c| run_case(&ws, c)).collect();
    Ok(SuiteReport { suite, n, cases: results })
}

#[derive(Serialize)]
struct CaseJson<'a> {
    id: &'a str,
    params: Map<String, Value>,
    status: &'static str,
    lhs: &'a str,
    rhs: &'a str,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    suite: &'static str,
    n: u32,
    cases: Vec<CaseJson<'a>>,
}

fn param_json(p: &Param) -> Value {
    match p {
        Param::Int(v) => Value::from(*v),
        Param::List(v) => Value::from(v.clone()),
        Param::Text(s) => Value::from(s.as_str()),
    }
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.cases.len()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed())
    }

    pub fn summary(&self) -> String {
        format!("{} n={}: {}/{} passed", self.suite, self.n, self.passed(), self.cases.len())
    }

    pub fn to_json(&self) -> Value {
        let cases = self
            .cases
            .iter()
            .map(|c| CaseJson {
                id: &c.id,
                params: c.params.iter().map(|(k, v)| (k.to_string(), param_json(v))).collect(),
                status: c.status.as_str(),
                lhs: &c.lhs,
                rhs: &c.rhs,
            })
            .collect();
        serde_json::to_value(ReportJson { suite: self.suite.name(), n: self.n, cases }).expect("reports serialize")
    }

    /// One line per case, the sides of every case that did not pass, and a
    /// summary line.
    pub fn write_text(&self, out: &mut dyn Write) -> io::Result<()> {
        for c in &self.cases {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            writeln!(out, "{tag:<5} {} n={} {}", self.suite, self.n, c.id)?;
            if !c.passed() {
                writeln!(out, "      lhs: {}", c.lhs)?;
                if c.status == Status::Fail {
                    writeln!(out, "      rhs: {}", c.rhs)?;
                }
            }
        }
        writeln!(out, "{}", self.summary())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let report = run_parallel(Suite::PullPushRelations, 5).unwrap();
        let serial = quadchow::verify::run_suite(Suite::PullPushRelations, 5).unwrap();
        assert_eq!(report.cases.len(), serial.len());
        for (a, b) in report.cases.iter().zip(&serial) {
            assert_eq!((a.id.as_str(), a.status, a.lhs.as_str()), (b.id.as_str(), b.status, b.lhs.as_str()));
        }
        assert!(report.all_passed());
    }

    #[test]
    fn json_shape() {
        let report = run_parallel(Suite::AlphaAction, 5).unwrap();
        let json = report.to_json();
        assert_eq!(json["suite"], "alpha-action");
        assert_eq!(json["n"], 5);
        let first = &json["cases"][0];
        for key in ["id", "params", "status", "lhs", "rhs"] {
            assert!(first.get(key).is_some(), "missing {key}");
        }
        assert_eq!(first["status"], "pass");
        assert!(first["params"]["i"].is_number());
    }
}
