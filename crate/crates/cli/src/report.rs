//! Command reports and their table and JSON renderings.

use std::fmt::Write as _;

use minimal_fusion::exact_arith::{radical_string, CyclotomicNumber, Rational};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "info",
        }
    }
}

/// One line of a report. `exact` is the `Display` form of a cyclotomic
/// number and parses back with `FromStr`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Check {
            name: name.into(),
            status,
            exact: None,
            approx: None,
            radical: None,
            detail: None,
        }
    }

    pub fn info(name: impl Into<String>) -> Self {
        Check::new(name, Status::Info)
    }

    pub fn verdict(name: impl Into<String>, ok: bool) -> Self {
        Check::new(name, if ok { Status::Pass } else { Status::Fail })
    }

    /// Attach an exact value with its embedding at `precision` bits.
    pub fn value(mut self, x: &CyclotomicNumber, precision: u32) -> Self {
        self.exact = Some(x.to_string());
        self.approx = Some(format!("{:.12}", x.embed(precision)));
        self.radical = radical_string(x);
        self
    }

    pub fn rational(self, r: &Rational, precision: u32) -> Self {
        self.value(&CyclotomicNumber::from_rational(1, r), precision)
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    /// Short human form: radical if recognised, else the exact string.
    fn shown(&self) -> &str {
        self.radical
            .as_deref()
            .or(self.exact.as_deref())
            .unwrap_or("")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>, checks: Vec<Check>) -> Self {
        Report {
            command: command.into(),
            checks,
            elapsed_ms: 0,
        }
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_table(&self) -> String {
        let width = |f: fn(&Check) -> &str| {
            self.checks
                .iter()
                .map(|c| f(c).chars().count())
                .max()
                .unwrap_or(0)
        };
        let wn = width(|c| &c.name);
        let wv = width(Check::shown);
        let wa = width(|c| c.approx.as_deref().unwrap_or(""));
        let mut out = format!("mm {}\n", self.command);
        for c in &self.checks {
            let row = format!(
                "{:<4}  {:<wn$}  {:<wv$}  {:<wa$}  {}",
                c.status.as_str(),
                c.name,
                c.shown(),
                c.approx.as_deref().unwrap_or(""),
                c.detail.as_deref().unwrap_or(""),
            );
            out.push_str(row.trim_end());
            out.push('\n');
        }
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        let _ = writeln!(
            out,
            "{} pass, {} fail, {} info in {} ms",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Info),
            self.elapsed_ms
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use minimal_fusion::exact_arith::zeta;

    #[test]
    fn json_round_trips() {
        let x = zeta(8, 1) + zeta(8, 7);
        let r = Report::new(
            "qdim",
            vec![
                Check::verdict("a", true).value(&x, 53),
                Check::info("b").detail("free text"),
            ],
        );
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.checks[0].radical.as_deref(), Some("√2"));
        let parsed: CyclotomicNumber = back.checks[0].exact.as_deref().unwrap().parse().unwrap();
        assert_eq!(parsed, x);
    }

    #[test]
    fn table_marks_failures() {
        let r = Report::new("t", vec![Check::verdict("bad", false)]);
        assert!(r.failed());
        assert!(r.to_table().contains("FAIL  bad"));
    }
}
