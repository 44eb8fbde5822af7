use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;

use crate::modes::PhysicalParams;

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// Measured and recorded, not judged.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parameter {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub check_name: String,
    pub parameter_tuple: Vec<Parameter>,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub status: Status,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Entry {
    /// Passes when `measured <= tolerance`.
    pub fn at_most(check: &str, params: &[(&str, f64)], measured: f64, tolerance: f64) -> Self {
        Self::judged(
            check,
            params,
            measured,
            0.0,
            tolerance,
            measured <= tolerance,
        )
    }

    /// Passes when `measured >= expected - tolerance`.
    pub fn at_least(
        check: &str,
        params: &[(&str, f64)],
        measured: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        Self::judged(
            check,
            params,
            measured,
            expected,
            tolerance,
            measured >= expected - tolerance,
        )
    }

    pub fn judged(
        check: &str,
        params: &[(&str, f64)],
        measured: f64,
        expected: f64,
        tolerance: f64,
        ok: bool,
    ) -> Self {
        // NaN comparisons are false, so non-finite measurements fail.
        let ok = ok && measured.is_finite();
        Self {
            check_name: check.to_string(),
            parameter_tuple: tuple(params),
            measured,
            expected,
            tolerance,
            status: if ok { Status::Pass } else { Status::Fail },
            pass: ok,
            note: None,
        }
    }

    pub fn info(check: &str, params: &[(&str, f64)], measured: f64, expected: f64) -> Self {
        Self {
            check_name: check.to_string(),
            parameter_tuple: tuple(params),
            measured,
            expected,
            tolerance: f64::NAN,
            status: Status::Info,
            pass: true,
            note: None,
        }
    }

    pub fn skipped(check: &str, params: &[(&str, f64)], reason: impl Into<String>) -> Self {
        Self {
            check_name: check.to_string(),
            parameter_tuple: tuple(params),
            measured: f64::NAN,
            expected: f64::NAN,
            tolerance: f64::NAN,
            status: Status::Skipped,
            pass: true,
            note: Some(reason.into()),
        }
    }

    pub fn failed(check: &str, params: &[(&str, f64)], reason: impl Into<String>) -> Self {
        Self {
            check_name: check.to_string(),
            parameter_tuple: tuple(params),
            measured: f64::NAN,
            expected: f64::NAN,
            tolerance: f64::NAN,
            status: Status::Fail,
            pass: false,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn sort_key_cmp(&self, other: &Self) -> Ordering {
        self.check_name.cmp(&other.check_name).then_with(|| {
            for (a, b) in self.parameter_tuple.iter().zip(&other.parameter_tuple) {
                let o = a.name.cmp(&b.name).then(a.value.total_cmp(&b.value));
                if o != Ordering::Equal {
                    return o;
                }
            }
            self.parameter_tuple.len().cmp(&other.parameter_tuple.len())
        })
    }
}

fn tuple(params: &[(&str, f64)]) -> Vec<Parameter> {
    params
        .iter()
        .map(|(name, value)| Parameter {
            name: name.to_string(),
            value: *value,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub info: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportParams {
    pub m0: f64,
    pub gamma: f64,
    pub omega0: f64,
    pub hbar: f64,
    pub omega: f64,
}

impl From<&PhysicalParams> for ReportParams {
    fn from(p: &PhysicalParams) -> Self {
        Self {
            m0: p.m0(),
            gamma: p.gamma(),
            omega0: p.omega0(),
            hbar: p.hbar(),
            omega: p.omega(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub version: String,
    pub params: ReportParams,
    pub entries: Vec<Entry>,
    pub summary: Summary,
}

impl ValidationReport {
    /// Sorts by `(check_name, parameter_tuple)`, drops exact duplicates and
    /// recounts the summary.
    pub fn new(params: &PhysicalParams, mut entries: Vec<Entry>) -> Self {
        entries.sort_by(Entry::sort_key_cmp);
        entries.dedup_by(|a, b| {
            a.sort_key_cmp(b) == Ordering::Equal && a.measured.to_bits() == b.measured.to_bits()
        });
        let mut summary = Summary {
            total: entries.len(),
            ..Summary::default()
        };
        for e in &entries {
            match e.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
                Status::Info => summary.info += 1,
            }
        }
        Self {
            version: REPORT_VERSION.to_string(),
            params: params.into(),
            entries,
            summary,
        }
    }

    /// True when no entry failed.
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn entries_named<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a Entry> + 'a {
        self.entries.iter().filter(move |e| e.check_name == check)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<30} {:<44} {:>12} {:>12} {:>10}  status",
            "check", "parameters", "measured", "expected", "tolerance"
        );
        for e in &self.entries {
            let params = e
                .parameter_tuple
                .iter()
                .map(|p| format!("{}={}", p.name, trim(p.value)))
                .collect::<Vec<_>>()
                .join(" ");
            let status = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
                Status::Info => "INFO",
            };
            let _ = write!(
                out,
                "{:<30} {:<44} {:>12.4e} {:>12.4e} {:>10.1e}  {}",
                e.check_name, params, e.measured, e.expected, e.tolerance, status
            );
            if let Some(note) = &e.note {
                let _ = write!(out, "  ({note})");
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "total {}  passed {}  failed {}  skipped {}  info {}",
            s.total, s.passed, s.failed, s.skipped, s.info
        );
        out
    }
}

fn trim(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}
