//! Report records and their serialized forms.
//!
//! The JSON layout is described by `schema/report.schema.json`; bump
//! [`SCHEMA_VERSION`] on any incompatible change.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, Format};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.575_829_303_548_901;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The statement is empty at this size.
    Vacuous,
    /// The quantity is not defined (e.g. conditioning on an empty event).
    Undefined,
}

/// A Monte-Carlo proportion `successes / sample_size`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub name: String,
    pub value: f64,
    pub successes: u64,
    pub sample_size: u64,
    /// Normal-approximation 99% radius, `z·√(p(1-p)/N)`.
    pub radius99: f64,
}

impl Estimate {
    /// `None` when `sample_size` is zero.
    pub fn proportion(
        name: impl Into<String>,
        successes: u64,
        sample_size: u64,
    ) -> Option<Estimate> {
        if sample_size == 0 {
            return None;
        }
        let p = successes as f64 / sample_size as f64;
        Some(Estimate {
            name: name.into(),
            value: p,
            successes,
            sample_size,
            radius99: Z99 * (p * (1.0 - p) / sample_size as f64).sqrt(),
        })
    }

    pub fn contains(&self, x: f64) -> bool {
        (self.value - x).abs() <= self.radius99
    }
}

/// A number computed without sampling error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub name: String,
    /// Reduced fraction `p/q` or an integer.
    pub exact: String,
    pub approx: f64,
}

/// A descriptive statistic over a batch (median, maximum, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub name: String,
    pub value: f64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Hard checks are exact statements; a failing one makes the run fail.
    pub hard: bool,
    pub detail: String,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        status: Status,
        hard: bool,
        detail: impl Into<String>,
    ) -> Check {
        Check {
            name: name.into(),
            status,
            hard,
            detail: detail.into(),
        }
    }

    pub fn from_bool(
        name: impl Into<String>,
        ok: bool,
        hard: bool,
        detail: impl Into<String>,
    ) -> Check {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check::new(name, status, hard, detail)
    }
}

/// Results for one value of n.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Section {
    pub n: usize,
    pub estimates: Vec<Estimate>,
    pub exact: Vec<ExactValue>,
    pub summaries: Vec<Summary>,
    pub checks: Vec<Check>,
    /// Kind-specific records (per-die results, pattern tables, dice lists).
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

impl Section {
    pub fn new(n: usize) -> Section {
        Section {
            n,
            ..Section::default()
        }
    }

    pub fn estimate(&self, name: &str) -> Option<&Estimate> {
        self.estimates.iter().find(|e| e.name == name)
    }

    pub fn exact_value(&self, name: &str) -> Option<&ExactValue> {
        self.exact.iter().find(|e| e.name == name)
    }

    pub fn summary(&self, name: &str) -> Option<&Summary> {
        self.summaries.iter().find(|e| e.name == name)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|e| e.name == name)
    }

    pub(crate) fn push_estimate(&mut self, e: Option<Estimate>) {
        self.estimates.extend(e);
    }

    pub(crate) fn push_summary(&mut self, name: &str, value: f64, count: u64) {
        self.summaries.push(Summary {
            name: name.to_string(),
            value,
            count,
        });
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: ExperimentConfig,
    pub sections: Vec<Section>,
    /// Checks spanning several sizes, such as monotone trends.
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_seconds: Option<f64>,
}

impl ExperimentReport {
    pub fn new(config: &ExperimentConfig) -> Self {
        ExperimentReport {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            config: config.echo(),
            sections: Vec::new(),
            checks: Vec::new(),
            wall_time_seconds: None,
        }
    }

    pub fn section(&self, n: usize) -> Option<&Section> {
        self.sections.iter().find(|s| s.n == n)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks
            .iter()
            .chain(self.sections.iter().flat_map(|s| &s.checks))
    }

    pub fn hard_failures(&self) -> Vec<&Check> {
        self.all_checks()
            .filter(|c| c.hard && c.status == Status::Fail)
            .collect()
    }
}

pub fn emit_report<W: Write>(report: &ExperimentReport, format: Format, out: W) -> io::Result<()> {
    match format {
        Format::Json => emit_json(report, out),
        Format::Csv => emit_csv(report, out),
        Format::Plotdata => emit_plotdata(report, out),
    }
}

fn emit_json<W: Write>(report: &ExperimentReport, mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    out.write_all(b"\n")
}

#[derive(Serialize)]
struct CsvRow<'a> {
    kind: &'a str,
    n: Option<usize>,
    record: &'a str,
    name: &'a str,
    value: String,
    exact: &'a str,
    sample_size: Option<u64>,
    radius99: Option<String>,
    status: &'a str,
    detail: &'a str,
}

/// One row per estimate, exact value, summary and check.
fn emit_csv<W: Write>(report: &ExperimentReport, out: W) -> io::Result<()> {
    let kind = report.config.kind.as_str();
    let mut w = csv::Writer::from_writer(out);
    let blank = CsvRow {
        kind,
        n: None,
        record: "",
        name: "",
        value: String::new(),
        exact: "",
        sample_size: None,
        radius99: None,
        status: "",
        detail: "",
    };
    for s in &report.sections {
        let n = Some(s.n);
        for e in &s.estimates {
            w.serialize(CsvRow {
                n,
                record: "estimate",
                name: &e.name,
                value: fmt_f64(e.value),
                sample_size: Some(e.sample_size),
                radius99: Some(fmt_f64(e.radius99)),
                ..blank_row(&blank)
            })?;
        }
        for e in &s.exact {
            w.serialize(CsvRow {
                n,
                record: "exact",
                name: &e.name,
                value: fmt_f64(e.approx),
                exact: &e.exact,
                ..blank_row(&blank)
            })?;
        }
        for e in &s.summaries {
            w.serialize(CsvRow {
                n,
                record: "summary",
                name: &e.name,
                value: fmt_f64(e.value),
                sample_size: Some(e.count),
                ..blank_row(&blank)
            })?;
        }
        for c in &s.checks {
            w.serialize(check_row(&blank, n, c))?;
        }
    }
    for c in &report.checks {
        w.serialize(check_row(&blank, None, c))?;
    }
    w.flush()
}

/// Shortest round-trip form, switching to exponent notation for very large
/// or small magnitudes.
fn fmt_f64(x: f64) -> String {
    serde_json::to_string(&x).expect("f64 always serializes")
}

fn blank_row<'a>(b: &CsvRow<'a>) -> CsvRow<'a> {
    CsvRow {
        value: b.value.clone(),
        radius99: b.radius99.clone(),
        ..*b
    }
}

fn check_row<'a>(blank: &CsvRow<'a>, n: Option<usize>, c: &'a Check) -> CsvRow<'a> {
    CsvRow {
        n,
        record: "check",
        name: &c.name,
        status: status_str(c.status),
        detail: &c.detail,
        ..blank_row(blank)
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Vacuous => "vacuous",
        Status::Undefined => "undefined",
    }
}

/// Gnuplot-style blocks: a `# name` header, then `n value` rows, blocks
/// separated by two blank lines. Radii get their own `name.radius99` block.
fn emit_plotdata<W: Write>(report: &ExperimentReport, mut out: W) -> io::Result<()> {
    let mut series: Vec<(String, Vec<(usize, f64)>)> = Vec::new();
    let mut push =
        |name: String, n: usize, v: f64| match series.iter_mut().find(|(k, _)| *k == name) {
            Some((_, rows)) => rows.push((n, v)),
            None => series.push((name, vec![(n, v)])),
        };
    for s in &report.sections {
        for e in &s.estimates {
            push(e.name.clone(), s.n, e.value);
            push(format!("{}.radius99", e.name), s.n, e.radius99);
        }
        for e in &s.exact {
            push(e.name.clone(), s.n, e.approx);
        }
        for e in &s.summaries {
            push(e.name.clone(), s.n, e.value);
        }
    }
    writeln!(
        out,
        "# {} schema {} tool {}",
        report.config.kind.as_str(),
        SCHEMA_VERSION,
        TOOL_VERSION
    )?;
    for (i, (name, rows)) in series.iter().enumerate() {
        if i > 0 {
            writeln!(out, "\n")?;
        }
        writeln!(out, "# {name}")?;
        for (n, v) in rows {
            writeln!(out, "{n} {}", fmt_f64(*v))?;
        }
    }
    Ok(())
}

/// `p/q` for a reduced rational given as numerator and denominator strings.
pub(crate) fn exact_value(name: &str, q: &num_rational::BigRational) -> ExactValue {
    use num_traits::ToPrimitive;
    ExactValue {
        name: name.to_string(),
        exact: q.to_string(),
        approx: q.to_f64().unwrap_or(f64::NAN),
    }
}

pub(crate) fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proportion_radius() {
        let e = Estimate::proportion("x", 25, 100).unwrap();
        assert!((e.radius99 - Z99 * (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-15);
        assert!(Estimate::proportion("x", 0, 0).is_none());
        assert_eq!(Estimate::proportion("x", 7, 7).unwrap().radius99, 0.0);
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&mut []), None);
    }
}
