use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::ks::KsResult;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Kolmogorov-Smirnov p-value against the Bonferroni threshold.
    Ks,
    /// `|observed - expected|` against a multiple of the standard error.
    Binomial,
    /// Deterministic error against an absolute tolerance.
    Tolerance,
    /// Histogram bin against the density's bin average.
    Bin,
}

/// One line of a suite report. Checks with `counted = false` are reported
/// but do not decide the suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub name: String,
    pub kind: CheckKind,
    pub statistic: f64,
    pub p_value: Option<f64>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub threshold: f64,
    pub pass: bool,
    pub counted: bool,
    pub detail: Option<String>,
}

impl Comparison {
    /// `statistic <= threshold` passes.
    pub fn within(name: impl Into<String>, kind: CheckKind, statistic: f64, threshold: f64) -> Self {
        Comparison {
            name: name.into(),
            kind,
            statistic,
            p_value: None,
            n: None,
            m: None,
            threshold,
            pass: statistic <= threshold,
            counted: true,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn informational(mut self) -> Self {
        self.counted = false;
        self
    }
}

/// Pass/fail record of one suite, serialized as the JSON report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: Option<u64>,
    pub parameters: serde_json::Value,
    /// Family-wise level of the KS checks.
    pub level: f64,
    pub comparisons: Vec<Comparison>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: Option<u64>, parameters: serde_json::Value, level: f64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            parameters,
            level,
            comparisons: Vec::new(),
            notes: Vec::new(),
            pass: false,
        }
    }

    pub fn push(&mut self, c: Comparison) {
        self.comparisons.push(c);
    }

    /// Adds a KS check; its threshold is set by [`SuiteReport::finish`].
    pub fn push_ks(&mut self, name: impl Into<String>, r: &KsResult, counted: bool) {
        self.comparisons.push(Comparison {
            name: name.into(),
            kind: CheckKind::Ks,
            statistic: r.statistic,
            p_value: Some(r.p_value),
            n: Some(r.n),
            m: r.m,
            threshold: 0.0,
            pass: false,
            counted,
            detail: None,
        });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Applies the Bonferroni threshold `level / k` to the `k` counted KS
    /// checks (informational ones use the same threshold) and settles the
    /// verdict.
    pub fn finish(mut self) -> Self {
        let k = self.comparisons.iter().filter(|c| c.kind == CheckKind::Ks && c.counted).count().max(1);
        let threshold = self.level / k as f64;
        for c in self.comparisons.iter_mut().filter(|c| c.kind == CheckKind::Ks) {
            c.threshold = threshold;
            c.pass = c.p_value.is_some_and(|p| p >= threshold);
        }
        self.pass = self.comparisons.iter().filter(|c| c.counted).all(|c| c.pass);
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons.iter().filter(|c| c.counted && !c.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Named columns of raw values kept for a failure dump.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleDump {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// A finished suite together with the samples it was decided on.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub report: SuiteReport,
    pub dumps: Vec<SampleDump>,
}

impl SuiteOutcome {
    /// Writes `<suite>.json` into `dir` and, if the suite failed, one CSV
    /// per sample dump. Returns the paths written.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let report = dir.join(format!("{}.json", self.report.suite));
        fs::write(&report, self.report.to_json()? + "\n")?;
        written.push(report);
        if !self.report.pass {
            for d in &self.dumps {
                let p = dir.join(format!("{}-{}.csv", self.report.suite, d.name));
                crate::io::write_table(&p, &d.columns, &d.rows)?;
                written.push(p);
            }
        }
        Ok(written)
    }
}
