//! Verification certificates and their canonical JSON form.
//!
//! Keys are written in a fixed order: `proposition`, `params`, `conventions`,
//! `metrics`, `verdict`, `elapsed_ms`, `tool_version`, then `schema_version`
//! and `transcript`. Maps are sorted and metrics are integers. Unknown fields
//! are rejected on read.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{SurfaceKind, SurfaceParams};

pub const SCHEMA_VERSION: u32 = 1;

pub fn tool_version() -> String {
    format!("torelli-verify {}", env!("CARGO_PKG_VERSION"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    fn code(self) -> i64 {
        match self {
            Self::Pass => 1,
            Self::Fail => 0,
            Self::Inconclusive => -1,
        }
    }

    /// Combines sub-check verdicts: any failure fails, otherwise any
    /// inconclusive result is inconclusive.
    pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Pass;
        for v in verdicts {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Pass => {}
            }
        }
        out
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Inconclusive => "inconclusive",
        })
    }
}

/// An integer metric or a list of integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Metric {
    Int(i64),
    List(Vec<i64>),
}

impl Metric {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Self::Int(v) => Some(*v),
            Self::List(_) => None,
        }
    }
}

/// The parameters a certificate was produced for; absent fields are `null`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsEcho {
    pub genus: Option<usize>,
    pub k: Option<usize>,
    pub surface: Option<SurfaceKind>,
}

impl From<&SurfaceParams> for ParamsEcho {
    fn from(p: &SurfaceParams) -> Self {
        Self { genus: Some(p.genus()), k: Some(p.k()), surface: Some(p.surface()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub proposition: String,
    pub params: ParamsEcho,
    pub conventions: BTreeMap<String, String>,
    pub metrics: BTreeMap<String, Metric>,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
    pub tool_version: String,
    pub schema_version: u32,
    pub transcript: Vec<String>,
}

impl Certificate {
    pub fn new(proposition: impl Into<String>, params: ParamsEcho) -> Self {
        Self {
            proposition: proposition.into(),
            params,
            conventions: BTreeMap::new(),
            metrics: BTreeMap::new(),
            verdict: Verdict::Inconclusive,
            elapsed_ms: 0,
            tool_version: tool_version(),
            schema_version: SCHEMA_VERSION,
            transcript: Vec::new(),
        }
    }

    pub fn convention(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.conventions.insert(key.to_owned(), value.into());
        self
    }

    pub fn metric(&mut self, key: &str, value: impl TryInto<i64>) -> &mut Self {
        let v = value.try_into().unwrap_or(i64::MAX);
        self.metrics.insert(key.to_owned(), Metric::Int(v));
        self
    }

    pub fn metric_list(&mut self, key: &str, values: &[i64]) -> &mut Self {
        self.metrics.insert(key.to_owned(), Metric::List(values.to_vec()));
        self
    }

    /// Records a sub-check as `check.<name>` (1 pass, 0 fail, -1 inconclusive).
    pub fn check(&mut self, name: &str, verdict: Verdict) -> &mut Self {
        self.metrics.insert(format!("check.{name}"), Metric::Int(verdict.code()));
        self
    }

    pub fn note(&mut self, line: impl Into<String>) -> &mut Self {
        self.transcript.push(line.into());
        self
    }

    /// Sets the verdict from the recorded sub-checks.
    pub fn seal(&mut self) -> Verdict {
        let verdicts = self.metrics.iter().filter(|(k, _)| k.starts_with("check.")).map(|(_, m)| match m {
            Metric::Int(1) => Verdict::Pass,
            Metric::Int(0) => Verdict::Fail,
            _ => Verdict::Inconclusive,
        });
        let mut any = false;
        let combined = Verdict::combine(verdicts.inspect(|_| any = true));
        self.verdict = if any { combined } else { Verdict::Inconclusive };
        self.verdict
    }

    pub fn check_value(&self, name: &str) -> Option<Verdict> {
        match self.metrics.get(&format!("check.{name}"))? {
            Metric::Int(1) => Some(Verdict::Pass),
            Metric::Int(0) => Some(Verdict::Fail),
            _ => Some(Verdict::Inconclusive),
        }
    }

    pub fn int_metric(&self, key: &str) -> Option<i64> {
        self.metrics.get(key).and_then(Metric::as_int)
    }

    /// Canonical JSON text, terminated by a newline.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serialization is infallible");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cert: Certificate = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        if cert.schema_version != SCHEMA_VERSION {
            return Err(Error::Schema(format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                cert.schema_version
            )));
        }
        Ok(cert)
    }
}

/// Writes the canonical JSON of `cert` to `path` via a temporary file and a rename.
pub fn emit(cert: &Certificate, path: &Path) -> Result<()> {
    let io_err = |source| Error::Io { path: path.to_path_buf(), source };
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let file_name = path
        .file_name()
        .ok_or_else(|| io_err(std::io::Error::new(std::io::ErrorKind::InvalidInput, "path has no file name")))?;
    let tmp = dir.join(format!(".{}.tmp{}", file_name.to_string_lossy(), std::process::id()));
    let write = || -> std::io::Result<()> {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(cert.to_canonical_json().as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    };
    write().map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io_err(e)
    })
}

pub fn read(path: &Path) -> Result<Certificate> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    Certificate::from_json(&text)
}
